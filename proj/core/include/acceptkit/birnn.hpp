// Copyright 2026 The acceptkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acceptkit/rng.hpp"

namespace acceptkit {

struct BirnnConfig {
  std::size_t max_len = 64;
  std::size_t src_vocab = 30000;
  std::size_t tgt_vocab = 30000;
  std::size_t embed_dim = 256;
  std::size_t rnn_hidden = 256;  // per direction
  std::size_t proj_dim = 512;
  std::size_t penult_dim = 1024;
  double dropout = 0.1;  // on embeddings only
  std::size_t batch_size = 128;
  double lr = 5e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::size_t patience = 5;
  std::size_t max_epochs = 50;
  std::uint64_t seed = 0;

  void validate() const;
  friend bool operator==(const BirnnConfig&, const BirnnConfig&) = default;
};

struct GruParams {
  Eigen::MatrixXd Wz, Wr, Wc;  // hidden x embed
  Eigen::MatrixXd Uz, Ur, Uc;  // hidden x hidden
  Eigen::VectorXd bz, br, bc;
};

struct SideParams {
  Eigen::MatrixXd embed;  // vocab x embed, row k is the vector of id k
  GruParams fwd, bwd;
  Eigen::MatrixXd Wg;  // proj x 2*hidden
  Eigen::VectorXd bg;
};

struct BirnnParams {
  SideParams src, tgt;
  Eigen::VectorXd w;   // attention vector, shared by both sides
  Eigen::MatrixXd Wu;  // penult x proj
  Eigen::VectorXd bu;
  Eigen::MatrixXd Wv;  // 1 x penult
  Eigen::VectorXd bv;  // size 1

  // All tensors zero, shaped for `config`.
  static BirnnParams zeros(const BirnnConfig& config);
  // Glorot-uniform matrices, zero biases.
  static BirnnParams glorot(const BirnnConfig& config, std::uint64_t seed);

  void set_zero();
  std::size_t num_values() const;

  // Calls f(name, t0, t1, ...) for every tensor, matching tensors of each
  // argument in turn. The order is fixed and is the serialization order.
  template <typename F, typename... Ps>
  static void visit(F&& f, Ps&... ps) {
    visit_side("src.", f, ps.src...);
    visit_side("tgt.", f, ps.tgt...);
    f("attn.w", ps.w...);
    f("Wu", ps.Wu...);
    f("bu", ps.bu...);
    f("Wv", ps.Wv...);
    f("bv", ps.bv...);
  }

 private:
  template <typename F, typename... Gs>
  static void visit_gru(const std::string& p, F& f, Gs&... gs) {
    f(p + "Wz", gs.Wz...);
    f(p + "Wr", gs.Wr...);
    f(p + "Wc", gs.Wc...);
    f(p + "Uz", gs.Uz...);
    f(p + "Ur", gs.Ur...);
    f(p + "Uc", gs.Uc...);
    f(p + "bz", gs.bz...);
    f(p + "br", gs.br...);
    f(p + "bc", gs.bc...);
  }

  template <typename F, typename... Ss>
  static void visit_side(const std::string& p, F& f, Ss&... ss) {
    f(p + "embed", ss.embed...);
    visit_gru(p + "fwd.", f, ss.fwd...);
    visit_gru(p + "bwd.", f, ss.bwd...);
    f(p + "Wg", ss.Wg...);
    f(p + "bg", ss.bg...);
  }
};

// Activations of one GRU pass, in processing order (the backward direction
// runs over the reversed sequence). h has T+1 columns; column 0 is the zero
// initial state.
struct GruTrace {
  Eigen::MatrixXd h, z, r, c;
};

struct SideTrace {
  std::vector<int> ids;       // PAD removed, truncated to max_len
  Eigen::MatrixXd x;          // embed x T, after dropout
  Eigen::MatrixXd keep;       // dropout scale per element; empty in eval mode
  GruTrace fwd, bwd;
  Eigen::MatrixXd g;          // 2*hidden x T, [forward; backward]
  Eigen::MatrixXd h;          // proj x T, after ReLU
};

struct ForwardTrace {
  SideTrace src, tgt;
  Eigen::VectorXd alpha;  // source positions then target positions
  Eigen::VectorXd u, v;
  double logit = 0;
  double p = 0.5;
};

// Padding ids (Vocab::kPad) are masked out: they are skipped by the GRUs and
// receive no attention. Sequences are truncated to config.max_len. In train
// mode, inverted dropout is drawn from `rng` (required when dropout > 0).
ForwardTrace forward(const BirnnParams& params, const BirnnConfig& config, std::span<const int> src_ids,
                     std::span<const int> tgt_ids, bool train_mode = false, Rng* rng = nullptr);

// Cross-entropy with p clamped to [1e-12, 1 - 1e-12].
double loss(double p, int y);

// Adds the gradient of loss(trace.p, y) to `grads`.
void backward(const ForwardTrace& trace, const BirnnParams& params, int y, BirnnParams& grads);
BirnnParams backward(const ForwardTrace& trace, const BirnnParams& params, const BirnnConfig& config, int y);

struct AdamState {
  BirnnParams m, v;
  std::size_t t = 0;

  static AdamState zeros(const BirnnConfig& config);
};

// One bias-corrected Adam step with lr/beta1/beta2/eps from `config`;
// increments state.t first.
void adam_step(AdamState& state, BirnnParams& params, const BirnnParams& grads, const BirnnConfig& config);

}  // namespace acceptkit
