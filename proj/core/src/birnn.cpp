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

#include "acceptkit/birnn.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "acceptkit/error.hpp"
#include "acceptkit/vocab.hpp"

namespace acceptkit {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

void BirnnConfig::validate() const {
  if (max_len == 0 || src_vocab == 0 || tgt_vocab == 0 || embed_dim == 0 || rnn_hidden == 0 || proj_dim == 0 ||
      penult_dim == 0 || batch_size == 0) {
    throw InvalidArgument("birnn config: all sizes must be at least 1");
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) throw InvalidArgument("birnn config: dropout must be in [0, 1)");
  if (!(lr > 0) || !(beta1 >= 0 && beta1 < 1) || !(beta2 >= 0 && beta2 < 1) || !(eps > 0)) {
    throw InvalidArgument("birnn config: invalid optimizer settings");
  }
}

namespace {

Index idx(std::size_t n) { return static_cast<Index>(n); }

void shape_gru(GruParams& g, std::size_t embed, std::size_t hidden) {
  const Index e = idx(embed), h = idx(hidden);
  for (MatrixXd* m : {&g.Wz, &g.Wr, &g.Wc}) m->setZero(h, e);
  for (MatrixXd* m : {&g.Uz, &g.Ur, &g.Uc}) m->setZero(h, h);
  for (VectorXd* b : {&g.bz, &g.br, &g.bc}) b->setZero(h);
}

void shape_side(SideParams& s, std::size_t vocab, const BirnnConfig& c) {
  s.embed.setZero(idx(vocab), idx(c.embed_dim));
  shape_gru(s.fwd, c.embed_dim, c.rnn_hidden);
  shape_gru(s.bwd, c.embed_dim, c.rnn_hidden);
  s.Wg.setZero(idx(c.proj_dim), idx(2 * c.rnn_hidden));
  s.bg.setZero(idx(c.proj_dim));
}

double sigmoid(double a) {
  if (a >= 0) return 1.0 / (1.0 + std::exp(-a));
  const double e = std::exp(a);
  return e / (1.0 + e);
}

MatrixXd sigmoid(const MatrixXd& a) { return a.unaryExpr([](double v) { return sigmoid(v); }); }

GruTrace run_gru(const GruParams& g, const MatrixXd& x) {
  const Index T = x.cols();
  const Index H = g.Uz.rows();
  GruTrace tr;
  tr.h.setZero(H, T + 1);
  const MatrixXd pz = (g.Wz * x).colwise() + g.bz;
  const MatrixXd pr = (g.Wr * x).colwise() + g.br;
  const MatrixXd pc = (g.Wc * x).colwise() + g.bc;
  tr.z.resize(H, T);
  tr.r.resize(H, T);
  tr.c.resize(H, T);
  for (Index t = 0; t < T; ++t) {
    const auto prev = tr.h.col(t);
    tr.z.col(t) = sigmoid(pz.col(t) + g.Uz * prev);
    tr.r.col(t) = sigmoid(pr.col(t) + g.Ur * prev);
    const VectorXd rh = tr.r.col(t).cwiseProduct(prev);
    tr.c.col(t) = (pc.col(t) + g.Uc * rh).array().tanh();
    tr.h.col(t + 1) = tr.z.col(t).cwiseProduct(prev) + (1.0 - tr.z.col(t).array()).matrix().cwiseProduct(tr.c.col(t));
  }
  return tr;
}

// Backpropagation through time. dh_out holds dL/dh_t for t = 1..T (one column
// each); returns dL/dx and accumulates parameter gradients into `grad`.
MatrixXd backprop_gru(const GruParams& g, const GruTrace& tr, const MatrixXd& x, const MatrixXd& dh_out,
                      GruParams& grad) {
  const Index T = x.cols();
  const Index H = g.Uz.rows();
  MatrixXd daz(H, T), dar(H, T), dac(H, T), rh(H, T);
  VectorXd carry = VectorXd::Zero(H);
  for (Index t = T - 1; t >= 0; --t) {
    const auto prev = tr.h.col(t);
    const auto z = tr.z.col(t).array();
    const auto r = tr.r.col(t).array();
    const auto c = tr.c.col(t).array();
    const VectorXd dh = dh_out.col(t) + carry;
    const auto dz = dh.array() * (prev.array() - c);
    const auto dc = dh.array() * (1.0 - z);
    dac.col(t) = (dc * (1.0 - c * c)).matrix();
    daz.col(t) = (dz * z * (1.0 - z)).matrix();
    rh.col(t) = (r * prev.array()).matrix();
    const VectorXd drh = g.Uc.transpose() * dac.col(t);
    dar.col(t) = (drh.array() * prev.array() * r * (1.0 - r)).matrix();
    carry = (dh.array() * z + drh.array() * r).matrix() + g.Uz.transpose() * daz.col(t) +
            g.Ur.transpose() * dar.col(t);
  }
  const auto hprev = tr.h.leftCols(T);
  grad.Wz.noalias() += daz * x.transpose();
  grad.Wr.noalias() += dar * x.transpose();
  grad.Wc.noalias() += dac * x.transpose();
  grad.Uz.noalias() += daz * hprev.transpose();
  grad.Ur.noalias() += dar * hprev.transpose();
  grad.Uc.noalias() += dac * rh.transpose();
  grad.bz += daz.rowwise().sum();
  grad.br += dar.rowwise().sum();
  grad.bc += dac.rowwise().sum();
  MatrixXd dx = g.Wz.transpose() * daz;
  dx.noalias() += g.Wr.transpose() * dar;
  dx.noalias() += g.Wc.transpose() * dac;
  return dx;
}

std::vector<int> prepare_ids(std::span<const int> ids, std::size_t vocab, std::size_t max_len, const char* side) {
  std::vector<int> out;
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab) {
      throw InvalidArgument(fmt::format("birnn: {} id {} outside vocabulary of size {}", side, id, vocab));
    }
    if (id != Vocab::kPad && out.size() < max_len) out.push_back(id);
  }
  return out;
}

SideTrace run_side(const SideParams& p, std::vector<int> ids, double dropout, bool train_mode, Rng* rng) {
  SideTrace tr;
  tr.ids = std::move(ids);
  const Index T = idx(tr.ids.size());
  const Index E = p.embed.cols();
  tr.x.resize(E, T);
  for (Index t = 0; t < T; ++t) tr.x.col(t) = p.embed.row(tr.ids[static_cast<std::size_t>(t)]).transpose();
  if (train_mode && dropout > 0) {
    tr.keep.resize(E, T);
    const double scale = 1.0 / (1.0 - dropout);
    for (Index t = 0; t < T; ++t) {
      for (Index e = 0; e < E; ++e) tr.keep(e, t) = rng->uniform() < dropout ? 0.0 : scale;
    }
    tr.x.array() *= tr.keep.array();
  }
  const Index H = p.fwd.Uz.rows();
  tr.fwd = run_gru(p.fwd, tr.x);
  tr.bwd = run_gru(p.bwd, tr.x.rowwise().reverse());
  tr.g.resize(2 * H, T);
  tr.g.topRows(H) = tr.fwd.h.rightCols(T);
  tr.g.bottomRows(H) = tr.bwd.h.rightCols(T).rowwise().reverse();
  tr.h = ((p.Wg * tr.g).colwise() + p.bg).cwiseMax(0.0);
  return tr;
}

void backprop_side(const SideParams& p, const SideTrace& tr, const MatrixXd& dh, SideParams& grad) {
  const Index T = tr.x.cols();
  if (T == 0) return;
  const Index H = p.fwd.Uz.rows();
  const MatrixXd da = dh.cwiseProduct((tr.h.array() > 0.0).cast<double>().matrix());
  grad.Wg.noalias() += da * tr.g.transpose();
  grad.bg += da.rowwise().sum();
  const MatrixXd dg = p.Wg.transpose() * da;
  MatrixXd dx = backprop_gru(p.fwd, tr.fwd, tr.x, dg.topRows(H), grad.fwd);
  dx += backprop_gru(p.bwd, tr.bwd, tr.x.rowwise().reverse(), dg.bottomRows(H).rowwise().reverse(), grad.bwd)
            .rowwise()
            .reverse();
  if (tr.keep.size() > 0) dx.array() *= tr.keep.array();
  for (Index t = 0; t < T; ++t) grad.embed.row(tr.ids[static_cast<std::size_t>(t)]) += dx.col(t).transpose();
}

}  // namespace

BirnnParams BirnnParams::zeros(const BirnnConfig& config) {
  BirnnParams p;
  shape_side(p.src, config.src_vocab, config);
  shape_side(p.tgt, config.tgt_vocab, config);
  p.w.setZero(idx(config.proj_dim));
  p.Wu.setZero(idx(config.penult_dim), idx(config.proj_dim));
  p.bu.setZero(idx(config.penult_dim));
  p.Wv.setZero(1, idx(config.penult_dim));
  p.bv.setZero(1);
  return p;
}

BirnnParams BirnnParams::glorot(const BirnnConfig& config, std::uint64_t seed) {
  config.validate();
  BirnnParams p = zeros(config);
  Rng rng(seed);
  visit(
      [&](const std::string& name, auto& t) {
        // Biases (leaf names b*) stay zero; the attention vector counts as
        // a proj x 1 matrix.
        if (name[name.rfind('.') + 1] == 'b') return;
        const double fan_in = static_cast<double>(t.cols());
        const double fan_out = static_cast<double>(t.rows());
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        for (Index j = 0; j < t.cols(); ++j) {
          for (Index i = 0; i < t.rows(); ++i) t(i, j) = rng.uniform(-limit, limit);
        }
      },
      p);
  return p;
}

void BirnnParams::set_zero() {
  visit([](const std::string&, auto& t) { t.setZero(); }, *this);
}

std::size_t BirnnParams::num_values() const {
  std::size_t n = 0;
  visit([&](const std::string&, const auto& t) { n += static_cast<std::size_t>(t.size()); }, *this);
  return n;
}

ForwardTrace forward(const BirnnParams& params, const BirnnConfig& config, std::span<const int> src_ids,
                     std::span<const int> tgt_ids, bool train_mode, Rng* rng) {
  if (train_mode && config.dropout > 0 && rng == nullptr) {
    throw InvalidArgument("birnn forward: train mode with dropout needs a random source");
  }
  auto s = prepare_ids(src_ids, static_cast<std::size_t>(params.src.embed.rows()), config.max_len, "source");
  auto t = prepare_ids(tgt_ids, static_cast<std::size_t>(params.tgt.embed.rows()), config.max_len, "target");
  if (s.empty() && t.empty()) throw InvalidArgument("birnn forward: both sequences are empty");

  ForwardTrace tr;
  tr.src = run_side(params.src, std::move(s), config.dropout, train_mode, rng);
  tr.tgt = run_side(params.tgt, std::move(t), config.dropout, train_mode, rng);
  const Index ns = tr.src.h.cols();
  const Index n = ns + tr.tgt.h.cols();
  VectorXd scores(n);
  scores.head(ns) = tr.src.h.transpose() * params.w;
  scores.tail(n - ns) = tr.tgt.h.transpose() * params.w;
  tr.alpha = (scores.array() - scores.maxCoeff()).exp();
  tr.alpha /= tr.alpha.sum();
  tr.u = tr.src.h * tr.alpha.head(ns) + tr.tgt.h * tr.alpha.tail(n - ns);
  tr.v = ((params.Wu * tr.u) + params.bu).cwiseMax(0.0);
  tr.logit = params.Wv.row(0).dot(tr.v) + params.bv(0);
  tr.p = sigmoid(tr.logit);
  return tr;
}

double loss(double p, int y) {
  const double q = std::clamp(p, 1e-12, 1.0 - 1e-12);
  return y ? -std::log(q) : -std::log1p(-q);
}

void backward(const ForwardTrace& tr, const BirnnParams& params, int y, BirnnParams& grads) {
  const double dlogit = tr.p - static_cast<double>(y);
  grads.Wv.row(0) += dlogit * tr.v.transpose();
  grads.bv(0) += dlogit;
  const VectorXd dav = (params.Wv.row(0).transpose() * dlogit).cwiseProduct((tr.v.array() > 0.0).cast<double>().matrix());
  grads.Wu.noalias() += dav * tr.u.transpose();
  grads.bu += dav;
  const VectorXd du = params.Wu.transpose() * dav;

  const Index ns = tr.src.h.cols();
  const Index n = tr.alpha.size();
  VectorXd dalpha(n);
  dalpha.head(ns) = tr.src.h.transpose() * du;
  dalpha.tail(n - ns) = tr.tgt.h.transpose() * du;
  const VectorXd ds = tr.alpha.cwiseProduct((dalpha.array() - tr.alpha.dot(dalpha)).matrix());
  grads.w += tr.src.h * ds.head(ns) + tr.tgt.h * ds.tail(n - ns);

  // dL/dh_i = alpha_i du + ds_i w
  MatrixXd dh_src = du * tr.alpha.head(ns).transpose() + params.w * ds.head(ns).transpose();
  MatrixXd dh_tgt = du * tr.alpha.tail(n - ns).transpose() + params.w * ds.tail(n - ns).transpose();
  backprop_side(params.src, tr.src, dh_src, grads.src);
  backprop_side(params.tgt, tr.tgt, dh_tgt, grads.tgt);
}

BirnnParams backward(const ForwardTrace& trace, const BirnnParams& params, const BirnnConfig& config, int y) {
  BirnnParams grads = BirnnParams::zeros(config);
  backward(trace, params, y, grads);
  return grads;
}

AdamState AdamState::zeros(const BirnnConfig& config) {
  return {BirnnParams::zeros(config), BirnnParams::zeros(config), 0};
}

void adam_step(AdamState& state, BirnnParams& params, const BirnnParams& grads, const BirnnConfig& config) {
  BirnnParams::visit(
      [](const std::string& name, const auto& p, const auto& g, const auto& m, const auto& v) {
        if (p.rows() != g.rows() || p.cols() != g.cols() || p.rows() != m.rows() || p.cols() != m.cols() ||
            p.rows() != v.rows() || p.cols() != v.cols()) {
          throw InvalidArgument(fmt::format("adam_step: shape mismatch in {}", name));
        }
      },
      params, grads, state.m, state.v);
  ++state.t;
  const double b1 = config.beta1, b2 = config.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.t));
  const double lr = config.lr, eps = config.eps;
  BirnnParams::visit(
      [&](const std::string&, auto& p, const auto& g, auto& m, auto& v) {
        m.array() = b1 * m.array() + (1.0 - b1) * g.array();
        v.array() = b2 * v.array() + (1.0 - b2) * g.array().square();
        p.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
      },
      params, grads, state.m, state.v);
}

}  // namespace acceptkit
