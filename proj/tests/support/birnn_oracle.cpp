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

#include "birnn_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "acceptkit/rng.hpp"

namespace acceptkit::testing {

namespace {

using Vec = std::vector<double>;

double sig(double a) { return 1.0 / (1.0 + std::exp(-a)); }

Vec matvec(const Eigen::MatrixXd& m, const Vec& x) {
  Vec out(static_cast<std::size_t>(m.rows()), 0.0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double s = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += m(i, j) * x[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

Vec gru_step(const GruParams& g, const Vec& x, const Vec& h) {
  const Vec wzx = matvec(g.Wz, x), uzh = matvec(g.Uz, h);
  const Vec wrx = matvec(g.Wr, x), urh = matvec(g.Ur, h);
  const std::size_t H = h.size();
  Vec z(H), r(H), rh(H);
  for (std::size_t k = 0; k < H; ++k) {
    z[k] = sig(wzx[k] + uzh[k] + g.bz(static_cast<Eigen::Index>(k)));
    r[k] = sig(wrx[k] + urh[k] + g.br(static_cast<Eigen::Index>(k)));
    rh[k] = r[k] * h[k];
  }
  const Vec wcx = matvec(g.Wc, x), ucrh = matvec(g.Uc, rh);
  Vec out(H);
  for (std::size_t k = 0; k < H; ++k) {
    const double c = std::tanh(wcx[k] + ucrh[k] + g.bc(static_cast<Eigen::Index>(k)));
    out[k] = z[k] * h[k] + (1.0 - z[k]) * c;
  }
  return out;
}

std::vector<Vec> side_states(const SideParams& p, std::span<const int> ids, std::size_t max_len) {
  std::vector<Vec> xs;
  for (int id : ids) {
    if (id == 0 || xs.size() == max_len) continue;
    Vec x(static_cast<std::size_t>(p.embed.cols()));
    for (std::size_t e = 0; e < x.size(); ++e) x[e] = p.embed(id, static_cast<Eigen::Index>(e));
    xs.push_back(x);
  }
  const std::size_t T = xs.size();
  const auto H = static_cast<std::size_t>(p.fwd.Uz.rows());
  std::vector<Vec> fwd(T), bwd(T);
  Vec h(H, 0.0);
  for (std::size_t t = 0; t < T; ++t) fwd[t] = h = gru_step(p.fwd, xs[t], h);
  h.assign(H, 0.0);
  for (std::size_t t = T; t-- > 0;) bwd[t] = h = gru_step(p.bwd, xs[t], h);
  std::vector<Vec> out;
  for (std::size_t t = 0; t < T; ++t) {
    Vec g = fwd[t];
    g.insert(g.end(), bwd[t].begin(), bwd[t].end());
    Vec a = matvec(p.Wg, g);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = std::max(0.0, a[k] + p.bg(static_cast<Eigen::Index>(k)));
    out.push_back(a);
  }
  return out;
}

}  // namespace

BirnnParams random_params(const BirnnConfig& config, std::uint64_t seed, double scale) {
  BirnnParams p = BirnnParams::zeros(config);
  Rng rng(seed);
  BirnnParams::visit(
      [&](const std::string&, auto& t) {
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
          for (Eigen::Index i = 0; i < t.rows(); ++i) t(i, j) = rng.uniform(-scale, scale);
        }
      },
      p);
  return p;
}

double oracle_forward(const BirnnParams& params, std::span<const int> src, std::span<const int> tgt,
                      std::size_t max_len) {
  std::vector<Vec> hs = side_states(params.src, src, max_len);
  const std::vector<Vec> ht = side_states(params.tgt, tgt, max_len);
  hs.insert(hs.end(), ht.begin(), ht.end());
  Vec score(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    double s = 0;
    for (std::size_t k = 0; k < hs[i].size(); ++k) s += hs[i][k] * params.w(static_cast<Eigen::Index>(k));
    score[i] = s;
  }
  // Plain softmax, no max subtraction: scores are small for test inputs.
  double z = 0;
  for (double s : score) z += std::exp(s);
  Vec u(static_cast<std::size_t>(params.w.size()), 0.0);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t k = 0; k < u.size(); ++k) u[k] += std::exp(score[i]) / z * hs[i][k];
  }
  Vec v = matvec(params.Wu, u);
  double logit = params.bv(0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = std::max(0.0, v[k] + params.bu(static_cast<Eigen::Index>(k)));
    logit += params.Wv(0, static_cast<Eigen::Index>(k)) * v[k];
  }
  return sig(logit);
}

std::map<std::string, double> gradient_check(const BirnnParams& params, const BirnnConfig& config,
                                             std::span<const int> src, std::span<const int> tgt, int y,
                                             bool train_mode, std::uint64_t dropout_seed, double step, double floor) {
  const auto eval = [&](const BirnnParams& p) {
    Rng rng(dropout_seed);
    return forward(p, config, src, tgt, train_mode, &rng);
  };
  const BirnnParams analytic = backward(eval(params), params, config, y);
  BirnnParams probe = params;
  std::map<std::string, double> worst;
  BirnnParams::visit(
      [&](const std::string& name, auto& t, const auto& g) {
        double max_err = 0;
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
          for (Eigen::Index i = 0; i < t.rows(); ++i) {
            const double saved = t(i, j);
            t(i, j) = saved + step;
            const double up = loss(eval(probe).p, y);
            t(i, j) = saved - step;
            const double down = loss(eval(probe).p, y);
            t(i, j) = saved;
            const double numeric = (up - down) / (2.0 * step);
            const double a = g(i, j);
            max_err = std::max(max_err, std::abs(a - numeric) / std::max(std::abs(a) + std::abs(numeric), floor));
          }
        }
        worst[name] = max_err;
      },
      probe, analytic);
  return worst;
}

}  // namespace acceptkit::testing
