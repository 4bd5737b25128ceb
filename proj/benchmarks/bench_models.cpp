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

#include <cmath>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "acceptkit/biquest.hpp"
#include "acceptkit/birnn.hpp"
#include "acceptkit/rng.hpp"

namespace acceptkit {
namespace {

// Two overlapping Gaussian clouds in 17 dimensions, standardized.
void make_svm_data(std::size_t n, Eigen::MatrixXd& x, std::vector<int>& y) {
  Rng rng(7);
  x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(kNumFeatures));
  y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = rng.below(2) ? 1 : -1;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      // Box-Muller
      const double u1 = 1.0 - rng.uniform(), u2 = rng.uniform();
      const double g = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
      x(static_cast<Eigen::Index>(i), j) = g + (j < 4 ? 0.5 * y[i] : 0.0);
    }
  }
  x = scaler_fit_apply(x).rows;
}

void BM_SvmTrain(benchmark::State& state) {
  Eigen::MatrixXd x;
  std::vector<int> y;
  make_svm_data(static_cast<std::size_t>(state.range(0)), x, y);
  SvmOptions opt;
  opt.kernel_cache_mb = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(svm_train(x, y, opt));
}
// Second argument 0 forces the row cache instead of the full Gram matrix.
BENCHMARK(BM_SvmTrain)->Args({1000, 512})->Args({4000, 512})->Args({4000, 0})->Unit(benchmark::kMillisecond);

void BM_SvmPredict(benchmark::State& state) {
  Eigen::MatrixXd x;
  std::vector<int> y;
  make_svm_data(4000, x, y);
  const auto model = svm_train(x, y).model;
  const Eigen::VectorXd row = x.row(0).transpose();
  for (auto _ : state) benchmark::DoNotOptimize(svm_predict(model, row));
}
BENCHMARK(BM_SvmPredict);

BirnnConfig bench_config(std::int64_t width) {
  BirnnConfig c;
  c.src_vocab = c.tgt_vocab = 5000;
  c.embed_dim = c.rnn_hidden = static_cast<std::size_t>(width);
  c.proj_dim = c.penult_dim = static_cast<std::size_t>(2 * width);
  return c;
}

std::vector<int> random_ids(Rng& rng, std::size_t len, std::size_t vocab) {
  std::vector<int> ids(len);
  for (auto& id : ids) id = static_cast<int>(2 + rng.below(vocab - 2));
  return ids;
}

void BM_BirnnForward(benchmark::State& state) {
  const auto config = bench_config(state.range(0));
  const auto params = BirnnParams::glorot(config, 1);
  Rng rng(2);
  const auto src = random_ids(rng, 30, config.src_vocab), tgt = random_ids(rng, 30, config.tgt_vocab);
  for (auto _ : state) benchmark::DoNotOptimize(forward(params, config, src, tgt));
}
BENCHMARK(BM_BirnnForward)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_BirnnForwardBackward(benchmark::State& state) {
  const auto config = bench_config(state.range(0));
  const auto params = BirnnParams::glorot(config, 1);
  auto grads = BirnnParams::zeros(config);
  Rng rng(2);
  const auto src = random_ids(rng, 30, config.src_vocab), tgt = random_ids(rng, 30, config.tgt_vocab);
  for (auto _ : state) {
    const auto trace = forward(params, config, src, tgt, true, &rng);
    backward(trace, params, 1, grads);
  }
}
BENCHMARK(BM_BirnnForwardBackward)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace acceptkit
