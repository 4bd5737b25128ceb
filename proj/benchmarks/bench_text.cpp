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

#include <benchmark/benchmark.h>

#include "acceptkit/bpe.hpp"
#include "acceptkit/ibm1.hpp"
#include "acceptkit/lm.hpp"
#include "bench_data.hpp"

namespace acceptkit {
namespace {

void BM_BpeLearn(benchmark::State& state) {
  const auto corpus = bench::make_sentences(5000, 3000, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bpe_learn(corpus, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_BpeLearn)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BpeApply(benchmark::State& state) {
  const auto corpus = bench::make_sentences(5000, 3000, 1);
  const BpeCodec codec(bpe_learn(corpus, 1000));
  std::size_t tokens = 0;
  for (auto _ : state) {
    for (const auto& s : corpus) {
      const auto seg = codec.apply(s);
      benchmark::DoNotOptimize(seg.data());
      tokens += s.size();
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(tokens));
}
BENCHMARK(BM_BpeApply)->Unit(benchmark::kMillisecond);

void BM_LmTrain(benchmark::State& state) {
  const auto corpus = bench::make_sentences(static_cast<std::size_t>(state.range(0)), 5000, 2);
  for (auto _ : state) benchmark::DoNotOptimize(NgramLm::train(corpus));
}
BENCHMARK(BM_LmTrain)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_LmLogprob(benchmark::State& state) {
  const auto corpus = bench::make_sentences(20000, 5000, 2);
  const auto lm = NgramLm::train(corpus);
  const auto queries = bench::make_sentences(1000, 6000, 3);
  for (auto _ : state) {
    double total = 0;
    for (const auto& s : queries) total += lm.logprob(s);
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(queries.size()));
}
BENCHMARK(BM_LmLogprob)->Unit(benchmark::kMillisecond);

void BM_Ibm1Train(benchmark::State& state) {
  const auto pairs = bench::make_pairs(static_cast<std::size_t>(state.range(0)), 3000, 4);
  for (auto _ : state) benchmark::DoNotOptimize(ibm1_train(pairs, 5));
}
BENCHMARK(BM_Ibm1Train)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace acceptkit
