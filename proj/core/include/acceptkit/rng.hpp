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

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace acceptkit {

// SplitMix64 output function.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed of sub-stream `stream` of master seed `seed`:
//   mix64(seed + 0x9E3779B97F4A7C15 * (stream + 1))   (mod 2^64)
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

// Portable random source. The bit generator is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; all derived quantities are computed
// here rather than through <random> distributions, whose algorithms are
// implementation-defined.
//
//   uniform()  = (next() >> 11) * 2^-53                  in [0, 1)
//   below(n)   = next() % n, rejecting draws < (2^64 - n) % n
//   shuffle(v) = Fisher-Yates, i = size-1 .. 1, swap(v[i], v[below(i+1)])
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for (seed, index), e.g. one per sentence.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive_seed(seed, index));
  }

  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t n);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace acceptkit
