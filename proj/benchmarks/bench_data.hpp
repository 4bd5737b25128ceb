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

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "acceptkit/corpus.hpp"
#include "acceptkit/rng.hpp"

namespace acceptkit::bench {

// Random word with a letter-only spelling, so BPE has something to merge.
inline std::string make_word(Rng& rng) {
  static constexpr char kLetters[] = "etaoinshrdlucmfwyp";
  std::string w;
  const std::size_t len = 2 + rng.below(7);
  for (std::size_t i = 0; i < len; ++i) w += kLetters[rng.below(sizeof(kLetters) - 1)];
  return w;
}

// Sentences over a Zipf-distributed vocabulary.
inline std::vector<Tokens> make_sentences(std::size_t count, std::size_t vocab, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> words(vocab);
  for (auto& w : words) w = make_word(rng);
  std::vector<double> cdf(vocab);
  double total = 0;
  for (std::size_t r = 0; r < vocab; ++r) cdf[r] = total += 1.0 / static_cast<double>(r + 1);
  std::vector<Tokens> out(count);
  for (auto& s : out) {
    const std::size_t len = 6 + rng.below(13);
    for (std::size_t i = 0; i < len; ++i) {
      const double u = rng.uniform() * total;
      std::size_t lo = 0, hi = vocab - 1;
      while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (cdf[mid] < u) lo = mid + 1; else hi = mid;
      }
      s.push_back(words[lo]);
    }
  }
  return out;
}

inline std::vector<SentencePair> make_pairs(std::size_t count, std::size_t vocab, std::uint64_t seed) {
  const auto src = make_sentences(count, vocab, seed);
  const auto tgt = make_sentences(count, vocab, seed + 1);
  std::vector<SentencePair> pairs(count);
  for (std::size_t i = 0; i < count; ++i) pairs[i] = {src[i], tgt[i]};
  return pairs;
}

}  // namespace acceptkit::bench
