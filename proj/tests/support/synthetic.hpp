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
#include <string>
#include <unordered_map>
#include <vector>

#include "acceptkit/corpus.hpp"
#include "acceptkit/downstream.hpp"

namespace acceptkit::testing {

// Parallel corpus over two invented languages with a word-for-word
// bijection between them. A fixed subset of target words is subjective; the
// substitution lexicon maps each subjective word to a neutral one and some
// neutral words to subjective ones, so noisy MT can flip the subjectivity
// label in both directions.
struct SyntheticConfig {
  std::size_t pairs = 1000;
  std::size_t vocab_size = 1500;
  std::size_t min_len = 6;
  std::size_t max_len = 18;
  std::size_t subjective_every = 20;  // word ranks r with r % every == 3
  std::size_t introducing_every = 20;  // neutral words that substitute into subjective ones
  double zipf_exponent = 1.0;
  std::uint64_t seed = 1;
};

struct SyntheticCorpus {
  std::vector<SentencePair> pairs;
  Lexicon subjectivity;
  std::unordered_map<std::string, std::string> substitutions;
  std::vector<std::string> source_words;  // index = rank
  std::vector<std::string> target_words;
};

SyntheticCorpus make_synthetic_corpus(const SyntheticConfig& config);

}  // namespace acceptkit::testing
