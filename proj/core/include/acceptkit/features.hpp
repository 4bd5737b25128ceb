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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "acceptkit/corpus.hpp"
#include "acceptkit/ibm1.hpp"
#include "acceptkit/lm.hpp"
#include "acceptkit/translate.hpp"

namespace acceptkit {

// n-gram frequencies of a corpus (no sentence padding) with quartile
// thresholds over the type-frequency distribution. With the m type
// frequencies sorted ascending as f(1..m), threshold k = f(ceil(k*m/4)).
// An n-gram of frequency c is in the lowest quartile q with c <= threshold q
// (ties go to the lower quartile), Q4 otherwise.
class NgramQuartiles {
 public:
  static NgramQuartiles build(std::span<const Tokens> corpus, std::size_t n);

  std::size_t n() const { return n_; }
  const std::array<std::uint64_t, 3>& thresholds() const { return thresholds_; }
  std::uint64_t count(std::span<const std::string> ngram) const;
  // 1..4, or 0 for an n-gram absent from the corpus.
  int quartile(std::span<const std::string> ngram) const;
  int quartile_of_count(std::uint64_t count) const;
  std::size_t num_types() const { return counts_.size(); }

  const std::unordered_map<std::string, std::uint64_t>& counts() const { return counts_; }
  static NgramQuartiles from_counts(std::size_t n, std::unordered_map<std::string, std::uint64_t> counts);

 private:
  std::size_t n_ = 0;
  std::unordered_map<std::string, std::uint64_t> counts_;  // tokens joined by ' '
  std::array<std::uint64_t, 3> thresholds_{};
};

NgramQuartiles quartile_table(std::span<const Tokens> corpus, std::size_t n);

// Quartile tables for n = 1, 2, 3 of the source corpus; the unigram table
// doubles as the source unigram counts.
struct SourceNgramStats {
  std::array<NgramQuartiles, 3> by_order;

  static SourceNgramStats build(std::span<const Tokens> source_corpus);
  const NgramQuartiles& unigrams() const { return by_order[0]; }

  // "#ngrams v1 [extra]" then "n<TAB>w1 ... wn<TAB>count" lines.
  std::string to_text(std::string_view header_extra = {}) const;
  static SourceNgramStats from_text(std::string_view text, const std::string& origin);
  void save(const std::filesystem::path& path, std::string_view header_extra = {}) const;
  static SourceNgramStats load(const std::filesystem::path& path);
};

inline constexpr std::size_t kNumFeatures = 17;
using FeatureVector17 = std::array<double, kNumFeatures>;

// Column names f1..f17.
const std::array<std::string, kNumFeatures>& feature_names();

struct FeatureResources {
  const NgramLm* source_lm = nullptr;
  const NgramLm* target_lm = nullptr;
  const SourceNgramStats* source_stats = nullptr;
  const LexTable* lex = nullptr;
};

// The 17 baseline black-box features of a (source, mt) pair:
//   f1  source tokens              f2  target tokens
//   f3  mean source token length in characters
//   f4  source LM log-prob (ln)    f5  target LM log-prob (ln)
//   f6  target type/token ratio (0 for an empty target)
//   f7  mean over source words of #{f : t(f|w) > 0.2}
//   f8  mean over source words of #{f : t(f|w) > 0.01} / freq(w); words
//       unseen in the source corpus contribute 0
//   f9/f10   fraction of source unigrams in Q1 / Q4
//   f11/f12  same for bigrams, f13/f14 same for trigrams; the fractions are
//            over the sentence's n-grams that occur in the corpus (0 if none)
//   f15 fraction of source words seen in the source corpus
//   f16 source punctuation tokens  f17 target punctuation tokens
FeatureVector17 extract_features17(const TranslationRecord& record, const FeatureResources& resources);
FeatureVector17 extract_features17(const Tokens& source, const Tokens& mt, const FeatureResources& resources);

// TSV with header "f1 ... f17 label"; values in shortest round-trip form.
std::string features_to_tsv(std::span<const FeatureVector17> rows, std::span<const int> labels);
struct FeatureTable {
  std::vector<FeatureVector17> rows;
  std::vector<int> labels;
};
FeatureTable features_from_tsv(std::string_view text, const std::string& origin);

}  // namespace acceptkit
