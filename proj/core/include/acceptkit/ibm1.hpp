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

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "acceptkit/corpus.hpp"

namespace acceptkit {

// Source-side empty word that may generate any target word.
inline constexpr std::string_view kNullWord = "<null>";

// Lexical translation table t(target | source).
class LexTable {
 public:
  using Row = std::unordered_map<std::string, double>;

  double prob(std::string_view source, std::string_view target) const;
  // Number of target words with t(target | source) > threshold.
  std::size_t count_above(std::string_view source, double threshold) const;
  const Row* row(std::string_view source) const;
  void set(std::string source, std::string target, double p) { rows_[std::move(source)][std::move(target)] = p; }

  std::size_t num_rows() const { return rows_.size(); }
  const std::unordered_map<std::string, Row>& rows() const { return rows_; }

  // "#lex v1 [extra]" then "source<TAB>target<TAB>prob" lines, sorted.
  std::string to_text(std::string_view header_extra = {}) const;
  static LexTable from_text(std::string_view text, const std::string& origin);
  void save(const std::filesystem::path& path, std::string_view header_extra = {}) const;
  static LexTable load(const std::filesystem::path& path);

 private:
  std::unordered_map<std::string, Row> rows_;
};

struct Ibm1Result {
  LexTable table;
  // Corpus log-likelihood sum_s sum_j ln( sum_i t(f_j | e_i) / (l + 1) ) of
  // the initial parameters and after every iteration (size iterations + 1).
  std::vector<double> log_likelihood;
};

// IBM Model 1 EM, source = pair.source (plus kNullWord), target =
// pair.reference. Starts from t(f|e) uniform over the target words that
// co-occur with e.
Ibm1Result ibm1_train(std::span<const SentencePair> pairs, std::size_t iterations);

}  // namespace acceptkit
