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
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "acceptkit/corpus.hpp"

namespace acceptkit {

// Interpolated Kneser-Ney n-gram model with one fixed absolute discount.
//
// Sentences are padded with order-1 "<s>" and one "</s>". The highest order
// uses raw counts, lower orders use continuation counts (number of distinct
// one-word left extensions), and the unigram level is add-one smoothed over
// the predictable vocabulary W = training words + "</s>" + "<unk>":
//
//   P_1(w)     = (N(w) + 1) / (sum_v N(v) + |W|)
//   P_k(w | h) = max(c(h w) - D, 0) / c(h .) + D * T(h .) / c(h .) * P_{k-1}(w | h')
//
// where h' drops the oldest word of h and T(h .) is the number of distinct
// continuations of h. Unseen contexts back off to P_{k-1} directly.
class NgramLm {
 public:
  static constexpr std::string_view kBos = "<s>";
  static constexpr std::string_view kEos = "</s>";
  static constexpr std::string_view kUnk = "<unk>";

  static NgramLm train(std::span<const Tokens> corpus, std::size_t order = 3, double discount = 0.75);

  std::size_t order() const { return order_; }
  double discount() const { return discount_; }

  // P(word | context). Only the last order-1 context words are used; a
  // shorter context selects the corresponding lower-order distribution.
  // Unknown words map to "<unk>".
  double prob(std::span<const std::string> context, std::string_view word) const;

  // Natural-log probability of the sentence followed by "</s>", starting
  // from a context of order-1 "<s>".
  double logprob(const Tokens& sentence) const;

  // The outcome space W, in id order.
  std::vector<std::string> predictable_words() const;
  bool known(std::string_view word) const { return ids_.contains(std::string(word)); }

  // "#lm v1 order=<n> discount=<D> [extra]" then "w1 ... wn<TAB>count" per line.
  std::string to_text(std::string_view header_extra = {}) const;
  static NgramLm from_text(std::string_view text, const std::string& origin);
  void save(const std::filesystem::path& path, std::string_view header_extra = {}) const;
  static NgramLm load(const std::filesystem::path& path);

 private:
  struct ContextStat {
    double total = 0;
    double types = 0;
  };
  struct Level {
    std::unordered_map<std::string, double> counts;       // k-gram -> count
    std::unordered_map<std::string, ContextStat> contexts;  // (k-1)-gram -> stats
  };

  NgramLm(std::size_t order, double discount);
  int intern(std::string_view word);
  int id_or_unk(std::string_view word) const;
  void finalize(std::unordered_map<std::string, double> top_counts);
  double prob_ids(std::span<const int> context, int word) const;

  std::size_t order_;
  double discount_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> ids_;
  std::vector<Level> levels_;  // levels_[k-1] holds order k
  double unigram_total_ = 0;
  double outcome_count_ = 0;
};

}  // namespace acceptkit
