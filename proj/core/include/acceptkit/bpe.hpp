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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "acceptkit/corpus.hpp"

namespace acceptkit {

// Appended to the last character of every word before merging.
inline constexpr std::string_view kEndOfWord = "</w>";

struct BpeModel {
  std::vector<std::pair<std::string, std::string>> merges;

  std::size_t num_merges() const { return merges.size(); }
  friend bool operator==(const BpeModel&, const BpeModel&) = default;
};

// Greedy merge learning. Each step merges the most frequent adjacent symbol
// pair within words (ties: lexicographically smallest (left, right)). Stops
// after `num_merges` steps or when no pair occurs at least twice.
BpeModel bpe_learn(std::span<const Tokens> corpus, std::size_t num_merges);

// Applies a learned model. Holds the merge ranks; immutable after
// construction and safe to share between threads.
class BpeCodec {
 public:
  explicit BpeCodec(BpeModel model);

  const BpeModel& model() const { return model_; }

  // Character split (last character carries kEndOfWord), then merges applied
  // in learned order.
  Tokens segment_word(std::string_view word) const;
  Tokens apply(const Tokens& tokens) const;

 private:
  BpeModel model_;
  std::unordered_map<std::string, std::size_t> rank_;  // "left right" -> rank
};

Tokens bpe_apply(const BpeModel& model, const Tokens& tokens);

// Inverse of apply: concatenates subwords up to and including each one that
// carries kEndOfWord, stripping the marker. A trailing unterminated run is
// emitted as a final token.
Tokens bpe_desegment(const Tokens& subwords);

// "#bpe v1 <num_merges>[ key=value...]" header, then one "left right" per line.
std::string bpe_to_text(const BpeModel& model, std::string_view header_extra = {});
BpeModel bpe_from_text(std::string_view text, const std::string& origin);
void save_bpe(const BpeModel& model, const std::filesystem::path& path,
              std::string_view header_extra = {});
BpeModel load_bpe(const std::filesystem::path& path);

}  // namespace acceptkit
