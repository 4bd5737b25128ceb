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

// Dense token <-> id mapping with two reserved ids.
class Vocab {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kReserved = 2;
  static constexpr std::string_view kPadToken = "<pad>";
  static constexpr std::string_view kUnkToken = "<unk>";

  Vocab();
  // `tokens` are assigned ids 2, 3, ... in order; duplicates are rejected.
  explicit Vocab(std::span<const std::string> tokens);

  std::size_t size() const { return token_of_.size(); }
  int id_of(std::string_view token) const;  // kUnk when absent
  const std::string& token_of(int id) const;
  bool contains(std::string_view token) const;

  std::vector<int> encode(std::span<const std::string> tokens) const;
  Tokens decode(std::span<const int> ids) const;

  // Tokens with ids >= kReserved, in id order.
  std::span<const std::string> entries() const {
    return std::span<const std::string>(token_of_).subspan(kReserved);
  }

  friend bool operator==(const Vocab& a, const Vocab& b) { return a.token_of_ == b.token_of_; }

 private:
  std::vector<std::string> token_of_;
  std::unordered_map<std::string, int> id_of_;
};

// Keeps the `max_size` most frequent subwords (ties: lexicographic).
Vocab build_vocab(std::span<const Tokens> corpus, std::size_t max_size);

// One token per line; line k (0-based) holds id k + 2.
std::string vocab_to_text(const Vocab& vocab);
Vocab vocab_from_text(std::string_view text, const std::string& origin);
void save_vocab(const Vocab& vocab, const std::filesystem::path& path);
Vocab load_vocab(const std::filesystem::path& path);

}  // namespace acceptkit
