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

#include "acceptkit/vocab.hpp"

#include <algorithm>

#include "acceptkit/error.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit {

Vocab::Vocab() : Vocab(std::span<const std::string>{}) {}

Vocab::Vocab(std::span<const std::string> tokens) {
  token_of_.reserve(tokens.size() + kReserved);
  token_of_.emplace_back(kPadToken);
  token_of_.emplace_back(kUnkToken);
  token_of_.insert(token_of_.end(), tokens.begin(), tokens.end());
  for (std::size_t i = 0; i < token_of_.size(); ++i) {
    if (!id_of_.try_emplace(token_of_[i], static_cast<int>(i)).second) {
      throw InvalidArgument("vocab: duplicate token '" + token_of_[i] + "'");
    }
  }
}

int Vocab::id_of(std::string_view token) const {
  const auto it = id_of_.find(std::string(token));
  return it == id_of_.end() ? kUnk : it->second;
}

const std::string& Vocab::token_of(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= token_of_.size()) {
    throw InvalidArgument("vocab: id " + std::to_string(id) + " out of range");
  }
  return token_of_[static_cast<std::size_t>(id)];
}

bool Vocab::contains(std::string_view token) const { return id_of_.contains(std::string(token)); }

std::vector<int> Vocab::encode(std::span<const std::string> tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(id_of(t));
  return ids;
}

Tokens Vocab::decode(std::span<const int> ids) const {
  Tokens out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(token_of(id));
  return out;
}

Vocab build_vocab(std::span<const Tokens> corpus, std::size_t max_size) {
  if (max_size < 1) throw InvalidArgument("build_vocab: max_size must be >= 1");
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& s : corpus) {
    for (const auto& t : s) ++freq[t];
  }
  if (freq.empty()) throw EmptyCorpusError("build_vocab: empty corpus");
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::vector<std::string> kept;
  for (auto& [token, count] : ranked) {
    if (kept.size() == max_size) break;
    if (token == Vocab::kPadToken || token == Vocab::kUnkToken) continue;
    kept.push_back(std::move(token));
  }
  return Vocab(kept);
}

std::string vocab_to_text(const Vocab& vocab) {
  std::string out;
  for (const auto& t : vocab.entries()) {
    out += t;
    out += '\n';
  }
  return out;
}

Vocab vocab_from_text(std::string_view text, const std::string& origin) {
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) throw ParseError(origin, i + 1, "empty vocabulary entry");
  }
  try {
    return Vocab(lines);
  } catch (const InvalidArgument& e) {
    throw ParseError(origin, 0, e.what());
  }
}

void save_vocab(const Vocab& vocab, const std::filesystem::path& path) {
  write_file_atomic(path, vocab_to_text(vocab));
}

Vocab load_vocab(const std::filesystem::path& path) {
  return vocab_from_text(read_file(path), path.string());
}

}  // namespace acceptkit
