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

#include "acceptkit/bpe.hpp"

#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "acceptkit/error.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit {
namespace {

using PairKey = std::uint64_t;

PairKey pair_key(int left, int right) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(left)) << 32) |
         static_cast<std::uint32_t>(right);
}

struct Word {
  std::vector<int> symbols;
  std::int64_t freq = 0;
};

class MergeLearner {
 public:
  explicit MergeLearner(std::span<const Tokens> corpus) : queue_(CandidateLess{&names_}) {
    std::map<std::string, std::int64_t> word_freq;
    for (const auto& sentence : corpus) {
      for (const auto& token : sentence) ++word_freq[token];
    }
    for (const auto& [text, freq] : word_freq) {
      Word word;
      word.freq = freq;
      const auto chars = utf8_chars(text);
      for (std::size_t i = 0; i < chars.size(); ++i) {
        std::string sym(chars[i]);
        if (i + 1 == chars.size()) sym += kEndOfWord;
        word.symbols.push_back(intern(sym));
      }
      words_.push_back(std::move(word));
    }
    for (std::size_t w = 0; w < words_.size(); ++w) add_pairs(static_cast<int>(w), +1);
  }

  BpeModel run(std::size_t num_merges) {
    BpeModel model;
    std::vector<std::size_t> visited(words_.size(), 0);
    for (std::size_t step = 1; step <= num_merges && !queue_.empty(); ++step) {
      const Candidate best = *queue_.begin();
      if (best.count < 2) break;
      model.merges.emplace_back(names_[best.left], names_[best.right]);
      const int merged = intern(names_[best.left] + names_[best.right]);
      const PairKey key = pair_key(best.left, best.right);
      const std::vector<int> touched = std::move(where_[key]);
      where_.erase(key);
      for (int w : touched) {
        if (visited[w] == step) continue;
        visited[w] = step;
        if (!contains(words_[w].symbols, best.left, best.right)) continue;
        add_pairs(w, -1);
        merge_in_word(words_[w].symbols, best.left, best.right, merged);
        add_pairs(w, +1);
      }
    }
    return model;
  }

 private:
  struct Candidate {
    std::int64_t count;
    int left;
    int right;
  };
  struct CandidateLess {
    const std::vector<std::string>* names;
    bool operator()(const Candidate& a, const Candidate& b) const {
      if (a.count != b.count) return a.count > b.count;
      const int l = (*names)[a.left].compare((*names)[b.left]);
      if (l != 0) return l < 0;
      return (*names)[a.right] < (*names)[b.right];
    }
  };

  int intern(const std::string& sym) {
    const auto [it, inserted] = ids_.try_emplace(sym, static_cast<int>(names_.size()));
    if (inserted) names_.push_back(sym);
    return it->second;
  }

  static bool contains(const std::vector<int>& s, int left, int right) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == left && s[i + 1] == right) return true;
    }
    return false;
  }

  static void merge_in_word(std::vector<int>& s, int left, int right, int merged) {
    std::vector<int> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
      if (i + 1 < s.size() && s[i] == left && s[i + 1] == right) {
        out.push_back(merged);
        i += 2;
      } else {
        out.push_back(s[i]);
        ++i;
      }
    }
    s = std::move(out);
  }

  void change(int left, int right, std::int64_t delta) {
    const PairKey key = pair_key(left, right);
    auto it = counts_.find(key);
    const std::int64_t old = it == counts_.end() ? 0 : it->second;
    if (old > 0) queue_.erase(Candidate{old, left, right});
    const std::int64_t now = old + delta;
    if (now > 0) {
      queue_.insert(Candidate{now, left, right});
      counts_[key] = now;
    } else if (it != counts_.end()) {
      counts_.erase(it);
    }
  }

  void add_pairs(int w, int sign) {
    const Word& word = words_[w];
    for (std::size_t i = 0; i + 1 < word.symbols.size(); ++i) {
      const int l = word.symbols[i];
      const int r = word.symbols[i + 1];
      change(l, r, sign * word.freq);
      if (sign > 0) where_[pair_key(l, r)].push_back(w);
    }
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
  std::vector<Word> words_;
  std::unordered_map<PairKey, std::int64_t> counts_;
  std::unordered_map<PairKey, std::vector<int>> where_;
  std::set<Candidate, CandidateLess> queue_;
};

std::string rank_key(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left);
  key += ' ';
  key.append(right);
  return key;
}

}  // namespace

BpeModel bpe_learn(std::span<const Tokens> corpus, std::size_t num_merges) {
  bool any = false;
  for (const auto& s : corpus) any = any || !s.empty();
  if (!any) throw EmptyCorpusError("bpe_learn: empty corpus");
  return MergeLearner(corpus).run(num_merges);
}

BpeCodec::BpeCodec(BpeModel model) : model_(std::move(model)) {
  for (std::size_t i = 0; i < model_.merges.size(); ++i) {
    rank_.try_emplace(rank_key(model_.merges[i].first, model_.merges[i].second), i);
  }
}

Tokens BpeCodec::segment_word(std::string_view word) const {
  Tokens symbols;
  const auto chars = utf8_chars(word);
  symbols.reserve(chars.size());
  for (std::size_t i = 0; i < chars.size(); ++i) {
    symbols.emplace_back(chars[i]);
    if (i + 1 == chars.size()) symbols.back() += kEndOfWord;
  }
  while (symbols.size() > 1) {
    std::size_t best_rank = rank_.size();
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      const auto it = rank_.find(rank_key(symbols[i], symbols[i + 1]));
      if (it != rank_.end() && it->second < best_rank) best_rank = it->second;
    }
    if (best_rank == rank_.size()) break;
    const auto& [left, right] = model_.merges[best_rank];
    Tokens merged;
    merged.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size();) {
      if (i + 1 < symbols.size() && symbols[i] == left && symbols[i + 1] == right) {
        merged.push_back(symbols[i] + symbols[i + 1]);
        i += 2;
      } else {
        merged.push_back(std::move(symbols[i]));
        ++i;
      }
    }
    symbols = std::move(merged);
  }
  return symbols;
}

Tokens BpeCodec::apply(const Tokens& tokens) const {
  Tokens out;
  for (const auto& token : tokens) {
    for (auto& sub : segment_word(token)) out.push_back(std::move(sub));
  }
  return out;
}

Tokens bpe_apply(const BpeModel& model, const Tokens& tokens) {
  return BpeCodec(model).apply(tokens);
}

Tokens bpe_desegment(const Tokens& subwords) {
  Tokens tokens;
  std::string current;
  bool open = false;
  for (const auto& sub : subwords) {
    open = true;
    if (sub.size() >= kEndOfWord.size() &&
        std::string_view(sub).substr(sub.size() - kEndOfWord.size()) == kEndOfWord) {
      current.append(sub, 0, sub.size() - kEndOfWord.size());
      tokens.push_back(std::move(current));
      current.clear();
      open = false;
    } else {
      current += sub;
    }
  }
  if (open) tokens.push_back(std::move(current));
  return tokens;
}

std::string bpe_to_text(const BpeModel& model, std::string_view header_extra) {
  std::string out = fmt::format("#bpe v1 {}", model.merges.size());
  if (!header_extra.empty()) {
    out += ' ';
    out.append(header_extra);
  }
  out += '\n';
  for (const auto& [l, r] : model.merges) out += fmt::format("{} {}\n", l, r);
  return out;
}

BpeModel bpe_from_text(std::string_view text, const std::string& origin) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(origin, 1, "missing '#bpe v1' header");
  const auto header = split(lines[0], ' ');
  if (header.size() < 3 || header[0] != "#bpe" || header[1] != "v1") {
    throw ParseError(origin, 1, "expected header '#bpe v1 <num_merges>'");
  }
  const long long declared = parse_int(header[2], "merge count");
  BpeModel model;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto parts = split(lines[i], ' ');
    if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
      throw ParseError(origin, i + 1, "expected 'left right'");
    }
    model.merges.emplace_back(parts[0], parts[1]);
  }
  if (static_cast<long long>(model.merges.size()) != declared) {
    throw ParseError(origin, 1, fmt::format("header declares {} merges, found {}", declared,
                                            model.merges.size()));
  }
  return model;
}

void save_bpe(const BpeModel& model, const std::filesystem::path& path, std::string_view header_extra) {
  write_file_atomic(path, bpe_to_text(model, header_extra));
}

BpeModel load_bpe(const std::filesystem::path& path) {
  return bpe_from_text(read_file(path), path.string());
}

}  // namespace acceptkit
