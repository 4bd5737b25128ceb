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

#include "acceptkit/lm.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

#include <fmt/format.h>

#include "acceptkit/error.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit {
namespace {

std::string pack(std::span<const int> ids) {
  std::string key(ids.size() * sizeof(int), '\0');
  std::memcpy(key.data(), ids.data(), key.size());
  return key;
}

std::vector<int> unpack(const std::string& key) {
  std::vector<int> ids(key.size() / sizeof(int));
  std::memcpy(ids.data(), key.data(), key.size());
  return ids;
}

}  // namespace

NgramLm::NgramLm(std::size_t order, double discount) : order_(order), discount_(discount) {
  if (order_ < 1) throw InvalidArgument("NgramLm: order must be >= 1");
  if (!(discount_ > 0.0 && discount_ < 1.0)) throw InvalidArgument("NgramLm: discount must be in (0,1)");
  intern(kBos);
  intern(kEos);
  intern(kUnk);
}

int NgramLm::intern(std::string_view word) {
  const auto [it, inserted] = ids_.try_emplace(std::string(word), static_cast<int>(words_.size()));
  if (inserted) words_.emplace_back(word);
  return it->second;
}

int NgramLm::id_or_unk(std::string_view word) const {
  const auto it = ids_.find(std::string(word));
  return it == ids_.end() ? ids_.at(std::string(kUnk)) : it->second;
}

NgramLm NgramLm::train(std::span<const Tokens> corpus, std::size_t order, double discount) {
  if (corpus.empty()) throw EmptyCorpusError("lm_train: empty corpus");
  NgramLm lm(order, discount);
  std::unordered_map<std::string, double> top;
  std::vector<int> padded;
  const int bos = lm.ids_.at(std::string(kBos));
  const int eos = lm.ids_.at(std::string(kEos));
  for (const auto& sentence : corpus) {
    padded.assign(order - 1, bos);
    for (const auto& w : sentence) padded.push_back(lm.intern(w));
    padded.push_back(eos);
    for (std::size_t j = order - 1; j < padded.size(); ++j) {
      top[pack(std::span<const int>(padded).subspan(j + 1 - order, order))] += 1.0;
    }
  }
  lm.finalize(std::move(top));
  return lm;
}

void NgramLm::finalize(std::unordered_map<std::string, double> top_counts) {
  levels_.assign(order_, Level{});
  levels_[order_ - 1].counts = std::move(top_counts);
  for (std::size_t k = order_ - 1; k >= 1; --k) {
    auto& lower = levels_[k - 1].counts;
    for (const auto& [key, count] : levels_[k].counts) {
      lower[key.substr(sizeof(int))] += 1.0;  // drop the oldest word
    }
  }
  for (std::size_t k = 2; k <= order_; ++k) {
    auto& level = levels_[k - 1];
    for (const auto& [key, count] : level.counts) {
      auto& stat = level.contexts[key.substr(0, key.size() - sizeof(int))];
      stat.total += count;
      stat.types += 1.0;
    }
  }
  unigram_total_ = 0;
  for (const auto& [key, count] : levels_[0].counts) unigram_total_ += count;
  outcome_count_ = static_cast<double>(words_.size() - 1);  // every word but <s>
}

double NgramLm::prob_ids(std::span<const int> context, int word) const {
  const std::size_t k = std::min(context.size(), order_ - 1) + 1;
  context = context.subspan(context.size() - (k - 1));
  if (k == 1) {
    const auto it = levels_[0].counts.find(pack(std::span<const int>(&word, 1)));
    const double c = it == levels_[0].counts.end() ? 0.0 : it->second;
    return (c + 1.0) / (unigram_total_ + outcome_count_);
  }
  const double lower = prob_ids(context.subspan(1), word);
  const Level& level = levels_[k - 1];
  const std::string ctx_key = pack(context);
  const auto stat = level.contexts.find(ctx_key);
  if (stat == level.contexts.end()) return lower;
  std::string key = ctx_key;
  key.append(reinterpret_cast<const char*>(&word), sizeof(int));
  const auto it = level.counts.find(key);
  const double c = it == level.counts.end() ? 0.0 : it->second;
  const double total = stat->second.total;
  return std::max(c - discount_, 0.0) / total + discount_ * stat->second.types / total * lower;
}

double NgramLm::prob(std::span<const std::string> context, std::string_view word) const {
  std::vector<int> ctx;
  ctx.reserve(context.size());
  for (const auto& w : context) ctx.push_back(id_or_unk(w));
  return prob_ids(ctx, id_or_unk(word));
}

double NgramLm::logprob(const Tokens& sentence) const {
  std::vector<int> ids(order_ - 1, ids_.at(std::string(kBos)));
  double total = 0.0;
  const auto score = [&](int w) {
    total += std::log(prob_ids(std::span<const int>(ids).subspan(ids.size() - (order_ - 1)), w));
    ids.push_back(w);
  };
  for (const auto& w : sentence) score(id_or_unk(w));
  score(ids_.at(std::string(kEos)));
  return total;
}

std::vector<std::string> NgramLm::predictable_words() const {
  std::vector<std::string> out;
  for (const auto& w : words_) {
    if (w != kBos) out.push_back(w);
  }
  return out;
}

std::string NgramLm::to_text(std::string_view header_extra) const {
  std::string out = fmt::format("#lm v1 order={} discount={}", order_, format_double(discount_));
  if (!header_extra.empty()) out += fmt::format(" {}", header_extra);
  out += '\n';
  std::map<std::string, double> sorted;
  for (const auto& [key, count] : levels_[order_ - 1].counts) {
    std::string words;
    for (int id : unpack(key)) {
      if (!words.empty()) words += ' ';
      words += words_[static_cast<std::size_t>(id)];
    }
    sorted[words] = count;
  }
  for (const auto& [words, count] : sorted) out += fmt::format("{}\t{}\n", words, format_double(count));
  return out;
}

NgramLm NgramLm::from_text(std::string_view text, const std::string& origin) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(origin, 1, "missing '#lm v1' header");
  std::size_t order = 0;
  double discount = 0;
  {
    const auto parts = split(lines[0], ' ');
    if (parts.size() < 4 || parts[0] != "#lm" || parts[1] != "v1" || !parts[2].starts_with("order=") ||
        !parts[3].starts_with("discount=")) {
      throw ParseError(origin, 1, "expected '#lm v1 order=<n> discount=<D>'");
    }
    order = static_cast<std::size_t>(parse_int(parts[2].substr(6), "order"));
    discount = parse_double(parts[3].substr(9), "discount");
  }
  NgramLm lm(order, discount);
  std::unordered_map<std::string, double> top;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cols = split(lines[i], '\t');
    if (cols.size() != 2) throw ParseError(origin, i + 1, "expected '<n-gram><TAB><count>'");
    const auto words = split(cols[0], ' ');
    if (words.size() != order) throw ParseError(origin, i + 1, "n-gram length does not match order");
    std::vector<int> ids;
    for (auto w : words) ids.push_back(lm.intern(w));
    try {
      top[pack(ids)] = parse_double(cols[1], "count");
    } catch (const InvalidArgument& e) {
      throw ParseError(origin, i + 1, e.what());
    }
  }
  if (top.empty()) throw ParseError(origin, 0, "language model has no n-grams");
  lm.finalize(std::move(top));
  return lm;
}

void NgramLm::save(const std::filesystem::path& path, std::string_view header_extra) const {
  write_file_atomic(path, to_text(header_extra));
}

NgramLm NgramLm::load(const std::filesystem::path& path) { return from_text(read_file(path), path.string()); }

}  // namespace acceptkit
