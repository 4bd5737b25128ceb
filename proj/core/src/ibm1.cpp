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

#include "acceptkit/ibm1.hpp"

#include <cmath>

#include <fmt/format.h>

#include "acceptkit/error.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit {

double LexTable::prob(std::string_view source, std::string_view target) const {
  const Row* r = row(source);
  if (!r) return 0.0;
  const auto it = r->find(std::string(target));
  return it == r->end() ? 0.0 : it->second;
}

std::size_t LexTable::count_above(std::string_view source, double threshold) const {
  const Row* r = row(source);
  if (!r) return 0;
  std::size_t n = 0;
  for (const auto& [t, p] : *r) n += p > threshold ? 1 : 0;
  return n;
}

const LexTable::Row* LexTable::row(std::string_view source) const {
  const auto it = rows_.find(std::string(source));
  return it == rows_.end() ? nullptr : &it->second;
}

std::string LexTable::to_text(std::string_view header_extra) const {
  std::map<std::string, std::map<std::string, double>> sorted;
  for (const auto& [s, r] : rows_) sorted[s].insert(r.begin(), r.end());
  std::string out = "#lex v1";
  if (!header_extra.empty()) out += fmt::format(" {}", header_extra);
  out += '\n';
  for (const auto& [s, r] : sorted) {
    for (const auto& [t, p] : r) out += fmt::format("{}\t{}\t{}\n", s, t, format_double(p));
  }
  return out;
}

LexTable LexTable::from_text(std::string_view text, const std::string& origin) {
  const auto lines = split_lines(text);
  if (lines.empty() || (lines[0] != "#lex v1" && !lines[0].starts_with("#lex v1 "))) throw ParseError(origin, 1, "expected '#lex v1' header");
  LexTable table;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cols = split(lines[i], '\t');
    if (cols.size() != 3) throw ParseError(origin, i + 1, "expected 'source<TAB>target<TAB>prob'");
    try {
      table.set(std::string(cols[0]), std::string(cols[1]), parse_double(cols[2], "probability"));
    } catch (const InvalidArgument& e) {
      throw ParseError(origin, i + 1, e.what());
    }
  }
  return table;
}

void LexTable::save(const std::filesystem::path& path, std::string_view header_extra) const {
  write_file_atomic(path, to_text(header_extra));
}

LexTable LexTable::load(const std::filesystem::path& path) { return from_text(read_file(path), path.string()); }

Ibm1Result ibm1_train(std::span<const SentencePair> pairs, std::size_t iterations) {
  if (pairs.empty()) throw EmptyCorpusError("ibm1_train: empty corpus");
  if (iterations < 1) throw InvalidArgument("ibm1_train: iterations must be >= 1");

  std::unordered_map<std::string, int> src_ids, tgt_ids;
  std::vector<std::string> src_words, tgt_words;
  const auto intern = [](auto& ids, auto& words, const std::string& w) {
    const auto [it, inserted] = ids.try_emplace(w, static_cast<int>(words.size()));
    if (inserted) words.push_back(w);
    return it->second;
  };
  intern(src_ids, src_words, std::string(kNullWord));

  // Parameter index for every co-occurring (e, f); per sentence an
  // (l+1) x m grid of indices, row 0 being the null word.
  std::unordered_map<std::uint64_t, int> param_of;
  std::vector<int> param_src;
  struct Sentence {
    std::size_t rows;
    std::size_t cols;
    std::vector<int> params;
  };
  std::vector<Sentence> sentences;
  sentences.reserve(pairs.size());
  for (const auto& p : pairs) {
    std::vector<int> e{0};
    for (const auto& w : p.source) e.push_back(intern(src_ids, src_words, w));
    std::vector<int> f;
    for (const auto& w : p.reference) f.push_back(intern(tgt_ids, tgt_words, w));
    Sentence s{e.size(), f.size(), {}};
    s.params.reserve(e.size() * f.size());
    for (int ei : e) {
      for (int fj : f) {
        const std::uint64_t key = (static_cast<std::uint64_t>(ei) << 32) | static_cast<std::uint32_t>(fj);
        const auto [it, inserted] = param_of.try_emplace(key, static_cast<int>(param_src.size()));
        if (inserted) param_src.push_back(ei);
        s.params.push_back(it->second);
      }
    }
    sentences.push_back(std::move(s));
  }

  std::vector<double> row_size(src_words.size(), 0.0);
  for (int e : param_src) row_size[static_cast<std::size_t>(e)] += 1.0;
  std::vector<double> t(param_src.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = 1.0 / row_size[static_cast<std::size_t>(param_src[k])];

  std::vector<double> counts(t.size());
  std::vector<double> totals(src_words.size());
  Ibm1Result result;
  // One E-step pass: accumulates expected counts for t and returns the
  // log-likelihood of t.
  const auto e_step = [&](bool accumulate) {
    double ll = 0.0;
    for (const auto& s : sentences) {
      for (std::size_t j = 0; j < s.cols; ++j) {
        double denom = 0.0;
        for (std::size_t i = 0; i < s.rows; ++i) denom += t[static_cast<std::size_t>(s.params[i * s.cols + j])];
        ll += std::log(denom / static_cast<double>(s.rows));
        if (!accumulate) continue;
        for (std::size_t i = 0; i < s.rows; ++i) {
          const auto k = static_cast<std::size_t>(s.params[i * s.cols + j]);
          counts[k] += t[k] / denom;
        }
      }
    }
    return ll;
  };
  for (std::size_t it = 0; it < iterations; ++it) {
    std::fill(counts.begin(), counts.end(), 0.0);
    std::fill(totals.begin(), totals.end(), 0.0);
    result.log_likelihood.push_back(e_step(true));
    for (std::size_t k = 0; k < counts.size(); ++k) totals[static_cast<std::size_t>(param_src[k])] += counts[k];
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = counts[k] / totals[static_cast<std::size_t>(param_src[k])];
  }
  result.log_likelihood.push_back(e_step(false));

  for (const auto& [key, k] : param_of) {
    const auto e = static_cast<std::size_t>(key >> 32);
    const auto f = static_cast<std::size_t>(key & 0xFFFFFFFFu);
    result.table.set(src_words[e], tgt_words[f], t[static_cast<std::size_t>(k)]);
  }
  return result;
}

}  // namespace acceptkit
