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

#include "acceptkit/features.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include <fmt/format.h>

#include "acceptkit/error.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit {

NgramQuartiles NgramQuartiles::from_counts(std::size_t n, std::unordered_map<std::string, std::uint64_t> counts) {
  if (counts.empty()) throw InvalidArgument(fmt::format("quartile table: corpus has no {}-grams", n));
  NgramQuartiles q;
  q.n_ = n;
  q.counts_ = std::move(counts);
  std::vector<std::uint64_t> freqs;
  freqs.reserve(q.counts_.size());
  for (const auto& [k, c] : q.counts_) freqs.push_back(c);
  std::sort(freqs.begin(), freqs.end());
  const std::size_t m = freqs.size();
  for (std::size_t k = 1; k <= 3; ++k) {
    const std::size_t rank = (k * m + 3) / 4;  // ceil(k*m/4), 1-based
    q.thresholds_[k - 1] = freqs[rank - 1];
  }
  return q;
}

NgramQuartiles NgramQuartiles::build(std::span<const Tokens> corpus, std::size_t n) {
  if (n < 1) throw InvalidArgument("quartile table: n must be >= 1");
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& s : corpus) {
    for (std::size_t i = 0; i + n <= s.size(); ++i) {
      ++counts[join(std::span<const std::string>(s).subspan(i, n))];
    }
  }
  return from_counts(n, std::move(counts));
}

std::uint64_t NgramQuartiles::count(std::span<const std::string> ngram) const {
  const auto it = counts_.find(join(ngram));
  return it == counts_.end() ? 0 : it->second;
}

int NgramQuartiles::quartile_of_count(std::uint64_t c) const {
  if (c == 0) return 0;
  for (int k = 0; k < 3; ++k) {
    if (c <= thresholds_[static_cast<std::size_t>(k)]) return k + 1;
  }
  return 4;
}

int NgramQuartiles::quartile(std::span<const std::string> ngram) const { return quartile_of_count(count(ngram)); }

NgramQuartiles quartile_table(std::span<const Tokens> corpus, std::size_t n) { return NgramQuartiles::build(corpus, n); }

SourceNgramStats SourceNgramStats::build(std::span<const Tokens> source_corpus) {
  // An order with no n-grams (one-word sentences only) gets an empty table,
  // which makes its quartile features 0.
  SourceNgramStats stats;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::unordered_map<std::string, std::uint64_t> counts;
    for (const auto& s : source_corpus) {
      for (std::size_t i = 0; i + n <= s.size(); ++i) ++counts[join(std::span<const std::string>(s).subspan(i, n))];
    }
    if (counts.empty() && n == 1) throw EmptyCorpusError("source n-gram statistics: empty corpus");
    stats.by_order[n - 1] = counts.empty() ? NgramQuartiles{} : NgramQuartiles::from_counts(n, std::move(counts));
  }
  return stats;
}

std::string SourceNgramStats::to_text(std::string_view header_extra) const {
  std::string out = "#ngrams v1";
  if (!header_extra.empty()) out += fmt::format(" {}", header_extra);
  out += '\n';
  for (std::size_t n = 1; n <= 3; ++n) {
    std::map<std::string, std::uint64_t> sorted(by_order[n - 1].counts().begin(), by_order[n - 1].counts().end());
    for (const auto& [k, c] : sorted) out += fmt::format("{}\t{}\t{}\n", n, k, c);
  }
  return out;
}

SourceNgramStats SourceNgramStats::from_text(std::string_view text, const std::string& origin) {
  const auto lines = split_lines(text);
  if (lines.empty() || (lines[0] != "#ngrams v1" && !lines[0].starts_with("#ngrams v1 "))) throw ParseError(origin, 1, "expected '#ngrams v1' header");
  std::array<std::unordered_map<std::string, std::uint64_t>, 3> counts;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cols = split(lines[i], '\t');
    if (cols.size() != 3) throw ParseError(origin, i + 1, "expected 'n<TAB>ngram<TAB>count'");
    try {
      const auto n = parse_int(cols[0], "order");
      if (n < 1 || n > 3) throw ParseError(origin, i + 1, "order must be 1..3");
      counts[static_cast<std::size_t>(n - 1)][std::string(cols[1])] =
          static_cast<std::uint64_t>(parse_int(cols[2], "count"));
    } catch (const InvalidArgument& e) {
      throw ParseError(origin, i + 1, e.what());
    }
  }
  if (counts[0].empty()) throw ParseError(origin, 0, "no unigram counts");
  SourceNgramStats stats;
  for (std::size_t n = 1; n <= 3; ++n) {
    if (!counts[n - 1].empty()) stats.by_order[n - 1] = NgramQuartiles::from_counts(n, std::move(counts[n - 1]));
  }
  return stats;
}

void SourceNgramStats::save(const std::filesystem::path& path, std::string_view header_extra) const {
  write_file_atomic(path, to_text(header_extra));
}

SourceNgramStats SourceNgramStats::load(const std::filesystem::path& path) {
  return from_text(read_file(path), path.string());
}

const std::array<std::string, kNumFeatures>& feature_names() {
  static const std::array<std::string, kNumFeatures> names = [] {
    std::array<std::string, kNumFeatures> n;
    for (std::size_t i = 0; i < kNumFeatures; ++i) n[i] = fmt::format("f{}", i + 1);
    return n;
  }();
  return names;
}

namespace {

double count_punctuation(const Tokens& tokens) {
  double n = 0;
  for (const auto& t : tokens) n += is_punctuation_token(t) ? 1.0 : 0.0;
  return n;
}

// Fractions of the sentence's in-corpus n-grams that fall in Q1 and Q4.
std::pair<double, double> quartile_fractions(const Tokens& s, const NgramQuartiles& table) {
  const std::size_t n = table.n();
  if (n == 0) return {0.0, 0.0};
  double seen = 0, q1 = 0, q4 = 0;
  for (std::size_t i = 0; i + n <= s.size(); ++i) {
    const int q = table.quartile(std::span<const std::string>(s).subspan(i, n));
    if (q == 0) continue;
    seen += 1;
    q1 += q == 1 ? 1 : 0;
    q4 += q == 4 ? 1 : 0;
  }
  if (seen == 0) return {0.0, 0.0};
  return {q1 / seen, q4 / seen};
}

}  // namespace

FeatureVector17 extract_features17(const Tokens& source, const Tokens& mt, const FeatureResources& res) {
  if (!res.source_lm || !res.target_lm || !res.source_stats || !res.lex) {
    throw InvalidArgument("extract_features17: incomplete resources");
  }
  FeatureVector17 f{};
  const double ns = static_cast<double>(source.size());
  const double nt = static_cast<double>(mt.size());
  f[0] = ns;
  f[1] = nt;
  if (!source.empty()) {
    double chars = 0;
    for (const auto& w : source) chars += static_cast<double>(utf8_length(w));
    f[2] = chars / ns;
  }
  f[3] = res.source_lm->logprob(source);
  f[4] = res.target_lm->logprob(mt);
  if (!mt.empty()) {
    const std::unordered_set<std::string> types(mt.begin(), mt.end());
    f[5] = static_cast<double>(types.size()) / nt;
  }
  const NgramQuartiles& unigrams = res.source_stats->unigrams();
  if (!source.empty()) {
    double strong = 0, weighted = 0, seen = 0;
    for (const auto& w : source) {
      strong += static_cast<double>(res.lex->count_above(w, 0.2));
      const auto freq = unigrams.count(std::span<const std::string>(&w, 1));
      if (freq > 0) {
        weighted += static_cast<double>(res.lex->count_above(w, 0.01)) / static_cast<double>(freq);
        seen += 1;
      }
    }
    f[6] = strong / ns;
    f[7] = weighted / ns;
    f[14] = seen / ns;
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto [q1, q4] = quartile_fractions(source, res.source_stats->by_order[n - 1]);
    f[8 + 2 * (n - 1)] = q1;
    f[9 + 2 * (n - 1)] = q4;
  }
  f[15] = count_punctuation(source);
  f[16] = count_punctuation(mt);
  return f;
}

FeatureVector17 extract_features17(const TranslationRecord& record, const FeatureResources& resources) {
  return extract_features17(record.source, record.mt, resources);
}

std::string features_to_tsv(std::span<const FeatureVector17> rows, std::span<const int> labels) {
  if (rows.size() != labels.size()) throw InvalidArgument("features_to_tsv: rows and labels differ in length");
  std::string out;
  for (const auto& name : feature_names()) out += name + '\t';
  out += "label\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (double v : rows[i]) out += format_double(v) + '\t';
    out += fmt::format("{}\n", labels[i]);
  }
  return out;
}

FeatureTable features_from_tsv(std::string_view text, const std::string& origin) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(origin, 1, "missing header");
  const auto header = split(lines[0], '\t');
  if (header.size() != kNumFeatures + 1 || header.back() != "label") {
    throw ParseError(origin, 1, "expected header 'f1 ... f17 label'");
  }
  FeatureTable table;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cols = split(lines[i], '\t');
    if (cols.size() != kNumFeatures + 1) throw ParseError(origin, i + 1, "expected 18 columns");
    FeatureVector17 row{};
    try {
      for (std::size_t k = 0; k < kNumFeatures; ++k) row[k] = parse_double(cols[k], feature_names()[k]);
      const auto label = parse_int(cols[kNumFeatures], "label");
      if (label != 0 && label != 1) throw InvalidArgument("label must be 0 or 1");
      table.labels.push_back(static_cast<int>(label));
    } catch (const InvalidArgument& e) {
      throw ParseError(origin, i + 1, e.what());
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace acceptkit
