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

#include "acceptkit/translate.hpp"

#include <fmt/format.h>

#include "acceptkit/error.hpp"
#include "acceptkit/parallel.hpp"
#include "acceptkit/subprocess.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit {

void NoiseConfig::validate() const {
  for (double p : {drop_prob, swap_prob, substitute_prob}) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(fmt::format("noise probability {} not in [0,1]", p));
  }
}

std::unordered_map<std::string, std::string> load_substitutions(const std::filesystem::path& path) {
  std::unordered_map<std::string, std::string> lex;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto parts = split(lines[i], '\t');
    if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
      throw ParseError(path.string(), i + 1, "expected 'from<TAB>to'");
    }
    lex[std::string(parts[0])] = std::string(parts[1]);
  }
  return lex;
}

Tokens noise_channel(const Tokens& reference, const NoiseConfig& config, Rng& rng) {
  Tokens out;
  out.reserve(reference.size());
  for (const auto& token : reference) {
    const double u_sub = rng.uniform();
    const double u_drop = rng.uniform();
    std::string t = token;
    if (u_sub < config.substitute_prob) {
      if (const auto it = config.substitution_lexicon.find(token); it != config.substitution_lexicon.end()) {
        t = it->second;
      }
    }
    if (u_drop < config.drop_prob) continue;
    out.push_back(std::move(t));
  }
  for (std::size_t i = 0; i + 1 < out.size();) {
    if (rng.uniform() < config.swap_prob) {
      std::swap(out[i], out[i + 1]);
      i += 2;
    } else {
      i += 1;
    }
  }
  return out;
}

FileAdapter::FileAdapter(std::vector<Tokens> translations) : translations_(std::move(translations)) {}

FileAdapter FileAdapter::load(const std::filesystem::path& path) {
  std::vector<Tokens> tr;
  for (const auto& line : read_lines(path)) tr.push_back(lowercase_ascii(tokenize(line)));
  return FileAdapter(std::move(tr));
}

std::vector<Tokens> FileAdapter::translate(std::span<const SentencePair> pairs) const {
  if (pairs.size() != translations_.size()) {
    throw InvalidArgument(fmt::format("translations file has {} lines but the corpus has {} pairs",
                                      translations_.size(), pairs.size()));
  }
  return translations_;
}

std::vector<Tokens> CommandAdapter::translate(std::span<const SentencePair> pairs) const {
  std::vector<std::string> lines;
  lines.reserve(pairs.size());
  for (const auto& p : pairs) lines.push_back(join(p.source));
  const auto raw = run_line_filter(command_, lines);
  if (raw.size() != pairs.size()) {
    throw ExternalCommandError(
        fmt::format("'{}' produced {} lines for {} inputs", command_, raw.size(), pairs.size()), 0, "");
  }
  std::vector<Tokens> out;
  out.reserve(raw.size());
  for (const auto& line : raw) out.push_back(lowercase_ascii(tokenize(line)));
  return out;
}

NoiseAdapter::NoiseAdapter(NoiseConfig config, std::size_t jobs) : config_(std::move(config)), jobs_(jobs) {
  config_.validate();
}

std::vector<Tokens> NoiseAdapter::translate(std::span<const SentencePair> pairs) const {
  return parallel_map<Tokens>(pairs.size(), jobs_, [&](std::size_t i) {
    Rng rng = Rng::stream(config_.seed, i);
    return noise_channel(pairs[i].reference, config_, rng);
  });
}

std::vector<TranslationRecord> translate_batch(const TranslationAdapter& adapter,
                                               std::span<const SentencePair> pairs) {
  auto mt = adapter.translate(pairs);
  std::vector<TranslationRecord> records;
  records.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    records.push_back(TranslationRecord{pairs[i].source, std::move(mt[i]), pairs[i].reference});
  }
  return records;
}

}  // namespace acceptkit
