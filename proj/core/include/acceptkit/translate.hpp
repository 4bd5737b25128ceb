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
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "acceptkit/corpus.hpp"
#include "acceptkit/rng.hpp"

namespace acceptkit {

struct TranslationRecord {
  Tokens source;
  Tokens mt;  // may be empty
  Tokens reference;

  friend bool operator==(const TranslationRecord&, const TranslationRecord&) = default;
};

struct NoiseConfig {
  double drop_prob = 0.0;
  double swap_prob = 0.0;
  double substitute_prob = 0.0;
  std::unordered_map<std::string, std::string> substitution_lexicon;
  std::uint64_t seed = 0;

  void validate() const;
};

// TSV "from<TAB>to".
std::unordered_map<std::string, std::string> load_substitutions(const std::filesystem::path& path);

// Corrupts a reference sentence. Draw order (u = rng.uniform()):
//   for each token: u1 < substitute_prob and token in lexicon -> substitute;
//                   u2 < drop_prob -> drop.            (u1, u2 always drawn)
//   then i = 0 while i + 1 < size: u < swap_prob -> swap(i, i+1), i += 2;
//                                  otherwise i += 1.
Tokens noise_channel(const Tokens& reference, const NoiseConfig& config, Rng& rng);

// t = MT(s) for a batch of pairs, order preserved.
class TranslationAdapter {
 public:
  virtual ~TranslationAdapter() = default;
  virtual std::vector<Tokens> translate(std::span<const SentencePair> pairs) const = 0;
};

// Pre-computed translations, one per line, aligned with the corpus.
class FileAdapter final : public TranslationAdapter {
 public:
  explicit FileAdapter(std::vector<Tokens> translations);
  static FileAdapter load(const std::filesystem::path& path);
  std::vector<Tokens> translate(std::span<const SentencePair> pairs) const override;

 private:
  std::vector<Tokens> translations_;
};

// Source sentences on stdin, translations on stdout, line-aligned.
class CommandAdapter final : public TranslationAdapter {
 public:
  explicit CommandAdapter(std::string command) : command_(std::move(command)) {}
  std::vector<Tokens> translate(std::span<const SentencePair> pairs) const override;

 private:
  std::string command_;
};

// Perturbs each reference; sentence i draws from Rng::stream(seed, i).
class NoiseAdapter final : public TranslationAdapter {
 public:
  explicit NoiseAdapter(NoiseConfig config, std::size_t jobs = 1);
  std::vector<Tokens> translate(std::span<const SentencePair> pairs) const override;

 private:
  NoiseConfig config_;
  std::size_t jobs_;
};

std::vector<TranslationRecord> translate_batch(const TranslationAdapter& adapter,
                                               std::span<const SentencePair> pairs);

}  // namespace acceptkit
