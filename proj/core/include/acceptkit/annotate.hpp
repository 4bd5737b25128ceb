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
#include <optional>
#include <span>
#include <vector>

#include "acceptkit/bpe.hpp"
#include "acceptkit/corpus.hpp"
#include "acceptkit/downstream.hpp"
#include "acceptkit/translate.hpp"
#include "acceptkit/vocab.hpp"

namespace acceptkit {

// ((s, t), y) plus the reference, kept so that pipeline simulation can
// recompute f^T(r). y: 1 = acceptable, 0 = unacceptable.
struct LabeledInstance {
  Tokens source_text;
  Tokens mt_text;
  Tokens reference_text;
  std::vector<int> source_ids;
  std::vector<int> mt_ids;
  int label = 0;

  friend bool operator==(const LabeledInstance&, const LabeledInstance&) = default;
};

struct DatasetSplit {
  std::vector<LabeledInstance> train;
  std::vector<LabeledInstance> dev;
  std::vector<LabeledInstance> test;
  std::uint64_t seed = 0;
};

// Subword segmentation plus id lookup for both sides.
struct SubwordEncoder {
  const BpeCodec* source_bpe = nullptr;
  const BpeCodec* target_bpe = nullptr;
  const Vocab* source_vocab = nullptr;
  const Vocab* target_vocab = nullptr;

  void encode(LabeledInstance& instance) const;
};

// Keeps pairs whose source has at most `max_subwords` BPE units.
std::vector<SentencePair> filter_by_length(std::span<const SentencePair> pairs, const BpeCodec& bpe,
                                           std::size_t max_subwords = 50);

struct AnnotationResult {
  std::vector<LabeledInstance> instances;
  std::vector<std::size_t> skipped;  // record indices whose task run failed
};

// y = 1 iff task.agree(f(mt), f(reference)). The source never influences y.
// When `encoder` is given, subword ids are filled in.
AnnotationResult annotate(std::span<const TranslationRecord> records, const DownstreamTask& task,
                          const SubwordEncoder* encoder = nullptr, std::size_t jobs = 1);

// Seeded uniform shuffle, then dev | test | train partition.
DatasetSplit split_dataset(std::vector<LabeledInstance> instances, std::size_t dev_size,
                           std::size_t test_size, std::uint64_t seed);

// Drops random majority-class instances until both classes have equal size.
std::vector<LabeledInstance> downsample_majority(std::vector<LabeledInstance> instances, std::uint64_t seed);

}  // namespace acceptkit
