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

#include "acceptkit/annotate.hpp"

#include <spdlog/spdlog.h>

#include <fmt/format.h>

#include "acceptkit/error.hpp"
#include "acceptkit/parallel.hpp"
#include "acceptkit/rng.hpp"

namespace acceptkit {

void SubwordEncoder::encode(LabeledInstance& instance) const {
  if (!source_bpe || !target_bpe || !source_vocab || !target_vocab) {
    throw InvalidArgument("SubwordEncoder: incomplete configuration");
  }
  instance.source_ids = source_vocab->encode(source_bpe->apply(instance.source_text));
  instance.mt_ids = target_vocab->encode(target_bpe->apply(instance.mt_text));
}

std::vector<SentencePair> filter_by_length(std::span<const SentencePair> pairs, const BpeCodec& bpe,
                                           std::size_t max_subwords) {
  std::vector<SentencePair> kept;
  for (const auto& p : pairs) {
    if (bpe.apply(p.source).size() <= max_subwords) kept.push_back(p);
  }
  return kept;
}

AnnotationResult annotate(std::span<const TranslationRecord> records, const DownstreamTask& task,
                          const SubwordEncoder* encoder, std::size_t jobs) {
  std::vector<Tokens> mt;
  std::vector<Tokens> ref;
  mt.reserve(records.size());
  ref.reserve(records.size());
  for (const auto& r : records) {
    mt.push_back(r.mt);
    ref.push_back(r.reference);
  }
  const auto out_mt = task.run_batch(mt);
  const auto out_ref = task.run_batch(ref);

  AnnotationResult result;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!out_mt[i] || !out_ref[i]) {
      result.skipped.push_back(i);
      continue;
    }
    kept.push_back(i);
  }
  result.instances = parallel_map<LabeledInstance>(kept.size(), jobs, [&](std::size_t k) {
    const std::size_t i = kept[k];
    LabeledInstance inst;
    inst.source_text = records[i].source;
    inst.mt_text = records[i].mt;
    inst.reference_text = records[i].reference;
    inst.label = task.agree(*out_mt[i], *out_ref[i]) ? 1 : 0;
    if (encoder) encoder->encode(inst);
    return inst;
  });
  if (!result.skipped.empty()) {
    spdlog::warn("annotate: {} of {} records skipped because the downstream system failed",
                 result.skipped.size(), records.size());
  }
  return result;
}

DatasetSplit split_dataset(std::vector<LabeledInstance> instances, std::size_t dev_size,
                           std::size_t test_size, std::uint64_t seed) {
  if (dev_size + test_size > instances.size()) {
    throw InvalidArgument(fmt::format("split_dataset: dev {} + test {} exceeds {} instances", dev_size,
                                      test_size, instances.size()));
  }
  Rng rng(seed);
  rng.shuffle(std::span<LabeledInstance>(instances));
  DatasetSplit split;
  split.seed = seed;
  const auto dev_end = instances.begin() + static_cast<std::ptrdiff_t>(dev_size);
  const auto test_end = dev_end + static_cast<std::ptrdiff_t>(test_size);
  split.dev.assign(std::make_move_iterator(instances.begin()), std::make_move_iterator(dev_end));
  split.test.assign(std::make_move_iterator(dev_end), std::make_move_iterator(test_end));
  split.train.assign(std::make_move_iterator(test_end), std::make_move_iterator(instances.end()));
  return split;
}

std::vector<LabeledInstance> downsample_majority(std::vector<LabeledInstance> instances, std::uint64_t seed) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < instances.size(); ++i) (instances[i].label ? pos : neg).push_back(i);
  auto& major = pos.size() > neg.size() ? pos : neg;
  const std::size_t target = std::min(pos.size(), neg.size());
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(major));
  std::vector<bool> drop(instances.size(), false);
  for (std::size_t k = target; k < major.size(); ++k) drop[major[k]] = true;
  std::vector<LabeledInstance> out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!drop[i]) out.push_back(std::move(instances[i]));
  }
  return out;
}

}  // namespace acceptkit
