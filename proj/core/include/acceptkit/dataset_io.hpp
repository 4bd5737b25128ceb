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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acceptkit/annotate.hpp"

namespace acceptkit {

// JSON-lines dataset. Line 1 is the header object
//   {"format":"acceptkit-dataset","version":1,"task":...,"bpe_digest":...,
//    "src_vocab_digest":...,"tgt_vocab_digest":...,"seed":...,
//    "config_digest":...,"split":...}
// followed by one object per instance
//   {"src":"...","mt":"...","ref":"...","label":0|1,"src_ids":[...],"mt_ids":[...]}
// Token text is space-joined. Digests are "" when not applicable.
struct DatasetHeader {
  static constexpr int kVersion = 1;

  std::string task;
  std::string bpe_digest;
  std::string src_vocab_digest;
  std::string tgt_vocab_digest;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::string split;  // "all", "train", "dev" or "test"

  friend bool operator==(const DatasetHeader&, const DatasetHeader&) = default;
};

struct Dataset {
  DatasetHeader header;
  std::vector<LabeledInstance> instances;
};

std::string dataset_to_jsonl(const DatasetHeader& header, std::span<const LabeledInstance> instances);
Dataset dataset_from_jsonl(std::string_view text, const std::string& origin);
void save_dataset(const std::filesystem::path& path, const DatasetHeader& header,
                  std::span<const LabeledInstance> instances);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace acceptkit
