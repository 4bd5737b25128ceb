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

#include "acceptkit/dataset_io.hpp"

#include <json.hpp>

#include "acceptkit/error.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit {
namespace {

using nlohmann::json;

Tokens split_tokens(const std::string& text) {
  Tokens out;
  if (text.empty()) return out;
  for (auto part : split(text, ' ')) out.emplace_back(part);
  return out;
}

}  // namespace

std::string dataset_to_jsonl(const DatasetHeader& header, std::span<const LabeledInstance> instances) {
  json h = {{"format", "acceptkit-dataset"},
            {"version", DatasetHeader::kVersion},
            {"task", header.task},
            {"bpe_digest", header.bpe_digest},
            {"src_vocab_digest", header.src_vocab_digest},
            {"tgt_vocab_digest", header.tgt_vocab_digest},
            {"seed", header.seed},
            {"config_digest", header.config_digest},
            {"split", header.split}};
  std::string out = h.dump();
  out += '\n';
  for (const auto& inst : instances) {
    json j = {{"src", join(inst.source_text)},
              {"mt", join(inst.mt_text)},
              {"ref", join(inst.reference_text)},
              {"label", inst.label},
              {"src_ids", inst.source_ids},
              {"mt_ids", inst.mt_ids}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

Dataset dataset_from_jsonl(std::string_view text, const std::string& origin) {
  const auto lines = split_lines(text);
  Dataset ds;
  bool have_header = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    json j;
    try {
      j = json::parse(lines[i]);
    } catch (const json::exception& e) {
      throw ParseError(origin, i + 1, e.what());
    }
    try {
      if (!have_header) {
        if (j.value("format", "") != "acceptkit-dataset") throw ParseError(origin, i + 1, "missing dataset header");
        if (j.at("version").get<int>() != DatasetHeader::kVersion) {
          throw ParseError(origin, i + 1, "unsupported dataset version");
        }
        ds.header.task = j.at("task").get<std::string>();
        ds.header.bpe_digest = j.value("bpe_digest", "");
        ds.header.src_vocab_digest = j.value("src_vocab_digest", "");
        ds.header.tgt_vocab_digest = j.value("tgt_vocab_digest", "");
        ds.header.seed = j.value("seed", std::uint64_t{0});
        ds.header.config_digest = j.value("config_digest", "");
        ds.header.split = j.value("split", "");
        have_header = true;
        continue;
      }
      LabeledInstance inst;
      inst.source_text = split_tokens(j.at("src").get<std::string>());
      inst.mt_text = split_tokens(j.at("mt").get<std::string>());
      inst.reference_text = split_tokens(j.at("ref").get<std::string>());
      inst.label = j.at("label").get<int>();
      if (inst.label != 0 && inst.label != 1) throw ParseError(origin, i + 1, "label must be 0 or 1");
      inst.source_ids = j.value("src_ids", std::vector<int>{});
      inst.mt_ids = j.value("mt_ids", std::vector<int>{});
      ds.instances.push_back(std::move(inst));
    } catch (const json::exception& e) {
      throw ParseError(origin, i + 1, e.what());
    }
  }
  if (!have_header) throw ParseError(origin, 0, "missing dataset header");
  return ds;
}

void save_dataset(const std::filesystem::path& path, const DatasetHeader& header,
                  std::span<const LabeledInstance> instances) {
  write_file_atomic(path, dataset_to_jsonl(header, instances));
}

Dataset load_dataset(const std::filesystem::path& path) {
  return dataset_from_jsonl(read_file(path), path.string());
}

}  // namespace acceptkit
