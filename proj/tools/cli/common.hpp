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
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "acceptkit/annotate.hpp"
#include "acceptkit/birnn.hpp"
#include "acceptkit/downstream.hpp"
#include "acceptkit/translate.hpp"

namespace acceptkit::cli {

// Bad flag combination detected after parsing; exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::string command;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string config_digest;  // first 16 hex digits of sha256(config)
  std::ostream* out = nullptr;

  // "seed=<seed> config=<digest>", embedded in every output header.
  std::string provenance() const;
};

struct TaskOptions {
  std::string task;
  std::string lexicon;
  std::string gazetteer;
  std::string command;
  std::string labels;  // "a,b" for a binary external task
  std::string entity_match = "typed";
  double theta = 0.0;
};

// "sentiment", "subjectivity", "ner", "external" or a '+' joined tuple.
std::shared_ptr<const DownstreamTask> make_task(const TaskOptions& options);

struct AdapterOptions {
  std::string adapter = "noise";  // noise | file | command
  std::string translations;
  std::string command;
  double drop = 0.0;
  double swap = 0.0;
  double substitute = 0.0;
  std::string substitutions;
};

std::unique_ptr<TranslationAdapter> make_adapter(const AdapterOptions& options, const Context& ctx);

// Formats without a header slot (translations, vocab, feature TSV, training
// log) get "<path>.meta.json" with the command, seed and config digest.
void write_with_sidecar(const std::filesystem::path& path, std::string_view content, const Context& ctx);

// "#predictions v1 <provenance>", then "index<TAB>label<TAB>score".
struct Prediction {
  int label = 1;
  double score = 0.0;
};
std::string predictions_to_tsv(const std::vector<Prediction>& predictions, const Context& ctx);
std::vector<Prediction> load_predictions(const std::filesystem::path& path);

// Labels of a dataset (.jsonl) or feature file (TSV).
std::vector<int> load_gold_labels(const std::filesystem::path& path);

std::vector<int> labels_of(const std::vector<LabeledInstance>& instances);

// Largest id in the instances plus one.
std::size_t id_bound(const std::vector<LabeledInstance>& instances, bool source);

}  // namespace acceptkit::cli
