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

#include "common.hpp"

#include <algorithm>

#include <fmt/core.h>
#include <json.hpp>

#include "acceptkit/corpus.hpp"
#include "acceptkit/dataset_io.hpp"
#include "acceptkit/digest.hpp"
#include "acceptkit/error.hpp"
#include "acceptkit/features.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit::cli {

std::string Context::provenance() const { return fmt::format("seed={} config={}", seed, config_digest); }

namespace {

std::shared_ptr<const DownstreamTask> make_single(const std::string& name, const TaskOptions& o) {
  auto need = [&](const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(fmt::format("task {} requires {}", name, flag));
  };
  if (name == "sentiment") {
    need(o.lexicon, "--lexicon");
    return std::make_shared<SentimentTask>(load_lexicon(o.lexicon, LexiconKind::kSentiment), o.theta);
  }
  if (name == "subjectivity") {
    need(o.lexicon, "--lexicon");
    return std::make_shared<SubjectivityTask>(load_lexicon(o.lexicon, LexiconKind::kSubjectivity));
  }
  if (name == "ner") {
    need(o.gazetteer, "--gazetteer");
    if (o.entity_match != "typed" && o.entity_match != "count") {
      throw UsageError("--entity-match must be typed or count");
    }
    return std::make_shared<EntityTask>(load_gazetteer(o.gazetteer),
                                        o.entity_match == "count" ? EntityMatch::kCount : EntityMatch::kTypedSurface);
  }
  if (name == "external") {
    need(o.command, "--task-command");
    std::optional<std::array<std::string, 2>> labels;
    if (!o.labels.empty()) {
      const auto parts = split(o.labels, ',');
      if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) throw UsageError("--labels must be 'a,b'");
      labels = std::array<std::string, 2>{std::string(parts[0]), std::string(parts[1])};
    }
    return std::make_shared<ExternalTask>("external", o.command, labels);
  }
  throw UsageError(fmt::format("unknown task '{}'", name));
}

}  // namespace

std::shared_ptr<const DownstreamTask> make_task(const TaskOptions& o) {
  if (o.task.empty()) throw UsageError("--task is required");
  const auto names = split(o.task, '+');
  if (names.size() == 1) return make_single(o.task, o);
  std::vector<std::shared_ptr<const DownstreamTask>> parts;
  for (auto n : names) parts.push_back(make_single(std::string(n), o));
  return std::make_shared<TupleTask>(std::move(parts));
}

std::unique_ptr<TranslationAdapter> make_adapter(const AdapterOptions& o, const Context& ctx) {
  if (o.adapter == "file") {
    if (o.translations.empty()) throw UsageError("--adapter file requires --translations");
    return std::make_unique<FileAdapter>(FileAdapter::load(o.translations));
  }
  if (o.adapter == "command") {
    if (o.command.empty()) throw UsageError("--adapter command requires --mt-command");
    return std::make_unique<CommandAdapter>(o.command);
  }
  if (o.adapter == "noise") {
    NoiseConfig nc;
    nc.drop_prob = o.drop;
    nc.swap_prob = o.swap;
    nc.substitute_prob = o.substitute;
    if (!o.substitutions.empty()) nc.substitution_lexicon = load_substitutions(o.substitutions);
    nc.seed = ctx.seed;
    try {
      nc.validate();
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    return std::make_unique<NoiseAdapter>(std::move(nc), ctx.jobs);
  }
  throw UsageError(fmt::format("unknown adapter '{}'", o.adapter));
}

void write_with_sidecar(const std::filesystem::path& path, std::string_view content, const Context& ctx) {
  write_file_atomic(path, content);
  nlohmann::ordered_json meta;
  meta["command"] = ctx.command;
  meta["seed"] = ctx.seed;
  meta["config_digest"] = ctx.config_digest;
  meta["sha256"] = sha256_hex(content);
  write_file_atomic(path.string() + ".meta.json", meta.dump(2) + '\n');
}

std::string predictions_to_tsv(const std::vector<Prediction>& predictions, const Context& ctx) {
  std::string out = fmt::format("#predictions v1 {}\nindex\tlabel\tscore\n", ctx.provenance());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    out += fmt::format("{}\t{}\t{}\n", i, predictions[i].label, format_double(predictions[i].score));
  }
  return out;
}

std::vector<Prediction> load_predictions(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  std::vector<Prediction> out;
  bool header = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.empty() || line.starts_with('#')) continue;
    if (!header) {
      if (!line.starts_with("index\tlabel")) throw ParseError(path.string(), i + 1, "expected 'index<TAB>label' header");
      header = true;
      continue;
    }
    const auto cols = split(line, '\t');
    if (cols.size() < 2) throw ParseError(path.string(), i + 1, "expected index and label columns");
    try {
      if (parse_int(cols[0], "index") != static_cast<long long>(out.size())) {
        throw ParseError(path.string(), i + 1, "indices must be 0, 1, 2, ...");
      }
      Prediction p;
      p.label = static_cast<int>(parse_int(cols[1], "label"));
      if (p.label != 0 && p.label != 1) throw ParseError(path.string(), i + 1, "label must be 0 or 1");
      if (cols.size() > 2) p.score = parse_double(cols[2], "score");
      out.push_back(p);
    } catch (const InvalidArgument& e) {
      throw ParseError(path.string(), i + 1, e.what());
    }
  }
  if (!header) throw ParseError(path.string(), 0, "no prediction header");
  return out;
}

std::vector<int> load_gold_labels(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (text.starts_with('{')) return labels_of(dataset_from_jsonl(text, path.string()).instances);
  return features_from_tsv(text, path.string()).labels;
}

std::vector<int> labels_of(const std::vector<LabeledInstance>& instances) {
  std::vector<int> y;
  y.reserve(instances.size());
  for (const auto& x : instances) y.push_back(x.label);
  return y;
}

std::size_t id_bound(const std::vector<LabeledInstance>& instances, bool source) {
  int top = Vocab::kUnk;
  for (const auto& x : instances) {
    for (int id : source ? x.source_ids : x.mt_ids) top = std::max(top, id);
  }
  return static_cast<std::size_t>(top) + 1;
}

}  // namespace acceptkit::cli
