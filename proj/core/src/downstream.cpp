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

#include "acceptkit/downstream.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "acceptkit/error.hpp"
#include "acceptkit/subprocess.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit {

std::string_view to_string(EntityType type) {
  switch (type) {
    case EntityType::kPerson: return "PER";
    case EntityType::kLocation: return "LOC";
    case EntityType::kOrganization: return "ORG";
  }
  return "?";
}

EntityType parse_entity_type(std::string_view text) {
  if (text == "PER") return EntityType::kPerson;
  if (text == "LOC") return EntityType::kLocation;
  if (text == "ORG") return EntityType::kOrganization;
  throw InvalidArgument(fmt::format("unknown entity type '{}' (expected PER, LOC or ORG)", text));
}

EntityMultiset::EntityMultiset(std::vector<Entity> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.surface.empty()) throw InvalidArgument("entity surface form must be non-empty");
  }
  std::sort(entries_.begin(), entries_.end());
}

bool compare_outputs(const TaskOutput& a, const TaskOutput& b, EntityMatch match) {
  if (a.value().index() != b.value().index()) {
    throw InvalidArgument("compare_outputs: task output variants differ");
  }
  if (a.is_label()) return a.label() == b.label();
  if (a.is_entities()) {
    if (match == EntityMatch::kCount) return a.entities().size() == b.entities().size();
    return a.entities() == b.entities();
  }
  const auto& pa = a.tuple().parts;
  const auto& pb = b.tuple().parts;
  if (pa.size() != pb.size()) throw InvalidArgument("compare_outputs: tuple arity differs");
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (!compare_outputs(pa[i], pb[i], match)) return false;
  }
  return true;
}

std::string serialize_output(const TaskOutput& output) {
  if (output.is_label()) return "LABEL " + output.label().name;
  if (output.is_entities()) {
    std::string out = "ENTITIES ";
    bool first = true;
    for (const auto& e : output.entities().entries()) {
      if (!first) out += ';';
      first = false;
      out += fmt::format("{}:{}", to_string(e.type), e.surface);
    }
    return out;
  }
  throw InvalidArgument("serialize_output: tuple outputs have no line encoding");
}

TaskOutput parse_output(std::string_view line) {
  if (line.starts_with("LABEL ")) {
    std::string name(line.substr(6));
    if (name.empty()) throw InvalidArgument("empty LABEL in plug-in output");
    return CategoricalLabel{std::move(name)};
  }
  if (line == "ENTITIES" || line.starts_with("ENTITIES ")) {
    std::vector<Entity> entries;
    const std::string_view body = line.size() > 9 ? line.substr(9) : std::string_view{};
    if (!body.empty()) {
      for (auto item : split(body, ';')) {
        const std::size_t colon = item.find(':');
        if (colon == std::string_view::npos) {
          throw InvalidArgument(fmt::format("malformed entity '{}' in plug-in output", item));
        }
        const Tokens toks = lowercase_ascii(tokenize(item.substr(colon + 1)));
        entries.push_back(Entity{parse_entity_type(item.substr(0, colon)), join(toks)});
      }
    }
    return EntityMultiset(std::move(entries));
  }
  throw InvalidArgument(fmt::format("unrecognized plug-in output line '{}'", line));
}

double Lexicon::weight(const std::string& token) const {
  const auto it = weights.find(token);
  return it == weights.end() ? 0.0 : it->second;
}

Lexicon parse_lexicon(std::string_view text, LexiconKind kind, const std::string& origin) {
  Lexicon lex;
  lex.kind = kind;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto parts = split(lines[i], '\t');
    if (parts.size() != 2 || parts[0].empty()) throw ParseError(origin, i + 1, "expected 'token<TAB>weight'");
    try {
      lex.weights[lowercase_ascii(parts[0])] = parse_double(parts[1], "lexicon weight");
    } catch (const InvalidArgument& e) {
      throw ParseError(origin, i + 1, e.what());
    }
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path, LexiconKind kind) {
  return parse_lexicon(read_file(path), kind, path.string());
}

void Gazetteer::add(std::string_view phrase, EntityType type) {
  const Tokens toks = lowercase_ascii(tokenize(phrase));
  if (toks.empty()) throw InvalidArgument("gazetteer phrase must be non-empty");
  entries_[join(toks)] = type;
  max_len_ = std::max(max_len_, toks.size());
}

std::optional<EntityType> Gazetteer::lookup(std::span<const std::string> phrase) const {
  const auto it = entries_.find(join(phrase));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Gazetteer parse_gazetteer(std::string_view text, const std::string& origin) {
  Gazetteer gaz;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto parts = split(lines[i], '\t');
    if (parts.size() != 2) throw ParseError(origin, i + 1, "expected 'phrase<TAB>type'");
    try {
      gaz.add(parts[0], parse_entity_type(parts[1]));
    } catch (const InvalidArgument& e) {
      throw ParseError(origin, i + 1, e.what());
    }
  }
  return gaz;
}

Gazetteer load_gazetteer(const std::filesystem::path& path) {
  return parse_gazetteer(read_file(path), path.string());
}

TaskOutput classify_sentiment(const Lexicon& lexicon, const Tokens& tokens, double theta) {
  double score = 0.0;
  for (const auto& t : tokens) score += lexicon.weight(lowercase_ascii(t));
  if (score > theta) return CategoricalLabel{"positive"};
  if (score < -theta) return CategoricalLabel{"negative"};
  return CategoricalLabel{"neutral"};
}

TaskOutput classify_subjectivity(const Lexicon& lexicon, const Tokens& tokens) {
  for (const auto& t : tokens) {
    if (lexicon.weight(lowercase_ascii(t)) != 0.0) return CategoricalLabel{"subjective"};
  }
  return CategoricalLabel{"objective"};
}

TaskOutput extract_entities(const Gazetteer& gazetteer, const Tokens& tokens) {
  const Tokens lower = lowercase_ascii(tokens);
  std::vector<Entity> found;
  const std::span<const std::string> all(lower);
  for (std::size_t i = 0; i < lower.size();) {
    std::size_t matched = 0;
    const std::size_t longest = std::min(gazetteer.max_phrase_length(), lower.size() - i);
    for (std::size_t len = longest; len >= 1; --len) {
      if (auto type = gazetteer.lookup(all.subspan(i, len))) {
        found.push_back(Entity{*type, join(all.subspan(i, len))});
        matched = len;
        break;
      }
    }
    i += matched ? matched : 1;
  }
  return EntityMultiset(std::move(found));
}

std::vector<std::optional<TaskOutput>> DownstreamTask::run_batch(std::span<const Tokens> sentences) const {
  std::vector<std::optional<TaskOutput>> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.emplace_back(run(s));
  return out;
}

SentimentTask::SentimentTask(Lexicon lexicon, double theta) : lexicon_(std::move(lexicon)), theta_(theta) {
  if (lexicon_.kind != LexiconKind::kSentiment) throw InvalidArgument("sentiment task needs a sentiment lexicon");
  if (!(theta_ >= 0.0) || !std::isfinite(theta_)) throw InvalidArgument("sentiment threshold must be >= 0");
}

TaskOutput SentimentTask::run(const Tokens& sentence) const {
  return classify_sentiment(lexicon_, sentence, theta_);
}

SubjectivityTask::SubjectivityTask(Lexicon lexicon) : lexicon_(std::move(lexicon)) {
  if (lexicon_.kind != LexiconKind::kSubjectivity) {
    throw InvalidArgument("subjectivity task needs a subjectivity lexicon");
  }
}

TaskOutput SubjectivityTask::run(const Tokens& sentence) const {
  return classify_subjectivity(lexicon_, sentence);
}

EntityTask::EntityTask(Gazetteer gazetteer, EntityMatch match) : gazetteer_(std::move(gazetteer)), match_(match) {}

TaskOutput EntityTask::run(const Tokens& sentence) const { return extract_entities(gazetteer_, sentence); }

bool EntityTask::agree(const TaskOutput& a, const TaskOutput& b) const { return compare_outputs(a, b, match_); }

ExternalTask::ExternalTask(std::string name, std::string command,
                           std::optional<std::array<std::string, 2>> binary_labels)
    : name_(std::move(name)), command_(std::move(command)), labels_(std::move(binary_labels)) {}

TaskOutput ExternalTask::run(const Tokens& sentence) const {
  const std::string line = join(sentence);
  const auto out = run_line_filter(command_, std::span<const std::string>(&line, 1));
  if (out.size() != 1) {
    throw ExternalCommandError(fmt::format("'{}' produced {} lines for 1 input", command_, out.size()), 0, "");
  }
  return parse_output(out[0]);
}

std::vector<std::optional<TaskOutput>> ExternalTask::run_batch(std::span<const Tokens> sentences) const {
  std::vector<std::string> lines;
  lines.reserve(sentences.size());
  for (const auto& s : sentences) lines.push_back(join(s));
  std::vector<std::optional<TaskOutput>> out(sentences.size());
  try {
    const auto raw = run_line_filter(command_, lines);
    if (raw.size() == lines.size()) {
      for (std::size_t i = 0; i < raw.size(); ++i) {
        try {
          out[i] = parse_output(raw[i]);
        } catch (const Error&) {
          out[i].reset();
        }
      }
      return out;
    }
  } catch (const ExternalCommandError&) {
    // Fall through to per-sentence calls so a single bad input only loses
    // its own record.
  }
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    try {
      out[i] = run(sentences[i]);
    } catch (const Error&) {
      out[i].reset();
    }
  }
  return out;
}

TupleTask::TupleTask(std::vector<std::shared_ptr<const DownstreamTask>> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw InvalidArgument("tuple task needs at least one component");
}

std::string TupleTask::name() const {
  std::string out;
  for (const auto& p : parts_) {
    if (!out.empty()) out += '+';
    out += p->name();
  }
  return out;
}

TaskOutput TupleTask::run(const Tokens& sentence) const {
  TupleOutput tuple;
  for (const auto& p : parts_) tuple.parts.push_back(p->run(sentence));
  return tuple;
}

std::vector<std::optional<TaskOutput>> TupleTask::run_batch(std::span<const Tokens> sentences) const {
  std::vector<std::vector<std::optional<TaskOutput>>> per_part;
  for (const auto& p : parts_) per_part.push_back(p->run_batch(sentences));
  std::vector<std::optional<TaskOutput>> out(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    TupleOutput tuple;
    bool ok = true;
    for (auto& part : per_part) {
      if (!part[i]) {
        ok = false;
        break;
      }
      tuple.parts.push_back(std::move(*part[i]));
    }
    if (ok) out[i] = TaskOutput(std::move(tuple));
  }
  return out;
}

bool TupleTask::agree(const TaskOutput& a, const TaskOutput& b) const {
  const auto& pa = a.tuple().parts;
  const auto& pb = b.tuple().parts;
  if (pa.size() != parts_.size() || pb.size() != parts_.size()) {
    throw InvalidArgument("tuple task: output arity mismatch");
  }
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (!parts_[i]->agree(pa[i], pb[i])) return false;
  }
  return true;
}

}  // namespace acceptkit
