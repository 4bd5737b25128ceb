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

#include <array>
#include <compare>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "acceptkit/corpus.hpp"

namespace acceptkit {

enum class EntityType { kPerson, kLocation, kOrganization };

std::string_view to_string(EntityType type);
EntityType parse_entity_type(std::string_view text);  // PER | LOC | ORG

struct Entity {
  EntityType type;
  std::string surface;  // lowercase, tokens joined by single spaces

  auto operator<=>(const Entity&) const = default;
};

struct CategoricalLabel {
  std::string name;
  friend bool operator==(const CategoricalLabel&, const CategoricalLabel&) = default;
};

// Entries are kept sorted so that equal multisets compare equal element-wise.
class EntityMultiset {
 public:
  EntityMultiset() = default;
  explicit EntityMultiset(std::vector<Entity> entries);

  const std::vector<Entity>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  friend bool operator==(const EntityMultiset&, const EntityMultiset&) = default;

 private:
  std::vector<Entity> entries_;
};

class TaskOutput;

// Output of a composite task: one component per sub-task.
struct TupleOutput {
  std::vector<TaskOutput> parts;
};

class TaskOutput {
 public:
  using Value = std::variant<CategoricalLabel, EntityMultiset, TupleOutput>;

  TaskOutput(CategoricalLabel label) : value_(std::move(label)) {}
  TaskOutput(EntityMultiset entities) : value_(std::move(entities)) {}
  TaskOutput(TupleOutput tuple) : value_(std::move(tuple)) {}

  const Value& value() const { return value_; }
  bool is_label() const { return std::holds_alternative<CategoricalLabel>(value_); }
  bool is_entities() const { return std::holds_alternative<EntityMultiset>(value_); }
  const CategoricalLabel& label() const { return std::get<CategoricalLabel>(value_); }
  const EntityMultiset& entities() const { return std::get<EntityMultiset>(value_); }
  const TupleOutput& tuple() const { return std::get<TupleOutput>(value_); }

 private:
  Value value_;
};

// How two entity multisets are judged equal.
enum class EntityMatch {
  kTypedSurface,  // same (type, surface) pairs with multiplicity
  kCount,         // same number of entities
};

// Labels: string equality. Entities: per `match`. Tuples: component-wise
// conjunction. Throws InvalidArgument on a variant (or arity) mismatch.
bool compare_outputs(const TaskOutput& a, const TaskOutput& b,
                     EntityMatch match = EntityMatch::kTypedSurface);

// Plug-in line protocol: "LABEL <name>" or "ENTITIES <type>:<surface>;...".
std::string serialize_output(const TaskOutput& output);
TaskOutput parse_output(std::string_view line);

enum class LexiconKind { kSubjectivity, kSentiment };

struct Lexicon {
  LexiconKind kind = LexiconKind::kSentiment;
  std::unordered_map<std::string, double> weights;

  double weight(const std::string& token) const;
};

// TSV "token<TAB>weight"; tokens are lowercased.
Lexicon load_lexicon(const std::filesystem::path& path, LexiconKind kind);
Lexicon parse_lexicon(std::string_view text, LexiconKind kind, const std::string& origin);

class Gazetteer {
 public:
  Gazetteer() = default;
  // Phrases are tokenized and lowercased on insertion.
  void add(std::string_view phrase, EntityType type);

  std::size_t max_phrase_length() const { return max_len_; }
  std::optional<EntityType> lookup(std::span<const std::string> phrase) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, EntityType> entries_;  // key: tokens joined by ' '
  std::size_t max_len_ = 0;
};

// TSV "phrase<TAB>type".
Gazetteer load_gazetteer(const std::filesystem::path& path);
Gazetteer parse_gazetteer(std::string_view text, const std::string& origin);

// Score = sum of weights; > theta positive, < -theta negative, else neutral.
TaskOutput classify_sentiment(const Lexicon& lexicon, const Tokens& tokens, double theta = 0.0);
// Any token with nonzero weight makes the sentence subjective.
TaskOutput classify_subjectivity(const Lexicon& lexicon, const Tokens& tokens);
// Greedy left-to-right longest match over lowercased tokens.
TaskOutput extract_entities(const Gazetteer& gazetteer, const Tokens& tokens);

// An executable target-language system f^T. Implementations are immutable
// and deterministic; run() may be called concurrently.
class DownstreamTask {
 public:
  virtual ~DownstreamTask() = default;

  virtual std::string name() const = 0;
  virtual TaskOutput run(const Tokens& sentence) const = 0;

  // Batch entry point; external systems override this to amortize process
  // start-up. Failed sentences yield std::nullopt.
  virtual std::vector<std::optional<TaskOutput>> run_batch(std::span<const Tokens> sentences) const;

  virtual bool agree(const TaskOutput& a, const TaskOutput& b) const { return compare_outputs(a, b); }

  // The two label values for binary classification tasks.
  virtual std::optional<std::array<std::string, 2>> binary_labels() const { return std::nullopt; }
};

class SentimentTask final : public DownstreamTask {
 public:
  SentimentTask(Lexicon lexicon, double theta = 0.0);
  std::string name() const override { return "sentiment"; }
  TaskOutput run(const Tokens& sentence) const override;

 private:
  Lexicon lexicon_;
  double theta_;
};

class SubjectivityTask final : public DownstreamTask {
 public:
  explicit SubjectivityTask(Lexicon lexicon);
  std::string name() const override { return "subjectivity"; }
  TaskOutput run(const Tokens& sentence) const override;
  std::optional<std::array<std::string, 2>> binary_labels() const override {
    return std::array<std::string, 2>{"objective", "subjective"};
  }

 private:
  Lexicon lexicon_;
};

class EntityTask final : public DownstreamTask {
 public:
  explicit EntityTask(Gazetteer gazetteer, EntityMatch match = EntityMatch::kTypedSurface);
  std::string name() const override { return "ner"; }
  TaskOutput run(const Tokens& sentence) const override;
  bool agree(const TaskOutput& a, const TaskOutput& b) const override;

 private:
  Gazetteer gazetteer_;
  EntityMatch match_;
};

// External command: one sentence per stdin line, one serialized output per
// stdout line.
class ExternalTask final : public DownstreamTask {
 public:
  ExternalTask(std::string name, std::string command,
               std::optional<std::array<std::string, 2>> binary_labels = std::nullopt);
  std::string name() const override { return name_; }
  TaskOutput run(const Tokens& sentence) const override;
  std::vector<std::optional<TaskOutput>> run_batch(std::span<const Tokens> sentences) const override;
  std::optional<std::array<std::string, 2>> binary_labels() const override { return labels_; }

 private:
  std::string name_;
  std::string command_;
  std::optional<std::array<std::string, 2>> labels_;
};

// Runs several tasks and returns the tuple of their outputs; two tuples
// agree when every component agrees.
class TupleTask final : public DownstreamTask {
 public:
  explicit TupleTask(std::vector<std::shared_ptr<const DownstreamTask>> parts);
  std::string name() const override;
  TaskOutput run(const Tokens& sentence) const override;
  std::vector<std::optional<TaskOutput>> run_batch(std::span<const Tokens> sentences) const override;
  bool agree(const TaskOutput& a, const TaskOutput& b) const override;

 private:
  std::vector<std::shared_ptr<const DownstreamTask>> parts_;
};

}  // namespace acceptkit
