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

#include <gtest/gtest.h>

#include "acceptkit/downstream.hpp"
#include "acceptkit/error.hpp"
#include "acceptkit/rng.hpp"

namespace acceptkit {
namespace {

Lexicon sentiment_lexicon() {
  Lexicon lex;
  lex.kind = LexiconKind::kSentiment;
  lex.weights = {{"good", 1.0}, {"bad", -1.0}};
  return lex;
}

std::string label(const TaskOutput& out) { return out.label().name; }

TEST(Sentiment, SinglePositiveToken) {
  EXPECT_EQ(label(classify_sentiment(sentiment_lexicon(), {"good", "service"})), "positive");
}

TEST(Sentiment, Cancellation) { EXPECT_EQ(label(classify_sentiment(sentiment_lexicon(), {"good", "bad"})), "neutral"); }

TEST(Sentiment, EmptyInput) { EXPECT_EQ(label(classify_sentiment(sentiment_lexicon(), {})), "neutral"); }

TEST(Sentiment, ThresholdIsStrict) {
  EXPECT_EQ(label(classify_sentiment(sentiment_lexicon(), {"good"}, 1.0)), "neutral");
  EXPECT_EQ(label(classify_sentiment(sentiment_lexicon(), {"good", "good"}, 1.0)), "positive");
  EXPECT_EQ(label(classify_sentiment(sentiment_lexicon(), {"bad", "bad"}, 1.0)), "negative");
}

TEST(Subjectivity, Examples) {
  Lexicon lex;
  lex.kind = LexiconKind::kSubjectivity;
  lex.weights = {{"terrible", 1.0}};
  EXPECT_EQ(label(classify_subjectivity(lex, {"terrible", "food"})), "subjective");
  EXPECT_EQ(label(classify_subjectivity(lex, {"the", "station"})), "objective");
  EXPECT_EQ(label(classify_subjectivity(lex, {})), "objective");
}

Gazetteer york() {
  Gazetteer g;
  g.add("new york", EntityType::kLocation);
  g.add("york", EntityType::kLocation);
  return g;
}

TEST(Entities, LongestMatchWins) {
  const auto out = extract_entities(york(), {"new", "york"});
  EXPECT_EQ(out.entities(), EntityMultiset({{EntityType::kLocation, "new york"}}));
}

TEST(Entities, DuplicatesRetained) {
  const auto out = extract_entities(york(), {"york", "york"});
  EXPECT_EQ(out.entities().size(), 2u);
}

TEST(Entities, NoMatches) { EXPECT_EQ(extract_entities(york(), {"paris"}).entities().size(), 0u); }

TEST(Entities, CaseInsensitive) {
  EXPECT_EQ(extract_entities(york(), {"New", "YORK"}).entities(), EntityMultiset({{EntityType::kLocation, "new york"}}));
}

TEST(Entities, SurfacesAreContiguousSubsequences) {
  Gazetteer g;
  g.add("a b", EntityType::kOrganization);
  g.add("c", EntityType::kPerson);
  g.add("b c d", EntityType::kLocation);
  Rng rng(5);
  const Tokens alphabet = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 200; ++trial) {
    Tokens s;
    for (int i = 0; i < 8; ++i) s.push_back(alphabet[rng.below(alphabet.size())]);
    const std::string text = " " + join(s) + " ";
    const auto out = extract_entities(g, s);
    for (const auto& e : out.entities().entries()) {
      EXPECT_NE(text.find(" " + e.surface + " "), std::string::npos);
    }
  }
}

TEST(CompareOutputs, Labels) {
  EXPECT_TRUE(compare_outputs(CategoricalLabel{"positive"}, CategoricalLabel{"positive"}));
  EXPECT_FALSE(compare_outputs(CategoricalLabel{"positive"}, CategoricalLabel{"neutral"}));
}

TEST(CompareOutputs, MultiplicityMatters) {
  const EntityMultiset two({{EntityType::kLocation, "china"}, {EntityType::kLocation, "china"}});
  const EntityMultiset one({{EntityType::kLocation, "china"}});
  EXPECT_FALSE(compare_outputs(two, one));
  EXPECT_TRUE(compare_outputs(EntityMultiset{}, EntityMultiset{}));
}

TEST(CompareOutputs, CountMode) {
  const EntityMultiset a({{EntityType::kLocation, "china"}});
  const EntityMultiset b({{EntityType::kPerson, "li"}});
  EXPECT_FALSE(compare_outputs(a, b, EntityMatch::kTypedSurface));
  EXPECT_TRUE(compare_outputs(a, b, EntityMatch::kCount));
}

TEST(CompareOutputs, VariantMismatchIsAnError) {
  EXPECT_THROW(compare_outputs(CategoricalLabel{"x"}, EntityMultiset{}), InvalidArgument);
}

TEST(CompareOutputs, EquivalenceRelation) {
  const std::vector<TaskOutput> outs = {
      CategoricalLabel{"a"}, CategoricalLabel{"b"}, CategoricalLabel{"a"},
  };
  for (const auto& x : outs) {
    EXPECT_TRUE(compare_outputs(x, x));
    for (const auto& y : outs) {
      EXPECT_EQ(compare_outputs(x, y), compare_outputs(y, x));
      for (const auto& z : outs) {
        if (compare_outputs(x, y) && compare_outputs(y, z)) {
          EXPECT_TRUE(compare_outputs(x, z));
        }
      }
    }
  }
}

TEST(OutputProtocol, Roundtrip) {
  const TaskOutput l = CategoricalLabel{"positive"};
  EXPECT_EQ(serialize_output(l), "LABEL positive");
  EXPECT_TRUE(compare_outputs(parse_output("LABEL positive"), l));
  const TaskOutput e = EntityMultiset({{EntityType::kLocation, "new york"}, {EntityType::kPerson, "li"}});
  EXPECT_TRUE(compare_outputs(parse_output(serialize_output(e)), e));
  EXPECT_TRUE(compare_outputs(parse_output("ENTITIES"), EntityMultiset{}));
  EXPECT_THROW(parse_output("SCORE 3"), Error);
  EXPECT_THROW(parse_output("ENTITIES XYZ:foo"), Error);
}

TEST(LexiconFile, ParsesAndLowercases) {
  const auto lex = parse_lexicon("Good\t1\nbad\t-1.5\n", LexiconKind::kSentiment, "lex.tsv");
  EXPECT_DOUBLE_EQ(lex.weight("good"), 1.0);
  EXPECT_DOUBLE_EQ(lex.weight("bad"), -1.5);
  EXPECT_DOUBLE_EQ(lex.weight("other"), 0.0);
  EXPECT_THROW(parse_lexicon("good\tlots\n", LexiconKind::kSentiment, "lex.tsv"), ParseError);
  EXPECT_THROW(parse_lexicon("good\n", LexiconKind::kSentiment, "lex.tsv"), ParseError);
}

TEST(GazetteerFile, Parses) {
  const auto g = parse_gazetteer("New York\tLOC\nAcme\tORG\n", "gaz.tsv");
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.max_phrase_length(), 2u);
  EXPECT_THROW(parse_gazetteer("x\tCITY\n", "gaz.tsv"), ParseError);
}

TEST(Tasks, DeterministicAndSelfAgreeing) {
  const SentimentTask sentiment(sentiment_lexicon());
  const EntityTask ner(york());
  const Tokens s = {"good", "new", "york", "bad", "good"};
  EXPECT_TRUE(sentiment.agree(sentiment.run(s), sentiment.run(s)));
  EXPECT_TRUE(ner.agree(ner.run(s), ner.run(s)));
  EXPECT_FALSE(sentiment.binary_labels().has_value());
}

TEST(Tasks, TupleIsConjunction) {
  auto sentiment = std::make_shared<SentimentTask>(sentiment_lexicon());
  auto ner = std::make_shared<EntityTask>(york());
  const TupleTask both({sentiment, ner});
  EXPECT_EQ(both.name(), "sentiment+ner");
  const auto a = both.run({"good", "york"});
  EXPECT_TRUE(both.agree(a, both.run({"good", "york"})));
  EXPECT_FALSE(both.agree(a, both.run({"good", "paris"})));  // entities differ
  EXPECT_FALSE(both.agree(a, both.run({"bad", "york"})));    // sentiment differs
}

TEST(Tasks, ExternalCommand) {
  const ExternalTask upper("echo-label", "sed 's/^/LABEL /'");
  const auto outs = upper.run_batch(std::vector<Tokens>{{"x"}, {"y", "z"}});
  ASSERT_EQ(outs.size(), 2u);
  ASSERT_TRUE(outs[1].has_value());
  EXPECT_EQ(outs[1]->label().name, "y z");
  EXPECT_EQ(upper.run({"q"}).label().name, "q");
}

TEST(Tasks, ExternalFailureYieldsMissingOutputs) {
  const ExternalTask broken("broken", "exit 3");
  const auto outs = broken.run_batch(std::vector<Tokens>{{"x"}});
  ASSERT_EQ(outs.size(), 1u);
  EXPECT_FALSE(outs[0].has_value());
  EXPECT_THROW(broken.run({"x"}), ExternalCommandError);
}

}  // namespace
}  // namespace acceptkit
