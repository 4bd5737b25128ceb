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

#include <algorithm>
#include <map>

#include <gtest/gtest.h>

#include "acceptkit/bpe.hpp"
#include "acceptkit/error.hpp"
#include "acceptkit/rng.hpp"
#include "acceptkit/vocab.hpp"
#include "temp_dir.hpp"

namespace acceptkit {
namespace {

std::vector<Tokens> repeat(const std::vector<std::pair<std::string, int>>& words) {
  std::vector<Tokens> corpus;
  for (const auto& [w, n] : words) {
    for (int i = 0; i < n; ++i) corpus.push_back({w});
  }
  return corpus;
}

TEST(BpeLearn, ZeroMergesIsCharacterSplit) {
  const auto model = bpe_learn(repeat({{"ab", 3}}), 0);
  EXPECT_EQ(model.num_merges(), 0u);
  EXPECT_EQ(bpe_apply(model, {"ab"}), (Tokens{"a", "b</w>"}));
}

TEST(BpeLearn, FirstMergeIsMostFrequentPair) {
  // Pairs: (a, b</w>) x3, (a, c</w>) x1. The end-of-word marker rides on the
  // final character, so the winning pair is (a, b</w>).
  const auto model = bpe_learn(repeat({{"ab", 3}, {"ac", 1}}), 1);
  ASSERT_EQ(model.num_merges(), 1u);
  EXPECT_EQ(model.merges[0], (std::pair<std::string, std::string>{"a", "b</w>"}));
}

TEST(BpeLearn, StopsWhenPairsAreExhausted) {
  // aa x2: merge (a, a</w>) once; afterwards every word is one symbol.
  const auto model = bpe_learn(repeat({{"aa", 2}}), 5);
  EXPECT_LT(model.num_merges(), 5u);
  EXPECT_EQ(model.num_merges(), 1u);
}

TEST(BpeLearn, PairsBelowTwoOccurrencesAreNotMerged) {
  const auto model = bpe_learn(repeat({{"xyz", 1}}), 10);
  EXPECT_EQ(model.num_merges(), 0u);
}

TEST(BpeLearn, TiesBreakLexicographically) {
  // (b, a</w>) and (a, b</w>) both occur twice.
  const auto model = bpe_learn(repeat({{"ba", 2}, {"ab", 2}}), 1);
  ASSERT_EQ(model.num_merges(), 1u);
  EXPECT_EQ(model.merges[0], (std::pair<std::string, std::string>{"a", "b</w>"}));
}

TEST(BpeLearn, NeverMergesAcrossWords) {
  const std::vector<Tokens> corpus(4, Tokens{"a", "b"});
  const auto model = bpe_learn(corpus, 10);
  EXPECT_EQ(model.num_merges(), 0u);
}

TEST(BpeLearn, EmptyCorpusIsAnError) {
  EXPECT_THROW(bpe_learn(std::vector<Tokens>{}, 3), EmptyCorpusError);
}

TEST(BpeLearn, Deterministic) {
  std::vector<Tokens> corpus = {{"lower", "lowest", "newer", "wider"}, {"low", "new", "newest"}};
  const auto a = bpe_learn(corpus, 20);
  const auto b = bpe_learn(corpus, 20);
  EXPECT_EQ(a, b);
  std::set<std::pair<std::string, std::string>> unique(a.merges.begin(), a.merges.end());
  EXPECT_EQ(unique.size(), a.merges.size());
}

TEST(BpeApply, RoundtripAfterMerge) {
  BpeModel model;
  model.merges = {{"a", "b"}};
  EXPECT_EQ(bpe_desegment(bpe_apply(model, {"ab"})), Tokens{"ab"});
}

TEST(BpeApply, UnseenTokensStillSegment) {
  const auto model = bpe_learn(repeat({{"hello", 5}}), 10);
  const auto out = bpe_apply(model, {"zebra"});
  EXPECT_FALSE(out.empty());
  EXPECT_EQ(bpe_desegment(out), Tokens{"zebra"});
}

TEST(BpeApply, LearnedWordsBecomeOneUnit) {
  const auto model = bpe_learn(repeat({{"hello", 5}}), 10);
  EXPECT_EQ(bpe_apply(model, {"hello"}), Tokens{"hello</w>"});
}

TEST(BpeApply, MultibyteCharactersStayWhole) {
  const auto out = bpe_apply(BpeModel{}, {"你好"});
  EXPECT_EQ(out, (Tokens{"你", "好</w>"}));
}

TEST(BpeApply, RandomRoundtripProperty) {
  std::vector<Tokens> corpus;
  Rng rng(11);
  const std::string alphabet = "abcde";
  for (int i = 0; i < 300; ++i) {
    Tokens s;
    for (int j = 0; j < 5; ++j) {
      std::string w;
      const auto len = 1 + rng.below(6);
      for (std::uint64_t k = 0; k < len; ++k) w += alphabet[rng.below(alphabet.size())];
      s.push_back(w);
    }
    corpus.push_back(s);
  }
  const BpeCodec codec(bpe_learn(corpus, 60));
  for (int i = 0; i < 2000; ++i) {
    std::string w;
    const auto len = 1 + rng.below(10);
    for (std::uint64_t k = 0; k < len; ++k) w += "abcdefgh"[rng.below(8)];
    ASSERT_EQ(bpe_desegment(codec.segment_word(w)), Tokens{w}) << w;
  }
}

TEST(BpeFile, TextRoundtrip) {
  const auto model = bpe_learn(repeat({{"hello", 5}, {"help", 3}}), 10);
  const std::string text = bpe_to_text(model, "seed=3");
  EXPECT_TRUE(text.starts_with("#bpe v1 " + std::to_string(model.num_merges()) + " seed=3\n"));
  EXPECT_EQ(bpe_from_text(text, "m"), model);
  testing::TempDir dir;
  save_bpe(model, dir / "bpe.txt");
  EXPECT_EQ(load_bpe(dir / "bpe.txt"), model);
}

TEST(BpeFile, RejectsBadInput) {
  EXPECT_THROW(bpe_from_text("", "m"), ParseError);
  EXPECT_THROW(bpe_from_text("#bpe v1 2\na b\n", "m"), ParseError);
  EXPECT_THROW(bpe_from_text("#bpe v1 1\nab\n", "m"), ParseError);
}

std::vector<Tokens> frequency_corpus(const std::map<std::string, int>& freq) {
  Tokens all;
  for (const auto& [w, n] : freq) {
    for (int i = 0; i < n; ++i) all.push_back(w);
  }
  return {all};
}

TEST(BuildVocab, NoTruncationNeeded) {
  const auto v = build_vocab(frequency_corpus({{"x", 1}, {"y", 2}, {"z", 3}}), 30000);
  EXPECT_EQ(v.size(), 5u);
  EXPECT_EQ(v.token_of(Vocab::kPad), "<pad>");
  EXPECT_EQ(v.token_of(Vocab::kUnk), "<unk>");
}

TEST(BuildVocab, KeepsMostFrequent) {
  const auto v = build_vocab(frequency_corpus({{"a", 5}, {"b", 3}, {"c", 1}}), 2);
  EXPECT_TRUE(v.contains("a"));
  EXPECT_TRUE(v.contains("b"));
  EXPECT_FALSE(v.contains("c"));
  EXPECT_EQ(v.id_of("a"), 2);
  EXPECT_EQ(v.id_of("b"), 3);
}

TEST(BuildVocab, TiesBreakLexicographically) {
  const auto v = build_vocab(frequency_corpus({{"b", 2}, {"a", 2}}), 1);
  EXPECT_TRUE(v.contains("a"));
  EXPECT_FALSE(v.contains("b"));
}

TEST(BuildVocab, Errors) {
  EXPECT_THROW(build_vocab(std::vector<Tokens>{}, 10), EmptyCorpusError);
  EXPECT_THROW(build_vocab(frequency_corpus({{"a", 1}}), 0), InvalidArgument);
}

TEST(Vocab, BijectionAndUnk) {
  const auto v = build_vocab(frequency_corpus({{"a", 5}, {"b", 3}, {"c", 1}}), 10);
  for (int id = 0; id < static_cast<int>(v.size()); ++id) EXPECT_EQ(v.id_of(v.token_of(id)), id);
  const Tokens seq = {"c", "a", "b", "a"};
  EXPECT_EQ(v.decode(v.encode(seq)), seq);
  EXPECT_EQ(v.id_of("zzz"), Vocab::kUnk);
  EXPECT_THROW(v.token_of(99), InvalidArgument);
}

TEST(Vocab, FileRoundtrip) {
  const auto v = build_vocab(frequency_corpus({{"a", 5}, {"b", 3}}), 10);
  EXPECT_EQ(vocab_to_text(v), "a\nb\n");
  EXPECT_EQ(vocab_from_text(vocab_to_text(v), "v"), v);
  testing::TempDir dir;
  save_vocab(v, dir / "v.txt");
  EXPECT_EQ(load_vocab(dir / "v.txt"), v);
  EXPECT_THROW(vocab_from_text("a\na\n", "v"), ParseError);
}

}  // namespace
}  // namespace acceptkit
