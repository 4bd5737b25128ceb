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

#include <gtest/gtest.h>

#include "acceptkit/error.hpp"
#include "acceptkit/rng.hpp"
#include "acceptkit/textio.hpp"
#include "acceptkit/translate.hpp"
#include "temp_dir.hpp"

namespace acceptkit {
namespace {

Tokens ten_tokens() {
  Tokens t;
  for (int i = 0; i < 10; ++i) t.push_back("w" + std::to_string(i));
  return t;
}

std::vector<SentencePair> pairs_of(const std::vector<Tokens>& refs) {
  std::vector<SentencePair> out;
  for (const auto& r : refs) out.push_back({{"src"}, r});
  return out;
}

TEST(Rng, MatchesReferenceGenerator) {
  // Values from tests/oracles/noise_oracle.py.
  EXPECT_EQ(derive_seed(42, 0), 13679457532755275413ULL);
  EXPECT_EQ(derive_seed(42, 7), 14769051326987775908ULL);
  Rng rng(42);
  EXPECT_DOUBLE_EQ(rng.uniform(), 0.755155532954539);
  EXPECT_DOUBLE_EQ(rng.uniform(), 0.6390313938546974);
  EXPECT_DOUBLE_EQ(rng.uniform(), 0.7521452007480266);
}

TEST(Rng, BelowStaysInRange) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(7), 7u);
  EXPECT_THROW(rng.below(0), InvalidArgument);
}

TEST(NoiseChannel, ZeroProbabilitiesIsIdentity) {
  NoiseConfig cfg;
  Rng rng(1);
  EXPECT_EQ(noise_channel(ten_tokens(), cfg, rng), ten_tokens());
}

TEST(NoiseChannel, DropAllGivesEmpty) {
  NoiseConfig cfg;
  cfg.drop_prob = 1.0;
  Rng rng(1);
  EXPECT_TRUE(noise_channel(ten_tokens(), cfg, rng).empty());
}

TEST(NoiseChannel, Seed42DropHalfMatchesOracle) {
  NoiseConfig cfg;
  cfg.drop_prob = 0.5;
  Rng rng(42);
  EXPECT_EQ(noise_channel(ten_tokens(), cfg, rng), (Tokens{"w0", "w5", "w6", "w7"}));
  Rng stream = Rng::stream(42, 0);
  EXPECT_EQ(noise_channel(ten_tokens(), cfg, stream), (Tokens{"w0", "w2", "w6"}));
}

TEST(NoiseChannel, MixedNoiseMatchesOracle) {
  NoiseConfig cfg;
  cfg.drop_prob = 0.2;
  cfg.swap_prob = 0.3;
  cfg.substitute_prob = 0.5;
  cfg.substitution_lexicon = {{"w1", "x1"}, {"w4", "x4"}, {"w8", "x8"}};
  Rng rng(7);
  EXPECT_EQ(noise_channel(ten_tokens(), cfg, rng), (Tokens{"w0", "w3", "x1", "w5", "x4", "w7", "w6", "w9", "w8"}));
}

TEST(NoiseChannel, DropOnlyYieldsSubMultiset) {
  NoiseConfig cfg;
  cfg.drop_prob = 0.3;
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    Tokens in;
    for (int i = 0; i < 12; ++i) in.push_back("t" + std::to_string(rng.below(5)));
    Tokens out = noise_channel(in, cfg, rng);
    std::sort(in.begin(), in.end());
    std::sort(out.begin(), out.end());
    EXPECT_TRUE(std::includes(in.begin(), in.end(), out.begin(), out.end()));
  }
}

TEST(NoiseChannel, RejectsBadProbabilities) {
  NoiseConfig cfg;
  cfg.drop_prob = 1.5;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(NoiseAdapter, ParallelMatchesSequential) {
  NoiseConfig cfg;
  cfg.drop_prob = 0.3;
  cfg.swap_prob = 0.2;
  cfg.seed = 5;
  std::vector<Tokens> refs(50, ten_tokens());
  const auto pairs = pairs_of(refs);
  const auto seq = NoiseAdapter(cfg, 1).translate(pairs);
  const auto par = NoiseAdapter(cfg, 4).translate(pairs);
  EXPECT_EQ(seq, par);
  Rng s0 = Rng::stream(5, 0);
  EXPECT_EQ(seq[0], noise_channel(ten_tokens(), cfg, s0));
}

TEST(TranslateBatch, FileAdapterIdentity) {
  testing::TempDir dir;
  write_file_atomic(dir / "mt.txt", "Hello world\nB\n");
  const auto pairs = pairs_of({{"hello", "world"}, {"b"}});
  const auto records = translate_batch(FileAdapter::load(dir / "mt.txt"), pairs);
  ASSERT_EQ(records.size(), 2u);
  for (const auto& r : records) EXPECT_EQ(r.mt, r.reference);
}

TEST(TranslateBatch, FileAdapterLineCountMismatch) {
  const FileAdapter adapter({{"a"}});
  EXPECT_THROW(adapter.translate(pairs_of({{"a"}, {"b"}})), InvalidArgument);
}

TEST(TranslateBatch, ZeroNoiseIsIdentity) {
  const auto pairs = pairs_of({{"a", "b"}, {"c"}});
  for (const auto& r : translate_batch(NoiseAdapter(NoiseConfig{}), pairs)) EXPECT_EQ(r.mt, r.reference);
}

TEST(TranslateBatch, ExternalCommandReversesTokens) {
  const CommandAdapter reverse("awk '{for (i = NF; i > 0; i--) printf \"%s%s\", $i, (i > 1 ? \" \" : \"\"); print \"\"}'");
  std::vector<SentencePair> pairs = {{{"a", "b"}, {"x"}}};
  const auto records = translate_batch(reverse, pairs);
  EXPECT_EQ(records[0].mt, (Tokens{"b", "a"}));
  EXPECT_EQ(records[0].source, (Tokens{"a", "b"}));
}

TEST(TranslateBatch, ExternalCommandFailureCarriesStderr) {
  const CommandAdapter failing("echo broken >&2; exit 4");
  try {
    failing.translate(pairs_of({{"a"}}));
    FAIL() << "expected ExternalCommandError";
  } catch (const ExternalCommandError& e) {
    EXPECT_EQ(e.exit_status(), 4);
    EXPECT_NE(e.stderr_text().find("broken"), std::string::npos);
  }
}

}  // namespace
}  // namespace acceptkit
