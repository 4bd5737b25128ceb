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
#include "acceptkit/eval.hpp"
#include "acceptkit/rng.hpp"

namespace acceptkit {
namespace {

TEST(Confusion, Layout) {
  const auto cm = confusion(std::vector<int>{1, 0}, std::vector<int>{1, 0});
  EXPECT_EQ(cm, (ConfusionMatrix{1, 0, 1, 0}));
  const auto all = confusion(std::vector<int>{1, 1, 1}, std::vector<int>{1, 0, 0});
  EXPECT_EQ(all.fn, 0u);
  EXPECT_EQ(all.tn, 0u);
  EXPECT_THROW(confusion(std::vector<int>{1}, std::vector<int>{1, 0}), InvalidArgument);
  EXPECT_THROW(confusion(std::vector<int>{2}, std::vector<int>{1}), InvalidArgument);
}

TEST(Confusion, OrderInvariantAndComplementary) {
  Rng rng(3);
  std::vector<int> p(200), g(200);
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = static_cast<int>(rng.below(2));
    g[i] = static_cast<int>(rng.below(2));
  }
  const auto cm = confusion(p, g);
  EXPECT_EQ(cm.total(), 200u);
  EXPECT_EQ(accuracy(cm) + error_rate(cm), 1.0);
  std::vector<std::size_t> order(p.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(std::span(order));
  std::vector<int> p2, g2;
  for (auto i : order) {
    p2.push_back(p[i]);
    g2.push_back(g[i]);
  }
  EXPECT_EQ(confusion(p2, g2), cm);
}

TEST(Accuracy, PublishedConfusionMatrices) {
  EXPECT_NEAR(accuracy({5676, 1504, 1917, 903}), 0.7593, 5e-5);
  EXPECT_NEAR(accuracy({6764, 1005, 1565, 666}), 0.8329, 5e-5);
  EXPECT_NEAR(accuracy({6345, 469, 2841, 345}), 0.9186, 5e-5);
  EXPECT_THROW(accuracy(ConfusionMatrix{}), InvalidArgument);
}

TEST(Baseline, AcceptAll) {
  EXPECT_EQ(accuracy(baseline_accept_all(std::vector<int>{1, 1, 0, 0})), 0.5);
  EXPECT_EQ(accuracy(baseline_accept_all(std::vector<int>{1, 1})), 1.0);
  EXPECT_EQ(accuracy(baseline_accept_all(std::vector<int>{0, 0})), 0.0);
  EXPECT_THROW(baseline_accept_all(std::vector<int>{}), InvalidArgument);
}

TEST(CrossLingual, Examples) {
  for (double pd : {0.0, 0.3, 1.0}) EXPECT_DOUBLE_EQ(cross_lingual_accuracy(0.5, pd), 0.5);
  EXPECT_DOUBLE_EQ(cross_lingual_accuracy(1.0, 0.8), 0.8);
  EXPECT_NEAR(cross_lingual_accuracy(0.9, 0.8), 0.74, 1e-15);
  EXPECT_THROW(cross_lingual_accuracy(1.1, 0.5), InvalidArgument);
  EXPECT_THROW(cross_lingual_accuracy(0.5, -0.1), InvalidArgument);
}

TEST(CrossLingual, SymmetricAndMonotone) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(), b = rng.uniform();
    EXPECT_NEAR(cross_lingual_accuracy(a, b), cross_lingual_accuracy(b, a), 1e-15);
    const double pt = 0.51 + 0.49 * rng.uniform();
    if (a != b) {
      EXPECT_LT(cross_lingual_accuracy(pt, std::min(a, b)), cross_lingual_accuracy(pt, std::max(a, b)));
    }
  }
}

TEST(AccuracyGain, Examples) {
  EXPECT_NEAR(accuracy_gain(0.75, 0.10), 0.05, 1e-15);
  EXPECT_EQ(accuracy_gain(0.5, 0.3), 0.0);
  EXPECT_NEAR(accuracy_gain(1.0, 0.02), 0.02, 1e-15);
}

TEST(DetectionReport, Fields) {
  const auto r = detection_report(std::vector<int>{1, 0, 0, 1}, std::vector<int>{1, 0, 1, 1});
  EXPECT_EQ(r.accuracy, 0.75);
  EXPECT_EQ(r.baseline_accuracy, 0.75);
  EXPECT_EQ(r.improvement, 0.0);
  EXPECT_NE(detection_report_json(r).find("\"accuracy\""), std::string::npos);
}

// Subjectivity task over a one-word lexicon: "nice" makes a sentence
// subjective.
SubjectivityTask task() {
  Lexicon lex;
  lex.kind = LexiconKind::kSubjectivity;
  lex.weights["nice"] = 1.0;
  return SubjectivityTask(lex);
}

LabeledInstance instance(bool ref_subjective, bool mt_agrees) {
  LabeledInstance x;
  x.reference_text = ref_subjective ? Tokens{"a", "nice", "day"} : Tokens{"a", "day"};
  x.mt_text = (ref_subjective == mt_agrees) ? Tokens{"the", "nice", "day"} : Tokens{"the", "day"};
  x.source_text = {"src"};
  x.label = mt_agrees ? 1 : 0;
  return x;
}

std::vector<LabeledInstance> mixed(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LabeledInstance> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(instance(rng.uniform() < 0.4, rng.uniform() < 0.7));
  return out;
}

std::vector<int> labels(const std::vector<LabeledInstance>& xs) {
  std::vector<int> y;
  for (const auto& x : xs) y.push_back(x.label);
  return y;
}

TEST(Pipeline, PerfectDetectorFixesEverything) {
  const auto xs = mixed(300, 1);
  const auto r = simulate_pipeline(labels(xs), xs, task());
  EXPECT_EQ(r.flip_accuracy, 1.0);
  EXPECT_EQ(r.detector_accuracy, 1.0);
  EXPECT_EQ(r.downstream_accuracy, 1.0);
  EXPECT_EQ(r.baseline_accuracy, r.accept_all_accuracy);
}

TEST(Pipeline, AcceptAllChangesNothing) {
  const auto xs = mixed(300, 2);
  const auto r = simulate_pipeline(std::vector<int>(xs.size(), 1), xs, task());
  EXPECT_EQ(r.flip_accuracy, r.baseline_accuracy);
  EXPECT_EQ(r.flip_outcomes, r.baseline_outcomes);
  EXPECT_EQ(review_file(r, xs), "index\tsource\tmt\n");
}

TEST(Pipeline, MoreTrueRejectionsThanFalseOnesHelp) {
  // Hand-built: 6 acceptable, 4 not. Detector rejects 3 of the 4 bad ones
  // (tn = 3) and 1 good one (fn = 1).
  std::vector<LabeledInstance> xs;
  for (int i = 0; i < 6; ++i) xs.push_back(instance(i % 2 == 0, true));
  for (int i = 0; i < 4; ++i) xs.push_back(instance(i % 2 == 0, false));
  const std::vector<int> det = {0, 1, 1, 1, 1, 1, 0, 0, 0, 1};
  const auto r = simulate_pipeline(det, xs, task());
  EXPECT_EQ(r.detection.tn, 3u);
  EXPECT_EQ(r.detection.fn, 1u);
  EXPECT_DOUBLE_EQ(r.baseline_accuracy, 0.6);
  EXPECT_DOUBLE_EQ(r.flip_accuracy, 0.8);  // 0.6 + (tn - fn) / n
  EXPECT_EQ(pipeline_decisions_tsv(r).substr(0, 6), "index\t");
  const std::string review = review_file(r, xs);
  EXPECT_EQ(std::count(review.begin(), review.end(), '\n'), 5);
}

TEST(Pipeline, FlipGainEqualsTnMinusFnOverN) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto xs = mixed(500, seed);
    Rng rng(seed + 100);
    std::vector<int> det;
    for (const auto& x : xs) det.push_back(rng.uniform() < 0.8 ? x.label : 1 - x.label);
    const auto r = simulate_pipeline(det, xs, task());
    const double expected = (static_cast<double>(r.detection.tn) - static_cast<double>(r.detection.fn)) / 500.0;
    EXPECT_NEAR(r.flip_accuracy - r.baseline_accuracy, expected, 1e-12);
    if (r.detection.tn > r.detection.fn) {
      EXPECT_GT(r.flip_accuracy, r.baseline_accuracy);
    }
  }
}

TEST(Pipeline, AgreesWithFormulaUnderIndependence) {
  const std::size_t n = 20000;
  const auto xs = mixed(n, 9);
  Rng rng(77);
  const double pt = 0.85, pd = 0.8;
  std::vector<int> det;
  std::vector<std::string> gold;
  const auto t = task();
  for (const auto& x : xs) {
    det.push_back(rng.uniform() < pd ? x.label : 1 - x.label);
    const std::string ref = t.run(x.reference_text).label().name;
    const std::string other = ref == "subjective" ? "objective" : "subjective";
    gold.push_back(rng.uniform() < pt ? ref : other);
  }
  const auto r = simulate_pipeline(det, xs, t, std::span<const std::string>(gold));
  EXPECT_LT(std::abs(r.flip_accuracy - r.predicted_flip_accuracy), 3 * binomial_stderr(r.predicted_flip_accuracy, n));
}

TEST(Pipeline, Errors) {
  const auto xs = mixed(4, 3);
  Lexicon lex;
  SentimentTask sentiment(lex);
  EXPECT_THROW(simulate_pipeline(labels(xs), xs, sentiment), InvalidArgument);
  EXPECT_THROW(simulate_pipeline(std::vector<int>{1}, xs, task()), InvalidArgument);
}

}  // namespace
}  // namespace acceptkit
