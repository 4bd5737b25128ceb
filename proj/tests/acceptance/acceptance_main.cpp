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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
//   acceptkit_acceptance [--only N ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "acceptkit/annotate.hpp"
#include "acceptkit/biquest.hpp"
#include "acceptkit/birnn.hpp"
#include "acceptkit/birnn_io.hpp"
#include "acceptkit/birnn_train.hpp"
#include "acceptkit/bpe.hpp"
#include "acceptkit/eval.hpp"
#include "acceptkit/features.hpp"
#include "acceptkit/ibm1.hpp"
#include "acceptkit/lm.hpp"
#include "acceptkit/rng.hpp"
#include "acceptkit/textio.hpp"
#include "acceptkit/translate.hpp"
#include "acceptkit/vocab.hpp"
#include "birnn_oracle.hpp"
#include "svm_oracle.hpp"
#include "synthetic.hpp"

namespace ak = acceptkit;
namespace akt = acceptkit::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// 1. Published confusion matrices.

Outcome published_accuracies() {
  struct Cell {
    ak::ConfusionMatrix cm;
    double percent;
  };
  const Cell cells[] = {{{5676, 1504, 1917, 903}, 75.93}, {{6764, 1005, 1565, 666}, 83.29}, {{6345, 469, 2841, 345}, 91.86}};
  Outcome out{true, ""};
  for (const auto& c : cells) {
    const double got = 100.0 * ak::accuracy(c.cm);
    out.pass = out.pass && std::abs(got - c.percent) <= 0.005;
    out.detail += fmt::format("{:.4f}/{:.2f} ", got, c.percent);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 2. Cross-lingual accuracy formulas.

Outcome formula_cases() {
  int failed = 0;
  auto expect = [&](bool ok) { failed += ok ? 0 : 1; };
  for (double pd : {0.0, 0.25, 0.5, 0.8, 1.0}) expect(ak::cross_lingual_accuracy(0.5, pd) == 0.5);
  expect(ak::cross_lingual_accuracy(1.0, 0.8) == 0.8);
  expect(std::abs(ak::cross_lingual_accuracy(0.9, 0.8) - 0.74) < 1e-15);
  expect(std::abs(ak::accuracy_gain(0.75, 0.10) - 0.05) < 1e-15);
  for (double d : {-0.3, 0.0, 0.02, 0.4}) expect(ak::accuracy_gain(0.5, d) == 0.0);
  expect(std::abs(ak::accuracy_gain(1.0, 0.02) - 0.02) < 1e-15);

  // 100-point grid: symmetry everywhere, strict monotonicity in p_d for
  // p_t > 0.5.
  std::vector<double> grid;
  for (int i = 0; i < 10; ++i) grid.push_back(i / 9.0);
  for (double a : grid) {
    for (double b : grid) {
      expect(std::abs(ak::cross_lingual_accuracy(a, b) - ak::cross_lingual_accuracy(b, a)) < 1e-15);
      if (a > 0.5 && b < 1.0) expect(ak::cross_lingual_accuracy(a, b) < ak::cross_lingual_accuracy(a, b + 1.0 / 9.0));
    }
  }
  return {failed == 0, fmt::format("{} failed checks", failed)};
}

// ---------------------------------------------------------------------------
// 3. BiRNN gradient check.

std::string gradient_report() {
  ak::BirnnConfig c;
  c.max_len = 4;
  c.embed_dim = 2;
  c.rnn_hidden = 3;
  c.proj_dim = 4;
  c.penult_dim = 5;
  c.src_vocab = 7;
  c.tgt_vocab = 7;
  c.dropout = 0.1;
  std::string report;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    ak::Rng rng(seed);
    std::vector<int> src, tgt;
    // Lengths up to 6 exercise truncation; id 0 is padding.
    for (std::size_t k = 0, n = 1 + rng.below(6); k < n; ++k) src.push_back(static_cast<int>(rng.below(7)));
    for (std::size_t k = 0, n = 1 + rng.below(6); k < n; ++k) tgt.push_back(static_cast<int>(rng.below(7)));
    src.push_back(3);
    tgt.push_back(5);
    const auto params = akt::random_params(c, seed);
    for (bool train : {false, true}) {
      const int y = static_cast<int>(seed % 2);
      const auto errors = akt::gradient_check(params, c, src, tgt, y, train, seed + 100);
      for (const auto& [name, err] : errors) report += fmt::format("{} {} {} {:.17g}\n", seed, train, name, err);
    }
  }
  return report;
}

Outcome gradient_check(std::string& report) {
  report = gradient_report();
  double worst = 0;
  std::string worst_name;
  std::size_t tensors = 0;
  for (const auto& line : ak::split_lines(report)) {
    const auto fields = ak::split(line, ' ');
    const double err = std::stod(std::string(fields[3]));
    ++tensors;
    if (err >= worst) {
      worst = err;
      worst_name = std::string(fields[2]);
    }
  }
  return {tensors > 0 && worst < 1e-4, fmt::format("{} tensor checks, max rel err {:.3g} ({})", tensors, worst, worst_name)};
}

// ---------------------------------------------------------------------------
// 4. BiRNN learns a token rule.

constexpr int kBadToken = 2;

std::vector<ak::LabeledInstance> token_rule_set(std::size_t n, ak::Rng& rng) {
  std::vector<ak::LabeledInstance> out;
  for (std::size_t i = 0; i < n; ++i) {
    ak::LabeledInstance x;
    x.label = static_cast<int>(i % 2);  // exactly balanced
    const std::size_t ls = 3 + rng.below(8), lt = 3 + rng.below(8);
    for (std::size_t k = 0; k < ls; ++k) x.source_ids.push_back(3 + static_cast<int>(rng.below(27)));
    for (std::size_t k = 0; k < lt; ++k) x.mt_ids.push_back(3 + static_cast<int>(rng.below(27)));
    if (x.label == 0) x.mt_ids[rng.below(lt)] = kBadToken;
    out.push_back(std::move(x));
  }
  return out;
}

struct TokenRuleRun {
  std::string model_bytes;
  std::string log;
  double test_accuracy = 0;
  double baseline = 0;
  std::size_t epochs = 0;
};

TokenRuleRun token_rule_run() {
  ak::Rng rng(2024);
  ak::DatasetSplit data;
  data.train = token_rule_set(2000, rng);
  data.dev = token_rule_set(500, rng);
  data.test = token_rule_set(500, rng);
  ak::BirnnConfig c;
  c.max_len = 16;
  c.src_vocab = 30;
  c.tgt_vocab = 30;
  c.embed_dim = 8;
  c.rnn_hidden = 8;
  c.proj_dim = 16;
  c.penult_dim = 16;
  c.batch_size = 32;
  c.lr = 5e-3;
  c.max_epochs = 20;
  c.patience = 20;
  c.seed = 4;
  const auto trained = ak::train_birnn(data, c);
  std::vector<int> pred, gold;
  for (const auto& p : ak::birnn_predict_all(trained.params, c, data.test)) pred.push_back(p.label);
  for (const auto& x : data.test) gold.push_back(x.label);
  TokenRuleRun run;
  run.model_bytes = ak::birnn_to_bytes({c, trained.params, "seed=4"});
  run.log = ak::training_log_jsonl(trained.log);
  run.test_accuracy = ak::accuracy(ak::confusion(pred, gold));
  run.baseline = ak::accuracy(ak::baseline_accept_all(gold));
  run.epochs = trained.log.size();
  return run;
}

Outcome token_rule(const TokenRuleRun& run) {
  return {run.test_accuracy >= 0.90 && run.baseline <= 0.55 && run.epochs <= 20,
          fmt::format("test accuracy {:.4f} after {} epochs, accept-all {:.4f}", run.test_accuracy, run.epochs,
                      run.baseline)};
}

// ---------------------------------------------------------------------------
// Shared synthetic corpus for criteria 5-7.

constexpr std::size_t kCorpusPairs = 60'000;
constexpr std::size_t kDevSize = 3'000;
constexpr std::size_t kTestSize = 5'000;
constexpr std::size_t kEndToEndTrain = 20'000;
constexpr std::size_t kBiquestTrain = 20'000;

struct Corpus {
  akt::SyntheticCorpus synthetic;
  ak::DatasetSplit split;  // train holds the whole remaining pool
  double acceptable_fraction = 0;
};

Corpus build_corpus() {
  Corpus out;
  akt::SyntheticConfig sc;
  sc.pairs = kCorpusPairs;
  sc.seed = 11;
  out.synthetic = akt::make_synthetic_corpus(sc);

  ak::NoiseConfig noise;
  noise.drop_prob = 0.1;
  noise.substitute_prob = 0.3;
  noise.substitution_lexicon = out.synthetic.substitutions;
  noise.seed = 12;
  const auto records = ak::translate_batch(ak::NoiseAdapter(noise), out.synthetic.pairs);

  // Joint BPE over both languages.
  std::vector<ak::Tokens> text;
  for (const auto& p : out.synthetic.pairs) {
    text.push_back(p.source);
    text.push_back(p.reference);
  }
  const ak::BpeCodec bpe(ak::bpe_learn(text, 4000));
  std::vector<ak::Tokens> src_sub, tgt_sub;
  for (const auto& p : out.synthetic.pairs) {
    src_sub.push_back(bpe.apply(p.source));
    tgt_sub.push_back(bpe.apply(p.reference));
  }
  static const ak::Vocab src_vocab = ak::build_vocab(src_sub, 30'000);
  static const ak::Vocab tgt_vocab = ak::build_vocab(tgt_sub, 30'000);
  const ak::SubwordEncoder encoder{&bpe, &bpe, &src_vocab, &tgt_vocab};

  const ak::SubjectivityTask task(out.synthetic.subjectivity);
  auto annotated = ak::annotate(records, task, &encoder);
  out.split = ak::split_dataset(std::move(annotated.instances), kDevSize, kTestSize, 13);
  double acc = 0;
  for (const auto& x : out.split.test) acc += x.label;
  out.acceptable_fraction = acc / static_cast<double>(out.split.test.size());
  return out;
}

std::size_t vocab_bound(const std::vector<ak::LabeledInstance>& xs, bool source) {
  int top = 0;
  for (const auto& x : xs) {
    for (int id : source ? x.source_ids : x.mt_ids) top = std::max(top, id);
  }
  return static_cast<std::size_t>(top) + 1;
}

ak::BirnnConfig corpus_birnn_config(const Corpus& corpus, std::uint64_t seed) {
  ak::BirnnConfig c;
  c.max_len = 64;
  std::size_t sv = 0, tv = 0;
  for (const auto* part : {&corpus.split.train, &corpus.split.dev, &corpus.split.test}) {
    sv = std::max(sv, vocab_bound(*part, true));
    tv = std::max(tv, vocab_bound(*part, false));
  }
  c.src_vocab = sv;
  c.tgt_vocab = tv;
  c.embed_dim = 16;
  c.rnn_hidden = 16;
  c.proj_dim = 32;
  c.penult_dim = 32;
  c.batch_size = 32;
  c.lr = 2e-3;
  c.max_epochs = 8;
  c.patience = 2;
  c.seed = seed;
  return c;
}

struct BirnnRun {
  ak::BirnnConfig config;
  ak::BirnnTrainResult trained;
  std::vector<int> predictions;
  double accuracy = 0;
};

std::vector<int> golds(const std::vector<ak::LabeledInstance>& xs) {
  std::vector<int> y;
  for (const auto& x : xs) y.push_back(x.label);
  return y;
}

BirnnRun run_birnn(const Corpus& corpus, std::size_t train_size, std::uint64_t seed) {
  ak::DatasetSplit data;
  data.train.assign(corpus.split.train.begin(), corpus.split.train.begin() + static_cast<std::ptrdiff_t>(train_size));
  data.dev = corpus.split.dev;
  data.seed = corpus.split.seed;
  BirnnRun run;
  run.config = corpus_birnn_config(corpus, seed);
  run.trained = ak::train_birnn(data, run.config);
  for (const auto& p : ak::birnn_predict_all(run.trained.params, run.config, corpus.split.test)) {
    run.predictions.push_back(p.label);
  }
  run.accuracy = ak::accuracy(ak::confusion(run.predictions, golds(corpus.split.test)));
  return run;
}

struct BiquestRun {
  std::string model_text;
  std::vector<int> predictions;
  double accuracy = 0;
};

BiquestRun run_biquest(const Corpus& corpus) {
  // Feature resources come from the part of the pool the SVM never sees, so
  // train and test features are both out-of-sample.
  const auto& train = corpus.split.train;
  std::vector<ak::Tokens> src, ref;
  std::vector<ak::SentencePair> pairs;
  for (std::size_t i = kEndToEndTrain; i < train.size(); ++i) {
    src.push_back(train[i].source_text);
    ref.push_back(train[i].reference_text);
    pairs.push_back({train[i].source_text, train[i].reference_text});
  }
  const auto src_lm = ak::NgramLm::train(src);
  const auto tgt_lm = ak::NgramLm::train(ref);
  const auto stats = ak::SourceNgramStats::build(src);
  const auto lex = ak::ibm1_train(pairs, 5).table;
  const ak::FeatureResources res{&src_lm, &tgt_lm, &stats, &lex};

  std::vector<ak::FeatureVector17> train_feats, test_feats;
  std::vector<int> train_labels;
  for (std::size_t i = 0; i < kBiquestTrain; ++i) {
    train_feats.push_back(ak::extract_features17(train[i].source_text, train[i].mt_text, res));
    train_labels.push_back(train[i].label);
  }
  for (const auto& x : corpus.split.test) test_feats.push_back(ak::extract_features17(x.source_text, x.mt_text, res));

  const auto model = ak::train_biquest(train_feats, train_labels, ak::SvmOptions{});
  BiquestRun run;
  run.model_text = ak::svm_to_text(model, "seed=13");
  const Eigen::MatrixXd m = ak::feature_matrix(test_feats);
  for (Eigen::Index i = 0; i < m.rows(); ++i) run.predictions.push_back(ak::svm_predict(model, m.row(i).transpose()).label);
  run.accuracy = ak::accuracy(ak::confusion(run.predictions, golds(corpus.split.test)));
  return run;
}

struct EndToEnd {
  BirnnRun birnn;
  BiquestRun biquest;
  double baseline = 0;
  std::string report;  // detection reports of both detectors
};

EndToEnd end_to_end_run(const Corpus& corpus) {
  EndToEnd e;
  e.birnn = run_birnn(corpus, kEndToEndTrain, 1);
  e.biquest = run_biquest(corpus);
  const auto y = golds(corpus.split.test);
  e.baseline = ak::accuracy(ak::baseline_accept_all(y));
  e.report = ak::detection_report_json(ak::detection_report(e.birnn.predictions, y)) +
             ak::detection_report_json(ak::detection_report(e.biquest.predictions, y)) +
             ak::training_log_jsonl(e.birnn.trained.log);
  return e;
}

Outcome end_to_end(const Corpus& corpus, const EndToEnd& e) {
  const bool in_range = corpus.acceptable_fraction >= 0.6 && corpus.acceptable_fraction <= 0.8;
  return {in_range && e.birnn.accuracy - e.baseline >= 0.05 && e.biquest.accuracy - e.baseline >= 0.0,
          fmt::format("accept-all {:.4f}, BiRNN {:.4f} ({:+.4f}), BiQuEst {:.4f} ({:+.4f}, {} rejections)",
                      e.baseline, e.birnn.accuracy, e.birnn.accuracy - e.baseline, e.biquest.accuracy,
                      e.biquest.accuracy - e.baseline,
                      std::count(e.biquest.predictions.begin(), e.biquest.predictions.end(), 0))};
}

// ---------------------------------------------------------------------------
// 6. More training data does not hurt.

constexpr std::uint64_t kSeeds[] = {1, 2, 3};

Outcome data_size_trend(const Corpus& corpus, std::map<std::uint64_t, BirnnRun>& largest) {
  const std::size_t sizes[] = {2'000, 10'000, 50'000};
  std::vector<double> medians;
  std::string detail;
  for (std::size_t n : sizes) {
    const std::size_t take = std::min(n, corpus.split.train.size());
    std::vector<double> acc;
    for (std::uint64_t seed : kSeeds) {
      auto run = run_birnn(corpus, take, seed);
      acc.push_back(run.accuracy);
      if (n == sizes[2]) largest[seed] = std::move(run);
    }
    std::sort(acc.begin(), acc.end());
    medians.push_back(acc[1]);
    detail += fmt::format("{}: {:.4f} [{:.4f} {:.4f} {:.4f}]  ", take, acc[1], acc[0], acc[1], acc[2]);
  }
  const bool pass = corpus.split.train.size() >= sizes[2] && medians[0] <= medians[1] && medians[1] <= medians[2];
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// 7. Flip handler on the subjectivity pipeline.

Outcome flip_handler(const Corpus& corpus, const std::map<std::uint64_t, BirnnRun>& runs) {
  const ak::SubjectivityTask task(corpus.synthetic.subjectivity);
  bool pass = runs.size() == 3;
  std::string detail;
  for (const auto& [seed, run] : runs) {
    const auto r = ak::simulate_pipeline(run.predictions, corpus.split.test, task);
    const bool holds = r.detection.tn <= r.detection.fn || r.flip_accuracy > r.baseline_accuracy;
    pass = pass && holds;
    detail += fmt::format("seed {}: tn {} fn {} baseline {:.4f} flip {:.4f}  ", seed, r.detection.tn, r.detection.fn,
                          r.baseline_accuracy, r.flip_accuracy);
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// 8. Component oracle suites.

Outcome oracle_suites() {
  std::vector<std::string> failures;

  // IBM1 EM on 1k pairs.
  akt::SyntheticConfig sc;
  sc.pairs = 1000;
  sc.vocab_size = 300;
  sc.seed = 5;
  auto corpus = akt::make_synthetic_corpus(sc);
  // Break the one-to-one mapping a little so EM has something to do.
  ak::Rng rng(6);
  for (auto& p : corpus.pairs) {
    rng.shuffle(std::span<std::string>(p.reference));
    if (rng.uniform() < 0.5) p.reference.pop_back();
  }
  const auto ibm = ak::ibm1_train(corpus.pairs, 10);
  for (std::size_t i = 1; i < ibm.log_likelihood.size(); ++i) {
    if (ibm.log_likelihood[i] < ibm.log_likelihood[i - 1]) failures.push_back(fmt::format("ibm1 iteration {}", i));
  }

  // LM normalization over 100 random contexts.
  std::vector<ak::Tokens> sentences;
  for (const auto& p : corpus.pairs) sentences.push_back(p.source);
  const auto lm = ak::NgramLm::train(sentences);
  const auto words = lm.predictable_words();
  double worst_lm = 0;
  for (int i = 0; i < 100; ++i) {
    ak::Tokens context;
    for (std::size_t k = 0, n = rng.below(3); k < n; ++k) {
      const double u = rng.uniform();
      context.push_back(u < 0.1 ? std::string("<s>") : u < 0.2 ? std::string("zzz-unseen") : corpus.source_words[rng.below(300)]);
    }
    double sum = 0;
    for (const auto& w : words) sum += lm.prob(context, w);
    worst_lm = std::max(worst_lm, std::abs(sum - 1.0));
  }
  if (worst_lm > 1e-6) failures.push_back(fmt::format("lm |sum-1| = {:.3g}", worst_lm));

  // BPE roundtrip over 10k random tokens.
  std::vector<ak::Tokens> text;
  for (const auto& p : corpus.pairs) text.push_back(p.reference);
  const ak::BpeCodec bpe(ak::bpe_learn(text, 200));
  const std::string alphabet = "abcdeilmnorstuyz";
  ak::Tokens tokens;
  for (int i = 0; i < 10'000; ++i) {
    std::string t;
    for (std::size_t k = 0, n = 1 + rng.below(8); k < n; ++k) t += alphabet[rng.below(alphabet.size())];
    tokens.push_back(t);
  }
  if (ak::bpe_desegment(bpe.apply(tokens)) != tokens) failures.push_back("bpe roundtrip");

  // SMO against brute force on small fixtures.
  double worst_gap = 0;
  std::size_t kkt = 0, instances = 0;
  for (std::size_t n : {4u, 6u, 8u, 10u, 12u}) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      for (auto kernel : {ak::Kernel{ak::KernelType::kLinear, 0}, ak::Kernel{ak::KernelType::kRbf, 0.5}}) {
        const auto f = akt::random_svm_fixture(n, 3, 0.8, 100 * n + seed);
        ak::SvmOptions opt;
        opt.kernel = kernel;
        const auto smo = ak::svm_train(f.x, f.y, opt);
        const auto best = akt::brute_force_dual(f.x, f.y, kernel, opt.C);
        worst_gap = std::max(worst_gap, std::abs(smo.objective - best.objective));
        kkt += akt::kkt_violations(smo, f.x, f.y, 10 * opt.tol);
        ++instances;
      }
    }
  }
  if (worst_gap > 1e-4) failures.push_back(fmt::format("smo objective gap {:.3g}", worst_gap));
  if (kkt > 0) failures.push_back(fmt::format("{} kkt violations", kkt));

  std::string detail = fmt::format("ibm1 ll {:.2f} -> {:.2f}, lm max |sum-1| {:.2g}, smo {} instances max gap {:.2g}",
                                   ibm.log_likelihood.front(), ibm.log_likelihood.back(), worst_lm, instances, worst_gap);
  for (const auto& f : failures) detail += "; FAILED " + f;
  return {failures.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptkit acceptance suite"};
  std::vector<int> only;
  app.add_option("--only", only, "Run only these criteria (1-9)");
  CLI11_PARSE(app, argc, argv);
  const std::set<int> selected(only.begin(), only.end());
  auto wanted = [&](int k) { return selected.empty() || selected.contains(k); };

  int failures = 0;
  auto report = [&](int k, const std::string& title, const std::function<Outcome()>& fn) {
    if (!wanted(k)) return;
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = fn();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    fmt::print("criterion {}: {} {} ({:.1f} s) {}\n", k, o.pass ? "PASS" : "FAIL", title, secs, o.detail);
    std::fflush(stdout);
  };

  report(1, "published confusion-matrix accuracies", published_accuracies);
  report(2, "cross-lingual accuracy formulas", formula_cases);

  std::string grad_report;
  report(3, "BiRNN gradient check", [&] { return gradient_check(grad_report); });

  TokenRuleRun rule;
  report(4, "BiRNN learns a token rule", [&] {
    rule = token_rule_run();
    return token_rule(rule);
  });

  const bool need_corpus = wanted(5) || wanted(6) || wanted(7) || wanted(9);
  Corpus corpus;
  if (need_corpus) corpus = build_corpus();
  EndToEnd e2e;
  report(5, "end-to-end improvement over accept-all", [&] {
    e2e = end_to_end_run(corpus);
    return end_to_end(corpus, e2e);
  });

  std::map<std::uint64_t, BirnnRun> largest;
  report(6, "non-decreasing accuracy in training size", [&] { return data_size_trend(corpus, largest); });
  report(7, "flip handler beats untouched pipeline when tn > fn", [&] {
    if (largest.empty()) {
      for (std::uint64_t seed : kSeeds) largest[seed] = run_birnn(corpus, 50'000, seed);
    }
    return flip_handler(corpus, largest);
  });
  report(8, "IBM1/LM/BPE/SMO oracle suites", oracle_suites);

  report(9, "byte-identical reruns of criteria 3-5", [&] {
    std::vector<std::string> differs;
    if (grad_report.empty()) grad_report = gradient_report();
    if (gradient_report() != grad_report) differs.push_back("gradient report");
    if (rule.model_bytes.empty()) rule = token_rule_run();
    const auto rule2 = token_rule_run();
    if (rule2.model_bytes != rule.model_bytes) differs.push_back("token-rule model");
    if (rule2.log != rule.log) differs.push_back("token-rule log");
    if (e2e.report.empty()) e2e = end_to_end_run(corpus);
    const auto e2e2 = end_to_end_run(corpus);
    const auto bytes = [](const EndToEnd& e) { return ak::birnn_to_bytes({e.birnn.config, e.birnn.trained.params, ""}); };
    if (bytes(e2e2) != bytes(e2e)) differs.push_back("BiRNN model");
    if (e2e2.biquest.model_text != e2e.biquest.model_text) differs.push_back("BiQuEst model");
    if (e2e2.report != e2e.report) differs.push_back("reports");
    std::string detail = differs.empty() ? "all artifacts identical" : "differs:";
    for (const auto& d : differs) detail += " " + d;
    return Outcome{differs.empty(), detail};
  });

  return failures == 0 ? 0 : 1;
}
