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

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "acceptkit/digest.hpp"
#include "acceptkit/error.hpp"
#include "commands.hpp"

namespace acceptkit::cli {

namespace {

constexpr const char* kFormats = R"(File formats:
  parallel corpus   UTF-8 TSV, "source<TAB>reference" per line
  translations      plain text, one MT sentence per line, aligned with the corpus
  lexicon           TSV "token<TAB>weight"
  gazetteer         TSV "phrase<TAB>type" (PER, LOC, ORG)
  substitutions     TSV "word<TAB>replacement" for the noise adapter
  task plug-in      sentences on stdin; one "LABEL <name>" or
                    "ENTITIES <type>:<surface>;..." line per sentence on stdout
  bpe model         "#bpe v1 <merges> <provenance>", then "left right" per line
  vocab             one subword per line; line k holds id k+2 (0 PAD, 1 UNK)
  dataset           JSON lines; header record (format, version, task, digests,
                    seed, config_digest, split), then {src, mt, ref, label,
                    src_ids, mt_ids} per instance
  language model    "#lm v1 order=<n> discount=<D> <provenance>", then
                    "w1 ... wn<TAB>count"
  n-gram stats      "#ngrams v1 <provenance>", then "n<TAB>ngram<TAB>count"
  lexical table     "#lex v1 <provenance>", then "source<TAB>target<TAB>prob"
  features          TSV with header f1..f17, label
  BiQuEst model     "#svm v1 <provenance>" text: kernel, C, bias, scaler, vectors
  BiRNN model       binary "AKBIRNN\0", u32 version, meta, config, named f64
                    tensors (column-major), trailing SHA-256
  training log      JSON lines {epoch, train_loss, dev_accuracy, best}
  predictions       "#predictions v1 <provenance>", then "index<TAB>label<TAB>score"
  report            JSON: detection confusion matrix and accuracies, and for
                    binary tasks the flip-handler simulation
Files without a header line get a "<file>.meta.json" sidecar holding the
seed and config digest. <provenance> is "seed=<n> config=<digest>".
Exit status: 0 success, 1 usage error, 2 data error.
Log level: --log-level or ACCEPTKIT_LOG_LEVEL (trace, debug, info, warn, error).)";

struct Common {
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string log_level;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--seed", common.seed, "Master random seed")->capture_default_str();
  sub->add_option("--jobs", common.jobs, "Worker threads for per-sentence stages")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--log-level", common.log_level, "trace, debug, info, warn or error");
}

void add_task(CLI::App* sub, TaskOptions& t, bool required) {
  auto* opt = sub->add_option("--task", t.task, "sentiment, subjectivity, ner, external, or a '+' tuple");
  if (required) opt->required();
  sub->add_option("--lexicon", t.lexicon, "Sentiment or subjectivity lexicon TSV")->check(CLI::ExistingFile);
  sub->add_option("--gazetteer", t.gazetteer, "Gazetteer TSV for ner")->check(CLI::ExistingFile);
  sub->add_option("--task-command", t.command, "External task plug-in command");
  sub->add_option("--labels", t.labels, "The two labels of a binary external task, 'a,b'");
  sub->add_option("--entity-match", t.entity_match, "ner agreement: typed or count")->capture_default_str();
  sub->add_option("--theta", t.theta, "Sentiment score threshold")->capture_default_str();
}

void add_adapter(CLI::App* sub, AdapterOptions& a) {
  sub->add_option("--adapter", a.adapter, "noise, file or command")->capture_default_str();
  sub->add_option("--translations", a.translations, "Translations file for --adapter file")
      ->check(CLI::ExistingFile);
  sub->add_option("--mt-command", a.command, "Translation command for --adapter command");
  sub->add_option("--drop", a.drop, "Noise: token drop probability")->capture_default_str();
  sub->add_option("--swap", a.swap, "Noise: adjacent swap probability")->capture_default_str();
  sub->add_option("--substitute", a.substitute, "Noise: substitution probability")->capture_default_str();
  sub->add_option("--substitutions", a.substitutions, "Noise: substitution lexicon TSV")->check(CLI::ExistingFile);
}

void add_birnn(CLI::App* sub, BirnnFlags& b) {
  auto& c = b.config;
  sub->add_option("--src-vocab", b.src_vocab, "Source vocab file (sets the embedding rows)")->check(CLI::ExistingFile);
  sub->add_option("--tgt-vocab", b.tgt_vocab, "Target vocab file")->check(CLI::ExistingFile);
  sub->add_option("--max-len", c.max_len, "Subwords kept per side")->capture_default_str();
  sub->add_option("--embed", c.embed_dim, "Embedding size")->capture_default_str();
  sub->add_option("--hidden", c.rnn_hidden, "GRU size per direction")->capture_default_str();
  sub->add_option("--proj", c.proj_dim, "Projection size")->capture_default_str();
  sub->add_option("--penult", c.penult_dim, "Penultimate layer size")->capture_default_str();
  sub->add_option("--dropout", c.dropout, "Embedding dropout")->capture_default_str();
  sub->add_option("--batch", c.batch_size, "Mini-batch size")->capture_default_str();
  sub->add_option("--lr", c.lr, "Adam learning rate")->capture_default_str();
  sub->add_option("--patience", c.patience, "Early-stopping patience in epochs")->capture_default_str();
  sub->add_option("--max-epochs", c.max_epochs, "Epoch limit")->capture_default_str();
}

void add_svm(CLI::App* sub, SvmFlags& s) {
  sub->add_option("--kernel", s.kernel, "rbf or linear")->capture_default_str();
  sub->add_option("--gamma", s.gamma, "RBF width")->capture_default_str();
  sub->add_option("--C", s.C, "Soft-margin penalty")->capture_default_str();
  sub->add_option("--tol", s.tol, "SMO stopping tolerance")->capture_default_str();
  sub->add_option("--cache-mb", s.cache_mb, "Kernel memory budget")->capture_default_str();
}

CLI::Option* input(CLI::App* sub, const std::string& name, std::string& target, const std::string& what) {
  return sub->add_option(name, target, what)->required()->check(CLI::ExistingFile);
}

CLI::Option* output(CLI::App* sub, const std::string& name, std::string& target, const std::string& what) {
  return sub->add_option(name, target, what)->required();
}

// Digest over the subcommand's effective configuration, leaving out flags
// that cannot change the outputs.
std::string config_digest(const CLI::App* sub) {
  std::istringstream in(sub->config_to_str(true, false));
  std::string kept, line;
  while (std::getline(in, line)) {
    if (line.starts_with("jobs=") || line.starts_with("log-level=")) continue;
    kept += line;
    kept += '\n';
  }
  return sha256_hex(fmt::format("{}\n{}", sub->get_name(), kept)).substr(0, 16);
}

void configure_logging(const std::string& flag) {
  static const auto logger = [] {
    auto l = spdlog::stderr_color_mt("acceptkit");
    l->set_pattern("[%l] %v");
    spdlog::set_default_logger(l);
    return l;
  }();
  std::string level = flag;
  if (level.empty()) {
    const char* env = std::getenv("ACCEPTKIT_LOG_LEVEL");
    level = env ? env : "warn";
  }
  const auto parsed = spdlog::level::from_str(level);
  if (parsed == spdlog::level::off && level != "off") throw UsageError(fmt::format("unknown log level '{}'", level));
  logger->set_level(parsed);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"acceptkit: task-specific acceptability labels and detectors for MT output"};
  app.footer(kFormats);
  app.require_subcommand(1);
  app.fallthrough(false);

  Common common;
  std::function<void(const Context&)> action;
  auto bind = [&](CLI::App* sub, std::function<void(const Context&)> fn) {
    add_common(sub, common);
    sub->callback([&action, fn] { action = fn; });
  };

  BpeLearnOptions bpe_learn_o;
  auto* s = app.add_subcommand("bpe-learn", "Learn BPE merges from a parallel corpus");
  input(s, "--pairs", bpe_learn_o.pairs, "Parallel corpus TSV");
  s->add_option("--merges", bpe_learn_o.merges, "Number of merges")->capture_default_str();
  s->add_option("--side", bpe_learn_o.side, "joint, source or target")->capture_default_str();
  output(s, "--out", bpe_learn_o.out, "BPE model file");
  bind(s, [&](const Context& c) { run_bpe_learn(bpe_learn_o, c); });

  BpeApplyOptions bpe_apply_o;
  s = app.add_subcommand("bpe-apply", "Segment plain text with a BPE model");
  input(s, "--bpe", bpe_apply_o.bpe, "BPE model file");
  input(s, "--in", bpe_apply_o.input, "Plain text, one sentence per line");
  output(s, "--out", bpe_apply_o.out, "Segmented text");
  bind(s, [&](const Context& c) { run_bpe_apply(bpe_apply_o, c); });

  VocabOptions vocab_o;
  s = app.add_subcommand("vocab", "Build a subword vocabulary");
  input(s, "--pairs", vocab_o.pairs, "Parallel corpus TSV");
  input(s, "--bpe", vocab_o.bpe, "BPE model file");
  s->add_option("--side", vocab_o.side, "source or target")->capture_default_str();
  s->add_option("--max-size", vocab_o.max_size, "Entries kept, most frequent first")->capture_default_str();
  output(s, "--out", vocab_o.out, "Vocab file");
  bind(s, [&](const Context& c) { run_vocab(vocab_o, c); });

  TranslateOptions translate_o;
  s = app.add_subcommand("translate", "Produce MT output through an adapter");
  input(s, "--pairs", translate_o.pairs, "Parallel corpus TSV");
  add_adapter(s, translate_o.adapter);
  output(s, "--out", translate_o.out, "Translations file");
  bind(s, [&](const Context& c) { run_translate(translate_o, c); });

  AnnotateOptions annotate_o;
  s = app.add_subcommand("annotate", "Label translations by downstream agreement with the reference");
  input(s, "--pairs", annotate_o.pairs, "Parallel corpus TSV");
  input(s, "--mt", annotate_o.mt, "Translations file");
  add_task(s, annotate_o.task, true);
  s->add_option("--bpe", annotate_o.bpe, "BPE model for subword ids")->check(CLI::ExistingFile);
  s->add_option("--src-vocab", annotate_o.src_vocab, "Source vocab file")->check(CLI::ExistingFile);
  s->add_option("--tgt-vocab", annotate_o.tgt_vocab, "Target vocab file")->check(CLI::ExistingFile);
  s->add_option("--max-subwords", annotate_o.max_subwords, "Source length filter with --bpe; 0 disables")
      ->capture_default_str();
  output(s, "--out", annotate_o.out, "Dataset JSONL");
  bind(s, [&](const Context& c) { run_annotate(annotate_o, c); });

  SplitOptions split_o;
  s = app.add_subcommand("split", "Shuffle a dataset into train/dev/test");
  input(s, "--data", split_o.data, "Dataset JSONL");
  s->add_option("--dev", split_o.dev, "Dev size")->capture_default_str();
  s->add_option("--test", split_o.test, "Test size")->capture_default_str();
  s->add_flag("--downsample", split_o.downsample, "Balance the training classes");
  output(s, "--out-dir", split_o.out_dir, "Directory for train/dev/test.jsonl");
  bind(s, [&](const Context& c) { run_split(split_o, c); });

  LmTrainOptions lm_o;
  s = app.add_subcommand("lm-train", "Train a Kneser-Ney n-gram language model");
  input(s, "--pairs", lm_o.pairs, "Parallel corpus TSV");
  s->add_option("--side", lm_o.side, "source or target")->capture_default_str();
  s->add_option("--order", lm_o.order, "N-gram order")->capture_default_str();
  s->add_option("--discount", lm_o.discount, "Absolute discount")->capture_default_str();
  output(s, "--out", lm_o.out, "Language model file");
  s->add_option("--ngrams-out", lm_o.ngrams_out, "Also write n-gram frequency quartiles of the corpus side");
  bind(s, [&](const Context& c) { run_lm_train(lm_o, c); });

  Ibm1TrainOptions ibm1_o;
  s = app.add_subcommand("ibm1-train", "Train an IBM Model 1 lexical table");
  input(s, "--pairs", ibm1_o.pairs, "Parallel corpus TSV");
  s->add_option("--iterations", ibm1_o.iterations, "EM iterations")->capture_default_str();
  output(s, "--out", ibm1_o.out, "Lexical table file");
  bind(s, [&](const Context& c) { run_ibm1_train(ibm1_o, c); });

  FeaturesOptions features_o;
  s = app.add_subcommand("features", "Extract the 17 black-box QE features");
  input(s, "--data", features_o.data, "Dataset JSONL");
  input(s, "--src-lm", features_o.src_lm, "Source language model");
  input(s, "--tgt-lm", features_o.tgt_lm, "Target language model");
  input(s, "--ngrams", features_o.ngrams, "Source n-gram stats");
  input(s, "--lex", features_o.lex, "Lexical table");
  output(s, "--out", features_o.out, "Feature TSV");
  bind(s, [&](const Context& c) { run_features(features_o, c); });

  TrainBiquestOptions biquest_o;
  s = app.add_subcommand("train-biquest", "Train the feature-based SVM detector");
  input(s, "--features", biquest_o.features, "Feature TSV");
  add_svm(s, biquest_o.svm);
  output(s, "--out", biquest_o.out, "Model file");
  bind(s, [&](const Context& c) { run_train_biquest(biquest_o, c); });

  TrainBirnnOptions birnn_o;
  s = app.add_subcommand("train-birnn", "Train the neural detector");
  input(s, "--train", birnn_o.train, "Training dataset JSONL");
  input(s, "--dev", birnn_o.dev, "Dev dataset JSONL");
  add_birnn(s, birnn_o.birnn);
  output(s, "--out", birnn_o.out, "Model file");
  s->add_option("--log", birnn_o.log, "Training log JSONL");
  bind(s, [&](const Context& c) { run_train_birnn(birnn_o, c); });

  PredictOptions predict_o;
  s = app.add_subcommand("predict", "Apply a trained detector");
  input(s, "--model", predict_o.model, "BiRNN or BiQuEst model file");
  s->add_option("--data", predict_o.data, "Dataset JSONL (BiRNN)")->check(CLI::ExistingFile);
  s->add_option("--features", predict_o.features, "Feature TSV (BiQuEst)")->check(CLI::ExistingFile);
  output(s, "--out", predict_o.out, "Predictions TSV");
  bind(s, [&](const Context& c) { run_predict(predict_o, c); });

  EvalOptions eval_o;
  s = app.add_subcommand("eval", "Score predictions and simulate the flip handler");
  input(s, "--pred", eval_o.pred, "Predictions TSV");
  input(s, "--gold", eval_o.gold, "Dataset JSONL or feature TSV");
  add_task(s, eval_o.task, false);
  s->add_option("--decisions", eval_o.decisions, "Per-instance pipeline decisions TSV");
  s->add_option("--review", eval_o.review, "Rejected instances for human review");
  s->add_option("--out", eval_o.out, "Report JSON (default: stdout)");
  bind(s, [&](const Context& c) { run_eval(eval_o, c); });

  PipelineOptions pipeline_o;
  s = app.add_subcommand("pipeline", "Annotate, train and evaluate in one seeded run");
  input(s, "--pairs", pipeline_o.pairs, "Parallel corpus TSV");
  add_adapter(s, pipeline_o.adapter);
  add_task(s, pipeline_o.task, true);
  s->add_option("--merges", pipeline_o.merges, "BPE merges (joint)")->capture_default_str();
  s->add_option("--vocab-size", pipeline_o.vocab_size, "Vocab entries per side")->capture_default_str();
  s->add_option("--max-subwords", pipeline_o.max_subwords, "Source length filter; 0 disables")
      ->capture_default_str();
  s->add_option("--dev", pipeline_o.dev, "Dev size")->capture_default_str();
  s->add_option("--test", pipeline_o.test, "Test size")->capture_default_str();
  s->add_flag("--downsample", pipeline_o.downsample, "Balance the training classes");
  s->add_option("--detector", pipeline_o.detector, "birnn, biquest or both")->capture_default_str();
  add_birnn(s, pipeline_o.birnn);
  add_svm(s, pipeline_o.svm);
  s->add_option("--ibm1-iterations", pipeline_o.ibm1_iterations, "EM iterations for BiQuEst")
      ->capture_default_str();
  output(s, "--out-dir", pipeline_o.out_dir, "Output directory");
  bind(s, [&](const Context& c) { run_pipeline(pipeline_o, c); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    if (code != 0 && app.get_subcommands().empty()) err << "Run 'acceptkit --help' for the list of subcommands.\n";
    return code == 0 ? kExitOk : kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  Context ctx;
  ctx.command = sub->get_name();
  ctx.seed = common.seed;
  ctx.jobs = common.jobs;
  ctx.config_digest = config_digest(sub);
  ctx.out = &out;
  try {
    configure_logging(common.log_level);
    action(ctx);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace acceptkit::cli
