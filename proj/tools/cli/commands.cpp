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

#include "commands.hpp"

#include <algorithm>
#include <filesystem>

#include <fmt/core.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "acceptkit/annotate.hpp"
#include "acceptkit/birnn_io.hpp"
#include "acceptkit/birnn_train.hpp"
#include "acceptkit/bpe.hpp"
#include "acceptkit/corpus.hpp"
#include "acceptkit/dataset_io.hpp"
#include "acceptkit/digest.hpp"
#include "acceptkit/error.hpp"
#include "acceptkit/eval.hpp"
#include "acceptkit/features.hpp"
#include "acceptkit/ibm1.hpp"
#include "acceptkit/lm.hpp"
#include "acceptkit/textio.hpp"
#include "acceptkit/vocab.hpp"

namespace acceptkit::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::vector<Tokens> side_corpus(std::span<const SentencePair> pairs, const std::string& side) {
  if (side != "joint" && side != "source" && side != "target") {
    throw UsageError(fmt::format("--side must be joint, source or target, not '{}'", side));
  }
  std::vector<Tokens> out;
  for (const auto& p : pairs) {
    if (side != "target") out.push_back(p.source);
    if (side != "source") out.push_back(p.reference);
  }
  return out;
}

std::string join_lines(const std::vector<Tokens>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    out += join(s);
    out += '\n';
  }
  return out;
}

// Keeps records whose source has at most `max_subwords` BPE units.
std::vector<TranslationRecord> filter_records(std::vector<TranslationRecord> records, const BpeCodec& bpe,
                                              std::size_t max_subwords) {
  if (max_subwords == 0) return records;
  std::vector<TranslationRecord> kept;
  for (auto& r : records) {
    if (bpe.apply(r.source).size() <= max_subwords) kept.push_back(std::move(r));
  }
  spdlog::info("kept {} of {} pairs with at most {} source subwords", kept.size(), records.size(), max_subwords);
  return kept;
}

void print_annotation_summary(std::ostream& out, const AnnotationResult& r) {
  std::size_t acceptable = 0;
  for (const auto& x : r.instances) acceptable += static_cast<std::size_t>(x.label);
  const std::size_t n = r.instances.size();
  const double share = n ? static_cast<double>(acceptable) / static_cast<double>(n) : 0.0;
  out << fmt::format("instances\t{}\nacceptable\t{}\t{:.4f}\nunacceptable\t{}\t{:.4f}\nskipped\t{}\n", n, acceptable,
                     share, n - acceptable, n ? 1.0 - share : 0.0, r.skipped.size());
}

DatasetHeader dataset_header(const std::string& task, const std::string& bpe, const std::string& src_vocab,
                             const std::string& tgt_vocab, const Context& ctx) {
  DatasetHeader h;
  h.task = task;
  if (!bpe.empty()) h.bpe_digest = file_sha256_hex(bpe);
  if (!src_vocab.empty()) h.src_vocab_digest = file_sha256_hex(src_vocab);
  if (!tgt_vocab.empty()) h.tgt_vocab_digest = file_sha256_hex(tgt_vocab);
  h.seed = ctx.seed;
  h.config_digest = ctx.config_digest;
  h.split = "all";
  return h;
}

void write_splits(const fs::path& dir, DatasetHeader header, const DatasetSplit& split) {
  fs::create_directories(dir);
  for (const auto& [name, part] : {std::pair{"train", &split.train}, {"dev", &split.dev}, {"test", &split.test}}) {
    header.split = name;
    save_dataset(dir / fmt::format("{}.jsonl", name), header, *part);
  }
}

DatasetSplit make_split(std::vector<LabeledInstance> instances, std::size_t dev, std::size_t test, bool downsample,
                        const Context& ctx) {
  DatasetSplit s = split_dataset(std::move(instances), dev, test, ctx.seed);
  if (downsample) s.train = downsample_majority(std::move(s.train), derive_seed(ctx.seed, 1));
  spdlog::info("split: train {} dev {} test {}", s.train.size(), s.dev.size(), s.test.size());
  return s;
}

BirnnConfig birnn_config(const BirnnFlags& flags, const std::vector<LabeledInstance>& train,
                         const std::vector<LabeledInstance>& dev, const Context& ctx) {
  BirnnConfig c = flags.config;
  c.seed = ctx.seed;
  if (!flags.src_vocab.empty()) {
    c.src_vocab = load_vocab(flags.src_vocab).size();
  } else {
    c.src_vocab = std::max(id_bound(train, true), id_bound(dev, true));
  }
  if (!flags.tgt_vocab.empty()) {
    c.tgt_vocab = load_vocab(flags.tgt_vocab).size();
  } else {
    c.tgt_vocab = std::max(id_bound(train, false), id_bound(dev, false));
  }
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return c;
}

BirnnModel train_birnn_model(const DatasetSplit& data, const BirnnConfig& config, const Context& ctx,
                             std::string& log) {
  if (data.train.empty() || data.dev.empty()) throw Error("train-birnn: train and dev sets must be non-empty");
  for (const auto* part : {&data.train, &data.dev}) {
    for (const auto& x : *part) {
      if (x.source_ids.empty() && x.mt_ids.empty()) {
        throw Error("train-birnn: instances carry no subword ids; annotate with --bpe and vocab files");
      }
    }
  }
  auto trained = train_birnn(data, config, ctx.jobs, [](const EpochLog& e) {
    spdlog::info("epoch {} loss {:.6f} dev {:.4f}{}", e.epoch, e.train_loss, e.dev_accuracy, e.best ? " *" : "");
  });
  log = training_log_jsonl(trained.log);
  *ctx.out << fmt::format("best_epoch\t{}\nbest_dev_accuracy\t{:.4f}\n", trained.best_epoch, trained.best_dev_accuracy);
  return BirnnModel{config, std::move(trained.params), ctx.provenance()};
}

struct QuestResources {
  NgramLm src_lm, tgt_lm;
  SourceNgramStats stats;
  LexTable lex;

  FeatureResources view() const { return {&src_lm, &tgt_lm, &stats, &lex}; }
};

QuestResources quest_resources(std::span<const LabeledInstance> instances, std::size_t ibm1_iterations) {
  std::vector<Tokens> src, ref;
  std::vector<SentencePair> pairs;
  for (const auto& x : instances) {
    src.push_back(x.source_text);
    ref.push_back(x.reference_text);
    pairs.push_back({x.source_text, x.reference_text});
  }
  return {NgramLm::train(src), NgramLm::train(ref), SourceNgramStats::build(src),
          ibm1_train(pairs, ibm1_iterations).table};
}

std::vector<FeatureVector17> features_of(std::span<const LabeledInstance> instances, const FeatureResources& res) {
  std::vector<FeatureVector17> rows;
  rows.reserve(instances.size());
  for (const auto& x : instances) rows.push_back(extract_features17(x.source_text, x.mt_text, res));
  return rows;
}

std::vector<Prediction> svm_predictions(const SvmModel& model, std::span<const FeatureVector17> rows) {
  const Eigen::MatrixXd m = feature_matrix(rows);
  std::vector<Prediction> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto p = svm_predict(model, m.row(i).transpose());
    out.push_back({p.label, p.decision});
  }
  return out;
}

std::vector<Prediction> birnn_predictions(const BirnnModel& model, std::span<const LabeledInstance> instances,
                                          std::size_t jobs) {
  std::vector<Prediction> out;
  for (const auto& p : birnn_predict_all(model.params, model.config, instances, jobs)) {
    out.push_back({p.label, p.probability});
  }
  return out;
}

std::vector<int> labels_of(const std::vector<Prediction>& predictions) {
  std::vector<int> y;
  for (const auto& p : predictions) y.push_back(p.label);
  return y;
}

struct EvalOutputs {
  std::string report;
  std::string decisions;
  std::string review;
};

EvalOutputs evaluate(const std::vector<int>& predictions, const std::vector<int>& golds,
                     const std::vector<LabeledInstance>* instances, const DownstreamTask* task, const Context& ctx) {
  if (predictions.size() != golds.size()) {
    throw Error(fmt::format("{} predictions for {} gold labels", predictions.size(), golds.size()));
  }
  json j;
  j["command"] = ctx.command;
  j["seed"] = ctx.seed;
  j["config_digest"] = ctx.config_digest;
  j["detection"] = json::parse(detection_report_json(detection_report(predictions, golds)));
  EvalOutputs out;
  if (task) {
    const auto r = simulate_pipeline(predictions, *instances, *task);
    j["pipeline"] = json::parse(pipeline_report_json(r));
    out.decisions = pipeline_decisions_tsv(r);
    out.review = review_file(r, *instances);
  }
  out.report = j.dump(2) + '\n';
  return out;
}

}  // namespace

SvmOptions SvmFlags::options() const {
  SvmOptions o;
  if (kernel == "rbf") {
    o.kernel = Kernel{KernelType::kRbf, gamma};
  } else if (kernel == "linear") {
    o.kernel = Kernel{KernelType::kLinear, 0.0};
  } else {
    throw UsageError(fmt::format("--kernel must be rbf or linear, not '{}'", kernel));
  }
  if (!(C > 0) || !(tol > 0) || (o.kernel.type == KernelType::kRbf && !(gamma > 0))) {
    throw UsageError("--C, --tol and --gamma must be positive");
  }
  o.C = C;
  o.tol = tol;
  o.kernel_cache_mb = cache_mb;
  return o;
}

void run_bpe_learn(const BpeLearnOptions& o, const Context& ctx) {
  const auto pairs = load_parallel(o.pairs);
  const auto model = bpe_learn(side_corpus(pairs, o.side), o.merges);
  save_bpe(model, o.out, fmt::format("{} side={}", ctx.provenance(), o.side));
  *ctx.out << fmt::format("merges\t{}\n", model.num_merges());
}

void run_bpe_apply(const BpeApplyOptions& o, const Context& ctx) {
  const BpeCodec codec(load_bpe(o.bpe));
  std::vector<Tokens> out;
  for (const auto& line : read_lines(o.input)) out.push_back(codec.apply(tokenize(line)));
  write_with_sidecar(o.out, join_lines(out), ctx);
}

void run_vocab(const VocabOptions& o, const Context& ctx) {
  if (o.side == "joint") throw UsageError("--side must be source or target for a vocabulary");
  const auto pairs = load_parallel(o.pairs);
  const BpeCodec codec(load_bpe(o.bpe));
  std::vector<Tokens> corpus;
  for (const auto& s : side_corpus(pairs, o.side)) corpus.push_back(codec.apply(s));
  const Vocab vocab = build_vocab(corpus, o.max_size);
  write_with_sidecar(o.out, vocab_to_text(vocab), ctx);
  *ctx.out << fmt::format("entries\t{}\n", vocab.size());
}

void run_translate(const TranslateOptions& o, const Context& ctx) {
  const auto pairs = load_parallel(o.pairs);
  const auto adapter = make_adapter(o.adapter, ctx);
  std::vector<Tokens> mt;
  for (auto& r : translate_batch(*adapter, pairs)) mt.push_back(std::move(r.mt));
  write_with_sidecar(o.out, join_lines(mt), ctx);
}

void run_annotate(const AnnotateOptions& o, const Context& ctx) {
  const bool encode = !o.bpe.empty();
  if (encode != !o.src_vocab.empty() || encode != !o.tgt_vocab.empty()) {
    throw UsageError("--bpe, --src-vocab and --tgt-vocab go together");
  }
  const auto task = make_task(o.task);
  const auto pairs = load_parallel(o.pairs);
  auto records = translate_batch(FileAdapter::load(o.mt), pairs);

  std::optional<BpeCodec> bpe;
  Vocab src_vocab, tgt_vocab;
  if (encode) {
    bpe.emplace(load_bpe(o.bpe));
    src_vocab = load_vocab(o.src_vocab);
    tgt_vocab = load_vocab(o.tgt_vocab);
    records = filter_records(std::move(records), *bpe, o.max_subwords);
  }
  const SubwordEncoder encoder{bpe ? &*bpe : nullptr, bpe ? &*bpe : nullptr, &src_vocab, &tgt_vocab};
  const auto result = annotate(records, *task, encode ? &encoder : nullptr, ctx.jobs);
  save_dataset(o.out, dataset_header(task->name(), o.bpe, o.src_vocab, o.tgt_vocab, ctx), result.instances);
  print_annotation_summary(*ctx.out, result);
}

void run_split(const SplitOptions& o, const Context& ctx) {
  auto ds = load_dataset(o.data);
  const auto split = make_split(std::move(ds.instances), o.dev, o.test, o.downsample, ctx);
  ds.header.seed = ctx.seed;
  ds.header.config_digest = ctx.config_digest;
  write_splits(o.out_dir, ds.header, split);
  *ctx.out << fmt::format("train\t{}\ndev\t{}\ntest\t{}\n", split.train.size(), split.dev.size(), split.test.size());
}

void run_lm_train(const LmTrainOptions& o, const Context& ctx) {
  if (o.side == "joint") throw UsageError("--side must be source or target for a language model");
  const auto corpus = side_corpus(load_parallel(o.pairs), o.side);
  NgramLm::train(corpus, o.order, o.discount).save(o.out, ctx.provenance());
  if (!o.ngrams_out.empty()) SourceNgramStats::build(corpus).save(o.ngrams_out, ctx.provenance());
}

void run_ibm1_train(const Ibm1TrainOptions& o, const Context& ctx) {
  const auto result = ibm1_train(load_parallel(o.pairs), o.iterations);
  result.table.save(o.out, ctx.provenance());
  for (std::size_t i = 0; i < result.log_likelihood.size(); ++i) {
    *ctx.out << fmt::format("iteration\t{}\tlog_likelihood\t{}\n", i, format_double(result.log_likelihood[i]));
  }
}

void run_features(const FeaturesOptions& o, const Context& ctx) {
  const auto ds = load_dataset(o.data);
  const auto src_lm = NgramLm::load(o.src_lm);
  const auto tgt_lm = NgramLm::load(o.tgt_lm);
  const auto stats = SourceNgramStats::load(o.ngrams);
  const auto lex = LexTable::load(o.lex);
  const FeatureResources res{&src_lm, &tgt_lm, &stats, &lex};
  write_with_sidecar(o.out, features_to_tsv(features_of(ds.instances, res), labels_of(ds.instances)), ctx);
}

void run_train_biquest(const TrainBiquestOptions& o, const Context& ctx) {
  const auto options = o.svm.options();
  const auto table = features_from_tsv(read_file(o.features), o.features);
  const auto model = train_biquest(table.rows, table.labels, options);
  save_svm(model, o.out, ctx.provenance());
  *ctx.out << fmt::format("support_vectors\t{}\n", model.support_vectors.rows());
}

void run_train_birnn(const TrainBirnnOptions& o, const Context& ctx) {
  DatasetSplit data;
  data.train = load_dataset(o.train).instances;
  data.dev = load_dataset(o.dev).instances;
  data.seed = ctx.seed;
  const auto config = birnn_config(o.birnn, data.train, data.dev, ctx);
  std::string log;
  const auto model = train_birnn_model(data, config, ctx, log);
  save_birnn(model, o.out);
  if (!o.log.empty()) write_with_sidecar(o.log, log, ctx);
}

void run_predict(const PredictOptions& o, const Context& ctx) {
  const std::string bytes = read_file(o.model);
  std::vector<Prediction> preds;
  if (bytes.starts_with(std::string_view("AKBIRNN\0", 8))) {
    if (o.data.empty()) throw UsageError("a BiRNN model needs --data <dataset.jsonl>");
    const auto model = birnn_from_bytes(bytes, o.model);
    preds = birnn_predictions(model, load_dataset(o.data).instances, ctx.jobs);
  } else if (bytes.starts_with("#svm v1")) {
    if (o.features.empty()) throw UsageError("a BiQuEst model needs --features <features.tsv>");
    const auto model = svm_from_text(bytes, o.model);
    preds = svm_predictions(model, features_from_tsv(read_file(o.features), o.features).rows);
  } else {
    throw ParseError(o.model, 1, "not a BiRNN or BiQuEst model file");
  }
  write_file_atomic(o.out, predictions_to_tsv(preds, ctx));
}

void run_eval(const EvalOptions& o, const Context& ctx) {
  const auto preds = labels_of(load_predictions(o.pred));
  std::shared_ptr<const DownstreamTask> task;
  std::vector<LabeledInstance> instances;
  std::vector<int> golds;
  if (!o.task.task.empty()) {
    task = make_task(o.task);
    instances = load_dataset(o.gold).instances;
    golds = labels_of(instances);
  } else {
    golds = load_gold_labels(o.gold);
  }
  if ((!o.decisions.empty() || !o.review.empty()) && !task) {
    throw UsageError("--decisions and --review need --task");
  }
  const auto out = evaluate(preds, golds, &instances, task.get(), ctx);
  if (o.out.empty()) {
    *ctx.out << out.report;
  } else {
    write_file_atomic(o.out, out.report);
  }
  if (!o.decisions.empty()) write_file_atomic(o.decisions, out.decisions);
  if (!o.review.empty()) write_file_atomic(o.review, out.review);
}

void run_pipeline(const PipelineOptions& o, const Context& ctx) {
  if (o.detector != "birnn" && o.detector != "biquest" && o.detector != "both") {
    throw UsageError("--detector must be birnn, biquest or both");
  }
  const auto task = make_task(o.task);
  const auto adapter = make_adapter(o.adapter, ctx);
  const fs::path dir = o.out_dir;
  fs::create_directories(dir);
  const std::string prov = ctx.provenance();

  const auto pairs = load_parallel(o.pairs);
  const BpeCodec bpe(bpe_learn(side_corpus(pairs, "joint"), o.merges));
  save_bpe(bpe.model(), dir / "bpe.txt", prov + " side=joint");

  auto records = translate_batch(*adapter, pairs);
  {
    std::vector<Tokens> mt;
    for (const auto& r : records) mt.push_back(r.mt);
    write_with_sidecar(dir / "mt.txt", join_lines(mt), ctx);
  }
  records = filter_records(std::move(records), bpe, o.max_subwords);

  std::vector<Tokens> src_sub, tgt_sub;
  for (const auto& r : records) {
    src_sub.push_back(bpe.apply(r.source));
    tgt_sub.push_back(bpe.apply(r.reference));
  }
  const Vocab src_vocab = build_vocab(src_sub, o.vocab_size);
  const Vocab tgt_vocab = build_vocab(tgt_sub, o.vocab_size);
  write_with_sidecar(dir / "src.vocab", vocab_to_text(src_vocab), ctx);
  write_with_sidecar(dir / "tgt.vocab", vocab_to_text(tgt_vocab), ctx);

  const SubwordEncoder encoder{&bpe, &bpe, &src_vocab, &tgt_vocab};
  auto annotated = annotate(records, *task, &encoder, ctx.jobs);
  print_annotation_summary(*ctx.out, annotated);
  const auto header = dataset_header(task->name(), (dir / "bpe.txt").string(), (dir / "src.vocab").string(),
                                     (dir / "tgt.vocab").string(), ctx);
  save_dataset(dir / "data.jsonl", header, annotated.instances);
  const auto split = make_split(std::move(annotated.instances), o.dev, o.test, o.downsample, ctx);
  write_splits(dir, header, split);

  const bool binary = task->binary_labels().has_value();
  const auto golds = labels_of(split.test);
  auto report = [&](const std::string& name, const std::vector<Prediction>& preds) {
    write_file_atomic(dir / fmt::format("predictions.{}.tsv", name), predictions_to_tsv(preds, ctx));
    const auto out = evaluate(labels_of(preds), golds, &split.test, binary ? task.get() : nullptr, ctx);
    write_file_atomic(dir / fmt::format("report.{}.json", name), out.report);
    if (binary) {
      write_file_atomic(dir / fmt::format("decisions.{}.tsv", name), out.decisions);
      write_file_atomic(dir / fmt::format("review.{}.tsv", name), out.review);
    }
    const auto cm = confusion(labels_of(preds), golds);
    *ctx.out << fmt::format("{}_accuracy\t{:.4f}\naccept_all_accuracy\t{:.4f}\n", name, accuracy(cm),
                            accuracy(baseline_accept_all(golds)));
  };

  if (o.detector != "biquest") {
    BirnnFlags flags = o.birnn;
    flags.src_vocab = (dir / "src.vocab").string();
    flags.tgt_vocab = (dir / "tgt.vocab").string();
    const auto config = birnn_config(flags, split.train, split.dev, ctx);
    std::string log;
    const auto model = train_birnn_model(split, config, ctx, log);
    save_birnn(model, dir / "birnn.bin");
    write_with_sidecar(dir / "birnn.log.jsonl", log, ctx);
    report("birnn", birnn_predictions(model, split.test, ctx.jobs));
  }
  if (o.detector != "birnn") {
    // Resources come from the first half of the training split and the SVM
    // is fit on the second half, so that training features are computed on
    // unseen sentences like test features.
    const std::size_t half = split.train.size() / 2;
    const std::span<const LabeledInstance> train(split.train);
    if (half < 2) throw Error("pipeline: training split too small for BiQuEst");
    const auto res = quest_resources(train.first(half), o.ibm1_iterations);
    res.src_lm.save(dir / "src.lm", prov);
    res.tgt_lm.save(dir / "tgt.lm", prov);
    res.stats.save(dir / "ngrams.txt", prov);
    res.lex.save(dir / "lex.txt", prov);
    const auto fit_rows = features_of(train.subspan(half), res.view());
    std::vector<int> fit_labels;
    for (const auto& x : train.subspan(half)) fit_labels.push_back(x.label);
    const auto test_rows = features_of(split.test, res.view());
    write_with_sidecar(dir / "features.train.tsv", features_to_tsv(fit_rows, fit_labels), ctx);
    write_with_sidecar(dir / "features.test.tsv", features_to_tsv(test_rows, golds), ctx);
    const auto model = train_biquest(fit_rows, fit_labels, o.svm.options());
    save_svm(model, dir / "biquest.svm", prov);
    report("biquest", svm_predictions(model, test_rows));
  }
}

}  // namespace acceptkit::cli
