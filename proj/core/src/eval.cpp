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

#include "acceptkit/eval.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "acceptkit/error.hpp"

namespace acceptkit {

namespace {

double ratio(std::size_t a, std::size_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); }

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument(fmt::format("{} must lie in [0, 1], got {}", name, x));
}

nlohmann::ordered_json cm_json(const ConfusionMatrix& cm) {
  return {{"tp", cm.tp}, {"fp", cm.fp}, {"tn", cm.tn}, {"fn", cm.fn}};
}

std::vector<std::string> labels_of(const DownstreamTask& task, std::span<const Tokens> sentences,
                                   const std::array<std::string, 2>& allowed) {
  const auto outputs = task.run_batch(sentences);
  std::vector<std::string> labels;
  labels.reserve(outputs.size());
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (!outputs[i] || !outputs[i]->is_label()) {
      throw Error(fmt::format("simulate_pipeline: task {} gave no label for instance {}", task.name(), i));
    }
    const auto& name = outputs[i]->label().name;
    if (name != allowed[0] && name != allowed[1]) {
      throw Error(fmt::format("simulate_pipeline: label '{}' is not one of the task's two labels", name));
    }
    labels.push_back(name);
  }
  return labels;
}

}  // namespace

ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> golds) {
  if (predictions.size() != golds.size()) {
    throw InvalidArgument(fmt::format("confusion: {} predictions for {} gold labels", predictions.size(), golds.size()));
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    if (predictions[i] != 0 && predictions[i] != 1) throw InvalidArgument("confusion: predictions must be 0 or 1");
    if (golds[i] != 0 && golds[i] != 1) throw InvalidArgument("confusion: gold labels must be 0 or 1");
    if (predictions[i]) {
      ++(golds[i] ? cm.tp : cm.fp);
    } else {
      ++(golds[i] ? cm.fn : cm.tn);
    }
  }
  return cm;
}

double accuracy(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw InvalidArgument("accuracy: empty confusion matrix");
  return ratio(cm.tp + cm.tn, cm.total());
}

double error_rate(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw InvalidArgument("error_rate: empty confusion matrix");
  return ratio(cm.fp + cm.fn, cm.total());
}

double precision(const ConfusionMatrix& cm) { return ratio(cm.tp, cm.tp + cm.fp); }
double recall(const ConfusionMatrix& cm) { return ratio(cm.tp, cm.tp + cm.fn); }

double f1(const ConfusionMatrix& cm) { return ratio(2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn); }

ConfusionMatrix baseline_accept_all(std::span<const int> golds) {
  if (golds.empty()) throw InvalidArgument("baseline_accept_all: no instances");
  const std::vector<int> ones(golds.size(), 1);
  return confusion(ones, golds);
}

double cross_lingual_accuracy(double p_t, double p_d) {
  check_unit(p_t, "p_t");
  check_unit(p_d, "p_d");
  return p_t * p_d + (1.0 - p_t) * (1.0 - p_d);
}

double accuracy_gain(double p_t, double delta_p_d) {
  check_unit(p_t, "p_t");
  return (2.0 * p_t - 1.0) * delta_p_d;
}

double binomial_stderr(double p, std::size_t n) {
  if (n == 0) throw InvalidArgument("binomial_stderr: n must be positive");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

DetectionReport detection_report(std::span<const int> predictions, std::span<const int> golds) {
  DetectionReport r;
  r.detector = confusion(predictions, golds);
  r.baseline = baseline_accept_all(golds);
  r.accuracy = accuracy(r.detector);
  r.baseline_accuracy = accuracy(r.baseline);
  r.improvement = r.accuracy - r.baseline_accuracy;
  r.precision = precision(r.detector);
  r.recall = recall(r.detector);
  r.f1 = f1(r.detector);
  return r;
}

std::string detection_report_json(const DetectionReport& r) {
  nlohmann::ordered_json j;
  j["instances"] = r.detector.total();
  j["detector"] = cm_json(r.detector);
  j["accuracy"] = r.accuracy;
  j["baseline_accept_all"] = cm_json(r.baseline);
  j["baseline_accuracy"] = r.baseline_accuracy;
  j["improvement"] = r.improvement;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  return j.dump(2) + '\n';
}

PipelineReport simulate_pipeline(std::span<const int> predictions, std::span<const LabeledInstance> instances,
                                 const DownstreamTask& task, std::optional<std::span<const std::string>> gold_labels) {
  const auto binary = task.binary_labels();
  if (!binary) throw InvalidArgument(fmt::format("simulate_pipeline: task {} is not binary", task.name()));
  if (predictions.size() != instances.size()) {
    throw InvalidArgument("simulate_pipeline: one prediction per instance is required");
  }
  if (instances.empty()) throw InvalidArgument("simulate_pipeline: no instances");
  if (gold_labels && gold_labels->size() != instances.size()) {
    throw InvalidArgument("simulate_pipeline: one gold label per instance is required");
  }

  std::vector<Tokens> mt, ref;
  std::vector<int> y;
  for (const auto& inst : instances) {
    mt.push_back(inst.mt_text);
    ref.push_back(inst.reference_text);
    y.push_back(inst.label);
  }
  PipelineReport r;
  r.labels = *binary;
  r.n = instances.size();
  const auto mt_labels = labels_of(task, mt, r.labels);
  const auto ref_labels = labels_of(task, ref, r.labels);

  std::size_t downstream_ok = 0, baseline_ok = 0, flip_ok = 0;
  std::vector<int> base_pred, flip_pred, gold_pos;
  for (std::size_t i = 0; i < r.n; ++i) {
    PipelineDecision d;
    d.detector = predictions[i];
    d.mt_label = mt_labels[i];
    d.reference_label = ref_labels[i];
    d.gold_label = gold_labels ? std::string((*gold_labels)[i]) : ref_labels[i];
    if (d.gold_label != r.labels[0] && d.gold_label != r.labels[1]) {
      throw InvalidArgument(fmt::format("simulate_pipeline: gold label '{}' is not a task label", d.gold_label));
    }
    d.flip_label = d.detector ? d.mt_label : (d.mt_label == r.labels[0] ? r.labels[1] : r.labels[0]);
    downstream_ok += d.reference_label == d.gold_label;
    baseline_ok += d.mt_label == d.gold_label;
    flip_ok += d.flip_label == d.gold_label;
    base_pred.push_back(d.mt_label == r.labels[1]);
    flip_pred.push_back(d.flip_label == r.labels[1]);
    gold_pos.push_back(d.gold_label == r.labels[1]);
    r.decisions.push_back(std::move(d));
  }
  r.detection = confusion(predictions, y);
  r.detector_accuracy = accuracy(r.detection);
  r.accept_all_accuracy = accuracy(baseline_accept_all(y));
  r.downstream_accuracy = ratio(downstream_ok, r.n);
  r.baseline_accuracy = ratio(baseline_ok, r.n);
  r.flip_accuracy = ratio(flip_ok, r.n);
  r.predicted_flip_accuracy = cross_lingual_accuracy(r.downstream_accuracy, r.detector_accuracy);
  r.predicted_gain = accuracy_gain(r.downstream_accuracy, r.detector_accuracy - r.accept_all_accuracy);
  r.baseline_outcomes = confusion(base_pred, gold_pos);
  r.flip_outcomes = confusion(flip_pred, gold_pos);
  return r;
}

std::string pipeline_report_json(const PipelineReport& r) {
  nlohmann::ordered_json j;
  j["labels"] = r.labels;
  j["instances"] = r.n;
  j["detection"] = cm_json(r.detection);
  j["detector_accuracy"] = r.detector_accuracy;
  j["accept_all_accuracy"] = r.accept_all_accuracy;
  j["downstream_accuracy"] = r.downstream_accuracy;
  j["baseline_cross_lingual_accuracy"] = r.baseline_accuracy;
  j["flip_cross_lingual_accuracy"] = r.flip_accuracy;
  j["predicted_flip_accuracy"] = r.predicted_flip_accuracy;
  j["predicted_gain"] = r.predicted_gain;
  j["baseline_outcomes"] = cm_json(r.baseline_outcomes);
  j["flip_outcomes"] = cm_json(r.flip_outcomes);
  return j.dump(2) + '\n';
}

std::string pipeline_decisions_tsv(const PipelineReport& r) {
  std::string out = "index\tdetector\tmt_label\treference_label\tgold_label\tflip_label\n";
  for (std::size_t i = 0; i < r.decisions.size(); ++i) {
    const auto& d = r.decisions[i];
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", i, d.detector, d.mt_label, d.reference_label, d.gold_label,
                       d.flip_label);
  }
  return out;
}

std::string review_file(const PipelineReport& r, std::span<const LabeledInstance> instances) {
  std::string out = "index\tsource\tmt\n";
  for (std::size_t i = 0; i < r.decisions.size() && i < instances.size(); ++i) {
    if (r.decisions[i].detector) continue;
    out += fmt::format("{}\t{}\t{}\n", i, join(instances[i].source_text), join(instances[i].mt_text));
  }
  return out;
}

}  // namespace acceptkit
