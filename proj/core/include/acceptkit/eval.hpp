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
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acceptkit/annotate.hpp"
#include "acceptkit/downstream.hpp"

namespace acceptkit {

// Positive class = acceptable (y = 1).
struct ConfusionMatrix {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> golds);

// (tp + tn) / total; throws on an empty matrix.
double accuracy(const ConfusionMatrix& cm);
double error_rate(const ConfusionMatrix& cm);

// Informational only. Undefined ratios are reported as 0.
double precision(const ConfusionMatrix& cm);
double recall(const ConfusionMatrix& cm);
double f1(const ConfusionMatrix& cm);

// Predicts 1 for every instance.
ConfusionMatrix baseline_accept_all(std::span<const int> golds);

// p_f = p_t p_d + (1 - p_t)(1 - p_d); both arguments must lie in [0, 1].
double cross_lingual_accuracy(double p_t, double p_d);

// (2 p_t - 1) * delta_p_d
double accuracy_gain(double p_t, double delta_p_d);

// sqrt(p (1 - p) / n)
double binomial_stderr(double p, std::size_t n);

struct DetectionReport {
  ConfusionMatrix detector;
  ConfusionMatrix baseline;  // accept-all
  double accuracy = 0;
  double baseline_accuracy = 0;
  double improvement = 0;  // accuracy - baseline_accuracy
  double precision = 0, recall = 0, f1 = 0;
};

DetectionReport detection_report(std::span<const int> predictions, std::span<const int> golds);
std::string detection_report_json(const DetectionReport& report);

struct PipelineDecision {
  int detector = 1;
  std::string mt_label;         // f(t)
  std::string reference_label;  // f(r)
  std::string gold_label;
  std::string flip_label;  // f(t), or the other label when detector = 0
};

// Cross-lingual pipeline on a binary task. The untouched baseline keeps
// f(t); the flip strategy inverts f(t) for instances the detector rejects.
// Gold labels default to f(r).
struct PipelineReport {
  std::array<std::string, 2> labels;
  std::size_t n = 0;
  ConfusionMatrix detection;           // detector vs acceptability
  double detector_accuracy = 0;        // p_d
  double accept_all_accuracy = 0;      // detection accuracy of the accept-all detector
  double downstream_accuracy = 0;      // p_t: f(r) vs gold
  double baseline_accuracy = 0;        // f(t) vs gold
  double flip_accuracy = 0;            // flip strategy vs gold
  double predicted_flip_accuracy = 0;  // cross_lingual_accuracy(p_t, p_d)
  double predicted_gain = 0;           // accuracy_gain(p_t, p_d - accept-all accuracy)
  // Final label vs gold, positive = labels[1].
  ConfusionMatrix baseline_outcomes;
  ConfusionMatrix flip_outcomes;
  std::vector<PipelineDecision> decisions;
};

PipelineReport simulate_pipeline(std::span<const int> predictions, std::span<const LabeledInstance> instances,
                                 const DownstreamTask& task,
                                 std::optional<std::span<const std::string>> gold_labels = std::nullopt);

std::string pipeline_report_json(const PipelineReport& report);
// index, detector, f(t), f(r), gold, flip label
std::string pipeline_decisions_tsv(const PipelineReport& report);
// Instances the detector rejected, for human review: index, source, MT.
std::string review_file(const PipelineReport& report, std::span<const LabeledInstance> instances);

}  // namespace acceptkit
