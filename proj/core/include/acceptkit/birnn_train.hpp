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

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "acceptkit/annotate.hpp"
#include "acceptkit/birnn.hpp"

namespace acceptkit {

struct EpochLog {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0;  // mean over the epoch's examples
  double dev_accuracy = 0;
  bool best = false;

  friend bool operator==(const EpochLog&, const EpochLog&) = default;
};

struct BirnnTrainResult {
  BirnnParams params;  // best-dev snapshot
  std::vector<EpochLog> log;
  std::size_t best_epoch = 0;
  double best_dev_accuracy = 0;
};

// Mini-batch Adam with early stopping on dev accuracy. Each batch is split
// into a fixed number of gradient shards that are summed in order, so the
// result does not depend on `jobs`. `on_epoch`, when set, sees every log
// record as it is produced.
BirnnTrainResult train_birnn(const DatasetSplit& data, const BirnnConfig& config, std::size_t jobs = 1,
                             const std::function<void(const EpochLog&)>& on_epoch = {});

// One JSON object per line: {"epoch":..,"train_loss":..,"dev_accuracy":..,"best":..}
std::string epoch_log_json(const EpochLog& record);
std::string training_log_jsonl(std::span<const EpochLog> log);

struct BirnnPrediction {
  int label = 1;  // 1 iff probability >= 0.5
  double probability = 0.5;
};

BirnnPrediction birnn_predict(const BirnnParams& params, const BirnnConfig& config, const LabeledInstance& instance);
std::vector<BirnnPrediction> birnn_predict_all(const BirnnParams& params, const BirnnConfig& config,
                                               std::span<const LabeledInstance> instances, std::size_t jobs = 1);

}  // namespace acceptkit
