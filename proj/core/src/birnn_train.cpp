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

#include "acceptkit/birnn_train.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "acceptkit/error.hpp"
#include "acceptkit/parallel.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit {

namespace {

// Gradient shards per batch. Fixed so that summation order, and with it the
// trained weights, do not depend on the number of worker threads.
constexpr std::size_t kShards = 4;

// Seed streams derived from the master seed.
enum : std::uint64_t { kInitStream = 0, kShuffleStream = 1, kDropoutStream = 2 };

}  // namespace

BirnnTrainResult train_birnn(const DatasetSplit& data, const BirnnConfig& config, std::size_t jobs,
                             const std::function<void(const EpochLog&)>& on_epoch) {
  config.validate();
  if (data.train.empty()) throw InvalidArgument("train_birnn: empty training split");
  if (data.dev.empty()) throw InvalidArgument("train_birnn: empty dev split");

  BirnnTrainResult result;
  BirnnParams params = BirnnParams::glorot(config, derive_seed(config.seed, kInitStream));
  AdamState adam = AdamState::zeros(config);
  std::vector<BirnnParams> shard_grads(kShards, BirnnParams::zeros(config));
  BirnnParams batch_grad = BirnnParams::zeros(config);
  std::vector<double> shard_loss(kShards);

  std::vector<std::size_t> order(data.train.size());
  std::iota(order.begin(), order.end(), 0);
  const std::uint64_t shuffle_seed = derive_seed(config.seed, kShuffleStream);
  const std::uint64_t dropout_seed = derive_seed(config.seed, kDropoutStream);

  std::size_t since_best = 0;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    Rng::stream(shuffle_seed, epoch).shuffle(std::span<std::size_t>(order));
    const std::uint64_t epoch_dropout = derive_seed(dropout_seed, epoch);
    double loss_sum = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const std::size_t n = end - start;
      parallel_for(kShards, jobs, [&](std::size_t s) {
        BirnnParams& g = shard_grads[s];
        g.set_zero();
        shard_loss[s] = 0;
        const std::size_t lo = start + s * n / kShards;
        const std::size_t hi = start + (s + 1) * n / kShards;
        for (std::size_t k = lo; k < hi; ++k) {
          const LabeledInstance& ex = data.train[order[k]];
          Rng rng = Rng::stream(epoch_dropout, k);
          const ForwardTrace tr = forward(params, config, ex.source_ids, ex.mt_ids, true, &rng);
          shard_loss[s] += loss(tr.p, ex.label);
          backward(tr, params, ex.label, g);
        }
      });
      batch_grad.set_zero();
      for (std::size_t s = 0; s < kShards; ++s) {
        BirnnParams::visit([](const std::string&, auto& acc, const auto& g) { acc += g; }, batch_grad,
                           shard_grads[s]);
        loss_sum += shard_loss[s];
      }
      const double scale = 1.0 / static_cast<double>(n);
      BirnnParams::visit([scale](const std::string&, auto& g) { g *= scale; }, batch_grad);
      adam_step(adam, params, batch_grad, config);
    }

    const auto preds = birnn_predict_all(params, config, data.dev, jobs);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) correct += preds[i].label == data.dev[i].label;
    EpochLog record;
    record.epoch = epoch;
    record.train_loss = loss_sum / static_cast<double>(order.size());
    record.dev_accuracy = static_cast<double>(correct) / static_cast<double>(preds.size());
    record.best = epoch == 1 || record.dev_accuracy > result.best_dev_accuracy;
    if (record.best) {
      result.params = params;
      result.best_epoch = epoch;
      result.best_dev_accuracy = record.dev_accuracy;
      since_best = 0;
    } else {
      ++since_best;
    }
    spdlog::debug("birnn epoch {} loss {:.6f} dev {:.4f}{}", epoch, record.train_loss, record.dev_accuracy,
                  record.best ? " *" : "");
    result.log.push_back(record);
    if (on_epoch) on_epoch(record);
    if (since_best >= config.patience) break;
  }
  return result;
}

std::string epoch_log_json(const EpochLog& record) {
  nlohmann::ordered_json j;
  j["epoch"] = record.epoch;
  j["train_loss"] = record.train_loss;
  j["dev_accuracy"] = record.dev_accuracy;
  j["best"] = record.best;
  return j.dump();
}

std::string training_log_jsonl(std::span<const EpochLog> log) {
  std::string out;
  for (const auto& r : log) out += epoch_log_json(r) + '\n';
  return out;
}

BirnnPrediction birnn_predict(const BirnnParams& params, const BirnnConfig& config, const LabeledInstance& instance) {
  const double p = forward(params, config, instance.source_ids, instance.mt_ids).p;
  return {p >= 0.5 ? 1 : 0, p};
}

std::vector<BirnnPrediction> birnn_predict_all(const BirnnParams& params, const BirnnConfig& config,
                                               std::span<const LabeledInstance> instances, std::size_t jobs) {
  return parallel_map<BirnnPrediction>(instances.size(), jobs,
                                       [&](std::size_t i) { return birnn_predict(params, config, instances[i]); });
}

}  // namespace acceptkit
