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
#include <string>

#include "acceptkit/biquest.hpp"
#include "acceptkit/birnn.hpp"
#include "common.hpp"

namespace acceptkit::cli {

struct BpeLearnOptions {
  std::string pairs;
  std::size_t merges = 32000;
  std::string side = "joint";  // joint | source | target
  std::string out;
};

struct BpeApplyOptions {
  std::string bpe;
  std::string input;
  std::string out;
};

struct VocabOptions {
  std::string pairs;
  std::string bpe;
  std::string side = "source";
  std::size_t max_size = 30000;
  std::string out;
};

struct TranslateOptions {
  std::string pairs;
  AdapterOptions adapter;
  std::string out;
};

struct AnnotateOptions {
  std::string pairs;
  std::string mt;
  TaskOptions task;
  std::string bpe;
  std::string src_vocab;
  std::string tgt_vocab;
  std::size_t max_subwords = 50;  // applied when --bpe is given; 0 disables
  std::string out;
};

struct SplitOptions {
  std::string data;
  std::size_t dev = 10000;
  std::size_t test = 10000;
  bool downsample = false;
  std::string out_dir;
};

struct LmTrainOptions {
  std::string pairs;
  std::string side = "target";
  std::size_t order = 3;
  double discount = 0.75;
  std::string out;
  std::string ngrams_out;
};

struct Ibm1TrainOptions {
  std::string pairs;
  std::size_t iterations = 5;
  std::string out;
};

struct FeaturesOptions {
  std::string data;
  std::string src_lm;
  std::string tgt_lm;
  std::string ngrams;
  std::string lex;
  std::string out;
};

struct SvmFlags {
  std::string kernel = "rbf";
  double gamma = 1.0 / 17.0;
  double C = 1.0;
  double tol = 1e-3;
  std::size_t cache_mb = 512;

  SvmOptions options() const;
};

struct TrainBiquestOptions {
  std::string features;
  SvmFlags svm;
  std::string out;
};

struct BirnnFlags {
  BirnnConfig config;
  std::string src_vocab;
  std::string tgt_vocab;
};

struct TrainBirnnOptions {
  std::string train;
  std::string dev;
  BirnnFlags birnn;
  std::string out;
  std::string log;
};

struct PredictOptions {
  std::string model;
  std::string data;
  std::string features;
  std::string out;
};

struct EvalOptions {
  std::string pred;
  std::string gold;
  TaskOptions task;  // optional: enables the flip-handler simulation
  std::string decisions;
  std::string review;
  std::string out;
};

struct PipelineOptions {
  std::string pairs;
  AdapterOptions adapter;
  TaskOptions task;
  std::size_t merges = 32000;
  std::size_t vocab_size = 30000;
  std::size_t max_subwords = 50;
  std::size_t dev = 10000;
  std::size_t test = 10000;
  bool downsample = false;
  std::string detector = "birnn";  // birnn | biquest | both
  BirnnFlags birnn;
  SvmFlags svm;
  std::size_t ibm1_iterations = 5;
  std::string out_dir;
};

void run_bpe_learn(const BpeLearnOptions& o, const Context& ctx);
void run_bpe_apply(const BpeApplyOptions& o, const Context& ctx);
void run_vocab(const VocabOptions& o, const Context& ctx);
void run_translate(const TranslateOptions& o, const Context& ctx);
void run_annotate(const AnnotateOptions& o, const Context& ctx);
void run_split(const SplitOptions& o, const Context& ctx);
void run_lm_train(const LmTrainOptions& o, const Context& ctx);
void run_ibm1_train(const Ibm1TrainOptions& o, const Context& ctx);
void run_features(const FeaturesOptions& o, const Context& ctx);
void run_train_biquest(const TrainBiquestOptions& o, const Context& ctx);
void run_train_birnn(const TrainBirnnOptions& o, const Context& ctx);
void run_predict(const PredictOptions& o, const Context& ctx);
void run_eval(const EvalOptions& o, const Context& ctx);
void run_pipeline(const PipelineOptions& o, const Context& ctx);

}  // namespace acceptkit::cli
