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

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acceptkit/features.hpp"

namespace acceptkit {

// Per-column standardization fitted on training rows (population variance).
// Columns with zero spread pass through unchanged and are flagged.
class Scaler {
 public:
  static Scaler identity(std::size_t dims);
  static Scaler fit(const Eigen::MatrixXd& rows);
  static Scaler from_parts(Eigen::VectorXd mean, Eigen::VectorXd stddev, std::vector<bool> constant);

  std::size_t dims() const { return static_cast<std::size_t>(mean_.size()); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::VectorXd& stddev() const { return stddev_; }
  bool is_constant(std::size_t column) const { return constant_[column]; }

  Eigen::VectorXd apply(const Eigen::VectorXd& row) const;
  Eigen::MatrixXd apply_rows(const Eigen::MatrixXd& rows) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::VectorXd stddev_;
  std::vector<bool> constant_;
};

struct ScaledFeatures {
  Scaler scaler;
  Eigen::MatrixXd rows;
};

// Throws InvalidArgument for fewer than 2 rows.
ScaledFeatures scaler_fit_apply(const Eigen::MatrixXd& train);

enum class KernelType { kLinear, kRbf };

struct Kernel {
  KernelType type = KernelType::kRbf;
  double gamma = 1.0 / static_cast<double>(kNumFeatures);

  // linear: a.b    rbf: exp(-gamma * |a - b|^2)
  double operator()(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b) const;
};

struct SvmOptions {
  Kernel kernel;
  double C = 1.0;
  double tol = 1e-3;
  std::size_t max_iterations = 100'000'000;
  // Kernel rows are precomputed when the full Gram matrix fits in this
  // budget and cached (least recently used) otherwise.
  std::size_t kernel_cache_mb = 512;
};

struct SvmModel {
  Kernel kernel;
  double C = 1.0;
  double bias = 0.0;
  Eigen::MatrixXd support_vectors;  // one standardized row per vector
  Eigen::VectorXd coef;             // alpha_i * y_i
  Scaler scaler;

  std::size_t num_features() const { return scaler.dims(); }
  // Decision value for a raw (unscaled) feature row.
  double decision(const Eigen::VectorXd& raw) const;
};

struct SvmTrainResult {
  SvmModel model;
  Eigen::VectorXd alpha;   // all training rows, 0 <= alpha <= C
  double objective = 0.0;  // dual objective sum(alpha) - alpha'Q alpha / 2
  std::size_t iterations = 0;
  bool converged = false;
};

// C-SVC dual by SMO with maximal-violating-pair working-set selection (ties:
// lowest index). Rows of x must already be standardized; labels are -1/+1.
// The returned model carries an identity scaler.
SvmTrainResult svm_train(const Eigen::MatrixXd& x, std::span<const int> labels, const SvmOptions& options = {});

struct SvmPrediction {
  int label;  // 1 = acceptable
  double decision;
};

// decision > 0 -> 1; otherwise 0. Throws on a dimensionality mismatch.
SvmPrediction svm_predict(const SvmModel& model, const Eigen::VectorXd& raw);

// Standardizes 0/1-labelled feature rows and trains the classifier.
SvmModel train_biquest(std::span<const FeatureVector17> rows, std::span<const int> labels,
                       const SvmOptions& options = {});
Eigen::MatrixXd feature_matrix(std::span<const FeatureVector17> rows);

std::string svm_to_text(const SvmModel& model, std::string_view header_extra = {});
SvmModel svm_from_text(std::string_view text, const std::string& origin);
void save_svm(const SvmModel& model, const std::filesystem::path& path, std::string_view header_extra = {});
SvmModel load_svm(const std::filesystem::path& path);

}  // namespace acceptkit
