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

#include "acceptkit/biquest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <unordered_map>

#include <fmt/format.h>

#include "acceptkit/error.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit {

Scaler Scaler::identity(std::size_t dims) {
  const auto d = static_cast<Eigen::Index>(dims);
  return from_parts(Eigen::VectorXd::Zero(d), Eigen::VectorXd::Ones(d), std::vector<bool>(dims, false));
}

Scaler Scaler::from_parts(Eigen::VectorXd mean, Eigen::VectorXd stddev, std::vector<bool> constant) {
  if (mean.size() != stddev.size() || static_cast<std::size_t>(mean.size()) != constant.size()) {
    throw InvalidArgument("Scaler: inconsistent dimensions");
  }
  Scaler s;
  s.mean_ = std::move(mean);
  s.stddev_ = std::move(stddev);
  s.constant_ = std::move(constant);
  return s;
}

Scaler Scaler::fit(const Eigen::MatrixXd& rows) {
  if (rows.rows() < 2) throw InvalidArgument("scaler: at least 2 training rows are required");
  const Eigen::VectorXd mean = rows.colwise().mean().transpose();
  Eigen::VectorXd stddev(rows.cols());
  std::vector<bool> constant(static_cast<std::size_t>(rows.cols()));
  for (Eigen::Index c = 0; c < rows.cols(); ++c) {
    const double var = (rows.col(c).array() - mean(c)).square().mean();
    const double sd = std::sqrt(var);
    constant[static_cast<std::size_t>(c)] = !(sd > 1e-12 * std::max(1.0, std::abs(mean(c))));
    stddev(c) = sd;
  }
  return from_parts(mean, stddev, std::move(constant));
}

Eigen::VectorXd Scaler::apply(const Eigen::VectorXd& row) const {
  if (row.size() != mean_.size()) {
    throw InvalidArgument(fmt::format("scaler: expected {} features, got {}", mean_.size(), row.size()));
  }
  Eigen::VectorXd out = row;
  for (Eigen::Index c = 0; c < row.size(); ++c) {
    if (!constant_[static_cast<std::size_t>(c)]) out(c) = (row(c) - mean_(c)) / stddev_(c);
  }
  return out;
}

Eigen::MatrixXd Scaler::apply_rows(const Eigen::MatrixXd& rows) const {
  Eigen::MatrixXd out(rows.rows(), rows.cols());
  for (Eigen::Index r = 0; r < rows.rows(); ++r) out.row(r) = apply(rows.row(r).transpose()).transpose();
  return out;
}

ScaledFeatures scaler_fit_apply(const Eigen::MatrixXd& train) {
  Scaler scaler = Scaler::fit(train);
  Eigen::MatrixXd rows = scaler.apply_rows(train);
  return {std::move(scaler), std::move(rows)};
}

double Kernel::operator()(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b) const {
  if (type == KernelType::kLinear) return a.dot(b);
  return std::exp(-gamma * (a - b).squaredNorm());
}

namespace {

// Rows of the signed kernel matrix Q_ij = y_i y_j K(x_i, x_j).
class KernelRows {
 public:
  KernelRows(const Eigen::MatrixXd& x, std::span<const int> y, const Kernel& kernel, std::size_t budget_mb)
      : x_(x.transpose()), y_(y), kernel_(kernel), n_(static_cast<std::size_t>(x.rows())) {
    const std::size_t row_bytes = n_ * sizeof(double);
    const std::size_t budget = budget_mb * 1024 * 1024;
    full_ = n_ * row_bytes <= budget;
    capacity_ = std::max<std::size_t>(2, budget / std::max<std::size_t>(row_bytes, 1));
    if (full_) {
      gram_.resize(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
      for (std::size_t i = 0; i < n_; ++i) compute(i, gram_.col(static_cast<Eigen::Index>(i)).data());
    }
  }

  const double* row(std::size_t i) {
    if (full_) return gram_.col(static_cast<Eigen::Index>(i)).data();
    if (const auto it = index_.find(i); it != index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->second.data();
    }
    if (lru_.size() >= capacity_) {
      index_.erase(lru_.back().first);
      lru_.pop_back();
    }
    lru_.emplace_front(i, std::vector<double>(n_));
    compute(i, lru_.front().second.data());
    index_[i] = lru_.begin();
    return lru_.front().second.data();
  }

  double diag(std::size_t i) const {
    const auto xi = x_.col(static_cast<Eigen::Index>(i));
    return kernel_(xi, xi);
  }

 private:
  void compute(std::size_t i, double* out) const {
    const auto xi = x_.col(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < n_; ++j) {
      out[j] = static_cast<double>(y_[i] * y_[j]) * kernel_(xi, x_.col(static_cast<Eigen::Index>(j)));
    }
  }

  Eigen::MatrixXd x_;  // one column per row of the training matrix
  std::span<const int> y_;
  Kernel kernel_;
  std::size_t n_;
  bool full_ = false;
  std::size_t capacity_ = 0;
  Eigen::MatrixXd gram_;
  std::list<std::pair<std::size_t, std::vector<double>>> lru_;
  std::unordered_map<std::size_t, std::list<std::pair<std::size_t, std::vector<double>>>::iterator> index_;
};

constexpr double kTau = 1e-12;

}  // namespace

SvmTrainResult svm_train(const Eigen::MatrixXd& x, std::span<const int> labels, const SvmOptions& options) {
  const auto n = static_cast<std::size_t>(x.rows());
  if (labels.size() != n) throw InvalidArgument("svm_train: label count does not match rows");
  if (n == 0) throw InvalidArgument("svm_train: no training rows");
  if (!(options.C > 0)) throw InvalidArgument("svm_train: C must be positive");
  bool has_pos = false, has_neg = false;
  for (int y : labels) {
    if (y != 1 && y != -1) throw InvalidArgument("svm_train: labels must be -1 or +1");
    (y > 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) throw InvalidArgument("svm_train: both classes must be present");

  const double C = options.C;
  KernelRows q(x, labels, options.kernel, options.kernel_cache_mb);
  std::vector<double> qd(n);
  for (std::size_t i = 0; i < n; ++i) qd[i] = q.diag(i);
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // G = Q alpha - e
  const auto y = [&](std::size_t i) { return static_cast<double>(labels[i]); };
  const auto in_up = [&](std::size_t t) { return labels[t] > 0 ? alpha[t] < C : alpha[t] > 0; };
  const auto in_low = [&](std::size_t t) { return labels[t] > 0 ? alpha[t] > 0 : alpha[t] < C; };

  SvmTrainResult result;
  std::size_t iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    std::size_t i = n, j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y(t) * grad[t];
      if (in_up(t) && v > gmax) {
        gmax = v;
        i = t;
      }
      if (in_low(t) && v < gmin) {
        gmin = v;
        j = t;
      }
    }
    if (i == n || j == n || gmax - gmin < options.tol) {
      result.converged = true;
      break;
    }
    const double* qi = q.row(i);
    const double* qj = q.row(j);
    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    if (labels[i] != labels[j]) {
      double quad = qd[i] + qd[j] + 2.0 * qi[j];
      if (quad <= 0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > 0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      double quad = qd[i] + qd[j] - 2.0 * qi[j];
      if (quad <= 0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }
    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) grad[t] += qi[t] * dai + qj[t] * daj;
  }
  result.iterations = iter;

  // rho: mean of y_i G_i over free vectors, else the midpoint of the bounds.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y(t) * grad[t];
    if (alpha[t] >= C) {
      if (labels[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0) {
      if (labels[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      free_sum += yg;
      ++n_free;
    }
  }
  const double rho = n_free > 0 ? free_sum / static_cast<double>(n_free) : (ub + lb) / 2.0;

  double objective = 0;
  for (std::size_t t = 0; t < n; ++t) objective += alpha[t] * (grad[t] - 1.0);
  result.objective = -objective / 2.0;

  SvmModel& model = result.model;
  model.kernel = options.kernel;
  model.C = C;
  model.bias = -rho;
  model.scaler = Scaler::identity(static_cast<std::size_t>(x.cols()));
  std::vector<std::size_t> sv;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0) sv.push_back(t);
  }
  model.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), x.cols());
  model.coef.resize(static_cast<Eigen::Index>(sv.size()));
  for (std::size_t k = 0; k < sv.size(); ++k) {
    model.support_vectors.row(static_cast<Eigen::Index>(k)) = x.row(static_cast<Eigen::Index>(sv[k]));
    model.coef(static_cast<Eigen::Index>(k)) = alpha[sv[k]] * y(sv[k]);
  }
  result.alpha = Eigen::Map<const Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(n));
  return result;
}

double SvmModel::decision(const Eigen::VectorXd& raw) const {
  const Eigen::VectorXd z = scaler.apply(raw);
  double sum = bias;
  for (Eigen::Index k = 0; k < support_vectors.rows(); ++k) {
    sum += coef(k) * kernel(support_vectors.row(k).transpose(), z);
  }
  return sum;
}

SvmPrediction svm_predict(const SvmModel& model, const Eigen::VectorXd& raw) {
  if (static_cast<std::size_t>(raw.size()) != model.num_features()) {
    throw InvalidArgument(fmt::format("svm_predict: expected {} features, got {}", model.num_features(), raw.size()));
  }
  const double d = model.decision(raw);
  return {d > 0 ? 1 : 0, d};
}

Eigen::MatrixXd feature_matrix(std::span<const FeatureVector17> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(kNumFeatures));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < kNumFeatures; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return m;
}

SvmModel train_biquest(std::span<const FeatureVector17> rows, std::span<const int> labels, const SvmOptions& options) {
  if (rows.size() != labels.size()) throw InvalidArgument("train_biquest: rows and labels differ in length");
  auto scaled = scaler_fit_apply(feature_matrix(rows));
  std::vector<int> y;
  y.reserve(labels.size());
  for (int l : labels) y.push_back(l ? 1 : -1);
  SvmModel model = svm_train(scaled.rows, y, options).model;
  model.scaler = std::move(scaled.scaler);
  return model;
}

std::string svm_to_text(const SvmModel& model, std::string_view header_extra) {
  std::string out = "#svm v1";
  if (!header_extra.empty()) {
    out += ' ';
    out.append(header_extra);
  }
  out += '\n';
  if (model.kernel.type == KernelType::kRbf) out += fmt::format("kernel rbf {}\n", format_double(model.kernel.gamma));
  else out += "kernel linear\n";
  out += fmt::format("C {}\nbias {}\nfeatures {}\n", format_double(model.C), format_double(model.bias),
                     model.num_features());
  const auto vec_line = [](std::string_view name, const Eigen::VectorXd& v) {
    std::string line(name);
    for (Eigen::Index i = 0; i < v.size(); ++i) line += ' ' + format_double(v(i));
    return line + '\n';
  };
  out += vec_line("mean", model.scaler.mean());
  out += vec_line("stddev", model.scaler.stddev());
  out += "constant";
  for (std::size_t c = 0; c < model.num_features(); ++c) out += model.scaler.is_constant(c) ? " 1" : " 0";
  out += fmt::format("\nvectors {}\n", model.support_vectors.rows());
  for (Eigen::Index k = 0; k < model.support_vectors.rows(); ++k) {
    out += format_double(model.coef(k));
    for (Eigen::Index c = 0; c < model.support_vectors.cols(); ++c) out += ' ' + format_double(model.support_vectors(k, c));
    out += '\n';
  }
  return out;
}

SvmModel svm_from_text(std::string_view text, const std::string& origin) {
  const auto lines = split_lines(text);
  std::size_t at = 0;
  const auto next = [&](std::string_view key) {
    if (at >= lines.size()) throw ParseError(origin, at + 1, fmt::format("expected '{}'", key));
    const auto parts = split(lines[at], ' ');
    if (parts.empty() || parts[0] != key) throw ParseError(origin, at + 1, fmt::format("expected '{}'", key));
    ++at;
    return std::vector<std::string_view>(parts.begin() + 1, parts.end());
  };
  try {
    if (lines.empty() || !lines[0].starts_with("#svm v1")) throw ParseError(origin, 1, "expected '#svm v1' header");
    ++at;
    SvmModel model;
    const auto kernel = next("kernel");
    if (kernel.size() == 2 && kernel[0] == "rbf") {
      model.kernel = Kernel{KernelType::kRbf, parse_double(kernel[1], "gamma")};
    } else if (kernel.size() == 1 && kernel[0] == "linear") {
      model.kernel = Kernel{KernelType::kLinear, 0.0};
    } else {
      throw ParseError(origin, at, "unknown kernel");
    }
    model.C = parse_double(next("C").at(0), "C");
    model.bias = parse_double(next("bias").at(0), "bias");
    const auto d = static_cast<std::size_t>(parse_int(next("features").at(0), "features"));
    const auto read_vec = [&](std::string_view key) {
      const auto vals = next(key);
      if (vals.size() != d) throw ParseError(origin, at, fmt::format("'{}' needs {} values", key, d));
      Eigen::VectorXd v(static_cast<Eigen::Index>(d));
      for (std::size_t c = 0; c < d; ++c) v(static_cast<Eigen::Index>(c)) = parse_double(vals[c], key);
      return v;
    };
    Eigen::VectorXd mean = read_vec("mean");
    Eigen::VectorXd stddev = read_vec("stddev");
    const auto flags = next("constant");
    if (flags.size() != d) throw ParseError(origin, at, "'constant' needs one flag per feature");
    std::vector<bool> constant;
    for (auto f : flags) constant.push_back(f == "1");
    model.scaler = Scaler::from_parts(std::move(mean), std::move(stddev), std::move(constant));
    const auto nsv = static_cast<Eigen::Index>(parse_int(next("vectors").at(0), "vectors"));
    model.support_vectors.resize(nsv, static_cast<Eigen::Index>(d));
    model.coef.resize(nsv);
    for (Eigen::Index k = 0; k < nsv; ++k, ++at) {
      if (at >= lines.size()) throw ParseError(origin, at + 1, "truncated support vector list");
      const auto vals = split(lines[at], ' ');
      if (vals.size() != d + 1) throw ParseError(origin, at + 1, "wrong support vector width");
      model.coef(k) = parse_double(vals[0], "coefficient");
      for (std::size_t c = 0; c < d; ++c) {
        model.support_vectors(k, static_cast<Eigen::Index>(c)) = parse_double(vals[c + 1], "support vector");
      }
    }
    return model;
  } catch (const InvalidArgument& e) {
    throw ParseError(origin, at + 1, e.what());
  } catch (const std::out_of_range&) {
    throw ParseError(origin, at, "missing value");
  }
}

void save_svm(const SvmModel& model, const std::filesystem::path& path, std::string_view header_extra) {
  write_file_atomic(path, svm_to_text(model, header_extra));
}

SvmModel load_svm(const std::filesystem::path& path) { return svm_from_text(read_file(path), path.string()); }

}  // namespace acceptkit
