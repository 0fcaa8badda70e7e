// Copyright 2026 The sqrtfree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sqrtfree/problems.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqrtfree/errors.hpp"
#include "sqrtfree/linalg.hpp"

namespace sqrtfree {

std::string_view to_string(Reduction r) { return r == Reduction::sum ? "sum" : "mean"; }

Reduction reduction_by_name(std::string_view name) {
  if (name == "sum") return Reduction::sum;
  if (name == "mean") return Reduction::mean;
  throw DomainError("unknown reduction '" + std::string(name) + "' (expected sum or mean)");
}

Batch make_batch(std::vector<std::size_t> indices, std::size_t num_samples) {
  std::vector<std::size_t> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("batch indices must be distinct");
  }
  if (!sorted.empty() && sorted.back() >= num_samples) {
    throw DomainError("batch index " + std::to_string(sorted.back()) + " out of range [0, " +
                      std::to_string(num_samples) + ")");
  }
  return Batch{std::move(indices)};
}

Batch full_batch(std::size_t num_samples) {
  Batch b;
  b.indices.resize(num_samples);
  for (std::size_t i = 0; i < num_samples; ++i) b.indices[i] = i;
  return b;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

Problem::Problem(std::size_t dim, std::size_t num_samples, const ProblemOptions& options)
    : dim_(dim),
      num_samples_(num_samples),
      shape_(options.shape.value_or(Shape{1, dim})),
      reduction_(options.reduction) {
  if (dim == 0) throw ShapeError("problem dimension must be >= 1");
  if (num_samples == 0) throw DomainError("problem needs at least one sample");
  if (shape_.size() != dim) {
    throw ShapeError("parameter shape " + std::to_string(shape_.rows) + "x" +
                     std::to_string(shape_.cols) + " does not hold " + std::to_string(dim) +
                     " parameters");
  }
}

double Problem::loss(std::span<const double> mu, std::span<const std::size_t> subset) const {
  if (subset.empty()) throw DomainError("loss over an empty subset");
  double total = 0.0;
  for (std::size_t i : subset) total += sample_loss(mu, i);
  return reduction_ == Reduction::mean ? total / static_cast<double>(subset.size()) : total;
}

double Problem::loss(std::span<const double> mu) const {
  return loss(mu, full_batch(num_samples_).indices);
}

namespace {

void require_dim(const Problem& p, std::span<const double> mu) {
  if (mu.size() != p.dim()) {
    throw ShapeError(std::string(p.kind()) + ": parameter length " + std::to_string(mu.size()) +
                     " != " + std::to_string(p.dim()));
  }
}

class Quadratic final : public Problem {
 public:
  Quadratic(Mat q, Vec b, const ProblemOptions& options)
      : Problem(b.size(), 1, options), q_(std::move(q)), b_(std::move(b)) {
    const Vec star = solve_spd(q_, b_);  // DefinitenessError if Q is not SPD
    set_optimum_ref(-0.5 * dot(b_, star));
  }

  std::string_view kind() const override { return "quadratic"; }

  double sample_loss(std::span<const double> mu, std::size_t) const override {
    require_dim(*this, mu);
    return 0.5 * dot(mu, q_ * mu) - dot(b_, mu);
  }

  Vec sample_grad(std::span<const double> mu, std::size_t) const override {
    require_dim(*this, mu);
    return (q_ * mu) - b_;
  }

 private:
  Mat q_;
  Vec b_;
};

class LogReg final : public Problem, public BinaryLabelModel {
 public:
  LogReg(Mat x, Vec y, double reg, const ProblemOptions& options)
      : Problem(x.cols(), x.rows(), options), x_(std::move(x)), y_(std::move(y)), reg_(reg) {}

  std::string_view kind() const override { return "logreg"; }
  const BinaryLabelModel* binary_labels() const override { return this; }

  double sample_loss(std::span<const double> mu, std::size_t i) const override {
    require_dim(*this, mu);
    const double z = logit(mu, i);
    return softplus(z) - y_[i] * z + regulariser(mu);
  }

  Vec sample_grad(std::span<const double> mu, std::size_t i) const override {
    require_dim(*this, mu);
    const double r = sigmoid(logit(mu, i)) - y_[i];
    const double w = reg_ / static_cast<double>(num_samples());
    Vec g(dim());
    for (std::size_t k = 0; k < dim(); ++k) g[k] = r * x_(i, k) + w * mu[k];
    return g;
  }

  double prob_positive(std::span<const double> mu, std::size_t i) const override {
    require_dim(*this, mu);
    return sigmoid(logit(mu, i));
  }

  Vec score(std::span<const double> mu, std::size_t i, int y) const override {
    require_dim(*this, mu);
    const double r = static_cast<double>(y) - sigmoid(logit(mu, i));
    Vec s(dim());
    for (std::size_t k = 0; k < dim(); ++k) s[k] = r * x_(i, k);
    return s;
  }

 private:
  double logit(std::span<const double> mu, std::size_t i) const {
    double z = 0.0;
    for (std::size_t k = 0; k < dim(); ++k) z += x_(i, k) * mu[k];
    return z;
  }

  double regulariser(std::span<const double> mu) const {
    if (reg_ == 0.0) return 0.0;
    return 0.5 * reg_ * dot(mu, mu) / static_cast<double>(num_samples());
  }

  Mat x_;
  Vec y_;
  double reg_;
};

class MatFact final : public Problem {
 public:
  MatFact(Mat x, Mat y, const ProblemOptions& options)
      : Problem(y.rows() * x.rows(), x.cols(), with_shape(options, y.rows(), x.rows())),
        x_(std::move(x)),
        y_(std::move(y)) {
    compute_optimum();
  }

  std::string_view kind() const override { return "matfact"; }

  double sample_loss(std::span<const double> mu, std::size_t j) const override {
    const Vec r = residual(mu, j);
    return 0.5 * dot(r, r);
  }

  Vec sample_grad(std::span<const double> mu, std::size_t j) const override {
    const Vec r = residual(mu, j);
    const std::size_t p = y_.rows();
    const std::size_t d = x_.rows();
    Vec g(p * d);
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b < d; ++b) g[a * d + b] = r[a] * x_(b, j);
    return g;
  }

 private:
  static ProblemOptions with_shape(ProblemOptions options, std::size_t p, std::size_t d) {
    if (options.shape && !(*options.shape == Shape{p, d})) {
      throw ShapeError("matfact: parameter shape is fixed to p x d");
    }
    options.shape = Shape{p, d};
    return options;
  }

  Vec residual(std::span<const double> mu, std::size_t j) const {
    require_dim(*this, mu);
    const std::size_t p = y_.rows();
    const std::size_t d = x_.rows();
    Vec r(p);
    for (std::size_t a = 0; a < p; ++a) {
      double acc = -y_(a, j);
      for (std::size_t b = 0; b < d; ++b) acc += mu[a * d + b] * x_(b, j);
      r[a] = acc;
    }
    return r;
  }

  // Normal equations W* = Y X^T (X X^T)^-1 when X X^T is invertible.
  void compute_optimum() {
    const Mat xt = x_.transpose();
    try {
      const Mat gram = symmetrize(x_ * xt);
      const Mat w = solve_spd(gram, (y_ * xt).transpose()).transpose();
      set_optimum_ref(loss(w.flat()));
    } catch (const DefinitenessError&) {
      // rank-deficient inputs: no closed-form reference
    }
  }

  Mat x_;
  Mat y_;
};

}  // namespace

ProblemPtr quadratic_make(const Mat& q, const Vec& b, const ProblemOptions& options) {
  if (!q.square() || q.rows() != b.size()) {
    throw ShapeError("quadratic_make: Q must be square with as many rows as b");
  }
  if (asymmetry(q) > 1e-10 * norm_inf(q)) throw ShapeError("quadratic_make: Q is not symmetric");
  return std::make_shared<Quadratic>(q, b, options);
}

ProblemPtr logreg_make(const Mat& x, const Vec& y, double reg, const ProblemOptions& options) {
  if (x.rows() != y.size()) {
    throw ShapeError("logreg_make: " + std::to_string(x.rows()) + " rows but " +
                     std::to_string(y.size()) + " labels");
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 0.0 && y[i] != 1.0) {
      throw DomainError("logreg_make: label " + std::to_string(y[i]) + " at sample " +
                        std::to_string(i) + " is not in {0, 1}");
    }
  }
  if (!(reg >= 0.0)) throw DomainError("logreg_make: reg must be >= 0");
  return std::make_shared<LogReg>(x, y, reg, options);
}

ProblemPtr matfact_make(const Mat& x, const Mat& y, const ProblemOptions& options) {
  if (x.cols() != y.cols()) {
    throw ShapeError("matfact_make: inputs have " + std::to_string(x.cols()) +
                     " columns but targets have " + std::to_string(y.cols()));
  }
  return std::make_shared<MatFact>(x, y, options);
}

Vec batch_grad(const Problem& p, std::span<const double> mu, const Batch& batch) {
  if (batch.indices.empty()) throw DomainError("batch_grad: empty batch");
  Vec g(p.dim(), 0.0);
  for (std::size_t i : batch.indices) {
    if (i >= p.num_samples()) throw DomainError("batch_grad: index out of range");
    const Vec gi = p.sample_grad(mu, i);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += gi[k];
  }
  if (p.reduction() == Reduction::mean) {
    const double inv = 1.0 / static_cast<double>(batch.size());
    for (double& x : g) x *= inv;
  }
  return g;
}

Vec full_grad(const Problem& p, std::span<const double> mu) {
  return batch_grad(p, mu, full_batch(p.num_samples()));
}

Vec finite_diff_grad(const Problem& p, std::span<const double> mu,
                     std::span<const std::size_t> subset, double h) {
  if (!(h > 0.0)) throw DomainError("finite_diff_grad: h must be > 0");
  Vec probe(mu.begin(), mu.end());
  Vec g(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    probe[k] = mu[k] + h;
    const double up = p.loss(probe, subset);
    probe[k] = mu[k] - h;
    const double down = p.loss(probe, subset);
    probe[k] = mu[k];
    g[k] = (up - down) / (2.0 * h);
  }
  return g;
}

}  // namespace sqrtfree
