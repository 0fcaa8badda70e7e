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

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sqrtfree/mat.hpp"

namespace sqrtfree {

/// How per-sample losses over a subset are combined.
enum class Reduction { sum, mean };

std::string_view to_string(Reduction r);
Reduction reduction_by_name(std::string_view name);

/// p x d view of a flat parameter vector (row-major), used by the
/// Kronecker-factored optimizers.
struct Shape {
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::size_t size() const noexcept { return rows * cols; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

struct ProblemOptions {
  Reduction reduction = Reduction::sum;
  /// Defaults to a single row (1 x dim) when unset.
  std::optional<Shape> shape;
};

/// A mini-batch: distinct sample indices in [0, N).
struct Batch {
  std::vector<std::size_t> indices;
  std::size_t size() const noexcept { return indices.size(); }
};

/// Validates distinctness and range; throws DomainError otherwise.
Batch make_batch(std::vector<std::size_t> indices, std::size_t num_samples);
/// Every index 0..n-1.
Batch full_batch(std::size_t num_samples);

/// Label model with a finite label space {0, 1}, used for exact Fisher
/// enumeration.
class BinaryLabelModel {
 public:
  virtual ~BinaryLabelModel() = default;
  /// p(y = 1 | x_i; mu).
  virtual double prob_positive(std::span<const double> mu, std::size_t i) const = 0;
  /// Score d/dmu log p(y | x_i; mu).
  virtual Vec score(std::span<const double> mu, std::size_t i, int y) const = 0;
};

/// A finite-sum objective sum_i c_i(mu) with per-sample gradients.
/// Immutable after construction.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string_view kind() const = 0;
  virtual double sample_loss(std::span<const double> mu, std::size_t i) const = 0;
  virtual Vec sample_grad(std::span<const double> mu, std::size_t i) const = 0;
  virtual const BinaryLabelModel* binary_labels() const { return nullptr; }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_samples() const noexcept { return num_samples_; }
  Shape shape() const noexcept { return shape_; }
  Reduction reduction() const noexcept { return reduction_; }
  /// Optimal loss (full data, this problem's reduction) when known in closed form.
  std::optional<double> optimum_ref() const noexcept { return optimum_ref_; }

  /// Sum or mean of per-sample losses over `subset`, per reduction().
  double loss(std::span<const double> mu, std::span<const std::size_t> subset) const;
  double loss(std::span<const double> mu) const;

 protected:
  Problem(std::size_t dim, std::size_t num_samples, const ProblemOptions& options);
  void set_optimum_ref(double v) { optimum_ref_ = v; }

 private:
  std::size_t dim_;
  std::size_t num_samples_;
  Shape shape_;
  Reduction reduction_;
  std::optional<double> optimum_ref_;
};

using ProblemPtr = std::shared_ptr<const Problem>;

/// 1/2 mu^T Q mu - b^T mu with a single "sample". Q must be SPD.
ProblemPtr quadratic_make(const Mat& q, const Vec& b, const ProblemOptions& options = {});

/// l2-regularised logistic regression. Rows of `x` are samples, labels in
/// {0, 1}. Each per-sample loss carries reg/(2N) ||mu||^2 so the summed loss
/// has the regulariser reg/2 ||mu||^2 exactly once.
ProblemPtr logreg_make(const Mat& x, const Vec& y, double reg, const ProblemOptions& options = {});

/// Matrix least squares: per-sample 1/2 ||W x_j - y_j||^2 with W p x d stored
/// row-major in mu. `x` is d x n, `y` is p x n. The shape is always p x d.
ProblemPtr matfact_make(const Mat& x, const Mat& y, const ProblemOptions& options = {});

/// Sum (or mean, per reduction) of per-sample gradients over the batch.
Vec batch_grad(const Problem& p, std::span<const double> mu, const Batch& batch);
Vec full_grad(const Problem& p, std::span<const double> mu);

/// Central differences of loss(mu, subset).
Vec finite_diff_grad(const Problem& p, std::span<const double> mu,
                     std::span<const std::size_t> subset, double h);

/// Numerically stable logistic function.
double sigmoid(double z);
/// log(1 + e^z) without overflow.
double softplus(double z);

}  // namespace sqrtfree
