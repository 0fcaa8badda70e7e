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
#include <initializer_list>
#include <span>
#include <vector>

namespace sqrtfree {

using Vec = std::vector<double>;

/// Dense row-major real matrix. Small by construction (desk-scale problems),
/// so every operation returns a fresh value.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0);
  Mat(std::size_t rows, std::size_t cols, Vec entries);
  /// Nested-list literal, e.g. `Mat{{2, 1}, {1, 2}}`.
  Mat(std::initializer_list<std::initializer_list<double>> rows);

  static Mat identity(std::size_t n);
  static Mat diag(std::span<const double> d);
  /// Column vector view of `v`.
  static Mat column(std::span<const double> v);
  /// Reshape a flat vector row-major into rows x cols.
  static Mat reshape(std::span<const double> v, std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  /// Row-major flattening (the inverse of `reshape`).
  const Vec& flat() const noexcept { return data_; }

  Mat transpose() const;
  double trace() const;
  Vec diagonal() const;
  bool all_finite() const;

  Mat& operator+=(const Mat& rhs);
  Mat& operator-=(const Mat& rhs);
  Mat& operator*=(double s);

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec data_;
};

Mat operator+(Mat lhs, const Mat& rhs);
Mat operator-(Mat lhs, const Mat& rhs);
Mat operator*(Mat lhs, double s);
Mat operator*(double s, Mat rhs);
Mat operator*(const Mat& lhs, const Mat& rhs);
Vec operator*(const Mat& lhs, std::span<const double> rhs);

/// a * b^T without forming the transpose.
Mat outer(std::span<const double> a, std::span<const double> b);
/// (A + A^T) / 2.
Mat symmetrize(const Mat& a);

/// Max-row-sum (induced infinity) norm.
double norm_inf(const Mat& a);
/// Largest absolute entry.
double max_abs(const Mat& a);
double norm_fro(const Mat& a);
/// Largest absolute entry of a - b; shapes must agree.
double max_abs_diff(const Mat& a, const Mat& b);

// Vector helpers. Shapes are checked.
Vec operator+(Vec lhs, std::span<const double> rhs);
Vec operator-(Vec lhs, std::span<const double> rhs);
Vec operator*(double s, Vec v);
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
bool all_finite(std::span<const double> v);

}  // namespace sqrtfree
