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

#include "sqrtfree/mat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqrtfree/errors.hpp"

namespace sqrtfree {

namespace {

std::string dims(const Mat& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const Mat& a, const Mat& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + dims(a) + " vs " + dims(b));
  }
}

void require_same_length(std::span<const double> a, std::span<const double> b,
                         const char* op) {
  if (a.size() != b.size()) {
    throw ShapeError(std::string(op) + ": length mismatch " + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()));
  }
}

}  // namespace

Mat::Mat(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (rows == 0 || cols == 0) throw ShapeError("Mat: rows and cols must be >= 1");
}

Mat::Mat(std::size_t rows, std::size_t cols, Vec entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw ShapeError("Mat: rows and cols must be >= 1");
  if (data_.size() != rows * cols) {
    throw ShapeError("Mat: entry count " + std::to_string(data_.size()) +
                     " does not match " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  if (rows_ == 0 || cols_ == 0) throw ShapeError("Mat: rows and cols must be >= 1");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("Mat: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diag(std::span<const double> d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::column(std::span<const double> v) { return Mat(v.size(), 1, Vec(v.begin(), v.end())); }

Mat Mat::reshape(std::span<const double> v, std::size_t rows, std::size_t cols) {
  return Mat(rows, cols, Vec(v.begin(), v.end()));
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Mat::trace() const {
  if (!square()) throw ShapeError("trace: matrix is " + dims(*this));
  double t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Vec Mat::diagonal() const {
  Vec d(std::min(rows_, cols_));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*this)(i, i);
  return d;
}

bool Mat::all_finite() const { return sqrtfree::all_finite(data_); }

Mat& Mat::operator+=(const Mat& rhs) {
  require_same_shape(*this, rhs, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Mat& Mat::operator-=(const Mat& rhs) {
  require_same_shape(*this, rhs, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Mat operator+(Mat lhs, const Mat& rhs) { return lhs += rhs; }
Mat operator-(Mat lhs, const Mat& rhs) { return lhs -= rhs; }
Mat operator*(Mat lhs, double s) { return lhs *= s; }
Mat operator*(double s, Mat rhs) { return rhs *= s; }

Mat operator*(const Mat& lhs, const Mat& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw ShapeError("matmul: inner dimensions " + dims(lhs) + " * " + dims(rhs));
  }
  Mat out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

Vec operator*(const Mat& lhs, std::span<const double> rhs) {
  if (lhs.cols() != rhs.size()) {
    throw ShapeError("matvec: " + dims(lhs) + " * vector of length " +
                     std::to_string(rhs.size()));
  }
  Vec out(lhs.rows(), 0.0);
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < lhs.cols(); ++j) acc += lhs(i, j) * rhs[j];
    out[i] = acc;
  }
  return out;
}

Mat outer(std::span<const double> a, std::span<const double> b) {
  Mat out(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = a[i] * b[j];
  return out;
}

Mat symmetrize(const Mat& a) {
  if (!a.square()) throw ShapeError("symmetrize: matrix is " + dims(a));
  Mat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = 0.5 * (a(i, j) + a(j, i));
  return out;
}

double norm_inf(const Mat& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) row += std::abs(a(i, j));
    best = std::max(best, row);
  }
  return best;
}

double max_abs(const Mat& a) { return norm_inf(a.data()); }

double norm_fro(const Mat& a) { return norm2(a.data()); }

double max_abs_diff(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "max_abs_diff");
  return max_abs_diff(a.data(), b.data());
}

Vec operator+(Vec lhs, std::span<const double> rhs) {
  require_same_length(lhs, rhs, "operator+");
  for (std::size_t k = 0; k < lhs.size(); ++k) lhs[k] += rhs[k];
  return lhs;
}

Vec operator-(Vec lhs, std::span<const double> rhs) {
  require_same_length(lhs, rhs, "operator-");
  for (std::size_t k = 0; k < lhs.size(); ++k) lhs[k] -= rhs[k];
  return lhs;
}

Vec operator*(double s, Vec v) {
  for (double& x : v) x *= s;
  return v;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "dot");
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double norm_inf(std::span<const double> v) {
  double best = 0.0;
  for (double x : v) {
    if (std::isnan(x)) return x;
    best = std::max(best, std::abs(x));
  }
  return best;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "max_abs_diff");
  double best = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = std::abs(a[k] - b[k]);
    if (std::isnan(d)) return d;
    best = std::max(best, d);
  }
  return best;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace sqrtfree
