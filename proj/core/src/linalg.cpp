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

#include "sqrtfree/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sqrtfree/errors.hpp"

namespace sqrtfree {

namespace {

void require_square(const Mat& a, const char* op) {
  if (!a.square()) {
    throw ShapeError(std::string(op) + ": expected a square matrix, got " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_symmetric(const Mat& a, const char* op) {
  require_square(a, op);
  const double tol = 1e-10 * norm_inf(a);
  if (asymmetry(a) > tol) {
    throw ShapeError(std::string(op) + ": matrix is not symmetric (asymmetry " +
                     std::to_string(asymmetry(a)) + ")");
  }
}

double off_diagonal_norm(const Mat& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) acc += a(i, j) * a(i, j);
  return std::sqrt(acc);
}

// Q diag(f) Q^T, rounding the scaled factor and the product when emulating.
Mat reassemble(const Mat& q, const Vec& f, const FloatFormat& fmt) {
  const std::size_t n = q.rows();
  Mat qf = q;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) qf(i, j) *= f[j];
  qf = quantize_mat(qf, fmt);
  Mat out = quantize_mat(qf * q.transpose(), fmt);
  return quantize_mat(symmetrize(out), fmt);
}

}  // namespace

double asymmetry(const Mat& a) {
  require_square(a, "asymmetry");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
  return worst;
}

SymEig sym_eig(const Mat& input, const FloatFormat& fmt) {
  if (!input.all_finite()) throw DomainError("sym_eig: non-finite entry");
  require_symmetric(input, "sym_eig");
  const std::size_t n = input.rows();
  const bool emulated = !fmt.is_reference();

  Mat a = quantize_mat(symmetrize(input), fmt);
  Mat v = Mat::identity(n);

  const double scale = norm_fro(a);
  const double tol =
      (emulated ? std::max(kJacobiTolerance, 4.0 * fmt.unit_roundoff() * static_cast<double>(n))
                : kJacobiTolerance) *
      scale;

  double off = off_diagonal_norm(a);
  bool converged = off <= tol;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = quantize(1.0 / std::sqrt(1.0 + t * t), fmt);
        const double s = quantize(t * c, fmt);

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = quantize(c * akp - s * akq, fmt);
          a(k, q) = quantize(s * akp + c * akq, fmt);
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = quantize(c * apk - s * aqk, fmt);
          a(q, k) = quantize(s * apk + c * aqk, fmt);
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = quantize(c * vkp - s * vkq, fmt);
          v(k, q) = quantize(s * vkp + c * vkq, fmt);
        }
      }
    }
    const double next = off_diagonal_norm(a);
    converged = next <= tol || (emulated && next >= off);
    off = next;
  }
  if (!converged) {
    throw ConvergenceError("sym_eig: Jacobi did not converge in " +
                           std::to_string(kJacobiMaxSweeps) + " sweeps (off-diagonal norm " +
                           std::to_string(off) + ")");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymEig out{Vec(n), Mat(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

Mat spd_power(const Mat& a, double exponent, const FloatFormat& fmt) {
  const SymEig eig = sym_eig(a, fmt);
  if (eig.eigenvalues.front() <= 0.0) {
    throw DefinitenessError("spd_power: matrix is not positive definite (min eigenvalue " +
                                std::to_string(eig.eigenvalues.front()) + ")",
                            eig.eigenvalues.front());
  }
  Vec f(eig.eigenvalues.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = quantize(std::pow(eig.eigenvalues[i], exponent), fmt);
  }
  return reassemble(eig.eigenvectors, f, fmt);
}

Mat mat_exp(const Mat& n, const FloatFormat& fmt) {
  const SymEig eig = sym_eig(n, fmt);
  Vec f(eig.eigenvalues.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = quantize(std::exp(eig.eigenvalues[i]), fmt);
  return reassemble(eig.eigenvectors, f, fmt);
}

Mat mat_exp_trunc1(const Mat& n) {
  require_square(n, "mat_exp_trunc1");
  Mat out = n;
  for (std::size_t i = 0; i < n.rows(); ++i) out(i, i) += 1.0;
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

Mat cholesky(const Mat& a) {
  require_symmetric(a, "cholesky");
  const std::size_t n = a.rows();
  Mat l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) {
      throw DefinitenessError("cholesky: matrix is not positive definite (pivot " +
                                  std::to_string(d) + " at " + std::to_string(j) + ")",
                              d);
    }
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

Mat solve_spd(const Mat& a, const Mat& b) {
  if (b.rows() != a.rows()) throw ShapeError("solve_spd: right-hand side has wrong row count");
  const Mat l = cholesky(a);
  const std::size_t n = a.rows();
  Mat x = b;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
      x(i, c) = s / l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = x(i, c);
      for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * x(k, c);
      x(i, c) = s / l(i, i);
    }
  }
  return x;
}

Vec solve_spd(const Mat& a, std::span<const double> b) {
  return solve_spd(a, Mat::column(b)).flat();
}

Mat inverse_spd(const Mat& a) { return symmetrize(solve_spd(a, Mat::identity(a.rows()))); }

Mat inverse(const Mat& a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  Mat m = a;
  Mat inv = Mat::identity(n);
  const double scale = std::max(max_abs(a), 1e-300);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    if (std::abs(m(pivot, col)) <= 1e-15 * scale) {
      throw DomainError("inverse: matrix is singular to working precision");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const double d = m(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

double determinant(const Mat& a) {
  require_square(a, "determinant");
  const std::size_t n = a.rows();
  Mat m = a;
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    if (m(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m(r, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

}  // namespace sqrtfree
