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

#include "sqrtfree/mat.hpp"
#include "sqrtfree/precision.hpp"

namespace sqrtfree {

/// Eigen-decomposition A = Q diag(eigenvalues) Q^T of a symmetric matrix.
/// Eigenvalues ascend; column i of `eigenvectors` pairs with eigenvalue i.
struct SymEig {
  Vec eigenvalues;
  Mat eigenvectors;
};

/// Cyclic Jacobi limits: sweeps stop once the off-diagonal Frobenius norm is
/// at most `tolerance * ||A||_F`.
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiTolerance = 1e-14;

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Throws ShapeError if `a` is not square or not symmetric to within
/// 1e-10 * ||a||_inf, DomainError on non-finite entries, ConvergenceError
/// after kJacobiMaxSweeps sweeps.
///
/// With an emulated `fmt` the input and every rotated entry are rounded to
/// that format. The tolerance is then widened to the format's roundoff and a
/// sweep that fails to shrink the off-diagonal norm ends the iteration,
/// since a low-precision Jacobi cannot reach fp64 accuracy.
SymEig sym_eig(const Mat& a, const FloatFormat& fmt = formats::fp64());

/// A^e for symmetric positive definite A, as Q diag(lambda^e) Q^T.
/// Refuses (DefinitenessError) rather than clamping non-positive eigenvalues;
/// damping is the caller's job.
Mat spd_power(const Mat& a, double exponent, const FloatFormat& fmt = formats::fp64());

/// Exact exponential of a symmetric matrix via its eigendecomposition.
Mat mat_exp(const Mat& n, const FloatFormat& fmt = formats::fp64());

/// First-order truncation exp(N) ~ I + N. No decomposition involved.
Mat mat_exp_trunc1(const Mat& n);

/// Kronecker product. With row-major vectorisation vec(X),
/// (A kron B) vec(X) = vec(A X B^T).
Mat kron(const Mat& a, const Mat& b);

/// Lower-triangular L with A = L L^T. DefinitenessError on a non-positive pivot.
Mat cholesky(const Mat& a);
Vec solve_spd(const Mat& a, std::span<const double> b);
Mat solve_spd(const Mat& a, const Mat& b);
Mat inverse_spd(const Mat& a);

/// General inverse by Gauss-Jordan elimination with partial pivoting.
/// DomainError when a pivot vanishes.
Mat inverse(const Mat& a);
double determinant(const Mat& a);

/// Largest |a_ij - a_ji|.
double asymmetry(const Mat& a);

}  // namespace sqrtfree
