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

#include <gtest/gtest.h>

#include <cmath>

#include "sqrtfree/errors.hpp"
#include "sqrtfree/linalg.hpp"
#include "sqrtfree/random.hpp"

namespace sqrtfree {
namespace {

// Reference exponential: scaling and squaring around a long
// Taylor series.
Mat taylor_exp(const Mat& n) {
  int squarings = 0;
  double scale = 1.0;
  while (norm_inf(n) * scale > 0.1) {
    scale *= 0.5;
    ++squarings;
  }
  const Mat a = n * scale;
  Mat term = Mat::identity(n.rows());
  Mat sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a * (1.0 / k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

TEST(SymEig, DiagonalMatrix) {
  const Mat a = Mat::diag(Vec{3, 1, 2});
  const SymEig e = sym_eig(a);
  EXPECT_EQ(e.eigenvalues, (Vec{1, 2, 3}));
  // Columns are a permutation of the identity columns.
  for (std::size_t j = 0; j < 3; ++j) {
    double col_abs = 0.0;
    for (std::size_t i = 0; i < 3; ++i) col_abs += std::abs(e.eigenvectors(i, j));
    EXPECT_DOUBLE_EQ(col_abs, 1.0);
  }
  EXPECT_EQ(std::abs(e.eigenvectors(1, 0)), 1.0);
}

TEST(SymEig, TwoByTwoClosedForm) {
  const SymEig e = sym_eig(Mat{{2, 1}, {1, 2}});
  EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues[1], 3.0, 1e-14);

  // General 2x2: (a+c)/2 -+ sqrt(((a-c)/2)^2 + b^2).
  const double a = 0.7, b = -1.3, c = 2.9;
  const SymEig f = sym_eig(Mat{{a, b}, {b, c}});
  const double mid = 0.5 * (a + c);
  const double rad = std::hypot(0.5 * (a - c), b);
  EXPECT_NEAR(f.eigenvalues[0], mid - rad, 1e-14);
  EXPECT_NEAR(f.eigenvalues[1], mid + rad, 1e-14);
}

TEST(SymEig, ReconstructsRandomSymmetric) {
  Rng rng(3);
  for (std::size_t n : {1u, 2u, 5u, 9u}) {
    const Mat g = normal_mat(n, n, rng);
    const Mat a = symmetrize(g + g.transpose());
    const SymEig e = sym_eig(a);
    const Mat& q = e.eigenvectors;
    EXPECT_LT(max_abs_diff(q * Mat::diag(e.eigenvalues) * q.transpose(), a), 1e-12 * norm_fro(a));
    EXPECT_LT(max_abs_diff(q.transpose() * q, Mat::identity(n)), 1e-13);
    for (std::size_t i = 1; i < n; ++i) EXPECT_LE(e.eigenvalues[i - 1], e.eigenvalues[i]);
    // Sum of eigenvalues equals the trace.
    double s = 0.0;
    for (double l : e.eigenvalues) s += l;
    EXPECT_NEAR(s, a.trace(), 1e-12 * (1.0 + std::abs(a.trace()) + norm_fro(a)));
  }
}

TEST(SymEig, RejectsAsymmetricAndNonSquare) {
  EXPECT_THROW(sym_eig(Mat{{1, 2}, {0, 1}}), ShapeError);
  EXPECT_THROW(sym_eig(Mat(2, 3)), ShapeError);
  EXPECT_THROW(sym_eig(Mat{{1, NAN}, {NAN, 1}}), DomainError);
}

TEST(SymEig, LowPrecisionStillApproximates) {
  Rng rng(5);
  const Mat a = random_spd(4, 10.0, rng);
  const SymEig e = sym_eig(a, formats::bf16());
  const SymEig ref = sym_eig(a);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(e.eigenvalues[i], ref.eigenvalues[i], 0.05);
}

TEST(SpdPower, Examples) {
  EXPECT_LT(max_abs_diff(spd_power(Mat::identity(3), -0.25), Mat::identity(3)), 1e-15);
  const Mat r = spd_power(Mat::diag(Vec{16, 81}), -0.25);
  EXPECT_NEAR(r(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(r(1, 1), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(r(0, 1), 0.0);
}

TEST(SpdPower, PowersCompose) {
  Rng rng(8);
  const Mat a = random_spd(5, 100.0, rng);
  const Mat q = spd_power(a, 0.25);
  EXPECT_LT(max_abs_diff(q * q * q * q, a), 1e-12);
  const Mat inv = spd_power(a, -1.0);
  EXPECT_LT(max_abs_diff(inv * a, Mat::identity(5)), 1e-11);
}

TEST(SpdPower, RefusesIndefinite) {
  try {
    spd_power(Mat{{1, 0}, {0, -2}}, -0.25);
    FAIL() << "expected DefinitenessError";
  } catch (const DefinitenessError& e) {
    EXPECT_DOUBLE_EQ(e.eigenvalue(), -2.0);
  }
  EXPECT_THROW(spd_power(Mat(2, 2, 0.0), 0.5), DefinitenessError);
}

TEST(MatExp, Examples) {
  EXPECT_EQ(mat_exp(Mat(3, 3, 0.0)), Mat::identity(3));
  EXPECT_NEAR(mat_exp(Mat{{-0.45}})(0, 0), std::exp(-0.45), 1e-15);
  EXPECT_NEAR(mat_exp(Mat{{-0.45}})(0, 0), 0.637628, 1e-6);
  EXPECT_EQ(mat_exp_trunc1(Mat(2, 2, 0.0)), Mat::identity(2));
  EXPECT_EQ(mat_exp_trunc1(Mat{{-0.45}})(0, 0), 0.55);
}

TEST(MatExp, MatchesTaylorOracleOnSymmetric) {
  Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat g = normal_mat(4, 4, rng, 0.7);
    const Mat n = symmetrize(g + g.transpose());
    EXPECT_LT(max_abs_diff(mat_exp(n), taylor_exp(n)), 1e-12 * max_abs(taylor_exp(n)));
    EXPECT_LT(max_abs_diff(mat_exp(n) * mat_exp(n * -1.0), Mat::identity(4)), 1e-12);
  }
}

TEST(MatExp, TruncationErrorIsSecondOrder) {
  Rng rng(17);
  const Mat g = normal_mat(3, 3, rng);
  const Mat n = symmetrize(g + g.transpose());
  const double e1 = max_abs_diff(mat_exp(n * 1e-2), mat_exp_trunc1(n * 1e-2));
  const double e2 = max_abs_diff(mat_exp(n * 5e-3), mat_exp_trunc1(n * 5e-3));
  EXPECT_NEAR(e1 / e2, 4.0, 0.1);
}

TEST(Kron, Examples) {
  EXPECT_EQ(kron(Mat::identity(2), Mat::identity(3)), Mat::identity(6));
  EXPECT_EQ(kron(Mat{{2}}, Mat{{3}}), (Mat{{6}}));
}

TEST(Kron, EntriesAndVecIdentities) {
  Rng rng(21);
  const Mat a = normal_mat(3, 3, rng);
  const Mat b = normal_mat(2, 2, rng);
  const Mat k = kron(a, b);
  ASSERT_EQ(k.rows(), 6u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t s = 0; s < 2; ++s)
          EXPECT_EQ(k(i * 2 + r, j * 2 + s), a(i, j) * b(r, s));

  const Mat x = normal_mat(3, 2, rng);
  // Row-major vec: (A kron B) vec_r(X) = vec_r(A X B^T).
  EXPECT_LT(max_abs_diff(k * x.flat(), (a * x * b.transpose()).flat()), 1e-13);
  // Column-major vec (vec_c(X) = vec_r(X^T)): (A kron B) vec_c(Y) = vec_c(B Y A^T)
  // for Y of shape 2 x 3.
  const Mat y = normal_mat(2, 3, rng);
  EXPECT_LT(max_abs_diff(k * y.transpose().flat(), (b * y * a.transpose()).transpose().flat()),
            1e-13);
}

TEST(Cholesky, SolveAndInverse) {
  Rng rng(2);
  const Mat a = random_spd(5, 50.0, rng);
  const Mat l = cholesky(a);
  EXPECT_LT(max_abs_diff(l * l.transpose(), a), 1e-14);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) EXPECT_EQ(l(i, j), 0.0);
  const Vec b = normal_vec(5, rng);
  EXPECT_LT(max_abs_diff(a * solve_spd(a, b), b), 1e-12);
  EXPECT_LT(max_abs_diff(inverse_spd(a) * a, Mat::identity(5)), 1e-11);
  EXPECT_THROW(cholesky(Mat{{1, 2}, {2, 1}}), DefinitenessError);
}

TEST(Inverse, GeneralMatrices) {
  const Mat a{{0, 2}, {1, 1}};
  EXPECT_LT(max_abs_diff(inverse(a) * a, Mat::identity(2)), 1e-15);
  EXPECT_DOUBLE_EQ(determinant(a), -2.0);
  EXPECT_DOUBLE_EQ(determinant(Mat{{2, 0, 0}, {1, 3, 0}, {4, 5, 6}}), 36.0);
  EXPECT_THROW(inverse(Mat{{1, 2}, {2, 4}}), DomainError);
  EXPECT_DOUBLE_EQ(asymmetry(Mat{{1, 2}, {0, 1}}), 2.0);
}

TEST(RandomMatrices, SpectraAsRequested) {
  Rng rng(4);
  const Mat s = random_spd(6, 1e3, rng);
  const SymEig e = sym_eig(s);
  EXPECT_NEAR(e.eigenvalues.front(), 1e-3, 1e-12);
  EXPECT_NEAR(e.eigenvalues.back(), 1.0, 1e-12);
  const Mat a = random_nonsingular(5, 1e3, rng);
  const SymEig ata = sym_eig(symmetrize(a.transpose() * a));
  EXPECT_NEAR(std::sqrt(ata.eigenvalues.back() / ata.eigenvalues.front()), 1e3, 1e-6);
  const Mat q = random_orthogonal(4, rng);
  EXPECT_LT(max_abs_diff(q.transpose() * q, Mat::identity(4)), 1e-14);
}

}  // namespace
}  // namespace sqrtfree
