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

#include "sqrtfree/random.hpp"

#include <cmath>

#include "sqrtfree/errors.hpp"

namespace sqrtfree {

Vec normal_vec(std::size_t n, Rng& rng, double stddev) {
  Vec v(n, 0.0);
  if (stddev == 0.0) return v;
  std::normal_distribution<double> dist(0.0, stddev);
  for (double& x : v) x = dist(rng);
  return v;
}

Mat normal_mat(std::size_t rows, std::size_t cols, Rng& rng, double stddev) {
  return Mat(rows, cols, normal_vec(rows * cols, rng, stddev));
}

Mat random_orthogonal(std::size_t n, Rng& rng) {
  Mat g = normal_mat(n, n, rng);
  // Modified Gram-Schmidt on the columns.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      double proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += g(i, k) * g(i, j);
      for (std::size_t i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += g(i, j) * g(i, j);
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
  }
  return g;
}

Mat random_symmetric_with_spectrum(std::span<const double> spectrum, Rng& rng) {
  const Mat q = random_orthogonal(spectrum.size(), rng);
  return symmetrize(q * Mat::diag(spectrum) * q.transpose());
}

namespace {
Vec log_spaced(std::size_t n, double lo, double hi) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
  }
  return v;
}
}  // namespace

Mat random_spd(std::size_t n, double cond, Rng& rng) {
  if (!(cond >= 1.0)) throw DomainError("random_spd: cond must be >= 1");
  const Vec spectrum = log_spaced(n, 1.0 / cond, 1.0);
  return random_symmetric_with_spectrum(spectrum, rng);
}

Mat random_nonsingular(std::size_t n, double cond, Rng& rng) {
  if (!(cond >= 1.0)) throw DomainError("random_nonsingular: cond must be >= 1");
  const Mat u = random_orthogonal(n, rng);
  const Mat v = random_orthogonal(n, rng);
  const Vec sigma = log_spaced(n, 1.0, cond);
  return u * Mat::diag(sigma) * v.transpose();
}

}  // namespace sqrtfree
