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

#include <cstdint>
#include <random>

#include "sqrtfree/mat.hpp"

namespace sqrtfree {

/// Every stochastic component draws from this engine so runs are
/// reproducible per (seed, build).
using Rng = std::mt19937_64;

Vec normal_vec(std::size_t n, Rng& rng, double stddev = 1.0);
Mat normal_mat(std::size_t rows, std::size_t cols, Rng& rng, double stddev = 1.0);

/// Haar-like random orthogonal matrix (Gram-Schmidt on a Gaussian matrix).
Mat random_orthogonal(std::size_t n, Rng& rng);

/// Q diag(spectrum) Q^T for a random orthogonal Q.
Mat random_symmetric_with_spectrum(std::span<const double> spectrum, Rng& rng);

/// SPD matrix whose eigenvalues are log-spaced in [1/cond, 1].
Mat random_spd(std::size_t n, double cond, Rng& rng);

/// U diag(sigma) V^T with singular values log-spaced in [1, cond].
Mat random_nonsingular(std::size_t n, double cond, Rng& rng);

}  // namespace sqrtfree
