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
#include <span>
#include <string_view>
#include <vector>

#include "sqrtfree/mat.hpp"
#include "sqrtfree/problems.hpp"

namespace sqrtfree {

enum class FisherKind {
  standard,    ///< sum_i g_i g_i^T
  new_,        ///< (sum_i g_i)(sum_i g_i)^T, the gradient outer product
  scaled,      ///< (1/N)(sum_i g_i)(sum_i g_i)^T
  mini_exact,  ///< label-expectation Fisher of a strict subset
  full_exact   ///< label-expectation Fisher of the whole dataset
};

std::string_view to_string(FisherKind k);

/// A Fisher matrix tagged with how it was built. Always fp64; these are
/// measuring instruments, never optimizer state.
struct FisherEstimate {
  Mat matrix;
  FisherKind kind;
  std::size_t count;  ///< N or B used for normalisation / enumeration
};

FisherEstimate emp_fisher_standard(std::span<const Vec> grads);
FisherEstimate emp_fisher_new(std::span<const Vec> grads);
/// `n` is the normalising count (N for a full batch).
FisherEstimate emp_fisher_scaled(std::span<const Vec> grads, std::size_t n);

/// sum_{i in subset} E_{y ~ p(y|x_i)} [score score^T], enumerating y in {0, 1}.
/// Throws UnsupportedError for problems without a binary label model.
FisherEstimate exact_fisher(const Problem& p, std::span<const double> mu,
                            std::span<const std::size_t> subset);

/// Fisher of the joint label distribution over `subset`, computed straight
/// from the definition by enumerating all 2^|subset| label vectors:
/// E_y[(sum_i s_i(y_i))(sum_j s_j(y_j))^T]. The cross terms are kept, so
/// agreement with exact_fisher checks that they vanish.
/// SizeError when |subset| > kMaxJointLabels.
inline constexpr std::size_t kMaxJointLabels = 20;
FisherEstimate joint_fisher(const Problem& p, std::span<const double> mu,
                            std::span<const std::size_t> subset);

/// Largest |sum_y p(y|x_i) score(y)| entry over all samples; zero in exact
/// arithmetic because each per-sample distribution is normalised.
double max_mean_score(const Problem& p, std::span<const double> mu);

/// Guard for enumerating all size-B subsets.
inline constexpr double kMaxSubsets = 1e6;

/// || mean over all size-B subsets of (1/B) F_mini - (1/N) F_full ||_max,
/// both sides from joint_fisher. Throws SizeError if C(N, B) > kMaxSubsets.
double check_unbiasedness(const Problem& p, std::span<const double> mu, std::size_t batch_size);

/// C(n, k) as a double (exact for desk-scale arguments).
double binomial(std::size_t n, std::size_t k);

/// Numerical rank: eigenvalues above rel_tol * largest.
std::size_t numerical_rank(const Mat& symmetric, double rel_tol = 1e-10);

}  // namespace sqrtfree
