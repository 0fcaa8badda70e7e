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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqrtfree/hyper.hpp"
#include "sqrtfree/mat.hpp"
#include "sqrtfree/optim.hpp"
#include "sqrtfree/precision.hpp"
#include "sqrtfree/problems.hpp"

namespace sqrtfree {

/// Direction of a check. Most checks bound a deviation from above; a few
/// demonstrations require a deviation to exceed a floor (a broken invariance,
/// a low-precision failure).
enum class Bound { upper, lower };

std::string_view to_string(Bound b);

struct VerifyReport {
  std::string name;
  double max_deviation = 0.0;
  double threshold = 0.0;
  Bound bound = Bound::upper;
  bool pass = false;
  std::vector<double> trace;
  std::string note;
};

/// Builds a report whose pass flag is consistent with its bound:
/// upper: deviation <= threshold; lower: deviation > threshold.
/// NaN deviations never pass.
VerifyReport make_report(std::string name, double deviation, double threshold,
                         Bound bound = Bound::upper, std::vector<double> trace = {},
                         std::string note = {});

/// Runs `method` on 1/2 mu^T Q mu - b^T mu from mu0 and on the reparameterised
/// problem l(A m) from m0 = A^-1 mu0 with S0_rep = A^T S0 A. Deviation is
/// max_t ||mu_t - A m_t||_inf (trace holds every t, including t = 0).
/// Supports the full-matrix methods for any nonsingular A and the diagonal
/// methods for diagonal A only. DomainError on singular A.
VerifyReport affine_invariance_check(Method method, const Mat& q, const Vec& b, const Vec& mu0,
                                     const Mat& a, std::size_t steps, const Hyper& h,
                                     std::optional<double> precond_init = {},
                                     double threshold = 1e-8);

/// Same check on a seeded random quadratic (cond(Q) = 10) of A's dimension,
/// starting from S0 = I.
VerifyReport verify_affine_invariance(Method method, const Mat& a, std::size_t steps,
                                      const Hyper& h, std::uint64_t seed = 0,
                                      double threshold = 1e-8);

/// Sum-loss run (Fisher factor 1, preconditioner init c, damping lambda)
/// against a mean-loss run over N samples (factor N, init c/N, damping
/// lambda/N), both full batch with rf-rmsprop and rf-adagrad-full, same step
/// size. Deviation is the largest iterate gap. With `with_factor == false`
/// the mean side uses factor 1, which should break the pairing.
VerifyReport verify_scale_invariance(std::size_t steps, std::size_t n, const Hyper& h,
                                     std::uint64_t seed = 0, bool with_factor = true);

/// Which one-step discrepancy to measure in the first-order check.
enum class FirstOrderPair {
  rf_vs_if,       ///< ||S_C after rf-shampoo - (C' C'^T)^-1 after if-shampoo||_inf
  exact_vs_trunc  ///< ||C' (exact exp) - C' (trunc1)||_inf
};

/// One-step errors e(beta2) for each beta2, from a random consistent state
/// (S_C = (C C^T)^-1, S_K = (K K^T)^-1) and gradient, with gamma = 1 and
/// lambda = 1e-3. `zero_gradient` replaces G with 0 and turns off decay and
/// damping, so both updates leave the state unchanged.
std::vector<double> first_order_errors(std::size_t p, std::size_t d, std::span<const double> betas,
                                       std::uint64_t seed, FirstOrderPair pair,
                                       ExpMode if_mode = ExpMode::exact,
                                       bool zero_gradient = false);

/// Ratios e(beta_i) / e(beta_{i+1}) must lie in [3.5, 4.5]; deviation is
/// max |ratio - 4| with threshold 0.5. betas must descend, at least 2.
VerifyReport verify_first_order_equiv(std::size_t p, std::size_t d, std::span<const double> betas,
                                      std::uint64_t seed = 0,
                                      FirstOrderPair pair = FirstOrderPair::rf_vs_if,
                                      bool zero_gradient = false);

/// Low-precision stress, two reports:
///  * inverse fourth root of a 6x6 SPD matrix with condition number `cond`
///    computed in `fmt`, relative max-entry error against the fp64 path.
///    For fp64 the bound is <= 1e-12; for emulated formats the error must
///    exceed 0.1 (the root-based path is expected to break down).
///  * if-shampoo (trunc1) on an 8x6 matfact problem for `steps` steps with
///    state-and-linalg rounding; deviation is max(r, 1/r) for r the final
///    loss over the fp64 final loss, +inf if anything went non-finite;
///    bound <= kPrecisionLossFactor.
inline constexpr double kPrecisionLossFactor = 2.0;
std::vector<VerifyReport> verify_precision_stress(double cond, std::size_t steps,
                                                  const FloatFormat& fmt, std::uint64_t seed = 0);

/// Smallest preconditioner eigenvalue seen over `steps` steps on a seeded
/// problem (logreg for diagonal/full methods, matfact for Kronecker ones).
/// Passes when it stays > 0.
VerifyReport verify_pd_preservation(Method method, std::size_t steps, std::uint64_t seed = 0);

/// First-step magnitudes on 1-D instances under g -> 10 g, starting from a
/// zero accumulator with lambda = 0. For rmsprop and shampoo the deviation is
/// the relative change in |step|; for rf-rmsprop and rf-adagrad-full it is
/// the relative gap between the step ratio and 1/10. Other methods throw
/// UnsupportedError (rf-shampoo inverts its previous factors, so it has no
/// zero starting state).
VerifyReport verify_sign_descent(Method method);

/// Newton's method on a logistic-regression problem (with reg > 0) to a
/// gradient norm below 1e-12. Independent reference optimum.
Vec logreg_newton_optimum(const Problem& p, std::size_t max_iters = 100);

/// Seeded instance used for the convex reproduction runs: 200 samples,
/// 6 features viewed as 2 x 3, label noise 0.1, reg 1, mean reduction.
ProblemPtr convex_reproduction_problem(std::uint64_t seed = 7);

/// Runs `method` with mini-batches of 20 for `steps` steps on
/// convex_reproduction_problem and reports final loss - optimal loss
/// (threshold 1e-3).
VerifyReport verify_convex_reproduction(Method method, std::size_t steps = 2000,
                                        std::uint64_t seed = 7);

/// Named suites for the CLI: worked-example, affine, scale, unbiased, separation,
/// first-order, pd, precision, sign-descent, convex, all.
std::vector<std::string_view> suite_names();
std::vector<VerifyReport> run_suite(std::string_view name);

/// JSON array of report objects. Non-finite numbers are written as the
/// strings "inf", "-inf" or "nan".
std::string reports_to_json(const std::vector<VerifyReport>& reports);

}  // namespace sqrtfree
