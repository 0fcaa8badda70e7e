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

#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "sqrtfree/hyper.hpp"
#include "sqrtfree/mat.hpp"
#include "sqrtfree/precision.hpp"
#include "sqrtfree/problems.hpp"

namespace sqrtfree {

enum class Method {
  sgd,
  rmsprop,
  rf_rmsprop,
  adagrad_full,
  rf_adagrad_full,
  shampoo,
  rf_shampoo,
  if_shampoo
};

/// Config spelling: sgd, rmsprop, rf-rmsprop, adagrad-full, rf-adagrad-full,
/// shampoo, rf-shampoo, if-shampoo.
std::string_view to_string(Method m);
/// Throws ConfigError for unknown names.
Method method_by_name(std::string_view name);

bool is_root_free(Method m);
bool is_kronecker(Method m);

struct MomentumState {
  Vec m;
};

/// Diagonal preconditioner s and momentum buffer m.
struct DiagState {
  Vec s;
  Vec m;
};

/// Dense preconditioner S and momentum buffer m.
struct FullState {
  Mat s;
  Vec m;
};

/// Kronecker factors S_C (p x p), S_K (d x d) and a p x d momentum buffer.
/// Shampoo stores its root-based accumulators here as well.
struct KronState {
  Mat s_c;
  Mat s_k;
  Mat m;
};

/// Inverse-free factors with S_C^-1 = C C^T and S_K^-1 = K K^T.
struct IFKronState {
  Mat c;
  Mat k;
  Mat m;
};

using OptimizerState = std::variant<MomentumState, DiagState, FullState, KronState, IFKronState>;

/// Updated parameters and state after one step.
template <class Params, class State>
struct Step {
  Params params;
  State state;
};

/// Default preconditioner initialisation: 0 for root-based methods, 1 (or I)
/// for root-free ones. `precond_init` overrides the scale of that value.
double default_precond_init(Method m);
OptimizerState initial_state(Method m, Shape shape, std::optional<double> precond_init = {});

// Each step follows its update lines in order. Under a rounding policy the
// result of every line is stored in the emulated format once.

/// m <- a1 m + g + k mu;  mu <- mu - b1 m.
Step<Vec, MomentumState> sgd_step(std::span<const double> mu, std::span<const double> g,
                                  const MomentumState& state, const Hyper& h,
                                  const PrecisionPolicy& policy = {});

/// s <- (1 - b2) s + b2 g^2;  m <- a1 m + g / (sqrt(s) + lambda) + k mu;  mu <- mu - b1 m.
Step<Vec, DiagState> rmsprop_step(std::span<const double> mu, std::span<const double> g,
                                  const DiagState& state, const Hyper& h,
                                  const PrecisionPolicy& policy = {});

/// s <- (1 - b2) s + b2 B g^2;  m <- a1 m + g / (s + lambda) + k mu;  mu <- mu - b1 m.
Step<Vec, DiagState> rf_rmsprop_step(std::span<const double> mu, std::span<const double> g,
                                     const DiagState& state, const Hyper& h,
                                     const PrecisionPolicy& policy = {});

/// Full-matrix AdaGrad with the root:
/// S <- S + b2 g g^T;  m <- a1 m + (S^1/2 + lambda I)^-1 g + k mu;  mu <- mu - b1 m.
/// Roundoff-negative eigenvalues of S are clamped to zero before the root;
/// with lambda = 0 a singular S raises DefinitenessError.
Step<Vec, FullState> adagrad_full_root_step(std::span<const double> mu, std::span<const double> g,
                                            const FullState& state, const Hyper& h,
                                            const PrecisionPolicy& policy = {});

/// Full-matrix update without the root:
/// S <- (1 - b2 gamma) S + b2 (B g g^T + lambda I);  m <- a1 m + S^-1 g + k mu;
/// mu <- mu - b1 m.
Step<Vec, FullState> adagrad_full_rf_step(std::span<const double> mu, std::span<const double> g,
                                          const FullState& state, const Hyper& h,
                                          const PrecisionPolicy& policy = {});

/// Shampoo with accumulators S_C, S_K:
/// S_C <- (1 - b2 gamma) S_C + b2 G G^T;  S_K <- (1 - b2 gamma) S_K + b2 G^T G;
/// M <- a1 M + (S_C + lambda I)^-1/4 G (S_K + lambda I)^-1/4 + k W;  W <- W - b1 M.
Step<Mat, KronState> shampoo_step(const Mat& w, const Mat& grad, const KronState& state,
                                  const Hyper& h, const PrecisionPolicy& policy = {});

/// Root-free Shampoo. Both factor lines read the pre-update factors.
Step<Mat, KronState> rf_shampoo_step(const Mat& w, const Mat& grad, const KronState& state,
                                     const Hyper& h, const PrecisionPolicy& policy = {});

/// Inverse-free Shampoo: C <- C exp(N_C), K <- K exp(N_K), both arguments
/// built from the pre-update C and K. In trunc1 mode no inverse or
/// decomposition is performed.
Step<Mat, IFKronState> if_shampoo_step(const Mat& w, const Mat& grad, const IFKronState& state,
                                       const Hyper& h, const PrecisionPolicy& policy = {});

/// Dispatch on `method`, reshaping to `shape` for the Kronecker methods.
/// Throws ShapeError if `state` does not match the method.
Vec apply_step(Method method, std::span<const double> mu, std::span<const double> g,
               OptimizerState& state, Shape shape, const Hyper& h,
               const PrecisionPolicy& policy = {});

/// Smallest eigenvalue (or entry, for diagonal states) across every
/// preconditioner factor held by `state`. For if-shampoo this inspects
/// C C^T and K K^T. Momentum-only states report +inf.
double min_preconditioner_eigenvalue(const OptimizerState& state);

}  // namespace sqrtfree
