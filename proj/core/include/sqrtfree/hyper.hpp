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
#include <string>
#include <string_view>
#include <vector>

#include "sqrtfree/problems.hpp"

namespace sqrtfree {

/// How if-shampoo evaluates the factor exponentials.
enum class ExpMode { trunc1, exact };

std::string_view to_string(ExpMode m);
ExpMode exp_mode_by_name(std::string_view name);

/// Update-rule scalars shared by every optimizer.
struct Hyper {
  double lr = 1e-2;            ///< parameter step size (beta1)
  double beta2 = 0.999;        ///< preconditioner EMA weight
  double gamma = 1.0;          ///< 1: moving average, 0: AdaGrad-style accumulation
  double damping = 1e-8;       ///< Tikhonov lambda
  double weight_decay = 0.0;   ///< kappa
  double momentum = 0.0;       ///< alpha1
  std::size_t batch = 1;       ///< B multiplying the outer product (Fisher factor)
  Reduction reduction = Reduction::mean;
  ExpMode exp_mode = ExpMode::trunc1;
  /// Scalar weights on the if-shampoo C and K exponent arguments. Left at 1;
  /// exposed so variants can be explored without touching the update.
  double factor_weight_c = 1.0;
  double factor_weight_k = 1.0;

  /// Throws ConfigError naming the violated invariant.
  void validate() const;
  /// Legal but unusual settings worth surfacing (gamma outside {0, 1}).
  std::vector<std::string> warnings() const;

  friend bool operator==(const Hyper&, const Hyper&) = default;
};

}  // namespace sqrtfree
