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

#include "sqrtfree/hyper.hpp"

#include <cmath>
#include <string>

#include "sqrtfree/errors.hpp"

namespace sqrtfree {

std::string_view to_string(ExpMode m) { return m == ExpMode::trunc1 ? "trunc1" : "exact"; }

ExpMode exp_mode_by_name(std::string_view name) {
  if (name == "trunc1") return ExpMode::trunc1;
  if (name == "exact") return ExpMode::exact;
  throw DomainError("unknown exp_mode '" + std::string(name) + "' (expected trunc1 or exact)");
}

void Hyper::validate() const {
  if (!(lr > 0.0) || !std::isfinite(lr)) throw ConfigError("invariant violated: β1 > 0 (lr)");
  if (!(beta2 > 0.0 && beta2 <= 1.0)) throw ConfigError("invariant violated: β2 ∈ (0,1] (beta2)");
  if (!std::isfinite(gamma)) throw ConfigError("invariant violated: γ finite (gamma)");
  if (!(damping >= 0.0) || !std::isfinite(damping)) {
    throw ConfigError("invariant violated: λ ≥ 0 (damping)");
  }
  if (!(weight_decay >= 0.0) || !std::isfinite(weight_decay)) {
    throw ConfigError("invariant violated: κ ≥ 0 (weight_decay)");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw ConfigError("invariant violated: α1 ∈ [0,1) (momentum)");
  }
  if (batch < 1) throw ConfigError("invariant violated: B ≥ 1 (batch)");
  if (!std::isfinite(factor_weight_c) || !std::isfinite(factor_weight_k)) {
    throw ConfigError("invariant violated: factor weights finite");
  }
}

std::vector<std::string> Hyper::warnings() const {
  std::vector<std::string> out;
  if (gamma != 0.0 && gamma != 1.0) {
    out.push_back("gamma = " + std::to_string(gamma) +
                  " is neither 0 (accumulation) nor 1 (moving average)");
  }
  return out;
}

}  // namespace sqrtfree
