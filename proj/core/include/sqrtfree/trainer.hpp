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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sqrtfree/hyper.hpp"
#include "sqrtfree/optim.hpp"
#include "sqrtfree/precision.hpp"
#include "sqrtfree/problems.hpp"

namespace sqrtfree {

struct TrajectoryRecord {
  std::size_t step = 0;
  double loss = 0.0;
  double grad_norm = 0.0;
  double param_norm = 0.0;
  std::int64_t wall_ns = 0;  ///< elapsed since the run started; not reproducible
};

enum class RunStatus { completed, diverged };

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  RunStatus status = RunStatus::completed;
  std::string message;  ///< reason for divergence, empty otherwise
  Vec final_params;
  OptimizerState final_state;
};

struct RunOptions {
  /// Samples per mini-batch; 0 or >= N means full batch.
  std::size_t batch_size = 0;
  /// Starting point; zeros when unset.
  std::optional<Vec> init_params;
  /// Overrides the method's default preconditioner initialisation.
  std::optional<double> precond_init;
  /// Invoked after every step with the new state (PD monitors, tests).
  std::function<void(std::size_t, const Vec&, const OptimizerState&)> observer;
};

/// Run `steps` updates of `method` on `p`.
///
/// Batches are drawn by shuffling the sample indices with a generator seeded
/// by `seed` and walking the permutation in chunks; a fresh permutation
/// starts each epoch and a trailing partial chunk is dropped. Records hold
/// the full-data loss and gradient norm, so there are steps + 1 of them
/// unless the run diverges (non-finite loss or parameters, or a numerical
/// failure inside a step), in which case the run stops after recording the
/// offending step.
Trajectory run_optimizer(const Problem& p, Method method, const Hyper& h, std::size_t steps,
                         std::uint64_t seed, const PrecisionPolicy& policy = {},
                         const RunOptions& options = {});

}  // namespace sqrtfree
