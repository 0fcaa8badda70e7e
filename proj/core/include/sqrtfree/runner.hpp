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

#include <iosfwd>

#include "sqrtfree/config.hpp"
#include "sqrtfree/fisher.hpp"
#include "sqrtfree/problems.hpp"
#include "sqrtfree/trainer.hpp"

namespace sqrtfree {

/// Process exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitDiverged = 2, kExitIo = 3 };

/// Builds the problem a config describes. Synthetic data is drawn from
/// `data_seed`; logreg reads `csv` instead when it is set.
ProblemPtr build_problem(const RunConfig& cfg);

/// Starting point: zeros, or N(0, init_scale^2) entries seeded by `seed`.
Vec initial_params(const RunConfig& cfg, std::size_t dim);

/// Runs the configured optimizer.
Trajectory run_config(const RunConfig& cfg);

/// CSV with header `step,loss,grad_norm,param_norm,wall_ns`, one row per
/// record, reals in shortest round-trip form.
void write_trajectory_csv(const Trajectory& tr, std::ostream& out);

/// Runs and writes the CSV to cfg.output (standard output when empty).
/// Returns kExitOk, or kExitDiverged when the run halted early. Throws
/// IoError when the output cannot be written.
int run_and_emit(const RunConfig& cfg, std::ostream& default_out);

/// Fisher matrix of kind cfg.fisher_kind at the initial parameters over the
/// full data set.
FisherEstimate config_fisher(const RunConfig& cfg);

/// One CSV row per matrix row with header c0,c1,...
void write_matrix_csv(const Mat& m, std::ostream& out);

/// config_fisher written as CSV to cfg.output or `default_out`.
int fisher_dump(const RunConfig& cfg, std::ostream& default_out);

}  // namespace sqrtfree
