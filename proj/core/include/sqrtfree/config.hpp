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
#include <string>
#include <string_view>

#include "sqrtfree/fisher.hpp"
#include "sqrtfree/hyper.hpp"
#include "sqrtfree/optim.hpp"
#include "sqrtfree/precision.hpp"
#include "sqrtfree/problems.hpp"

namespace sqrtfree {

/// Everything one `run` or `fisher-dump` invocation needs.
///
/// Text form is flat `key = value`, one pair per line; `#` starts a comment,
/// values may be double-quoted. Keys:
///
///   problem          quadratic | logreg | matfact           (required)
///   method           optimizer name                         (required)
///   lr beta2 gamma damping weight_decay momentum            Hyper scalars
///   fisher_factor    B multiplying outer products; default: batch size
///                    under mean reduction, 1 under sum
///   reduction        sum | mean
///   exp_mode         trunc1 | exact
///   if_weight_c if_weight_k                                 if-shampoo weights
///   precond_init     preconditioner init scale (default 0 root, 1 root-free)
///   steps seed batch_size output
///   precision        fp64 | fp32 | fp16 | bf16
///   precision_scope  none | state | state-and-linalg
///   dim samples cond data_seed csv reg shape noise init_scale
///   fisher_kind      standard | new | scaled | exact        (fisher-dump)
struct RunConfig {
  std::string problem;
  Method method = Method::sgd;
  Hyper hyper;
  std::optional<std::size_t> fisher_factor;
  std::optional<double> precond_init;
  std::size_t steps = 100;
  std::uint64_t seed = 0;
  std::size_t batch_size = 0;  ///< 0: full batch
  std::string output;          ///< empty: standard output
  PrecisionPolicy precision;

  std::size_t dim = 4;
  std::size_t samples = 64;
  double cond = 10.0;
  std::uint64_t data_seed = 0;
  std::string csv;
  double reg = 1.0;
  std::optional<Shape> shape;
  double noise = 0.1;
  double init_scale = 0.0;
  FisherKind fisher_kind = FisherKind::standard;

  /// Hyper with the Fisher factor resolved against the batch size actually
  /// drawn from `num_samples`.
  Hyper resolved_hyper(std::size_t num_samples) const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ParseError (with the line) for malformed lines and values,
/// ConfigError for unknown or duplicate keys, missing required keys and
/// violated invariants.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Text that parse_config maps back to an equal RunConfig.
std::string serialize_config(const RunConfig& cfg);

/// Shortest decimal string that parses back to exactly `v`; "inf", "-inf",
/// "nan" for non-finite values. Locale-independent.
std::string format_double(double v);

}  // namespace sqrtfree
