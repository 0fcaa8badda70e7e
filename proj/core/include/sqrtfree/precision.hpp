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

#include <string>
#include <string_view>

#include "sqrtfree/mat.hpp"

namespace sqrtfree {

/// A binary floating-point format emulated on top of `double`.
///
/// Values are rounded to nearest, ties to even. Results that would be
/// subnormal in the target format are flushed to a signed zero, overflow
/// goes to +/-inf, and NaN/inf pass through unchanged.
struct FloatFormat {
  std::string name;
  int exponent_bits = 11;
  int mantissa_bits = 52;

  /// True when the format can represent every double exactly.
  bool is_reference() const noexcept { return exponent_bits >= 11 && mantissa_bits >= 52; }
  /// Half an ulp at 1.0, i.e. 2^-(mantissa_bits + 1).
  double unit_roundoff() const noexcept;
  double max_finite() const noexcept;
  double min_normal() const noexcept;

  friend bool operator==(const FloatFormat&, const FloatFormat&) = default;
};

namespace formats {
FloatFormat fp64();
FloatFormat fp32();
FloatFormat fp16();
FloatFormat bf16();
}  // namespace formats

/// Look up "fp64" | "fp32" | "fp16" | "bf16". Throws DomainError otherwise.
FloatFormat format_by_name(std::string_view name);

/// Construct a custom format; requires exponent_bits >= 2, mantissa_bits >= 1.
FloatFormat make_format(std::string name, int exponent_bits, int mantissa_bits);

double quantize(double x, const FloatFormat& fmt);
Mat quantize_mat(const Mat& a, const FloatFormat& fmt);
Vec quantize_vec(const Vec& v, const FloatFormat& fmt);

/// Which updates are rounded to the emulated format.
enum class PrecisionScope {
  none,             ///< everything at fp64
  state_only,       ///< optimizer state and parameters, once per assignment line
  state_and_linalg  ///< additionally, linear-algebra intermediates
};

std::string_view to_string(PrecisionScope scope);
PrecisionScope scope_by_name(std::string_view name);

/// Rounding model for an optimizer run: higher-precision accumulation inside
/// an update line, low-precision storage at the end of the line.
struct PrecisionPolicy {
  FloatFormat format = formats::fp64();
  PrecisionScope scope = PrecisionScope::none;

  bool rounds_state() const noexcept {
    return scope != PrecisionScope::none && !format.is_reference();
  }
  bool rounds_linalg() const noexcept {
    return scope == PrecisionScope::state_and_linalg && !format.is_reference();
  }

  /// Round the result of a named assignment line in place.
  void store(Mat& a) const;
  void store(Vec& v) const;
  /// Round an intermediate linear-algebra result (inverse, power, exp).
  void intermediate(Mat& a) const;
  /// The format linalg kernels should compute in under this policy.
  FloatFormat linalg_format() const { return rounds_linalg() ? format : formats::fp64(); }

  friend bool operator==(const PrecisionPolicy&, const PrecisionPolicy&) = default;
};

}  // namespace sqrtfree
