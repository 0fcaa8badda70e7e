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

#include "sqrtfree/precision.hpp"

#include <cmath>
#include <limits>

#include "sqrtfree/errors.hpp"

namespace sqrtfree {

double FloatFormat::unit_roundoff() const noexcept { return std::ldexp(1.0, -(mantissa_bits + 1)); }

double FloatFormat::max_finite() const noexcept {
  if (is_reference()) return std::numeric_limits<double>::max();
  const int emax = (1 << (exponent_bits - 1)) - 1;
  return std::ldexp(2.0 - std::ldexp(1.0, -mantissa_bits), emax);
}

double FloatFormat::min_normal() const noexcept {
  if (is_reference()) return std::numeric_limits<double>::min();
  const int emin = 2 - (1 << (exponent_bits - 1));
  return std::ldexp(1.0, emin);
}

namespace formats {
FloatFormat fp64() { return {"fp64", 11, 52}; }
FloatFormat fp32() { return {"fp32", 8, 23}; }
FloatFormat fp16() { return {"fp16", 5, 10}; }
FloatFormat bf16() { return {"bf16", 8, 7}; }
}  // namespace formats

FloatFormat format_by_name(std::string_view name) {
  if (name == "fp64") return formats::fp64();
  if (name == "fp32") return formats::fp32();
  if (name == "fp16") return formats::fp16();
  if (name == "bf16") return formats::bf16();
  throw DomainError("unknown float format '" + std::string(name) +
                    "' (expected fp64, fp32, fp16 or bf16)");
}

FloatFormat make_format(std::string name, int exponent_bits, int mantissa_bits) {
  if (exponent_bits < 2 || exponent_bits > 11) {
    throw DomainError("exponent_bits must lie in [2, 11]");
  }
  if (mantissa_bits < 1 || mantissa_bits > 52) {
    throw DomainError("mantissa_bits must lie in [1, 52]");
  }
  return {std::move(name), exponent_bits, mantissa_bits};
}

double quantize(double x, const FloatFormat& fmt) {
  if (fmt.is_reference() || !std::isfinite(x) || x == 0.0) return x;

  const double a = std::abs(x);
  if (a < fmt.min_normal()) return std::copysign(0.0, x);

  int e2 = 0;
  std::frexp(a, &e2);  // a = f * 2^e2, f in [0.5, 1)
  const int exponent = e2 - 1;
  // Scaling by a power of two is exact, and nearbyint honours the default
  // round-to-nearest-even mode.
  const double ulp = std::ldexp(1.0, exponent - fmt.mantissa_bits);
  const double rounded = std::nearbyint(a / ulp) * ulp;
  if (rounded > fmt.max_finite()) return std::copysign(std::numeric_limits<double>::infinity(), x);
  return std::copysign(rounded, x);
}

Mat quantize_mat(const Mat& a, const FloatFormat& fmt) {
  if (fmt.is_reference()) return a;
  Mat out = a;
  for (double& x : out.data()) x = quantize(x, fmt);
  return out;
}

Vec quantize_vec(const Vec& v, const FloatFormat& fmt) {
  Vec out = v;
  if (fmt.is_reference()) return out;
  for (double& x : out) x = quantize(x, fmt);
  return out;
}

std::string_view to_string(PrecisionScope scope) {
  switch (scope) {
    case PrecisionScope::none:
      return "none";
    case PrecisionScope::state_only:
      return "state";
    case PrecisionScope::state_and_linalg:
      return "state-and-linalg";
  }
  return "none";
}

PrecisionScope scope_by_name(std::string_view name) {
  if (name == "none") return PrecisionScope::none;
  if (name == "state") return PrecisionScope::state_only;
  if (name == "state-and-linalg") return PrecisionScope::state_and_linalg;
  throw DomainError("unknown precision scope '" + std::string(name) +
                    "' (expected none, state or state-and-linalg)");
}

void PrecisionPolicy::store(Mat& a) const {
  if (rounds_state()) a = quantize_mat(a, format);
}

void PrecisionPolicy::store(Vec& v) const {
  if (rounds_state()) v = quantize_vec(v, format);
}

void PrecisionPolicy::intermediate(Mat& a) const {
  if (rounds_linalg()) a = quantize_mat(a, format);
}

}  // namespace sqrtfree
