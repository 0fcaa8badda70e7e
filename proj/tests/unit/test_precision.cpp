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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>

#include "sqrtfree/errors.hpp"
#include "sqrtfree/precision.hpp"
#include "sqrtfree/random.hpp"

namespace sqrtfree {
namespace {

// bf16 oracle from bit manipulation: keep the top 16 bits of the binary32
// encoding with round-to-nearest-even on the dropped half.
double bf16_by_bits(float x) {
  std::uint32_t u = std::bit_cast<std::uint32_t>(x);
  const std::uint32_t lsb = (u >> 16) & 1u;
  u += 0x7fffu + lsb;
  u &= 0xffff0000u;
  return std::bit_cast<float>(u);
}

TEST(Quantize, SpecExamples) {
  EXPECT_EQ(quantize(1.0, formats::bf16()), 1.0);
  EXPECT_EQ(quantize(1.0 + std::ldexp(1.0, -9), formats::bf16()), 1.0);
  EXPECT_EQ(quantize(0.2, formats::bf16()), 0.2001953125);
}

TEST(Quantize, TiesToEven) {
  const auto bf = formats::bf16();
  EXPECT_EQ(quantize(1.0 + std::ldexp(1.0, -8), bf), 1.0);
  EXPECT_EQ(quantize(1.0 + 3 * std::ldexp(1.0, -8), bf), 1.0 + std::ldexp(1.0, -6));
  EXPECT_EQ(quantize(-(1.0 + 3 * std::ldexp(1.0, -8)), bf), -(1.0 + std::ldexp(1.0, -6)));
  EXPECT_EQ(quantize(2049.0, formats::fp16()), 2048.0);
  EXPECT_EQ(quantize(2051.0, formats::fp16()), 2052.0);
}

TEST(Quantize, MatchesBitLevelBf16) {
  Rng rng(1);
  std::normal_distribution<float> nd(0.0f, 10.0f);
  for (int i = 0; i < 2000; ++i) {
    const float x = nd(rng);
    EXPECT_EQ(quantize(x, formats::bf16()), bf16_by_bits(x)) << x;
  }
}

TEST(Quantize, Fp32AgreesWithHardwareFloat) {
  Rng rng(2);
  std::normal_distribution<double> nd(0.0, 1e3);
  for (int i = 0; i < 2000; ++i) {
    const double x = nd(rng);
    EXPECT_EQ(quantize(x, formats::fp32()), static_cast<double>(static_cast<float>(x))) << x;
  }
}

TEST(Quantize, OverflowAndUnderflow) {
  const auto h = formats::fp16();
  EXPECT_EQ(h.max_finite(), 65504.0);
  EXPECT_EQ(quantize(65504.0, h), 65504.0);
  EXPECT_EQ(quantize(65519.0, h), 65504.0);
  EXPECT_EQ(quantize(65520.0, h), std::numeric_limits<double>::infinity());
  EXPECT_EQ(quantize(-1e6, h), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(h.min_normal(), std::ldexp(1.0, -14));
  EXPECT_EQ(quantize(std::ldexp(1.0, -14), h), std::ldexp(1.0, -14));
  EXPECT_EQ(quantize(std::ldexp(1.0, -15), h), 0.0);
  EXPECT_TRUE(std::signbit(quantize(-std::ldexp(1.0, -15), h)));
  EXPECT_EQ(formats::bf16().max_finite(), (2.0 - std::ldexp(1.0, -7)) * std::ldexp(1.0, 127));
}

TEST(Quantize, SpecialValuesAndIdempotence) {
  const auto bf = formats::bf16();
  EXPECT_TRUE(std::isnan(quantize(NAN, bf)));
  EXPECT_EQ(quantize(INFINITY, bf), INFINITY);
  EXPECT_EQ(quantize(0.0, bf), 0.0);
  Rng rng(3);
  for (double x : normal_vec(200, rng, 5.0)) EXPECT_EQ(quantize(quantize(x, bf), bf), quantize(x, bf));
  for (double x : normal_vec(50, rng)) EXPECT_EQ(quantize(x, formats::fp64()), x);
}

TEST(Quantize, RelativeErrorWithinUnitRoundoff) {
  Rng rng(4);
  for (const auto& f : {formats::bf16(), formats::fp16(), formats::fp32()}) {
    for (double x : normal_vec(500, rng, 3.0)) {
      if (std::abs(x) < f.min_normal()) continue;
      EXPECT_LE(std::abs(quantize(x, f) - x), f.unit_roundoff() * std::abs(x)) << f.name;
    }
  }
  EXPECT_EQ(formats::bf16().unit_roundoff(), std::ldexp(1.0, -8));
}

TEST(Quantize, MatricesAndVectors) {
  EXPECT_EQ(quantize_mat(Mat::identity(3), formats::bf16()), Mat::identity(3));
  EXPECT_EQ(quantize_mat(Mat(2, 2, 0.0), formats::fp16()), Mat(2, 2, 0.0));
  EXPECT_EQ(quantize_vec(Vec{0.2, 1.0}, formats::bf16()), (Vec{0.2001953125, 1.0}));
}

TEST(Formats, LookupAndValidation) {
  EXPECT_EQ(format_by_name("bf16").mantissa_bits, 7);
  EXPECT_EQ(format_by_name("fp16").exponent_bits, 5);
  EXPECT_TRUE(format_by_name("fp64").is_reference());
  EXPECT_THROW(format_by_name("fp8"), DomainError);
  EXPECT_THROW(make_format("x", 1, 4), DomainError);
  EXPECT_THROW(make_format("x", 5, 0), DomainError);
  EXPECT_EQ(make_format("e5m2", 5, 2).max_finite(), 57344.0);
}

TEST(PrecisionPolicy, ScopeControlsRounding) {
  Mat a{{0.2}};
  PrecisionPolicy none{formats::bf16(), PrecisionScope::none};
  none.store(a);
  EXPECT_EQ(a(0, 0), 0.2);

  PrecisionPolicy state{formats::bf16(), PrecisionScope::state_only};
  Mat b{{0.2}};
  state.intermediate(b);
  EXPECT_EQ(b(0, 0), 0.2);
  state.store(b);
  EXPECT_EQ(b(0, 0), 0.2001953125);
  EXPECT_TRUE(state.linalg_format().is_reference());

  PrecisionPolicy all{formats::bf16(), PrecisionScope::state_and_linalg};
  Mat c{{0.2}};
  all.intermediate(c);
  EXPECT_EQ(c(0, 0), 0.2001953125);
  EXPECT_EQ(all.linalg_format(), formats::bf16());

  EXPECT_EQ(scope_by_name("state-and-linalg"), PrecisionScope::state_and_linalg);
  EXPECT_EQ(to_string(PrecisionScope::state_only), "state");
  EXPECT_THROW(scope_by_name("everything"), DomainError);
}

}  // namespace
}  // namespace sqrtfree
