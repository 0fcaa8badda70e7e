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

#include <cmath>

#include "sqrtfree/dataset.hpp"
#include "sqrtfree/errors.hpp"
#include "sqrtfree/linalg.hpp"
#include "sqrtfree/optim.hpp"
#include "sqrtfree/random.hpp"

namespace sqrtfree {
namespace {

// Worked-example scalar settings: no damping, decay, momentum or weight decay.
Hyper plain(double lr, double beta2, double gamma = 1.0) {
  Hyper h;
  h.lr = lr;
  h.beta2 = beta2;
  h.gamma = gamma;
  h.damping = 0.0;
  h.batch = 1;
  return h;
}

TEST(Sgd, Examples) {
  Hyper h = plain(0.1, 0.5);
  const Vec mu{1.0, -2.0};
  EXPECT_EQ(sgd_step(mu, Vec{0, 0}, {Vec{0, 0}}, h).params, mu);
  const auto s = sgd_step(mu, Vec{3, 4}, {Vec{0, 0}}, h);
  EXPECT_DOUBLE_EQ(s.params[0], 1.0 - 0.3);
  EXPECT_DOUBLE_EQ(s.params[1], -2.0 - 0.4);
  // Quadratic Q = 2, b = 0 at mu = 1: gradient 2, step 0.1.
  EXPECT_DOUBLE_EQ(sgd_step(Vec{1.0}, Vec{2.0}, {Vec{0.0}}, h).params[0], 0.8);
}

TEST(Sgd, MomentumAndWeightDecayLines) {
  Hyper h = plain(0.5, 0.5);
  h.momentum = 0.9;
  h.weight_decay = 0.1;
  const auto s = sgd_step(Vec{2.0}, Vec{1.0}, {Vec{1.0}}, h);
  const double m = 0.9 * 1.0 + 1.0 + 0.1 * 2.0;
  EXPECT_DOUBLE_EQ(s.state.m[0], m);
  EXPECT_DOUBLE_EQ(s.params[0], 2.0 - 0.5 * m);
}

TEST(RmsProp, WorkedExampleOriginalAndReparameterised) {
  const Hyper h = plain(1.0, 1.0);
  const auto a = rmsprop_step(Vec{2.0}, Vec{2.0}, DiagState{{0.0}, {0.0}}, h);
  EXPECT_EQ(a.state.s[0], 4.0);
  EXPECT_EQ(a.params[0], 1.0);
  const auto b = rmsprop_step(Vec{1.0}, Vec{4.0}, DiagState{{0.0}, {0.0}}, h);
  EXPECT_EQ(b.params[0], 0.0);
  EXPECT_NE(a.params[0], 2.0 * b.params[0]);
}

TEST(RmsProp, ZeroGradientDecaysAccumulator) {
  const Hyper h = plain(1.0, 0.25);
  const auto s = rmsprop_step(Vec{2.0}, Vec{0.0}, DiagState{{4.0}, {0.0}}, h);
  EXPECT_EQ(s.params[0], 2.0);
  EXPECT_EQ(s.state.s[0], 3.0);
  // 0/0 with no damping is treated as no movement, nonzero/0 is an error.
  EXPECT_EQ(rmsprop_step(Vec{1.0}, Vec{0.0}, DiagState{{0.0}, {0.0}}, h).params[0], 1.0);
}

TEST(RfRmsProp, Examples) {
  const Hyper h = plain(1.0, 0.5);
  const auto z = rf_rmsprop_step(Vec{3.0}, Vec{0.0}, DiagState{{1.0}, {0.0}}, h);
  EXPECT_EQ(z.state.s[0], 0.5);
  EXPECT_EQ(z.params[0], 3.0);

  const auto a = rf_rmsprop_step(Vec{2.0}, Vec{2.0}, DiagState{{1.0}, {0.0}}, plain(1.0, 1.0));
  EXPECT_EQ(a.state.s[0], 4.0);
  EXPECT_EQ(a.params[0], 1.5);
}

TEST(RfRmsProp, FisherFactorAndDamping) {
  Hyper h = plain(0.1, 0.5);
  h.batch = 4;
  h.damping = 0.25;
  const auto s = rf_rmsprop_step(Vec{0.0}, Vec{1.0}, DiagState{{2.0}, {0.0}}, h);
  EXPECT_DOUBLE_EQ(s.state.s[0], 0.5 * 2.0 + 0.5 * 4.0);
  EXPECT_DOUBLE_EQ(s.params[0], -0.1 * 1.0 / (3.0 + 0.25));
}

TEST(AdaGradFull, RootBasedWorkedExample) {
  const Hyper h = plain(1.0, 1.0, 0.0);
  const auto a = adagrad_full_root_step(Vec{2.0}, Vec{2.0}, FullState{Mat{{0.0}}, {0.0}}, h);
  EXPECT_DOUBLE_EQ(a.state.s(0, 0), 4.0);
  EXPECT_DOUBLE_EQ(a.params[0], 1.0);
  const auto g0 = adagrad_full_root_step(Vec{2.0}, Vec{0.0}, FullState{Mat{{4.0}}, {0.0}}, h);
  EXPECT_EQ(g0.params[0], 2.0);
}

TEST(AdaGradFull, RootBasedMatchesEigenOracle) {
  Rng rng(3);
  const Mat s0 = random_spd(3, 10.0, rng);
  const Vec g = normal_vec(3, rng);
  Hyper h = plain(0.1, 0.3, 0.0);
  h.damping = 0.01;
  const auto st = adagrad_full_root_step(Vec(3, 0.0), g, FullState{s0, Vec(3, 0.0)}, h);
  const Mat s1 = s0 + outer(g, g) * 0.3;
  const Mat pre = spd_power(s1, 0.5) + Mat::identity(3) * 0.01;
  const Vec expected = -0.1 * (inverse(pre) * g);
  EXPECT_LT(max_abs_diff(st.params, expected), 1e-14);
}

TEST(AdaGradFull, RootFreeWorkedExample) {
  const Hyper h = plain(1.0, 1.0, 0.0);
  const auto a = adagrad_full_rf_step(Vec{2.0}, Vec{2.0}, FullState{Mat{{0.0}}, {0.0}}, h);
  EXPECT_DOUBLE_EQ(a.state.s(0, 0), 4.0);
  EXPECT_DOUBLE_EQ(a.params[0], 1.5);
  const auto b = adagrad_full_rf_step(Vec{1.0}, Vec{4.0}, FullState{Mat{{0.0}}, {0.0}}, h);
  EXPECT_DOUBLE_EQ(b.state.s(0, 0), 16.0);
  EXPECT_DOUBLE_EQ(b.params[0], 0.75);
  EXPECT_DOUBLE_EQ(a.params[0], 2.0 * b.params[0]);
}

TEST(AdaGradFull, RootFreeZeroGradientDecays) {
  const Hyper h = plain(1.0, 0.5, 1.0);
  FullState s{Mat::identity(2), Vec(2, 0.0)};
  Vec mu{1.0, 2.0};
  for (int t = 1; t <= 3; ++t) {
    auto st = adagrad_full_rf_step(mu, Vec{0.0, 0.0}, s, h);
    EXPECT_EQ(st.params, mu);
    EXPECT_DOUBLE_EQ(st.state.s(0, 0), std::pow(0.5, t));
    s = st.state;
  }
}

TEST(AdaGradFull, RootFreeDirectionSolvesSystem) {
  Rng rng(5);
  const Mat s0 = random_spd(4, 30.0, rng);
  const Vec g = normal_vec(4, rng);
  Hyper h = plain(0.2, 0.1, 1.0);
  h.batch = 3;
  h.damping = 0.05;
  const auto st = adagrad_full_rf_step(Vec(4, 0.0), g, FullState{s0, Vec(4, 0.0)}, h);
  const Mat s1 = s0 * 0.9 + (outer(g, g) * 3.0 + Mat::identity(4) * 0.05) * 0.1;
  EXPECT_LT(max_abs_diff(st.state.s, s1), 1e-15);
  EXPECT_LT(max_abs_diff(s1 * st.params, -0.2 * g), 1e-13);
}

TEST(Shampoo, Examples) {
  Hyper h = plain(0.7, 1.0, 0.0);
  const KronState zero{Mat{{0.0}}, Mat{{0.0}}, Mat{{0.0}}};
  const auto st = shampoo_step(Mat{{0.0}}, Mat{{3.0}}, zero, h);
  EXPECT_NEAR(st.params(0, 0), -0.7, 1e-15);

  h.damping = 0.1;
  const KronState some{Mat::identity(2), Mat::identity(3), Mat(2, 3, 0.0)};
  const Mat w(2, 3, 1.5);
  const auto g0 = shampoo_step(w, Mat(2, 3, 0.0), some, h);
  EXPECT_EQ(g0.params, w);
  EXPECT_EQ(g0.state.s_c, some.s_c);
  EXPECT_EQ(g0.state.s_k, some.s_k);
}

TEST(RfShampoo, Examples) {
  const Hyper h = plain(0.5, 1.0, 0.0);
  const KronState unit{Mat{{1.0}}, Mat{{1.0}}, Mat{{0.0}}};
  const auto st = rf_shampoo_step(Mat{{0.0}}, Mat{{3.0}}, unit, h);
  EXPECT_DOUBLE_EQ(st.state.s_c(0, 0), 10.0);
  EXPECT_DOUBLE_EQ(st.state.s_k(0, 0), 10.0);
  EXPECT_DOUBLE_EQ(st.params(0, 0), -0.5 * 3.0 / 100.0);

  const KronState two{Mat::identity(2), Mat::identity(3), Mat(2, 3, 0.0)};
  const Mat w(2, 3, 0.5);
  const auto g0 = rf_shampoo_step(w, Mat(2, 3, 0.0), two, h);
  EXPECT_EQ(g0.params, w);
  EXPECT_EQ(g0.state.s_c, two.s_c);
  EXPECT_EQ(g0.state.s_k, two.s_k);
}

TEST(RfShampoo, DirectionIsKroneckerSolve) {
  Rng rng(9);
  const Mat sc = random_spd(2, 5.0, rng);
  const Mat sk = random_spd(3, 5.0, rng);
  const Mat g = normal_mat(2, 3, rng);
  Hyper h = plain(1.0, 0.2, 1.0);
  h.damping = 0.01;
  const auto st = rf_shampoo_step(Mat(2, 3, 0.0), g, KronState{sc, sk, Mat(2, 3, 0.0)}, h);
  // Factor lines read the old factors.
  const Mat sc_inv = inverse_spd(sc);
  const Mat sk_inv = inverse_spd(sk);
  const Mat sc1 = sc * 0.8 + (g * sk_inv * g.transpose() + Mat::identity(2) * (0.01 * sk_inv.trace())) * (0.2 / 3.0);
  const Mat sk1 = sk * 0.8 + (g.transpose() * sc_inv * g + Mat::identity(3) * (0.01 * sc_inv.trace())) * (0.2 / 2.0);
  EXPECT_LT(max_abs_diff(st.state.s_c, sc1), 1e-14);
  EXPECT_LT(max_abs_diff(st.state.s_k, sk1), 1e-14);
  // (S_C kron S_K) vec_r(-step) = vec_r(G).
  const Vec lhs = kron(st.state.s_c, st.state.s_k) * (st.params * -1.0).flat();
  EXPECT_LT(max_abs_diff(lhs, g.flat()), 1e-12);
}

TEST(IfShampoo, Trunc1AndExactExamples) {
  Hyper h = plain(1.0, 0.1, 0.0);
  const IFKronState unit{Mat{{1.0}}, Mat{{1.0}}, Mat{{0.0}}};
  h.exp_mode = ExpMode::trunc1;
  const auto tr = if_shampoo_step(Mat{{0.0}}, Mat{{3.0}}, unit, h);
  EXPECT_DOUBLE_EQ(tr.state.c(0, 0), 0.55);
  EXPECT_DOUBLE_EQ(tr.state.k(0, 0), 0.55);
  EXPECT_DOUBLE_EQ(tr.params(0, 0), -std::pow(0.55, 4) * 3.0);
  h.exp_mode = ExpMode::exact;
  const auto ex = if_shampoo_step(Mat{{0.0}}, Mat{{3.0}}, unit, h);
  EXPECT_NEAR(ex.state.c(0, 0), std::exp(-0.45), 1e-15);
  EXPECT_NEAR(ex.state.c(0, 0), 0.637628, 1e-6);
}

TEST(IfShampoo, ZeroGradientLeavesStateUnchanged) {
  Hyper h = plain(1.0, 0.3, 0.0);
  Rng rng(2);
  const IFKronState s{Mat::identity(3) + normal_mat(3, 3, rng, 0.1),
                      Mat::identity(2) + normal_mat(2, 2, rng, 0.1), Mat(3, 2, 0.0)};
  const Mat w = normal_mat(3, 2, rng);
  for (ExpMode mode : {ExpMode::trunc1, ExpMode::exact}) {
    h.exp_mode = mode;
    const auto st = if_shampoo_step(w, Mat(3, 2, 0.0), s, h);
    EXPECT_LT(max_abs_diff(st.state.c, s.c), 1e-15);
    EXPECT_LT(max_abs_diff(st.state.k, s.k), 1e-15);
    EXPECT_EQ(st.params, w);
  }
}

TEST(IfShampoo, DirectionUsesImpliedInverse) {
  Rng rng(4);
  Hyper h = plain(1.0, 0.05, 1.0);
  h.damping = 1e-3;
  const IFKronState s{Mat::identity(2) + normal_mat(2, 2, rng, 0.2),
                      Mat::identity(3) + normal_mat(3, 3, rng, 0.2), Mat(2, 3, 0.0)};
  const Mat g = normal_mat(2, 3, rng);
  const auto st = if_shampoo_step(Mat(2, 3, 0.0), g, s, h);
  const Mat pc = st.state.c * st.state.c.transpose();
  const Mat pk = st.state.k * st.state.k.transpose();
  EXPECT_LT(max_abs_diff((st.params * -1.0).flat(), kron(pc, pk) * g.flat()), 1e-13);
}

TEST(IfShampoo, FactorWeightsScaleTheExponent) {
  Hyper h = plain(1.0, 0.1, 0.0);
  h.factor_weight_c = 2.0;
  const IFKronState unit{Mat{{1.0}}, Mat{{1.0}}, Mat{{0.0}}};
  const auto st = if_shampoo_step(Mat{{0.0}}, Mat{{3.0}}, unit, h);
  EXPECT_DOUBLE_EQ(st.state.c(0, 0), 1.0 - 0.9);
  EXPECT_DOUBLE_EQ(st.state.k(0, 0), 0.55);
}

TEST(Dispatch, NamesAndInitialStates) {
  for (Method m : {Method::sgd, Method::rmsprop, Method::rf_rmsprop, Method::adagrad_full,
                   Method::rf_adagrad_full, Method::shampoo, Method::rf_shampoo,
                   Method::if_shampoo})
    EXPECT_EQ(method_by_name(to_string(m)), m);
  EXPECT_THROW(method_by_name("adam"), ConfigError);
  EXPECT_TRUE(is_root_free(Method::if_shampoo));
  EXPECT_FALSE(is_root_free(Method::shampoo));
  EXPECT_TRUE(is_kronecker(Method::rf_shampoo));
  EXPECT_EQ(default_precond_init(Method::rmsprop), 0.0);
  EXPECT_EQ(default_precond_init(Method::rf_adagrad_full), 1.0);

  const auto ifs = std::get<IFKronState>(initial_state(Method::if_shampoo, {2, 3}, 4.0));
  // S_C^-1 = C C^T = (1/4) I.
  EXPECT_LT(max_abs_diff(ifs.c * ifs.c.transpose(), Mat::identity(2) * 0.25), 1e-15);
  const auto rf = std::get<FullState>(initial_state(Method::rf_adagrad_full, {1, 3}));
  EXPECT_EQ(rf.s, Mat::identity(3));
  const auto rms = std::get<DiagState>(initial_state(Method::rmsprop, {1, 2}));
  EXPECT_EQ(rms.s, (Vec{0, 0}));
}

TEST(Dispatch, ApplyStepMatchesDirectCallsAndChecksState) {
  Rng rng(6);
  const Vec mu = normal_vec(6, rng);
  const Vec g = normal_vec(6, rng);
  Hyper h = plain(0.1, 0.2);
  h.damping = 1e-3;
  OptimizerState st = initial_state(Method::rf_shampoo, {2, 3});
  const Vec next = apply_step(Method::rf_shampoo, mu, g, st, {2, 3}, h);
  const auto direct = rf_shampoo_step(Mat::reshape(mu, 2, 3), Mat::reshape(g, 2, 3),
                                      KronState{Mat::identity(2), Mat::identity(3), Mat(2, 3, 0.0)},
                                      h);
  EXPECT_EQ(next, direct.params.flat());
  EXPECT_EQ(std::get<KronState>(st).s_c, direct.state.s_c);

  OptimizerState wrong = initial_state(Method::rmsprop, {1, 6});
  EXPECT_THROW(apply_step(Method::rf_shampoo, mu, g, wrong, {2, 3}, h), ShapeError);
  EXPECT_THROW(apply_step(Method::rmsprop, mu, Vec{1.0}, wrong, {1, 6}, h), ShapeError);
}

TEST(Positivity, RootFreeStatesStayPositive) {
  Rng rng(8);
  Hyper h = plain(0.05, 0.3, 1.0);
  h.damping = 1e-6;
  h.exp_mode = ExpMode::exact;
  for (Method m : {Method::rf_rmsprop, Method::rf_adagrad_full, Method::rf_shampoo,
                   Method::if_shampoo}) {
    OptimizerState st = initial_state(m, {2, 2});
    Vec mu(4, 0.0);
    for (int t = 0; t < 200; ++t) {
      mu = apply_step(m, mu, normal_vec(4, rng, std::exp(normal_vec(1, rng)[0])), st, {2, 2}, h);
      ASSERT_GT(min_preconditioner_eigenvalue(st), 0.0) << to_string(m) << " step " << t;
    }
  }
  EXPECT_EQ(min_preconditioner_eigenvalue(initial_state(Method::sgd, {1, 2})), INFINITY);
}

TEST(Precision, StoredStateIsRepresentable) {
  const PrecisionPolicy bf{formats::bf16(), PrecisionScope::state_only};
  Rng rng(10);
  Hyper h = plain(0.1, 0.1, 1.0);
  DiagState s{Vec(3, 1.0), Vec(3, 0.0)};
  Vec mu(3, 0.0);
  for (int t = 0; t < 5; ++t) {
    auto st = rf_rmsprop_step(mu, normal_vec(3, rng), s, h, bf);
    for (double v : st.state.s) EXPECT_EQ(quantize(v, formats::bf16()), v);
    for (double v : st.params) EXPECT_EQ(quantize(v, formats::bf16()), v);
    mu = st.params;
    s = st.state;
  }
}

}  // namespace
}  // namespace sqrtfree
