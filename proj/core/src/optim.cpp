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

#include "sqrtfree/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sqrtfree/errors.hpp"
#include "sqrtfree/linalg.hpp"

namespace sqrtfree {

namespace {

constexpr struct {
  Method method;
  std::string_view name;
} kMethodNames[] = {
    {Method::sgd, "sgd"},
    {Method::rmsprop, "rmsprop"},
    {Method::rf_rmsprop, "rf-rmsprop"},
    {Method::adagrad_full, "adagrad-full"},
    {Method::rf_adagrad_full, "rf-adagrad-full"},
    {Method::shampoo, "shampoo"},
    {Method::rf_shampoo, "rf-shampoo"},
    {Method::if_shampoo, "if-shampoo"},
};

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ShapeError(std::string(what) + ": size mismatch " + std::to_string(a) + " vs " +
                     std::to_string(b));
  }
}

void require_shape(const Mat& a, std::size_t rows, std::size_t cols, const char* what) {
  if (a.rows() != rows || a.cols() != cols) {
    throw ShapeError(std::string(what) + ": expected " + std::to_string(rows) + "x" +
                     std::to_string(cols) + ", got " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()));
  }
}

// m <- a1 m + direction + k mu, then mu <- mu - b1 m.
Vec momentum_line(std::span<const double> m, std::span<const double> direction,
                  std::span<const double> mu, const Hyper& h) {
  Vec out(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    out[k] = h.momentum * m[k] + direction[k] + h.weight_decay * mu[k];
  }
  return out;
}

Vec param_line(std::span<const double> mu, std::span<const double> m, const Hyper& h) {
  Vec out(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) out[k] = mu[k] - h.lr * m[k];
  return out;
}

Mat momentum_line(const Mat& m, const Mat& direction, const Mat& w, const Hyper& h) {
  return Mat(m.rows(), m.cols(), momentum_line(m.flat(), direction.flat(), w.flat(), h));
}

Mat param_line(const Mat& w, const Mat& m, const Hyper& h) {
  return Mat(w.rows(), w.cols(), param_line(w.flat(), m.flat(), h));
}

double guarded_ratio(double num, double den, std::size_t k) {
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    throw DomainError("division guard: zero preconditioner at coordinate " + std::to_string(k));
  }
  return num / den;
}

Mat inverse_for(const Mat& s, const PrecisionPolicy& policy) {
  Mat inv = inverse_spd(s);
  policy.intermediate(inv);
  return inv;
}

Mat damped_inverse_root(const Mat& s, const Hyper& h, const PrecisionPolicy& policy) {
  Mat damped = s;
  for (std::size_t i = 0; i < damped.rows(); ++i) damped(i, i) += h.damping;
  Mat root = spd_power(damped, -0.25, policy.linalg_format());
  policy.intermediate(root);
  return root;
}

Mat factor_exp(const Mat& arg, ExpMode mode, const PrecisionPolicy& policy) {
  Mat e = mode == ExpMode::exact ? mat_exp(symmetrize(arg), policy.linalg_format())
                                 : mat_exp_trunc1(arg);
  policy.intermediate(e);
  return e;
}

void add_identity(Mat& a, double s) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += s;
}

}  // namespace

std::string_view to_string(Method m) {
  for (const auto& entry : kMethodNames)
    if (entry.method == m) return entry.name;
  return "sgd";
}

Method method_by_name(std::string_view name) {
  for (const auto& entry : kMethodNames)
    if (entry.name == name) return entry.method;
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

bool is_root_free(Method m) {
  return m == Method::rf_rmsprop || m == Method::rf_adagrad_full || m == Method::rf_shampoo ||
         m == Method::if_shampoo;
}

bool is_kronecker(Method m) {
  return m == Method::shampoo || m == Method::rf_shampoo || m == Method::if_shampoo;
}

double default_precond_init(Method m) { return is_root_free(m) ? 1.0 : 0.0; }

OptimizerState initial_state(Method m, Shape shape, std::optional<double> precond_init) {
  const double c = precond_init.value_or(default_precond_init(m));
  const std::size_t n = shape.size();
  const std::size_t p = shape.rows;
  const std::size_t d = shape.cols;
  switch (m) {
    case Method::sgd:
      return MomentumState{Vec(n, 0.0)};
    case Method::rmsprop:
    case Method::rf_rmsprop:
      return DiagState{Vec(n, c), Vec(n, 0.0)};
    case Method::adagrad_full:
    case Method::rf_adagrad_full:
      return FullState{Mat::identity(n) * c, Vec(n, 0.0)};
    case Method::shampoo:
    case Method::rf_shampoo:
      return KronState{Mat::identity(p) * c, Mat::identity(d) * c, Mat(p, d)};
    case Method::if_shampoo: {
      // S_C = c I corresponds to C = c^-1/2 I.
      if (!(c > 0.0)) throw ConfigError("if-shampoo needs a positive preconditioner init");
      const double f = 1.0 / std::sqrt(c);
      return IFKronState{Mat::identity(p) * f, Mat::identity(d) * f, Mat(p, d)};
    }
  }
  throw ConfigError("unknown method");
}

Step<Vec, MomentumState> sgd_step(std::span<const double> mu, std::span<const double> g,
                                  const MomentumState& state, const Hyper& h,
                                  const PrecisionPolicy& policy) {
  require_same(mu.size(), g.size(), "sgd_step");
  require_same(mu.size(), state.m.size(), "sgd_step");
  Vec m = momentum_line(state.m, g, mu, h);
  policy.store(m);
  Vec next = param_line(mu, m, h);
  policy.store(next);
  return {std::move(next), MomentumState{std::move(m)}};
}

Step<Vec, DiagState> rmsprop_step(std::span<const double> mu, std::span<const double> g,
                                  const DiagState& state, const Hyper& h,
                                  const PrecisionPolicy& policy) {
  require_same(mu.size(), g.size(), "rmsprop_step");
  require_same(mu.size(), state.s.size(), "rmsprop_step");
  require_same(mu.size(), state.m.size(), "rmsprop_step");
  Vec s(mu.size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = (1.0 - h.beta2) * state.s[k] + h.beta2 * g[k] * g[k];
  policy.store(s);

  Vec dir(mu.size());
  for (std::size_t k = 0; k < dir.size(); ++k) {
    dir[k] = guarded_ratio(g[k], std::sqrt(s[k]) + h.damping, k);
  }
  Vec m = momentum_line(state.m, dir, mu, h);
  policy.store(m);
  Vec next = param_line(mu, m, h);
  policy.store(next);
  return {std::move(next), DiagState{std::move(s), std::move(m)}};
}

Step<Vec, DiagState> rf_rmsprop_step(std::span<const double> mu, std::span<const double> g,
                                     const DiagState& state, const Hyper& h,
                                     const PrecisionPolicy& policy) {
  require_same(mu.size(), g.size(), "rf_rmsprop_step");
  require_same(mu.size(), state.s.size(), "rf_rmsprop_step");
  require_same(mu.size(), state.m.size(), "rf_rmsprop_step");
  const double b = static_cast<double>(h.batch);
  Vec s(mu.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    s[k] = (1.0 - h.beta2) * state.s[k] + h.beta2 * b * g[k] * g[k];
  }
  policy.store(s);

  Vec dir(mu.size());
  for (std::size_t k = 0; k < dir.size(); ++k) dir[k] = guarded_ratio(g[k], s[k] + h.damping, k);
  Vec m = momentum_line(state.m, dir, mu, h);
  policy.store(m);
  Vec next = param_line(mu, m, h);
  policy.store(next);
  return {std::move(next), DiagState{std::move(s), std::move(m)}};
}

Step<Vec, FullState> adagrad_full_root_step(std::span<const double> mu, std::span<const double> g,
                                            const FullState& state, const Hyper& h,
                                            const PrecisionPolicy& policy) {
  const std::size_t n = mu.size();
  require_same(n, g.size(), "adagrad_full_root_step");
  require_same(n, state.m.size(), "adagrad_full_root_step");
  require_shape(state.s, n, n, "adagrad_full_root_step");

  Mat s = state.s + outer(g, g) * h.beta2;
  policy.store(s);

  const SymEig eig = sym_eig(s, policy.linalg_format());
  const double largest = std::max(std::abs(eig.eigenvalues.back()), 1e-300);
  Vec inv_root(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = eig.eigenvalues[i];
    if (h.damping == 0.0 && lam <= 1e-14 * largest) {
      throw DefinitenessError("adagrad_full_root_step: singular preconditioner with zero damping",
                              lam);
    }
    inv_root[i] = 1.0 / (std::sqrt(std::max(lam, 0.0)) + h.damping);
  }
  // (S^1/2 + lambda I)^-1 = Q diag(1 / (sqrt(l) + lambda)) Q^T
  const Mat& q = eig.eigenvectors;
  Mat qd = q;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) qd(i, j) *= inv_root[j];
  Mat precond = symmetrize(qd * q.transpose());
  policy.intermediate(precond);

  Vec m = momentum_line(state.m, precond * g, mu, h);
  policy.store(m);
  Vec next = param_line(mu, m, h);
  policy.store(next);
  return {std::move(next), FullState{std::move(s), std::move(m)}};
}

Step<Vec, FullState> adagrad_full_rf_step(std::span<const double> mu, std::span<const double> g,
                                          const FullState& state, const Hyper& h,
                                          const PrecisionPolicy& policy) {
  const std::size_t n = mu.size();
  require_same(n, g.size(), "adagrad_full_rf_step");
  require_same(n, state.m.size(), "adagrad_full_rf_step");
  require_shape(state.s, n, n, "adagrad_full_rf_step");

  Mat s = state.s * (1.0 - h.beta2 * h.gamma) +
          outer(g, g) * (h.beta2 * static_cast<double>(h.batch));
  if (h.damping > 0.0) add_identity(s, h.beta2 * h.damping);
  policy.store(s);

  Vec dir;
  if (policy.rounds_linalg()) {
    dir = inverse_for(s, policy) * g;
  } else {
    dir = solve_spd(s, g);
  }
  Vec m = momentum_line(state.m, dir, mu, h);
  policy.store(m);
  Vec next = param_line(mu, m, h);
  policy.store(next);
  return {std::move(next), FullState{std::move(s), std::move(m)}};
}

Step<Mat, KronState> shampoo_step(const Mat& w, const Mat& grad, const KronState& state,
                                  const Hyper& h, const PrecisionPolicy& policy) {
  const std::size_t p = w.rows();
  const std::size_t d = w.cols();
  require_shape(grad, p, d, "shampoo_step");
  require_shape(state.s_c, p, p, "shampoo_step");
  require_shape(state.s_k, d, d, "shampoo_step");
  require_shape(state.m, p, d, "shampoo_step");

  const double decay = 1.0 - h.beta2 * h.gamma;
  const Mat gt = grad.transpose();
  Mat s_c = state.s_c * decay + (grad * gt) * h.beta2;
  policy.store(s_c);
  Mat s_k = state.s_k * decay + (gt * grad) * h.beta2;
  policy.store(s_k);

  Mat dir = damped_inverse_root(s_c, h, policy) * grad * damped_inverse_root(s_k, h, policy);
  policy.intermediate(dir);
  Mat m = momentum_line(state.m, dir, w, h);
  policy.store(m);
  Mat next = param_line(w, m, h);
  policy.store(next);
  return {std::move(next), KronState{std::move(s_c), std::move(s_k), std::move(m)}};
}

Step<Mat, KronState> rf_shampoo_step(const Mat& w, const Mat& grad, const KronState& state,
                                     const Hyper& h, const PrecisionPolicy& policy) {
  const std::size_t p = w.rows();
  const std::size_t d = w.cols();
  require_shape(grad, p, d, "rf_shampoo_step");
  require_shape(state.s_c, p, p, "rf_shampoo_step");
  require_shape(state.s_k, d, d, "rf_shampoo_step");
  require_shape(state.m, p, d, "rf_shampoo_step");

  const double decay = 1.0 - h.beta2 * h.gamma;
  const double b = static_cast<double>(h.batch);
  const Mat gt = grad.transpose();
  const Mat s_c_inv = inverse_for(state.s_c, policy);
  const Mat s_k_inv = inverse_for(state.s_k, policy);

  Mat curv_c = symmetrize(grad * s_k_inv * gt) * b;
  add_identity(curv_c, h.damping * s_k_inv.trace());
  Mat s_c = state.s_c * decay + curv_c * (h.beta2 / static_cast<double>(d));
  policy.store(s_c);

  Mat curv_k = symmetrize(gt * s_c_inv * grad) * b;
  add_identity(curv_k, h.damping * s_c_inv.trace());
  Mat s_k = state.s_k * decay + curv_k * (h.beta2 / static_cast<double>(p));
  policy.store(s_k);

  Mat dir = inverse_for(s_c, policy) * grad * inverse_for(s_k, policy);
  policy.intermediate(dir);
  Mat m = momentum_line(state.m, dir, w, h);
  policy.store(m);
  Mat next = param_line(w, m, h);
  policy.store(next);
  return {std::move(next), KronState{std::move(s_c), std::move(s_k), std::move(m)}};
}

Step<Mat, IFKronState> if_shampoo_step(const Mat& w, const Mat& grad, const IFKronState& state,
                                       const Hyper& h, const PrecisionPolicy& policy) {
  const std::size_t p = w.rows();
  const std::size_t d = w.cols();
  require_shape(grad, p, d, "if_shampoo_step");
  require_shape(state.c, p, p, "if_shampoo_step");
  require_shape(state.k, d, d, "if_shampoo_step");
  require_shape(state.m, p, d, "if_shampoo_step");

  const double b = static_cast<double>(h.batch);
  const double pd = static_cast<double>(p);
  const double dd = static_cast<double>(d);
  const Mat& c = state.c;
  const Mat& k = state.k;
  const Mat ct = c.transpose();
  const Mat kt = k.transpose();
  const Mat gt = grad.transpose();
  const Mat cct = c * ct;
  const Mat kkt = k * kt;

  // C^T G K K^T G^T C and its K-side counterpart, both from the old factors.
  const Mat ctg = ct * grad;
  const Mat gtc = gt * c;
  Mat arg_c = symmetrize(ctg * kkt * ctg.transpose()) * b +
              symmetrize(ct * c) * (h.damping * kkt.trace());
  add_identity(arg_c, -h.gamma * dd);
  arg_c *= -h.beta2 / (2.0 * dd) * h.factor_weight_c;
  policy.intermediate(arg_c);

  const Mat ktgtc = kt * gtc;
  Mat arg_k = symmetrize(ktgtc * ktgtc.transpose()) * b +
              symmetrize(kt * k) * (h.damping * cct.trace());
  add_identity(arg_k, -h.gamma * pd);
  arg_k *= -h.beta2 / (2.0 * pd) * h.factor_weight_k;
  policy.intermediate(arg_k);

  Mat c_next = c * factor_exp(arg_c, h.exp_mode, policy);
  policy.store(c_next);
  Mat k_next = k * factor_exp(arg_k, h.exp_mode, policy);
  policy.store(k_next);

  Mat dir = c_next * c_next.transpose() * grad * k_next * k_next.transpose();
  policy.intermediate(dir);
  Mat m = momentum_line(state.m, dir, w, h);
  policy.store(m);
  Mat next = param_line(w, m, h);
  policy.store(next);
  return {std::move(next), IFKronState{std::move(c_next), std::move(k_next), std::move(m)}};
}

namespace {

template <class S>
S& state_as(OptimizerState& state, Method method) {
  if (auto* s = std::get_if<S>(&state)) return *s;
  throw ShapeError("optimizer state does not match method '" + std::string(to_string(method)) +
                   "'");
}

}  // namespace

Vec apply_step(Method method, std::span<const double> mu, std::span<const double> g,
               OptimizerState& state, Shape shape, const Hyper& h, const PrecisionPolicy& policy) {
  require_same(mu.size(), shape.size(), "apply_step");
  auto run_vec = [&](auto&& fn, auto& s) {
    auto step = fn(mu, g, s, h, policy);
    s = std::move(step.state);
    return std::move(step.params);
  };
  auto run_mat = [&](auto&& fn, auto& s) {
    const Mat w = Mat::reshape(mu, shape.rows, shape.cols);
    const Mat gm = Mat::reshape(g, shape.rows, shape.cols);
    auto step = fn(w, gm, s, h, policy);
    s = std::move(step.state);
    return step.params.flat();
  };

  switch (method) {
    case Method::sgd:
      return run_vec(sgd_step, state_as<MomentumState>(state, method));
    case Method::rmsprop:
      return run_vec(rmsprop_step, state_as<DiagState>(state, method));
    case Method::rf_rmsprop:
      return run_vec(rf_rmsprop_step, state_as<DiagState>(state, method));
    case Method::adagrad_full:
      return run_vec(adagrad_full_root_step, state_as<FullState>(state, method));
    case Method::rf_adagrad_full:
      return run_vec(adagrad_full_rf_step, state_as<FullState>(state, method));
    case Method::shampoo:
      return run_mat(shampoo_step, state_as<KronState>(state, method));
    case Method::rf_shampoo:
      return run_mat(rf_shampoo_step, state_as<KronState>(state, method));
    case Method::if_shampoo:
      return run_mat(if_shampoo_step, state_as<IFKronState>(state, method));
  }
  throw ConfigError("unknown method");
}

double min_preconditioner_eigenvalue(const OptimizerState& state) {
  struct Visitor {
    double operator()(const MomentumState&) const {
      return std::numeric_limits<double>::infinity();
    }
    double operator()(const DiagState& s) const {
      return *std::min_element(s.s.begin(), s.s.end());
    }
    static double smallest(const Mat& a) { return sym_eig(symmetrize(a)).eigenvalues.front(); }
    double operator()(const FullState& s) const { return smallest(s.s); }
    double operator()(const KronState& s) const {
      return std::min(smallest(s.s_c), smallest(s.s_k));
    }
    // lambda_min(F F^T) = 1 / lambda_max(F^-T F^-1), without squaring sigma_min.
    static double smallest_gram(const Mat& f) {
      Mat inv;
      try {
        inv = inverse(f);
      } catch (const DomainError&) {
        return 0.0;
      }
      return 1.0 / sym_eig(symmetrize(inv.transpose() * inv)).eigenvalues.back();
    }
    double operator()(const IFKronState& s) const {
      return std::min(smallest_gram(s.c), smallest_gram(s.k));
    }
  };
  return std::visit(Visitor{}, state);
}

}  // namespace sqrtfree
