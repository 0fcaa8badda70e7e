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

#include "sqrtfree/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "sqrtfree/dataset.hpp"
#include "sqrtfree/errors.hpp"
#include "sqrtfree/fisher.hpp"
#include "sqrtfree/linalg.hpp"
#include "sqrtfree/random.hpp"
#include "sqrtfree/trainer.hpp"

namespace sqrtfree {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_diagonal(const Mat& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) != 0.0) return false;
  return true;
}

double nan_to_inf(double v) { return std::isnan(v) ? kInf : v; }

}  // namespace

std::string_view to_string(Bound b) { return b == Bound::upper ? "upper" : "lower"; }

VerifyReport make_report(std::string name, double deviation, double threshold, Bound bound,
                         std::vector<double> trace, std::string note) {
  VerifyReport r;
  r.name = std::move(name);
  r.max_deviation = deviation;
  r.threshold = threshold;
  r.bound = bound;
  r.pass = bound == Bound::upper ? deviation <= threshold : deviation > threshold;
  r.trace = std::move(trace);
  r.note = std::move(note);
  return r;
}

VerifyReport affine_invariance_check(Method method, const Mat& q, const Vec& b, const Vec& mu0,
                                     const Mat& a, std::size_t steps, const Hyper& h,
                                     std::optional<double> precond_init, double threshold) {
  const std::size_t n = q.rows();
  if (a.rows() != n || a.cols() != n || b.size() != n || mu0.size() != n)
    throw ShapeError("affine_invariance_check: dimension mismatch");
  h.validate();
  const bool diag = method == Method::rmsprop || method == Method::rf_rmsprop;
  const bool full = method == Method::adagrad_full || method == Method::rf_adagrad_full;
  if (!diag && !full)
    throw UnsupportedError("affine_invariance_check: method '" + std::string(to_string(method)) +
                           "' is not a diagonal or full-matrix method");
  if (diag && !is_diagonal(a))
    throw DomainError("affine_invariance_check: diagonal methods need a diagonal A");
  const Mat a_inv = inverse(a);  // DomainError when singular
  const Mat at = a.transpose();

  const double init = precond_init.value_or(default_precond_init(method));
  const Mat q_rep = symmetrize(at * q * a);
  const Vec b_rep = (at * b);

  Vec mu = mu0;
  Vec m = (a_inv * mu0);
  auto deviation = [&] { return max_abs_diff(mu, (a * m)); };
  std::vector<double> trace;
  trace.push_back(deviation());

  auto grad = [](const Mat& qq, const Vec& bb, const Vec& x) { return (qq * x) - bb; };

  if (full) {
    FullState s{Mat::identity(n) * init, Vec(n, 0.0)};
    FullState s_rep{symmetrize(at * s.s * a), Vec(n, 0.0)};
    for (std::size_t t = 0; t < steps; ++t) {
      const Vec g = grad(q, b, mu);
      const Vec g_rep = grad(q_rep, b_rep, m);
      auto st = method == Method::rf_adagrad_full ? adagrad_full_rf_step(mu, g, s, h)
                                                  : adagrad_full_root_step(mu, g, s, h);
      auto st_rep = method == Method::rf_adagrad_full ? adagrad_full_rf_step(m, g_rep, s_rep, h)
                                                      : adagrad_full_root_step(m, g_rep, s_rep, h);
      mu = std::move(st.params);
      s = std::move(st.state);
      m = std::move(st_rep.params);
      s_rep = std::move(st_rep.state);
      trace.push_back(deviation());
    }
  } else {
    DiagState s{Vec(n, init), Vec(n, 0.0)};
    DiagState s_rep{Vec(n), Vec(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) s_rep.s[i] = a(i, i) * a(i, i) * init;
    for (std::size_t t = 0; t < steps; ++t) {
      const Vec g = grad(q, b, mu);
      const Vec g_rep = grad(q_rep, b_rep, m);
      auto st = method == Method::rf_rmsprop ? rf_rmsprop_step(mu, g, s, h)
                                             : rmsprop_step(mu, g, s, h);
      auto st_rep = method == Method::rf_rmsprop ? rf_rmsprop_step(m, g_rep, s_rep, h)
                                                 : rmsprop_step(m, g_rep, s_rep, h);
      mu = std::move(st.params);
      s = std::move(st.state);
      m = std::move(st_rep.params);
      s_rep = std::move(st_rep.state);
      trace.push_back(deviation());
    }
  }
  double worst = 0.0;
  for (double v : trace) worst = std::max(worst, nan_to_inf(v));
  return make_report("affine_invariance." + std::string(to_string(method)), worst, threshold,
                     Bound::upper, std::move(trace));
}

VerifyReport verify_affine_invariance(Method method, const Mat& a, std::size_t steps,
                                      const Hyper& h, std::uint64_t seed, double threshold) {
  Rng rng(seed);
  const std::size_t n = a.rows();
  const Mat q = random_spd(n, 10.0, rng);
  const Vec b = normal_vec(n, rng);
  const Vec mu0 = normal_vec(n, rng);
  return affine_invariance_check(method, q, b, mu0, a, steps, h, 1.0, threshold);
}

VerifyReport verify_scale_invariance(std::size_t steps, std::size_t n, const Hyper& h,
                                     std::uint64_t seed, bool with_factor) {
  if (n == 0) throw DomainError("verify_scale_invariance: need at least one sample");
  h.validate();
  const std::size_t dim = 3;
  const Dataset data = synthetic_logreg_data(n, dim, seed);
  const ProblemPtr sum_p = logreg_make(data.features, data.labels, 0.1, {Reduction::sum, {}});
  const ProblemPtr mean_p = logreg_make(data.features, data.labels, 0.1, {Reduction::mean, {}});
  const double nn = static_cast<double>(n);

  Hyper h_sum = h;
  h_sum.batch = 1;
  h_sum.reduction = Reduction::sum;
  Hyper h_mean = h;
  h_mean.batch = with_factor ? n : 1;
  h_mean.reduction = Reduction::mean;
  h_mean.damping = h.damping / nn;

  double worst = 0.0;
  std::vector<double> trace;
  for (Method method : {Method::rf_rmsprop, Method::rf_adagrad_full}) {
    const double c = default_precond_init(method);
    RunOptions o_sum;
    o_sum.precond_init = c;
    RunOptions o_mean;
    o_mean.precond_init = c / nn;
    Vec mu_sum(dim, 0.0);
    Vec mu_mean(dim, 0.0);
    OptimizerState s_sum = initial_state(method, {1, dim}, c);
    OptimizerState s_mean = initial_state(method, {1, dim}, c / nn);
    double dev = 0.0;
    for (std::size_t t = 0; t < steps; ++t) {
      const Vec g_sum = full_grad(*sum_p, mu_sum);
      const Vec g_mean = full_grad(*mean_p, mu_mean);
      mu_sum = apply_step(method, mu_sum, g_sum, s_sum, {1, dim}, h_sum);
      mu_mean = apply_step(method, mu_mean, g_mean, s_mean, {1, dim}, h_mean);
      dev = std::max(dev, nan_to_inf(max_abs_diff(mu_sum, mu_mean)));
    }
    trace.push_back(dev);
    worst = std::max(worst, dev);
  }
  if (with_factor)
    return make_report("scale_invariance", worst, 1e-10, Bound::upper, std::move(trace),
                       "trace: rf-rmsprop, rf-adagrad-full");
  return make_report("scale_invariance.ablation", worst, 1e-3, Bound::lower, std::move(trace),
                     "Fisher factor set to 1 on the mean side; the pairing should break");
}

std::vector<double> first_order_errors(std::size_t p, std::size_t d, std::span<const double> betas,
                                       std::uint64_t seed, FirstOrderPair pair,
                                       ExpMode if_mode, bool zero_gradient) {
  Rng rng(seed);
  const Mat c = Mat::identity(p) + normal_mat(p, p, rng, 0.2 / std::sqrt(static_cast<double>(p)));
  const Mat k = Mat::identity(d) + normal_mat(d, d, rng, 0.2 / std::sqrt(static_cast<double>(d)));
  Mat g = normal_mat(p, d, rng);
  if (zero_gradient) g = Mat(p, d, 0.0);
  const Mat w(p, d, 0.0);

  const KronState rf_state{inverse_spd(symmetrize(c * c.transpose())),
                           inverse_spd(symmetrize(k * k.transpose())), Mat(p, d, 0.0)};
  const IFKronState if_state{c, k, Mat(p, d, 0.0)};

  std::vector<double> errors;
  errors.reserve(betas.size());
  for (double beta : betas) {
    Hyper h;
    h.beta2 = beta;
    h.gamma = zero_gradient ? 0.0 : 1.0;
    h.damping = zero_gradient ? 0.0 : 1e-3;
    h.batch = 1;
    if (pair == FirstOrderPair::rf_vs_if) {
      h.exp_mode = if_mode;
      const auto rf = rf_shampoo_step(w, g, rf_state, h);
      const auto iff = if_shampoo_step(w, g, if_state, h);
      const Mat implied = inverse_spd(symmetrize(iff.state.c * iff.state.c.transpose()));
      errors.push_back(norm_inf(rf.state.s_c - implied));
    } else {
      h.exp_mode = ExpMode::exact;
      const auto ex = if_shampoo_step(w, g, if_state, h);
      h.exp_mode = ExpMode::trunc1;
      const auto tr = if_shampoo_step(w, g, if_state, h);
      errors.push_back(norm_inf(ex.state.c - tr.state.c));
    }
  }
  return errors;
}

VerifyReport verify_first_order_equiv(std::size_t p, std::size_t d, std::span<const double> betas,
                                      std::uint64_t seed, FirstOrderPair pair,
                                      bool zero_gradient) {
  if (betas.size() < 2) throw DomainError("verify_first_order_equiv: need at least two beta2 values");
  for (std::size_t i = 1; i < betas.size(); ++i)
    if (!(betas[i] < betas[i - 1]))
      throw DomainError("verify_first_order_equiv: beta2 values must descend");
  std::vector<double> errors = first_order_errors(p, d, betas, seed, pair, ExpMode::exact,
                                                  zero_gradient);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const double ratio = errors[i] / errors[i + 1];
    worst = std::max(worst, nan_to_inf(std::abs(ratio - 4.0)));
  }
  const std::string name = pair == FirstOrderPair::rf_vs_if ? "first_order.rf_vs_if"
                                                            : "first_order.exact_vs_trunc";
  return make_report(name, worst, 0.5, Bound::upper, std::move(errors),
                     "deviation: max |e(b)/e(b/2) - 4|; trace: e per beta2");
}

std::vector<VerifyReport> verify_precision_stress(double cond, std::size_t steps,
                                                  const FloatFormat& fmt, std::uint64_t seed) {
  std::vector<VerifyReport> out;
  Rng rng(seed);

  // Inverse fourth root of an ill-conditioned SPD matrix.
  {
    const Mat a = random_spd(6, cond, rng);
    const Mat ref = spd_power(a, -0.25);
    double err = kInf;
    std::string note;
    try {
      const Mat low = spd_power(quantize_mat(a, fmt), -0.25, fmt);
      err = nan_to_inf(max_abs_diff(low, ref) / max_abs(ref));
    } catch (const DefinitenessError& e) {
      note = std::string("low-precision path failed: ") + e.what();
    } catch (const ConvergenceError& e) {
      note = std::string("low-precision path failed: ") + e.what();
    }
    const std::string name = "precision.inverse_root." + fmt.name;
    if (fmt.is_reference())
      out.push_back(make_report(name, err, 1e-12, Bound::upper, {}, note));
    else
      out.push_back(make_report(name, err, 0.1, Bound::lower, {}, note));
  }

  // if-shampoo under state-and-linalg rounding against fp64.
  {
    const MatfactData data = synthetic_matfact_data(8, 6, 64, seed);
    const ProblemPtr prob = matfact_make(data.inputs, data.targets, {Reduction::mean, {}});
    Hyper h;
    h.lr = 0.3;
    h.beta2 = 1e-3;
    h.gamma = 1.0;
    h.damping = 1e-3;
    h.batch = 1;
    h.exp_mode = ExpMode::trunc1;
    const Trajectory ref = run_optimizer(*prob, Method::if_shampoo, h, steps, seed);
    const Trajectory low = run_optimizer(*prob, Method::if_shampoo, h, steps, seed,
                                         PrecisionPolicy{fmt, PrecisionScope::state_and_linalg});
    double ratio = kInf;
    std::string note;
    std::vector<double> trace;
    for (const auto& r : low.records) trace.push_back(r.loss);
    const auto& st = std::get<IFKronState>(low.final_state);
    const bool finite = low.status == RunStatus::completed && all_finite(low.final_params) &&
                        st.c.all_finite() && st.k.all_finite() && st.m.all_finite();
    if (!finite) {
      note = "non-finite state: " + low.message;
    } else if (ref.status == RunStatus::completed && !ref.records.empty()) {
      const double r = low.records.back().loss / ref.records.back().loss;
      ratio = nan_to_inf(std::max(r, 1.0 / r));
      note = "fp64 final loss " + std::to_string(ref.records.back().loss);
    }
    out.push_back(make_report("precision.if_shampoo." + fmt.name, ratio, kPrecisionLossFactor,
                              Bound::upper, std::move(trace), note));
  }
  return out;
}

VerifyReport verify_pd_preservation(Method method, std::size_t steps, std::uint64_t seed) {
  ProblemPtr prob;
  Hyper h;
  h.lr = 0.05;
  h.beta2 = 0.05;
  h.damping = 1e-8;
  std::size_t batch = 16;
  if (is_kronecker(method)) {
    const MatfactData data = synthetic_matfact_data(4, 3, 64, seed);
    prob = matfact_make(data.inputs, data.targets, {Reduction::mean, {}});
  } else {
    const Dataset data = synthetic_logreg_data(128, 5, seed);
    prob = logreg_make(data.features, data.labels, 0.1, {Reduction::mean, {}});
  }
  h.batch = batch;
  double lowest = kInf;
  RunOptions o;
  o.batch_size = batch;
  o.observer = [&](std::size_t, const Vec&, const OptimizerState& s) {
    lowest = std::min(lowest, min_preconditioner_eigenvalue(s));
  };
  const Trajectory tr = run_optimizer(*prob, method, h, steps, seed, {}, o);
  if (tr.status != RunStatus::completed) lowest = -kInf;
  return make_report("pd_preservation." + std::string(to_string(method)), lowest, 0.0,
                     Bound::lower, {}, tr.message);
}

VerifyReport verify_sign_descent(Method method) {
  Hyper h;
  h.lr = 1.0;
  h.beta2 = 0.5;
  h.damping = 0.0;
  h.batch = 1;
  const double g = 0.3;
  auto step_size = [&](double grad) -> double {
    const Vec mu{0.0};
    const Vec gv{grad};
    switch (method) {
      case Method::rmsprop:
        return std::abs(rmsprop_step(mu, gv, DiagState{{0.0}, {0.0}}, h).params[0]);
      case Method::rf_rmsprop:
        return std::abs(rf_rmsprop_step(mu, gv, DiagState{{0.0}, {0.0}}, h).params[0]);
      case Method::rf_adagrad_full:
        return std::abs(
            adagrad_full_rf_step(mu, gv, FullState{Mat(1, 1, 0.0), {0.0}}, h).params[0]);
      case Method::shampoo:
        return std::abs(
            shampoo_step(Mat(1, 1, 0.0), Mat(1, 1, grad),
                         KronState{Mat(1, 1, 0.0), Mat(1, 1, 0.0), Mat(1, 1, 0.0)}, h)
                .params(0, 0));
      default:
        throw UnsupportedError("verify_sign_descent: method '" + std::string(to_string(method)) +
                               "' not covered");
    }
  };
  const double s1 = step_size(g);
  const double s10 = step_size(10.0 * g);
  const std::string name = "sign_descent." + std::string(to_string(method));
  if (is_root_free(method)) {
    const double dev = nan_to_inf(std::abs(s10 / s1 - 0.1) / 0.1);
    return make_report(name, dev, 1e-12, Bound::upper, {s1, s10},
                       "deviation: relative gap of the step ratio from 1/10");
  }
  const double dev = nan_to_inf(std::abs(s10 - s1) / s1);
  return make_report(name, dev, 1e-12, Bound::upper, {s1, s10});
}

Vec logreg_newton_optimum(const Problem& p, std::size_t max_iters) {
  const std::size_t n = p.dim();
  Vec mu(n, 0.0);
  const Batch all = full_batch(p.num_samples());
  const auto* labels = p.binary_labels();
  if (labels == nullptr) throw UnsupportedError("logreg_newton_optimum: needs a binary label model");
  for (std::size_t it = 0; it < max_iters; ++it) {
    const Vec g = batch_grad(p, mu, all);
    if (norm_inf(g) < 1e-12) return mu;
    // Hessian through a central difference of the gradient in each direction.
    Mat hess(n, n, 0.0);
    const double eps = 1e-5;
    for (std::size_t j = 0; j < n; ++j) {
      Vec up = mu;
      Vec dn = mu;
      up[j] += eps;
      dn[j] -= eps;
      const Vec gu = batch_grad(p, up, all);
      const Vec gd = batch_grad(p, dn, all);
      for (std::size_t i = 0; i < n; ++i) hess(i, j) = (gu[i] - gd[i]) / (2.0 * eps);
    }
    const Vec dir = solve_spd(symmetrize(hess), g);
    for (std::size_t i = 0; i < n; ++i) mu[i] -= dir[i];
  }
  return mu;
}

ProblemPtr convex_reproduction_problem(std::uint64_t seed) {
  const Dataset data = synthetic_logreg_data(200, 6, seed);
  return logreg_make(data.features, data.labels, 1.0, {Reduction::mean, Shape{2, 3}});
}

namespace {

Hyper convex_hyper(Method method) {
  Hyper h;
  h.batch = 20;
  h.gamma = 1.0;
  h.damping = 1e-8;
  switch (method) {
    case Method::rf_rmsprop:
      h.lr = 0.01;
      h.beta2 = 0.01;
      break;
    case Method::rf_shampoo:
      h.lr = 0.01;
      h.beta2 = 0.01;
      break;
    default:
      h.lr = 0.05;
      h.beta2 = 0.01;
      break;
  }
  return h;
}

}  // namespace

VerifyReport verify_convex_reproduction(Method method, std::size_t steps, std::uint64_t seed) {
  const ProblemPtr prob = convex_reproduction_problem(seed);
  const Vec opt = logreg_newton_optimum(*prob);
  const double best = prob->loss(opt);
  const Hyper h = convex_hyper(method);
  RunOptions o;
  o.batch_size = h.batch;
  const Trajectory tr = run_optimizer(*prob, method, h, steps, seed, {}, o);
  std::vector<double> trace;
  for (const auto& r : tr.records) trace.push_back(r.loss - best);
  const double gap = tr.status == RunStatus::completed ? nan_to_inf(tr.records.back().loss - best)
                                                       : kInf;
  return make_report("convex." + std::string(to_string(method)), gap, 1e-3, Bound::upper,
                     std::move(trace), tr.message);
}

std::vector<std::string_view> suite_names() {
  return {"worked-example", "affine", "scale",        "unbiased", "separation", "first-order",
          "pd",         "precision", "sign-descent", "convex",   "all"};
}

namespace {

std::vector<VerifyReport> suite_worked_example() {
  const Mat q{{1.0}};
  const Vec b{0.0};
  const Vec mu0{2.0};
  const Mat a{{2.0}};
  Hyper h;
  h.lr = 1.0;
  h.beta2 = 1.0;
  h.gamma = 0.0;
  h.damping = 0.0;
  h.batch = 1;
  std::vector<VerifyReport> out;
  auto root = affine_invariance_check(Method::adagrad_full, q, b, mu0, a, 1, h, 0.0);
  out.push_back(make_report("worked_example.root_based", root.max_deviation, 0.5, Bound::lower,
                            root.trace, "invariance should break"));
  auto rf = affine_invariance_check(Method::rf_adagrad_full, q, b, mu0, a, 1, h, 0.0, 1e-14);
  rf.name = "worked_example.root_free";
  out.push_back(std::move(rf));
  return out;
}

std::vector<VerifyReport> suite_affine() {
  Hyper h;
  h.lr = 0.1;
  h.beta2 = 0.5;
  h.gamma = 0.0;
  h.damping = 0.0;
  h.batch = 1;
  double worst = 0.0;
  std::vector<double> trace;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(1000 + s);
    const Mat a = random_nonsingular(5, 1e3, rng);
    const auto r = verify_affine_invariance(Method::rf_adagrad_full, a, 50, h, s);
    trace.push_back(r.max_deviation);
    worst = std::max(worst, r.max_deviation);
  }
  return {make_report("affine_invariance.rf-adagrad-full", worst, 1e-8, Bound::upper,
                      std::move(trace), "20 random A, T = 50")};
}

std::vector<VerifyReport> suite_scale() {
  Hyper h;
  h.lr = 0.1;
  h.beta2 = 0.2;
  h.gamma = 0.0;
  h.damping = 1e-4;
  return {verify_scale_invariance(50, 8, h, 3, true),
          verify_scale_invariance(50, 8, h, 3, false)};
}

std::vector<VerifyReport> suite_unbiased() {
  const Dataset data = synthetic_logreg_data(6, 3, 11);
  const ProblemPtr p = logreg_make(data.features, data.labels, 0.1);
  Rng rng(12);
  const Vec mu = normal_vec(3, rng);
  double worst = 0.0;
  std::vector<double> trace;
  for (std::size_t b = 1; b <= 6; ++b) {
    const double dev = check_unbiasedness(*p, mu, b);
    trace.push_back(dev);
    worst = std::max(worst, nan_to_inf(dev));
  }
  return {make_report("unbiasedness", worst, 1e-10, Bound::upper, std::move(trace),
                      "N = 6, B = 1..6")};
}

std::vector<VerifyReport> suite_separation() {
  const Dataset data = synthetic_logreg_data(8, 4, 5);
  const ProblemPtr p = logreg_make(data.features, data.labels, 0.1);
  Rng rng(6);
  const Vec mu = normal_vec(4, rng);
  std::vector<Vec> grads;
  for (std::size_t i = 0; i < p->num_samples(); ++i) grads.push_back(p->sample_grad(mu, i));
  const Mat fn = emp_fisher_new(grads).matrix;
  const Mat fs = emp_fisher_standard(grads).matrix;
  const SymEig e = sym_eig(fn);
  const std::size_t n = e.eigenvalues.size();
  const double ratio = std::abs(e.eigenvalues[n - 2]) / e.eigenvalues[n - 1];
  return {make_report("separation.rank_one", ratio, 1e-10),
          make_report("separation.differs", norm_fro(fn - fs), 0.0, Bound::lower)};
}

std::vector<VerifyReport> suite_first_order() {
  const double betas[] = {1e-2, 5e-3};
  double worst = 0.0;
  std::vector<double> trace;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto r = verify_first_order_equiv(4, 3, betas, s);
    trace.push_back(r.max_deviation);
    worst = std::max(worst, r.max_deviation);
  }
  return {make_report("first_order.rf_vs_if", worst, 0.5, Bound::upper, std::move(trace),
                      "10 random 4x3 instances; deviation: max |e(b)/e(b/2) - 4|")};
}

std::vector<VerifyReport> suite_pd() {
  return {verify_pd_preservation(Method::rf_rmsprop, 1000, 1),
          verify_pd_preservation(Method::rf_adagrad_full, 1000, 2),
          verify_pd_preservation(Method::rf_shampoo, 1000, 3)};
}

std::vector<VerifyReport> suite_sign() {
  return {verify_sign_descent(Method::rmsprop), verify_sign_descent(Method::shampoo),
          verify_sign_descent(Method::rf_rmsprop), verify_sign_descent(Method::rf_adagrad_full)};
}

std::vector<VerifyReport> suite_convex() {
  return {verify_convex_reproduction(Method::rf_rmsprop),
          verify_convex_reproduction(Method::rf_shampoo)};
}

void append(std::vector<VerifyReport>& out, std::vector<VerifyReport> more) {
  for (auto& r : more) out.push_back(std::move(r));
}

}  // namespace

std::vector<VerifyReport> run_suite(std::string_view name) {
  if (name == "worked-example") return suite_worked_example();
  if (name == "affine") return suite_affine();
  if (name == "scale") return suite_scale();
  if (name == "unbiased") return suite_unbiased();
  if (name == "separation") return suite_separation();
  if (name == "first-order") return suite_first_order();
  if (name == "pd") return suite_pd();
  if (name == "precision") return verify_precision_stress(1e8, 500, formats::bf16(), 0);
  if (name == "sign-descent") return suite_sign();
  if (name == "convex") return suite_convex();
  if (name == "all") {
    std::vector<VerifyReport> out;
    for (std::string_view s : suite_names())
      if (s != "all") append(out, run_suite(s));
    return out;
  }
  throw ConfigError("unknown verify suite '" + std::string(name) + "'");
}

namespace {

nlohmann::json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

std::string reports_to_json(const std::vector<VerifyReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json trace = nlohmann::json::array();
    for (double v : r.trace) trace.push_back(number(v));
    arr.push_back({{"name", r.name},
                   {"max_deviation", number(r.max_deviation)},
                   {"threshold", number(r.threshold)},
                   {"bound", std::string(to_string(r.bound))},
                   {"pass", r.pass},
                   {"trace", std::move(trace)},
                   {"note", r.note}});
  }
  return arr.dump(2);
}

}  // namespace sqrtfree
