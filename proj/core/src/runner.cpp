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

#include "sqrtfree/runner.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "sqrtfree/dataset.hpp"
#include "sqrtfree/errors.hpp"
#include "sqrtfree/random.hpp"

namespace sqrtfree {

ProblemPtr build_problem(const RunConfig& cfg) {
  const Reduction red = cfg.hyper.reduction;
  if (cfg.problem == "quadratic") {
    Rng rng(cfg.data_seed);
    const Mat q = random_spd(cfg.dim, cfg.cond, rng);
    const Vec b = normal_vec(cfg.dim, rng);
    return quadratic_make(q, b, {red, cfg.shape});
  }
  if (cfg.problem == "logreg") {
    const Dataset data = cfg.csv.empty()
                             ? synthetic_logreg_data(cfg.samples, cfg.dim, cfg.data_seed, cfg.noise)
                             : load_csv_dataset(cfg.csv);
    std::optional<Shape> shape = cfg.shape;
    if (shape && shape->size() != data.features.cols())
      throw ConfigError("invariant violated: shape rows x cols == number of features");
    return logreg_make(data.features, data.labels, cfg.reg, {red, shape});
  }
  if (cfg.problem == "matfact") {
    const Shape s = cfg.shape.value_or(Shape{4, 3});
    const MatfactData data = synthetic_matfact_data(s.rows, s.cols, cfg.samples, cfg.data_seed,
                                                    cfg.noise);
    return matfact_make(data.inputs, data.targets, {red, {}});
  }
  throw ConfigError("unknown problem '" + cfg.problem + "'");
}

Vec initial_params(const RunConfig& cfg, std::size_t dim) {
  if (cfg.init_scale == 0.0) return Vec(dim, 0.0);
  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  return normal_vec(dim, rng, cfg.init_scale);
}

Trajectory run_config(const RunConfig& cfg) {
  const ProblemPtr p = build_problem(cfg);
  RunOptions o;
  o.batch_size = cfg.batch_size;
  o.init_params = initial_params(cfg, p->dim());
  o.precond_init = cfg.precond_init;
  return run_optimizer(*p, cfg.method, cfg.resolved_hyper(p->num_samples()), cfg.steps, cfg.seed,
                       cfg.precision, o);
}

void write_trajectory_csv(const Trajectory& tr, std::ostream& out) {
  out << "step,loss,grad_norm,param_norm,wall_ns\n";
  for (const auto& r : tr.records) {
    out << r.step << ',' << format_double(r.loss) << ',' << format_double(r.grad_norm) << ','
        << format_double(r.param_norm) << ',' << r.wall_ns << '\n';
  }
}

namespace {

// Writes `body` to `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, const std::string& body, std::ostream& fallback) {
  if (path.empty()) {
    fallback << body;
    fallback.flush();
    if (!fallback) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open output '" + path + "' for writing");
  f << body;
  f.close();
  if (!f) throw IoError("failed writing output '" + path + "'");
}

}  // namespace

int run_and_emit(const RunConfig& cfg, std::ostream& default_out) {
  const Trajectory tr = run_config(cfg);
  std::ostringstream csv;
  write_trajectory_csv(tr, csv);
  emit(cfg.output, csv.str(), default_out);
  return tr.status == RunStatus::completed ? kExitOk : kExitDiverged;
}

FisherEstimate config_fisher(const RunConfig& cfg) {
  const ProblemPtr p = build_problem(cfg);
  const Vec mu = initial_params(cfg, p->dim());
  const std::size_t n = p->num_samples();
  if (cfg.fisher_kind == FisherKind::full_exact || cfg.fisher_kind == FisherKind::mini_exact) {
    const Batch all = full_batch(n);
    return exact_fisher(*p, mu, all.indices);
  }
  std::vector<Vec> grads;
  grads.reserve(n);
  for (std::size_t i = 0; i < n; ++i) grads.push_back(p->sample_grad(mu, i));
  switch (cfg.fisher_kind) {
    case FisherKind::new_:
      return emp_fisher_new(grads);
    case FisherKind::scaled:
      return emp_fisher_scaled(grads, n);
    default:
      return emp_fisher_standard(grads);
  }
}

void write_matrix_csv(const Mat& m, std::ostream& out) {
  for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << 'c' << j;
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
    out << '\n';
  }
}

int fisher_dump(const RunConfig& cfg, std::ostream& default_out) {
  const FisherEstimate f = config_fisher(cfg);
  std::ostringstream csv;
  write_matrix_csv(f.matrix, csv);
  emit(cfg.output, csv.str(), default_out);
  return kExitOk;
}

}  // namespace sqrtfree
