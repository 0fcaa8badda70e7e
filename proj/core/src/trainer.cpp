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

#include "sqrtfree/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "sqrtfree/errors.hpp"
#include "sqrtfree/random.hpp"

namespace sqrtfree {

namespace {

class BatchSampler {
 public:
  BatchSampler(std::size_t n, std::size_t batch_size, std::uint64_t seed)
      : n_(n), batch_(batch_size == 0 || batch_size >= n ? n : batch_size), rng_(seed), order_(n) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    cursor_ = n_;  // force a shuffle on first use
  }

  Batch next() {
    if (batch_ == n_) return full_batch(n_);
    if (cursor_ + batch_ > n_) {
      std::shuffle(order_.begin(), order_.end(), rng_);
      cursor_ = 0;
    }
    Batch b;
    b.indices.assign(order_.begin() + static_cast<std::ptrdiff_t>(cursor_),
                     order_.begin() + static_cast<std::ptrdiff_t>(cursor_ + batch_));
    cursor_ += batch_;
    return b;
  }

 private:
  std::size_t n_;
  std::size_t batch_;
  Rng rng_;
  std::vector<std::size_t> order_;
  std::size_t cursor_;
};

}  // namespace

Trajectory run_optimizer(const Problem& p, Method method, const Hyper& h, std::size_t steps,
                         std::uint64_t seed, const PrecisionPolicy& policy,
                         const RunOptions& options) {
  h.validate();
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                                start)
        .count();
  };

  Trajectory out;
  Vec mu = options.init_params.value_or(Vec(p.dim(), 0.0));
  if (mu.size() != p.dim()) throw ShapeError("run_optimizer: initial parameters have wrong length");
  policy.store(mu);
  OptimizerState state = initial_state(method, p.shape(), options.precond_init);

  const Batch everything = full_batch(p.num_samples());
  auto record = [&](std::size_t t) {
    TrajectoryRecord r;
    r.step = t;
    r.loss = p.loss(mu, everything.indices);
    r.grad_norm = norm2(batch_grad(p, mu, everything));
    r.param_norm = norm2(mu);
    r.wall_ns = elapsed();
    out.records.push_back(r);
    return std::isfinite(r.loss) && all_finite(mu);
  };

  bool healthy = record(0);
  BatchSampler sampler(p.num_samples(), options.batch_size, seed);
  for (std::size_t t = 1; t <= steps && healthy; ++t) {
    const Batch batch = sampler.next();
    const Vec g = batch_grad(p, mu, batch);
    try {
      mu = apply_step(method, mu, g, state, p.shape(), h, policy);
    } catch (const DefinitenessError& e) {
      out.status = RunStatus::diverged;
      out.message = "step " + std::to_string(t) + ": " + e.what();
      break;
    } catch (const ConvergenceError& e) {
      out.status = RunStatus::diverged;
      out.message = "step " + std::to_string(t) + ": " + e.what();
      break;
    } catch (const DomainError& e) {
      out.status = RunStatus::diverged;
      out.message = "step " + std::to_string(t) + ": " + e.what();
      break;
    }
    if (options.observer) options.observer(t, mu, state);
    healthy = record(t);
  }
  if (!healthy) {
    out.status = RunStatus::diverged;
    out.message = "non-finite loss or parameters at step " +
                  std::to_string(out.records.back().step);
  }
  out.final_params = std::move(mu);
  out.final_state = std::move(state);
  return out;
}

}  // namespace sqrtfree
