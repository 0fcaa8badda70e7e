#include <benchmark/benchmark.h>

#include <sqrtfree/linalg.hpp>
#include <sqrtfree/optim.hpp>
#include <sqrtfree/problems.hpp>
#include <sqrtfree/random.hpp>

using namespace sqrtfree;

namespace {

void BM_SymEig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const Mat a = random_spd(n, 100.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sym_eig(a));
}
BENCHMARK(BM_SymEig)->Arg(4)->Arg(16)->Arg(32)->Arg(64);

void BM_SpdPowerQuarter(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const Mat a = random_spd(n, 100.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(spd_power(a, -0.25));
}
BENCHMARK(BM_SpdPowerQuarter)->Arg(16)->Arg(64);

void BM_KronStep(benchmark::State& state, Method method) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Shape shape{n, n};
  Rng rng(3);
  Hyper h;
  h.lr = 1e-3;
  h.beta2 = 1e-3;
  h.damping = 1e-3;
  OptimizerState st = initial_state(method, shape);
  Vec mu(n * n, 0.0);
  const Vec g = normal_vec(n * n, rng);
  for (auto _ : state) {
    mu = apply_step(method, mu, g, st, shape, h);
    benchmark::DoNotOptimize(mu.data());
  }
}
BENCHMARK_CAPTURE(BM_KronStep, shampoo, Method::shampoo)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(BM_KronStep, rf_shampoo, Method::rf_shampoo)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(BM_KronStep, if_shampoo, Method::if_shampoo)->Arg(8)->Arg(32);

void BM_DiagStep(benchmark::State& state, Method method) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Shape shape{1, n};
  Rng rng(4);
  Hyper h;
  OptimizerState st = initial_state(method, shape);
  Vec mu(n, 0.0);
  const Vec g = normal_vec(n, rng);
  for (auto _ : state) {
    mu = apply_step(method, mu, g, st, shape, h);
    benchmark::DoNotOptimize(mu.data());
  }
}
BENCHMARK_CAPTURE(BM_DiagStep, rmsprop, Method::rmsprop)->Arg(1024);
BENCHMARK_CAPTURE(BM_DiagStep, rf_rmsprop, Method::rf_rmsprop)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
