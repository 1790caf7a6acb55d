#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "fastdiff/asymptotics.hpp"
#include "fastdiff/invariant_monitor.hpp"
#include "fastdiff/pde_verifier.hpp"
#include "fastdiff/profile_integrator.hpp"
#include "fastdiff/singular_limit.hpp"

using namespace fastdiff;

static void BM_SolveEternal(benchmark::State& state) {
  const Parameters p{3, 0.2, 2.5, 1, 1};
  SolveConfig cfg;
  cfg.s_end = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_profile(p, cfg).overlap_error());
}
BENCHMARK(BM_SolveEternal)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

// Stiff power tail: dominated by the step budget.
static void BM_SolvePowerTail(benchmark::State& state) {
  const Parameters p{3, 0.2, state.range(0) / 100.0, 1, 1};
  for (auto _ : state) benchmark::DoNotOptimize(solve_profile(p).overlap_error());
}
BENCHMARK(BM_SolvePowerTail)->Arg(125)->Arg(50)->Arg(-100)->Unit(benchmark::kMillisecond);

static void BM_RChartTolerance(benchmark::State& state) {
  const Parameters p{4, 1.0 / 3, 3, 1, 1};
  SolveConfig cfg;
  cfg.r_tol = {std::pow(10.0, -static_cast<double>(state.range(0))), 1e-14};
  cfg.s_end = 5;
  for (auto _ : state) benchmark::DoNotOptimize(solve_profile(p, cfg).overlap_error());
}
BENCHMARK(BM_RChartTolerance)->DenseRange(6, 12, 2)->Unit(benchmark::kMicrosecond);

static void BM_InvariantSuite(benchmark::State& state) {
  const Solution sol = solve_profile({4, 0.3, 1.5, 1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(check_all(sol).overall);
}
BENCHMARK(BM_InvariantSuite)->Unit(benchmark::kMillisecond);

static void BM_LogDecayEstimate(benchmark::State& state) {
  const Solution sol = solve_profile({3, 0.2, 2.5, 1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(estimate_log_decay(sol).extrapolated);
}
BENCHMARK(BM_LogDecayEstimate)->Unit(benchmark::kMicrosecond);

static void BM_LimitConvergence(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(limit_convergence(3, 1, 1, 1, kDefaultLimitMs, 10).final_error);
}
BENCHMARK(BM_LimitConvergence)->Unit(benchmark::kMillisecond);

static void BM_PdeResidual(benchmark::State& state) {
  auto sol = std::make_shared<const Solution>(solve_profile({3, 0.2, 2.5, 1, 1}));
  const auto ss = build_selfsimilar(sol, Regime::Eternal);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        pde_residual(ss, {0.5, 1, 2, 5}, {-0.2, 0, 0.2}, 1e-3, 1e-3).max_rel_residual);
}
BENCHMARK(BM_PdeResidual)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
