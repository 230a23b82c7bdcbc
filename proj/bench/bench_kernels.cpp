// Serial vs OpenMP grid kernels, and the uniform mesh against the adaptive
// solver on the same five-root polynomial.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "amrroot/amr_solver.hpp"
#include "amrroot/kernels.hpp"
#include "amrroot/static_solver.hpp"

using namespace amrroot;

namespace {

double five_roots(double x) { return (x - 0.5) * (x - 0.50001) * (x - 4) * (x - 4.05) * (x - 9.3); }

// Costlier objective, closer to what a real model evaluation looks like.
double heavy(double x) {
  double s = 0.0;
  for (int k = 1; k <= 32; ++k) s += std::sin(k * x) / k;
  return s - 0.3;
}

template <double (*F)(double), bool Parallel>
void BM_Evaluate(benchmark::State& state) {
  const auto xs = kernels::uniform_nodes(0.0, 10.0, 10.0 / static_cast<double>(state.range(0)));
  std::vector<double> out(xs.size());
  const Function f = F;
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::evaluate_parallel(f, xs, out);
    else
      kernels::evaluate_serial(f, xs, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}

template <bool Parallel>
void BM_SignScan(benchmark::State& state) {
  const auto xs = kernels::uniform_nodes(0.0, 10.0, 10.0 / static_cast<double>(state.range(0)));
  std::vector<double> values(xs.size());
  kernels::evaluate_serial(heavy, xs, values);
  for (auto _ : state) {
    auto scan = Parallel ? kernels::scan_signs_parallel(values) : kernels::scan_signs_serial(values);
    benchmark::DoNotOptimize(scan);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(values.size()));
}

void BM_StaticSolve(benchmark::State& state) {
  StaticConfig cfg;
  cfg.policy = state.range(0) ? ExecutionPolicy::Parallel : ExecutionPolicy::Serial;
  for (auto _ : state) {
    CountedObjective f(five_roots);
    auto rep = static_find_roots(f, 0, 10, cfg);
    benchmark::DoNotOptimize(rep);
    state.counters["evaluations"] = static_cast<double>(rep.evaluations);
  }
}

void BM_AdaptiveSolve(benchmark::State& state) {
  for (auto _ : state) {
    auto rep = find_roots(five_roots, 0, 10, SolverConfig{});
    benchmark::DoNotOptimize(rep);
    state.counters["evaluations"] = static_cast<double>(rep.evaluations);
  }
}

}  // namespace

BENCHMARK(BM_Evaluate<five_roots, false>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Evaluate<five_roots, true>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Evaluate<heavy, false>)->Arg(1 << 16);
BENCHMARK(BM_Evaluate<heavy, true>)->Arg(1 << 16);
BENCHMARK(BM_SignScan<false>)->Arg(1 << 20);
BENCHMARK(BM_SignScan<true>)->Arg(1 << 20);
BENCHMARK(BM_StaticSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AdaptiveSolve)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
