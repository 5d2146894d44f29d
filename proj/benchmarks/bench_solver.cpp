#include "benchmark/benchmark.h"
#include "rectsurf/modsolver.hpp"

using namespace rectsurf;

static void BM_ModuleSolve(benchmark::State& state) {
  SolverConfig cfg;
  cfg.levels = static_cast<int>(state.range(0));
  cfg.tol = 1e-3;  // coarse levels are for timing, not accuracy
  QuadrangleSpec spec(1.5, 4);
  for (auto _ : state) {
    auto r = tau_from_quadrangle(spec, cfg);
    benchmark::DoNotOptimize(r.im_tau);
  }
}
BENCHMARK(BM_ModuleSolve)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
