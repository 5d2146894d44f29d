#include "benchmark/benchmark.h"
#include "rectsurf/elliptic.hpp"

using namespace rectsurf;

static void BM_MuFromTau(benchmark::State& state) {
  LatticeTau tau(Complex(0.0, 0.6));
  for (auto _ : state) {
    auto mu = mu_from_tau(tau);
    benchmark::DoNotOptimize(mu.mu);
  }
}
BENCHMARK(BM_MuFromTau);

static void BM_TauFromMu(benchmark::State& state) {
  MuInvariant mu(7.5);
  for (auto _ : state) {
    auto tau = tau_from_mu(mu);
    benchmark::DoNotOptimize(tau.tau);
  }
}
BENCHMARK(BM_TauFromMu);
