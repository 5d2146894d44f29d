#include "benchmark/benchmark.h"
#include "rectsurf/tiling.hpp"

using namespace rectsurf;

static void BM_EnumerateBalancedFour(benchmark::State& state) {
  for (auto _ : state) {
    auto all = enumerate_balanced_four();
    benchmark::DoNotOptimize(all.size());
  }
}
BENCHMARK(BM_EnumerateBalancedFour)->Unit(benchmark::kMillisecond);

static void BM_OrbitPartition(benchmark::State& state) {
  auto all = enumerate_balanced_four();
  for (auto _ : state) {
    auto orbits = orbit_partition(all);
    benchmark::DoNotOptimize(orbits.size());
  }
}
BENCHMARK(BM_OrbitPartition)->Unit(benchmark::kMillisecond);

static void BM_CanonicalEncoding(benchmark::State& state) {
  auto t = family_tiling(Family::Esc1, 3);  // eight squares
  auto c = to_complex(t);
  for (auto _ : state) {
    auto enc = canonical_encoding(c);
    benchmark::DoNotOptimize(enc.size());
  }
}
BENCHMARK(BM_CanonicalEncoding)->Unit(benchmark::kMillisecond);
