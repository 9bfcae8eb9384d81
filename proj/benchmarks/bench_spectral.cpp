#include <benchmark/benchmark.h>

#include "patind/spectral.hpp"

using namespace patind;

static void BM_GammaRoots(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_gamma_roots(FactorKernel::G4, state.range(0)));
  }
}
BENCHMARK(BM_GammaRoots)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_SecularValue(benchmark::State& state) {
  const OmegaDE o = omega_de_roots(1, static_cast<int>(state.range(0)));
  const double z = 0.5 * (o.zstar[0] + o.zstar[1]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(o.value(z));
  }
}
BENCHMARK(BM_SecularValue)->Arg(100)->Arg(300)->Arg(500);

static void BM_SecularRoots(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(omega_de_roots(static_cast<int>(state.range(0)), 200));
  }
}
BENCHMARK(BM_SecularRoots)->Arg(10)->Arg(100);
