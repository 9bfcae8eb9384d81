#include <benchmark/benchmark.h>

#include "patind/limit_law.hpp"

using namespace patind;

static void BM_LimitDraw(benchmark::State& state) {
  const Stat stat = static_cast<Stat>(state.range(0));
  const LimitLaw law = build_limit_law(stat);
  Rng rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_limit(law, rng));
  }
}
BENCHMARK(BM_LimitDraw)->Arg(0)->Arg(1)->Arg(4);  // B, C, F

static void BM_NullSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_null_statistics(n, 64, ++seed));
  }
}
BENCHMARK(BM_NullSweep)->Arg(50)->Arg(100);
