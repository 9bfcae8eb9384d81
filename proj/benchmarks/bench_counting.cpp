#include <benchmark/benchmark.h>

#include "patind/pattern_counts.hpp"

using namespace patind;

static void BM_CountPatterns4(benchmark::State& state) {
  Rng rng(42);
  const Permutation p = random_permutation(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_patterns4(p));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountPatterns4)->RangeMultiplier(2)->Range(25, 400)->Complexity(benchmark::oNCubed);

static void BM_CountPatterns4Oracle(benchmark::State& state) {
  Rng rng(42);
  const Permutation p = random_permutation(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_patterns4_oracle(p));
  }
}
BENCHMARK(BM_CountPatterns4Oracle)->RangeMultiplier(2)->Range(25, 100);

static void BM_RandomPermutation(benchmark::State& state) {
  Rng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_permutation(static_cast<int>(state.range(0)), rng));
  }
}
BENCHMARK(BM_RandomPermutation)->Arg(100)->Arg(1000);
