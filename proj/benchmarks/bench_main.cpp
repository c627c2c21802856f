#include <benchmark/benchmark.h>

#include <random>

#include "extdual/ext.hpp"
#include "extdual/snf.hpp"
#include "extdual/random_modules.hpp"

using namespace extdual;

static void BM_SnfRandom(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  PLocalMatrix a(n, n);
  std::uniform_int_distribution<long> d(-50, 50);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = PLocalScalar(d(rng));
  for (auto _ : state) benchmark::DoNotOptimize(snf(a, 2));
}
BENCHMARK(BM_SnfRandom)->Arg(8)->Arg(16)->Arg(32);

static void BM_MinimalResolution(benchmark::State& state) {
  const GradedRing r = bp_ring(2, static_cast<int>(state.range(0)));
  const auto m = cyclic_p_group(r, 1);
  for (auto _ : state) benchmark::DoNotOptimize(minimal_free_resolution(m, r.num_vars() + 1, r.top_degree() + 8));
}
BENCHMARK(BM_MinimalResolution)->Arg(1)->Arg(2);

static void BM_VerifyDualityRandom(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const GradedRing r = bp_ring(2, 1);
  const auto m = random_finite_module(r, rng);
  for (auto _ : state) benchmark::DoNotOptimize(verify_duality(m));
}
BENCHMARK(BM_VerifyDualityRandom);

BENCHMARK_MAIN();
