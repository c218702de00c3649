// Microbenchmarks for the hot paths: FFT, r-variation, the maximal operator, tile decomposition.

#include <benchmark/benchmark.h>

#include <vector>

#include "maxmult/grid.hpp"
#include "maxmult/harness/experiments.hpp"
#include "maxmult/harness/generators.hpp"
#include "maxmult/multiplier.hpp"
#include "maxmult/rng.hpp"
#include "maxmult/tiles.hpp"
#include "maxmult/variation.hpp"

using namespace maxmult;

namespace {

Signal noise(const DyadicGrid& grid, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<cplx> v(grid.size());
  for (auto& z : v) z = rng.complex_normal();
  return Signal(grid, std::move(v));
}

void BM_Dft(benchmark::State& state) {
  const DyadicGrid grid(6, static_cast<int>(state.range(0)));
  const Signal f = noise(grid, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dft(f));
  state.SetComplexityN(static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_Dft)->DenseRange(10, 18, 2)->Complexity(benchmark::oNLogN);

void BM_RvarSeminorm(benchmark::State& state) {
  CounterRng rng(2);
  std::vector<cplx> v(static_cast<std::size_t>(state.range(0)));
  for (auto& z : v) z = rng.complex_normal();
  for (auto _ : state) benchmark::DoNotOptimize(rvar_seminorm(std::span<const cplx>(v), 2.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RvarSeminorm)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_MaximalDelta(benchmark::State& state) {
  const DyadicGrid grid(9, 16);
  FamilySpec spec;
  for (std::int64_t n = 0; n < state.range(0); ++n) spec.lambdas.push_back(static_cast<double>(n));
  spec.weight_mode = "random_unimodular";
  spec.seed = 3;
  const MultiplierFamily family = build_family(grid, spec);
  const Signal f = noise(grid, 4);
  for (auto _ : state) benchmark::DoNotOptimize(maximal_delta(f, family));
}
BENCHMARK(BM_MaximalDelta)->RangeMultiplier(4)->Range(4, 64)->Unit(benchmark::kMillisecond);

void BM_SizeDecompose(benchmark::State& state) {
  const harness::TileSuiteParams params{11, 14, 4, static_cast<std::size_t>(state.range(0))};
  const FrequencySystem system = harness::tile_suite_system(params);
  CounterRng rng(5);
  const TileSet S = harness::random_convex_tiles(system, rng, params.max_tiles);
  const Signal f = harness::random_test_signal(system, rng, 0);
  const SizeTable sizes(f, system);
  for (auto _ : state) benchmark::DoNotOptimize(size_decompose(S, sizes));
  state.counters["tiles"] = static_cast<double>(S.size());
}
BENCHMARK(BM_SizeDecompose)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

}  // namespace

// Own main: the packaged benchmark_main archive holds LTO bytecode from another compiler release.
BENCHMARK_MAIN();
