#include <benchmark/benchmark.h>

#include "levyps/hermite.hpp"
#include "levyps/model.hpp"
#include "levyps/simulate.hpp"
#include "levyps/skellam.hpp"

using namespace levyps;

static void BM_SamplePathsSkellam(benchmark::State& state) {
  const SkellamFamily model(std::vector<double>(static_cast<std::size_t>(state.range(0)), 0.5));
  const TimeGrid grid({0.5, 1.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_paths(model, grid, 10000, 1));
  }
  state.SetItemsProcessed(state.iterations() * 10000 * 2 * state.range(0));
}
BENCHMARK(BM_SamplePathsSkellam)->Arg(1)->Arg(8)->Arg(32);

static void BM_SamplePathsGaussian(benchmark::State& state) {
  const auto K = static_cast<std::size_t>(state.range(0));
  const GaussianDiagonal model(std::vector<double>(K, 0.0), std::vector<double>(K, 1.0));
  const TimeGrid grid({0.5, 1.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_paths(model, grid, 10000, 1));
  }
  state.SetItemsProcessed(state.iterations() * 10000 * 2 * state.range(0));
}
BENCHMARK(BM_SamplePathsGaussian)->Arg(8);

static void BM_LevyExponent(benchmark::State& state) {
  const LevyModel model = SkellamFamily(std::vector<double>(64, 0.3));
  FiniteFunctional phi;
  for (std::size_t n = 1; n <= 64; ++n) phi.set(n, 0.01 * static_cast<double>(n));
  for (auto _ : state) benchmark::DoNotOptimize(levy_exponent(model, phi));
}
BENCHMARK(BM_LevyExponent);

static void BM_SkellamPmf(benchmark::State& state) {
  long k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(skellam::skellam_pmf({2.0, 1.5}, k));
    k = (k + 1) % 21 - 10;
  }
}
BENCHMARK(BM_SkellamPmf);

static void BM_BuildHermiteSystem(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(spatial::build_hermite_system(3, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_BuildHermiteSystem)->Arg(2)->Arg(4);
BENCHMARK_MAIN();
