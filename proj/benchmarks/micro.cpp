#include <benchmark/benchmark.h>

#include "ivord/forest.hpp"
#include "ivord/kiof.hpp"
#include "ivord/linalg.hpp"
#include "ivord/metrics.hpp"
#include "ivord/synthetic.hpp"
#include "support/generators.hpp"

namespace {

using namespace ivord;

void BM_DistanceEH(benchmark::State& state) {
  RngStream rng(1);
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto x = testing::random_ivd(rng, k), y = testing::random_ivd(rng, k);
  for (auto _ : state) benchmark::DoNotOptimize(dist_interval(x, y, VectorDistance::EH));
}
BENCHMARK(BM_DistanceEH)->Arg(2)->Arg(24)->Arg(730);

void BM_DistanceFEH(benchmark::State& state) {
  RngStream rng(2);
  const auto grid = testing::uniform_grid(static_cast<std::size_t>(state.range(0)), 1, 365);
  const auto x = testing::random_curve(rng, grid, 2), y = testing::random_curve(rng, grid, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dist_curve(x, y, CurveDistance::FEH));
}
BENCHMARK(BM_DistanceFEH)->Arg(13)->Arg(365);

void BM_PairwiseKernel(benchmark::State& state) {
  RngStream rng(3);
  const auto d = gen_synthetic(SyntheticDesign::three_class(), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pairwise(d.observations, {PairwiseKind::Kernel, 1.0, 1}));
  }
}
BENCHMARK(BM_PairwiseKernel)->Unit(benchmark::kMillisecond);

void BM_JacobiEigen(benchmark::State& state) {
  RngStream rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(sym_eigen(a));
}
BENCHMARK(BM_JacobiEigen)->Arg(40)->Arg(240)->Unit(benchmark::kMillisecond);

void BM_ForestFit(benchmark::State& state) {
  RngStream rng(5);
  const auto p = static_cast<std::size_t>(state.range(0));
  Matrix x(240, p);
  std::vector<double> t(240);
  for (std::size_t i = 0; i < 240; ++i) {
    for (std::size_t j = 0; j < p; ++j) x(i, j) = rng.normal();
    t[i] = x(i, 0) > 0 ? 0.8 : 0.2;
  }
  for (auto _ : state) benchmark::DoNotOptimize(rforest_fit(x, t, {100, 0, 5, 1}, RngStream(6)));
}
BENCHMARK(BM_ForestFit)->Arg(2)->Arg(240)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
