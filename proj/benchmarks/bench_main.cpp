#include <benchmark/benchmark.h>

#include "uncover/covariance.hpp"
#include "uncover/engine.hpp"
#include "uncover/generators.hpp"
#include "uncover/martingale.hpp"

using namespace uncover;

namespace {

void BM_GenerateLabelledTree(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(generate({GraphModel::LabelledTree, n}, rng));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GenerateLabelledTree)->Arg(2000)->Arg(10000);

void BM_GenerateConfiguration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ModelSpec spec{GraphModel::Configuration, n};
  spec.degrees.assign(n, 4);
  RngStream rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(generate(spec, rng));
}
BENCHMARK(BM_GenerateConfiguration)->Arg(2000);

void BM_UncoverRun(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(3);
  const Graph g = generate({GraphModel::LabelledTree, n}, rng);
  for (auto _ : state) {
    const auto assignment = sample_uncover_times(n, rng);
    benchmark::DoNotOptimize(run(g, assignment));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_UncoverRun)->Arg(2000)->Arg(10000);

void BM_UncoverRunBipartite(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(4);
  const Graph g = generate({GraphModel::CompleteBipartite, n}, rng);
  for (auto _ : state) {
    const auto assignment = sample_uncover_times(n, rng);
    benchmark::DoNotOptimize(run(g, assignment));
  }
}
BENCHMARK(BM_UncoverRunBipartite)->Arg(2000);

void BM_QuadraticCovariations(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(5);
  const Graph g = generate({GraphModel::LabelledTree, n}, rng);
  const double ts[2] = {0.3, 0.6};
  for (auto _ : state) {
    const auto assignment = sample_uncover_times(n, rng);
    benchmark::DoNotOptimize(
        quadratic_covariations(g, assignment, std::span<const double>(ts, 2)));
  }
}
BENCHMARK(BM_QuadraticCovariations)->Arg(200)->Arg(2000);

void BM_GaussianSample(benchmark::State& state) {
  const auto model = CovarianceModel::sparse_discrete(2.0, 1.0);
  const std::vector<double> grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  GaussianSampler sampler(model, grid);
  RngStream rng(6);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(rng));
}
BENCHMARK(BM_GaussianSample);

}  // namespace

BENCHMARK_MAIN();
