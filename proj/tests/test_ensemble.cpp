#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "uncover/ensemble.hpp"
#include "uncover/errors.hpp"

using namespace uncover;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }

Graph path3() { return Graph(3, {{0, 1}, {1, 2}}); }

ExperimentSpec tree_spec() {
  ExperimentSpec spec;
  spec.model = {GraphModel::LabelledTree, 300};
  spec.replicates = 400;
  spec.grid = {0.25, 0.5, 0.75};
  spec.process = ProcessKind::EdgesDiscrete;
  spec.regime = Regime::Sparse;
  spec.seed = 11;
  return spec;
}

}  // namespace

TEST_CASE("brute-force oracle on tiny graphs") {
  const auto k3 = brute_force_oracle(triangle(), 2);
  CHECK(k3.edge_mean == 1.0);
  CHECK(k3.edge_variance == 0.0);
  CHECK(k3.component_mean == 1.0);

  const auto p3 = brute_force_oracle(path3(), 2);
  CHECK(p3.edge_mean == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(p3.edge_variance == doctest::Approx(2.0 / 9.0).epsilon(1e-12));

  CHECK_THROWS_AS(brute_force_oracle(triangle(), 4), OutOfDomain);
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  CHECK_THROWS_AS(brute_force_oracle(Graph(9, std::move(edges)), 1), TooLarge);
}

TEST_CASE("oracle mean matches the pair-counting formula on all 5-vertex graphs") {
  // Every edge subset of the complete graph on five vertices.
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) pairs.emplace_back(u, v);
  for (int mask = 0; mask < (1 << 10); ++mask) {
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    for (int b = 0; b < 10; ++b)
      if (mask & (1 << b)) edges.push_back(pairs[b]);
    const Graph g(5, std::move(edges));
    const auto table = brute_force_oracle_all(g);
    for (int k = 0; k <= 5; ++k) {
      const double expected = double(g.edge_count()) * k * (k - 1) / (5.0 * 4.0);
      CHECK(table.edge_mean[k] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("ensemble validation") {
  ExperimentSpec spec = tree_spec();
  spec.replicates = 10;
  CHECK_THROWS_AS(run_ensemble(spec), InvalidSpec);
  spec = tree_spec();
  spec.grid = {0.5, 0.25};
  CHECK_THROWS_AS(run_ensemble(spec), InvalidSpec);
  spec = tree_spec();
  spec.grid = {0.0, 0.5};
  CHECK_THROWS_AS(run_ensemble(spec), InvalidSpec);
  spec = tree_spec();
  spec.process = ProcessKind::BipartiteDiscrete;
  CHECK_THROWS_AS(run_ensemble(spec), InvalidSpec);
  spec = tree_spec();
  spec.regime = Regime::General;
  CHECK_THROWS_AS(run_ensemble(spec), BadScale);
  spec = tree_spec();
  spec.regime = Regime::Regular;
  CHECK_THROWS_AS(run_ensemble(spec), NotRegular);
}

TEST_CASE("ensemble output is bit-identical for any worker count") {
  ExperimentSpec spec = tree_spec();
  spec.workers = 1;
  const std::string one = to_json(run_ensemble(spec));
  spec.workers = 3;
  const std::string three = to_json(run_ensemble(spec));
  CHECK(one == three);
  spec.workers = 0;
  CHECK(to_json(run_ensemble(spec)) == one);
  // And a different seed changes it.
  spec.seed = 12;
  CHECK(to_json(run_ensemble(spec)) != one);
}

TEST_CASE("ensemble stats JSON round trip") {
  const EnsembleStats stats = run_ensemble(tree_spec());
  const std::string text = to_json(stats);
  const EnsembleStats back = ensemble_stats_from_json(text);
  CHECK(to_json(back) == text);
}

TEST_CASE("normalized tree process has small mean and plausible covariance") {
  ExperimentSpec spec = tree_spec();
  spec.model.n = 500;
  spec.replicates = 2000;
  const EnsembleStats stats = run_ensemble(spec);
  const auto model = CovarianceModel::sparse_discrete(2.0, 1.0);
  for (std::size_t i = 0; i < stats.grid.size(); ++i) {
    const double sigma = model.covariance(stats.grid[i], stats.grid[i]);
    CHECK(std::abs(stats.mean[i]) <= 5.0 * std::sqrt(sigma / spec.replicates) + 0.02);
    CHECK(stats.cov[i * 3 + i] == doctest::Approx(sigma).epsilon(0.5));
    CHECK(stats.se_cov[i * 3 + i] > 0.0);
  }
  CHECK(stats.gaussian_screen);
}

TEST_CASE("compare passes on self-sampled statistics and fails on a wrong model") {
  // Build synthetic ensemble stats by sampling the model itself.
  const auto model = CovarianceModel::sparse_discrete(2.0, 1.0);
  const std::vector<double> grid = {0.25, 0.5, 0.75};
  GaussianSampler sampler(model, grid);
  RngStream rng(13);
  const int reps = 100000;
  EnsembleStats stats;
  stats.grid = grid;
  stats.replicates = reps;
  stats.n = 0;
  stats.seed = 13;
  stats.process = "synthetic";
  stats.normalization = "synthetic";
  stats.mean.assign(3, 0.0);
  stats.skewness.assign(3, 0.0);
  stats.kurtosis.assign(3, 3.0);
  stats.frac_nonpositive.assign(3, 0.5);
  std::vector<double> sum(3, 0.0), prod(9, 0.0);
  std::vector<std::vector<double>> rows;
  rows.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    rows.push_back(sampler.sample(rng));
    for (int i = 0; i < 3; ++i) {
      sum[i] += rows.back()[i];
      for (int j = 0; j < 3; ++j) prod[i * 3 + j] += rows.back()[i] * rows.back()[j];
    }
  }
  stats.cov.assign(9, 0.0);
  stats.se_cov.assign(9, 0.0);
  for (int i = 0; i < 3; ++i) {
    stats.mean[i] = sum[i] / reps;
    for (int j = 0; j < 3; ++j)
      stats.cov[i * 3 + j] =
          (prod[i * 3 + j] - sum[i] * sum[j] / reps) / (reps - 1);
  }
  // Jackknife-free SE approximation for the synthetic case.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double vi = stats.cov[i * 3 + i], vj = stats.cov[j * 3 + j];
      const double c = stats.cov[i * 3 + j];
      stats.se_cov[i * 3 + j] = std::sqrt((vi * vj + c * c) / reps);
    }

  CHECK(compare(stats, model).pass);

  // Shifting the degree variance moves the diagonal by 0.0625 at the middle
  // grid point, far beyond tolerance.
  const auto wrong = CovarianceModel::sparse_discrete(2.0, 2.0);
  const auto report = compare(stats, wrong);
  CHECK_FALSE(report.pass);
  CHECK(report.worst_s == report.worst_t);

  // Grid mismatch is an error.
  EnsembleStats other = stats;
  other.grid = {0.2, 0.5, 0.75};
  CHECK_THROWS_AS(compare(other, grid, model.covariance_matrix(grid)), GridMismatch);
}

TEST_CASE("gaussian screen flags heavy asymmetry") {
  EnsembleStats stats;
  stats.grid = {0.5};
  stats.skewness = {0.0};
  stats.kurtosis = {3.0};
  CHECK(gaussian_screen_pass(stats));
  stats.skewness = {-2.8};
  stats.kurtosis = {15.0};
  CHECK_FALSE(gaussian_screen_pass(stats));
}

TEST_CASE("bipartite process moments at small scale") {
  ExperimentSpec spec;
  spec.model = {GraphModel::CompleteBipartite, 200};
  spec.replicates = 2000;
  spec.grid = {0.25, 0.5, 0.75};
  spec.process = ProcessKind::BipartiteDiscrete;
  spec.regime = Regime::Sparse;  // normalization ignored by this process
  spec.seed = 17;
  const EnsembleStats stats = run_ensemble(spec);
  // Mean near -t(1-t)/4 and every replicate nonpositive.
  for (std::size_t i = 0; i < stats.grid.size(); ++i) {
    const double t = stats.grid[i];
    CHECK(stats.frac_nonpositive[i] == 1.0);
    CHECK(std::abs(stats.mean[i] + 0.25 * t * (1 - t)) < 0.02);
  }
  CHECK_FALSE(stats.gaussian_screen);
}

TEST_CASE("triangles process centers at the realized triangle count") {
  ExperimentSpec spec;
  spec.model = {GraphModel::Gnp, 60, 0, 0.25};
  spec.replicates = 500;
  spec.grid = {0.3, 0.6};
  spec.process = ProcessKind::TrianglesDiscrete;
  spec.regime = Regime::Sparse;
  spec.seed = 19;
  const EnsembleStats stats = run_ensemble(spec);
  for (std::size_t i = 0; i < stats.grid.size(); ++i)
    CHECK(std::abs(stats.mean[i]) < 1.0);
}

TEST_CASE("process kind names round trip") {
  for (ProcessKind k : {ProcessKind::EdgesDiscrete, ProcessKind::EdgesContinuous,
                        ProcessKind::ComponentsDiscrete, ProcessKind::ComponentsContinuous,
                        ProcessKind::TrianglesDiscrete, ProcessKind::BipartiteDiscrete})
    CHECK(process_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(process_kind_from_string("nope"), InvalidSpec);
}
