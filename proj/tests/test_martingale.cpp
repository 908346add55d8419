#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "uncover/census.hpp"
#include "uncover/engine.hpp"
#include "uncover/errors.hpp"
#include "uncover/generators.hpp"
#include "uncover/martingale.hpp"

using namespace uncover;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }

Graph complete(int n) {
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

Graph make(GraphModel kind, int n, std::uint64_t seed) {
  RngStream rng(seed);
  return generate({kind, n}, rng);
}

struct MeanVar {
  double sum = 0, sq = 0;
  long long count = 0;
  void add(double x) {
    sum += x;
    sq += x * x;
    ++count;
  }
  double mean() const { return sum / count; }
  double se() const {
    const double m = mean();
    const double var = sq / count - m * m;
    return std::sqrt(std::max(var, 0.0) / count);
  }
};

}  // namespace

TEST_CASE("hand trace of the centered components on the triangle graph") {
  const auto assignment = assignment_from_times({0.2, 0.5, 0.9});
  const MartingalePaths paths(triangle(), assignment);
  const double t = 0.6;
  CHECK(paths.edge_fluct(t) == doctest::Approx(-0.32).epsilon(1e-12));
  CHECK(paths.degree_fluct(t) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(paths.vertex_fluct(t) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(paths.visible_edges(t) == 1.0);
  // edge_fluct + t degree_fluct + t^2 |E| reproduces the edge count.
  CHECK(paths.edge_fluct(t) + t * paths.degree_fluct(t) + t * t * 3 ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("all centered components vanish at t = 0") {
  RngStream rng(1);
  const Graph g = generate({GraphModel::Gnm, 40, 80}, rng);
  const MartingalePaths paths(g, sample_uncover_times(40, rng));
  CHECK(paths.edge_fluct(0.0) == 0.0);
  CHECK(paths.degree_fluct(0.0) == 0.0);
  CHECK(paths.vertex_fluct(0.0) == 0.0);
  CHECK(paths.degdev_fluct(0.0) == 0.0);
}

TEST_CASE("regular graphs have no degree-deviation component") {
  RngStream rng(2);
  const Graph g = make(GraphModel::Cycle, 50, 2);
  const MartingalePaths paths(g, sample_uncover_times(50, rng));
  for (double t : {0.1, 0.35, 0.8, 0.99}) {
    CHECK(paths.degdev_fluct(t) == 0.0);
    CHECK(paths.degree_fluct(t) ==
          doctest::Approx(2.0 * paths.vertex_fluct(t)).epsilon(1e-12));
  }
}

TEST_CASE("compensated paths blow up at one and relate by (1-t) powers") {
  RngStream rng(3);
  const Graph g = make(GraphModel::LabelledTree, 30, 3);
  const MartingalePaths paths(g, sample_uncover_times(30, rng));
  const double t = 0.7;
  const double u = 1.0 - t;
  CHECK(paths.edge_mart(t) * u * u == doctest::Approx(paths.edge_fluct(t)).epsilon(1e-12));
  CHECK(paths.degree_mart(t) * u == doctest::Approx(paths.degree_fluct(t)).epsilon(1e-12));
  CHECK(paths.vertex_mart(t) * u == doctest::Approx(paths.vertex_fluct(t)).epsilon(1e-12));
  CHECK(paths.degdev_mart(t) * u == doctest::Approx(paths.degdev_fluct(t)).epsilon(1e-12));
  CHECK_THROWS_AS(paths.edge_mart(1.0), MartingaleAtOne);
  CHECK_THROWS_AS(paths.vertex_mart(1.0), MartingaleAtOne);
  CHECK_THROWS_AS(paths.edge_fluct(1.5), OutOfDomain);
}

TEST_CASE("decomposition residual on the hand trace and at the endpoints") {
  const auto assignment = assignment_from_times({0.2, 0.5, 0.9});
  const auto r = decomposition_residual(triangle(), assignment, 0.6);
  CHECK(std::abs(r.edge_form) <= 1e-12);
  CHECK(std::abs(r.degree_form) <= 1e-12);
  const auto r1 = decomposition_residual(triangle(), assignment, 1.0);
  CHECK(std::abs(r1.edge_form) <= 1e-12);
  const auto r0 = decomposition_residual(triangle(), assignment, 0.0);
  CHECK(std::abs(r0.edge_form) <= 1e-12);
}

TEST_CASE("decomposition residual property sweep") {
  RngStream rng(4);
  double worst = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 2 + rng.next_index(99);
    Graph g = generate({GraphModel::Gnp, n, 0, std::min(1.0, 4.0 / n)}, rng);
    const auto assignment = sample_uncover_times(n, rng);
    const MartingalePaths paths(g, assignment);
    const double t = rng.next_unit();
    const auto r = decomposition_residual(paths, t);
    const double bound = 1e-9 * (1.0 + double(g.edge_count()));
    CHECK(std::abs(r.edge_form) <= bound);
    CHECK(std::abs(r.degree_form) <= bound);
    worst = std::max(worst, std::abs(r.edge_form));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("hand-evaluated vertex-pair jump sum") {
  const auto assignment = assignment_from_times({0.2, 0.5, 0.9});
  const double qv =
      quadratic_covariation(triangle(), assignment, FluctPair::VtxVtx, 0.6);
  CHECK(qv == doctest::Approx(5.5625).epsilon(1e-12));
}

TEST_CASE("regular graph jump-sum identities") {
  RngStream rng(5);
  const Graph g = make(GraphModel::Cycle, 40, 5);
  const auto assignment = sample_uncover_times(40, rng);
  const auto qv = quadratic_covariations(g, assignment, 0.55);
  CHECK(qv.deg_deg == doctest::Approx(4.0 * qv.vtx_vtx).epsilon(1e-12));
  CHECK(qv.dev_dev == 0.0);
  CHECK(qv.edge_dev == 0.0);
  CHECK(qv.dev_vtx == 0.0);
}

TEST_CASE("bilinearity of the deviation jump sums") {
  RngStream rng(6);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 3 + rng.next_index(80);
    const Graph g = generate({GraphModel::Gnp, n, 0, std::min(1.0, 3.0 / n)}, rng);
    const auto assignment = sample_uncover_times(n, rng);
    const auto qv = quadratic_covariations(g, assignment, 0.6);
    const double dbar = 2.0 * double(g.edge_count()) / n;
    CHECK(qv.dev_vtx ==
          doctest::Approx(qv.deg_vtx - dbar * qv.vtx_vtx).epsilon(1e-10));
    CHECK(qv.dev_dev ==
          doctest::Approx(qv.deg_deg - 2 * dbar * qv.deg_vtx + dbar * dbar * qv.vtx_vtx)
              .epsilon(1e-9));
  }
}

TEST_CASE("expected jump sums, spot values") {
  const Graph p3 = make(GraphModel::Path, 3, 1);
  CHECK(expected_qv(p3, FluctPair::EdgeEdge, 0.5) == doctest::Approx(2.0).epsilon(1e-12));
  RngStream rng(7);
  const Graph g10 = generate({GraphModel::Gnp, 10, 0, 0.4}, rng);
  CHECK(expected_qv(g10, FluctPair::VtxVtx, 0.5) == doctest::Approx(10.0).epsilon(1e-12));
  const Graph c4 = make(GraphModel::Cycle, 4, 1);
  CHECK(expected_qv(c4, FluctPair::DegVtx, 0.5) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(expected_qv(c4, FluctPair::EdgeDeg, 0.5) == 0.0);
  CHECK_THROWS_AS(expected_qv(c4, FluctPair::VtxVtx, 1.0), MartingaleAtOne);
}

TEST_CASE("monte carlo jump sums meet their expectations at moderate scale") {
  // Smoke-scale version of the expectation matching; the acceptance suite
  // runs the full four-graph protocol.
  RngStream graph_rng(8);
  const Graph g = generate({GraphModel::LabelledTree, 60}, graph_rng);
  const double ts[2] = {0.3, 0.6};
  const int reps = 4000;
  MeanVar acc[2][9];
  RngStream rng(9);
  for (int r = 0; r < reps; ++r) {
    const auto assignment = sample_uncover_times(60, rng);
    const auto qv = quadratic_covariations(g, assignment, std::span<const double>(ts, 2));
    for (int ti = 0; ti < 2; ++ti) {
      acc[ti][0].add(qv[ti].edge_edge);
      acc[ti][1].add(qv[ti].deg_deg);
      acc[ti][2].add(qv[ti].vtx_vtx);
      acc[ti][3].add(qv[ti].edge_deg);
      acc[ti][4].add(qv[ti].edge_vtx);
      acc[ti][5].add(qv[ti].deg_vtx);
      acc[ti][6].add(qv[ti].dev_dev);
      acc[ti][7].add(qv[ti].edge_dev);
      acc[ti][8].add(qv[ti].dev_vtx);
    }
  }
  const FluctPair pairs[9] = {FluctPair::EdgeEdge, FluctPair::DegDeg, FluctPair::VtxVtx,
                              FluctPair::EdgeDeg, FluctPair::EdgeVtx, FluctPair::DegVtx,
                              FluctPair::DevDev,  FluctPair::EdgeDev, FluctPair::DevVtx};
  for (int ti = 0; ti < 2; ++ti) {
    for (int p = 0; p < 9; ++p) {
      const double expect = expected_qv(g, pairs[p], ts[ti]);
      const double se = acc[ti][p].se();
      CHECK(std::abs(acc[ti][p].mean() - expect) <= 5.0 * se + 1e-9);
    }
  }
}

TEST_CASE("martingale increments are uncorrelated across disjoint windows") {
  RngStream graph_rng(10);
  const Graph g = generate({GraphModel::LabelledTree, 100}, graph_rng);
  const int reps = 20000;
  const double s = 0.3, t = 0.6;
  double sum_a[4] = {}, sum_b[4] = {}, sum_ab[4] = {}, sum_absq[4] = {};
  RngStream rng(11);
  for (int r = 0; r < reps; ++r) {
    const MartingalePaths paths(g, sample_uncover_times(100, rng));
    const double at_s[4] = {paths.edge_mart(s), paths.degree_mart(s),
                            paths.vertex_mart(s), paths.degdev_mart(s)};
    const double at_t[4] = {paths.edge_mart(t), paths.degree_mart(t),
                            paths.vertex_mart(t), paths.degdev_mart(t)};
    for (int i = 0; i < 4; ++i) {
      const double a = at_s[i];
      const double b = at_t[i] - at_s[i];
      sum_a[i] += a;
      sum_b[i] += b;
      sum_ab[i] += a * b;
      sum_absq[i] += a * a * b * b;
    }
  }
  for (int i = 0; i < 4; ++i) {
    const double mean_a = sum_a[i] / reps, mean_b = sum_b[i] / reps;
    const double cov = sum_ab[i] / reps - mean_a * mean_b;
    // SE of the sample covariance, conservatively using E[a^2 b^2].
    const double se = std::sqrt((sum_absq[i] / reps) / reps);
    CHECK(std::abs(cov) <= 4.0 * se + 1e-12);
  }
}

TEST_CASE("variance of the edge jump sum stays within the cubic degree bound") {
  RngStream rng(12);
  for (auto [kind, n] : std::vector<std::pair<GraphModel, int>>{
           {GraphModel::Path, 100}, {GraphModel::Cycle, 50}, {GraphModel::LabelledTree, 200}}) {
    const Graph g = make(kind, n, 13);
    long long cube = 0;
    for (int v = 0; v < n; ++v)
      cube += static_cast<long long>(g.degree(v)) * g.degree(v) * g.degree(v);
    MeanVar acc;
    for (int r = 0; r < 5000; ++r) {
      const auto assignment = sample_uncover_times(n, rng);
      acc.add(quadratic_covariation(g, assignment, FluctPair::EdgeEdge, 0.5));
    }
    const double var = acc.sq / acc.count - acc.mean() * acc.mean();
    CHECK(var <= 100.0 * double(cube));
  }
  // Complete graph K10 rounds out the suite.
  const Graph k10 = complete(10);
  MeanVar acc;
  for (int r = 0; r < 5000; ++r)
    acc.add(quadratic_covariation(k10, sample_uncover_times(10, rng), FluctPair::EdgeEdge, 0.5));
  const double var = acc.sq / acc.count - acc.mean() * acc.mean();
  CHECK(var <= 100.0 * 10.0 * 9 * 9 * 9);
}

TEST_CASE("triangle decomposition identities") {
  const Graph k3 = triangle();
  const auto census3 = triangle_census(k3);
  const auto assignment = assignment_from_times({0.2, 0.5, 0.9});
  const auto d = triangle_decomposition(k3, assignment, census3, 0.6);
  CHECK(d.visible == 0);
  CHECK(std::abs(d.residual) <= 1e-12);

  // Triangle-free graphs have all components identically zero.
  RngStream rng(14);
  const Graph tree = generate({GraphModel::LabelledTree, 40}, rng);
  const auto census_tree = triangle_census(tree);
  const auto ta = sample_uncover_times(40, rng);
  const auto dt = triangle_decomposition(tree, ta, census_tree, 0.45);
  CHECK(dt.leading == 0.0);
  CHECK(dt.pairs == 0.0);
  CHECK(dt.vertices == 0.0);
  CHECK(dt.residual == 0.0);
}

TEST_CASE("triangle decomposition residual sweep on dense graphs") {
  RngStream rng(15);
  for (int rep = 0; rep < 200; ++rep) {
    const Graph g = generate({GraphModel::Gnp, 30, 0, 0.4}, rng);
    const auto census = triangle_census(g);
    const auto assignment = sample_uncover_times(30, rng);
    const double t = rng.next_unit();
    const auto d = triangle_decomposition(g, assignment, census, t);
    CHECK(std::abs(d.residual) <= 1e-9 * (1.0 + double(census.triangle_count)));
  }
}

TEST_CASE("leading triangle jump sum meets its expectation on K5") {
  const Graph k5 = complete(5);
  const auto census = triangle_census(k5);
  CHECK(census.triangle_count == 10);
  const double t = 0.4;
  const double expect = expected_triangle_leading_qv(census, t);
  CHECK(expect == doctest::Approx(36.0 * 10.0 * 0.064 / 0.216).epsilon(1e-12));
  MeanVar acc;
  RngStream rng(16);
  for (int r = 0; r < 20000; ++r)
    acc.add(triangle_leading_qv(k5, sample_uncover_times(5, rng), t));
  CHECK(std::abs(acc.mean() - expect) <= 4.0 * acc.se());
}
