#include "uncover/martingale.hpp"

#include <algorithm>

#include "uncover/errors.hpp"

namespace uncover {

MartingalePaths::MartingalePaths(const Graph& g, const TimeAssignment& assignment) {
  n_ = g.vertex_count();
  if (static_cast<int>(assignment.times.size()) != n_)
    throw DimensionMismatch("MartingalePaths: assignment does not match the graph");
  edge_count_ = g.edge_count();
  mean_degree_ = 2.0 * static_cast<double>(edge_count_) / n_;
  tau_ = assignment.tau;
  visible_edges_.resize(n_);
  visible_degree_.resize(n_);
  edge_fluct_at_event_.resize(n_);

  std::vector<std::int32_t> rank(n_, 0);
  long long edges = 0, degree_sum = 0;
  double edge_term = 0;
  double prev_t = 0;
  const auto m = static_cast<double>(edge_count_);
  for (int k = 1; k <= n_; ++k) {
    const int v = assignment.order[k - 1];
    const double t = assignment.tau[k - 1];
    // Drift of the edge term between events: d/dt = -D(t) + 2|E| t with the
    // visible degree sum D constant on the interval.
    edge_term += -(t - prev_t) * static_cast<double>(degree_sum) +
                 m * (t * t - prev_t * prev_t);
    long long visible = 0;
    for (std::int32_t j : g.neighbors(v))
      if (rank[j] != 0) ++visible;
    rank[v] = k;
    // Jump: sum over neighbours of v of (I_j - t).
    edge_term += static_cast<double>(visible) - static_cast<double>(g.degree(v)) * t;
    edges += visible;
    degree_sum += g.degree(v);
    visible_edges_[k - 1] = edges;
    visible_degree_[k - 1] = degree_sum;
    edge_fluct_at_event_[k - 1] = edge_term;
    prev_t = t;
  }
}

void MartingalePaths::check_domain(double t) {
  if (t < 0.0 || t > 1.0) throw OutOfDomain("martingale path evaluated outside [0,1]");
}

void MartingalePaths::check_mart_domain(double t) {
  if (t < 0.0 || t > 1.0) throw OutOfDomain("martingale path evaluated outside [0,1]");
  if (t >= 1.0)
    throw MartingaleAtOne("compensated martingales are defined on [0,1) only");
}

std::size_t MartingalePaths::locate(double t) const {
  return static_cast<std::size_t>(
      std::upper_bound(tau_.begin(), tau_.end(), t) - tau_.begin());
}

double MartingalePaths::edge_fluct(double t) const {
  check_domain(t);
  const std::size_t k = locate(t);
  const double tk = k == 0 ? 0.0 : tau_[k - 1];
  const double base = k == 0 ? 0.0 : edge_fluct_at_event_[k - 1];
  const double deg = k == 0 ? 0.0 : static_cast<double>(visible_degree_[k - 1]);
  return base - (t - tk) * deg + static_cast<double>(edge_count_) * (t * t - tk * tk);
}

double MartingalePaths::degree_fluct(double t) const {
  check_domain(t);
  const std::size_t k = locate(t);
  const double deg = k == 0 ? 0.0 : static_cast<double>(visible_degree_[k - 1]);
  return deg - 2.0 * static_cast<double>(edge_count_) * t;
}

double MartingalePaths::vertex_fluct(double t) const {
  check_domain(t);
  const std::size_t k = locate(t);
  return static_cast<double>(k) - static_cast<double>(n_) * t;
}

double MartingalePaths::degdev_fluct(double t) const {
  check_domain(t);
  const std::size_t k = locate(t);
  const double deg = k == 0 ? 0.0 : static_cast<double>(visible_degree_[k - 1]);
  // No drift: the deviations sum to zero, so only the step part remains.
  return deg - mean_degree_ * static_cast<double>(k);
}

double MartingalePaths::edge_mart(double t) const {
  check_mart_domain(t);
  const double u = 1.0 - t;
  return edge_fluct(t) / (u * u);
}

double MartingalePaths::degree_mart(double t) const {
  check_mart_domain(t);
  return degree_fluct(t) / (1.0 - t);
}

double MartingalePaths::vertex_mart(double t) const {
  check_mart_domain(t);
  return vertex_fluct(t) / (1.0 - t);
}

double MartingalePaths::degdev_mart(double t) const {
  check_mart_domain(t);
  return degdev_fluct(t) / (1.0 - t);
}

double MartingalePaths::visible_edges(double t) const {
  check_domain(t);
  const std::size_t k = locate(t);
  return k == 0 ? 0.0 : static_cast<double>(visible_edges_[k - 1]);
}

DecompositionResidual decomposition_residual(const MartingalePaths& paths, double t) {
  const double edges = paths.visible_edges(t);
  const double m = static_cast<double>(paths.edge_count());
  const double dbar = paths.mean_degree();
  const double n = paths.vertex_count();
  DecompositionResidual r;
  r.edge_form = edges - (paths.edge_fluct(t) + t * paths.degree_fluct(t) + t * t * m);
  r.degree_form = edges - (paths.edge_fluct(t) + t * paths.degdev_fluct(t) +
                           t * dbar * paths.vertex_fluct(t) + t * t * n * dbar / 2.0);
  return r;
}

DecompositionResidual decomposition_residual(const Graph& g,
                                             const TimeAssignment& assignment,
                                             double t) {
  return decomposition_residual(MartingalePaths(g, assignment), t);
}

double QvValues::get(FluctPair pair) const {
  switch (pair) {
    case FluctPair::EdgeEdge: return edge_edge;
    case FluctPair::DegDeg: return deg_deg;
    case FluctPair::VtxVtx: return vtx_vtx;
    case FluctPair::EdgeDeg: return edge_deg;
    case FluctPair::EdgeVtx: return edge_vtx;
    case FluctPair::DegVtx: return deg_vtx;
    case FluctPair::DevDev: return dev_dev;
    case FluctPair::EdgeDev: return edge_dev;
    case FluctPair::DevVtx: return dev_vtx;
  }
  throw Error("QvValues::get: unknown pair");
}

std::vector<QvValues> quadratic_covariations(const Graph& g,
                                             const TimeAssignment& assignment,
                                             std::span<const double> ts) {
  const int n = g.vertex_count();
  if (static_cast<int>(assignment.times.size()) != n)
    throw DimensionMismatch("quadratic_covariations: assignment does not match the graph");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] < 0.0 || ts[i] > 1.0)
      throw OutOfDomain("quadratic_covariations: t outside [0,1]");
    if (ts[i] >= 1.0)
      throw MartingaleAtOne("quadratic_covariations: jump sums require t < 1");
    if (i > 0 && ts[i] < ts[i - 1])
      throw InvalidSpec("quadratic_covariations: times must be ascending");
  }
  const double dbar = 2.0 * static_cast<double>(g.edge_count()) / n;

  std::vector<QvValues> out(ts.size());
  QvValues acc;
  std::vector<std::int32_t> rank(n, 0);
  std::size_t next_t = 0;
  for (int k = 1; k <= n; ++k) {
    const double t = assignment.tau[k - 1];
    while (next_t < ts.size() && ts[next_t] < t) out[next_t++] = acc;
    if (next_t == ts.size()) break;

    const int v = assignment.order[k - 1];
    long long visible = 0;
    for (std::int32_t j : g.neighbors(v))
      if (rank[j] != 0) ++visible;
    rank[v] = k;

    const double w = 1.0 / (1.0 - t);
    const double dv = static_cast<double>(g.degree(v));
    // Jumps of the compensated martingales at the reveal of v. The inner sum
    // for the edge term uses the visibility state just before this event.
    const double edge_jump = w * w * (static_cast<double>(visible) - dv * t);
    const double deg_jump = dv * w;
    const double vtx_jump = w;
    const double dev_jump = (dv - dbar) * w;
    acc.edge_edge += edge_jump * edge_jump;
    acc.deg_deg += deg_jump * deg_jump;
    acc.vtx_vtx += vtx_jump * vtx_jump;
    acc.edge_deg += edge_jump * deg_jump;
    acc.edge_vtx += edge_jump * vtx_jump;
    acc.deg_vtx += deg_jump * vtx_jump;
    acc.dev_dev += dev_jump * dev_jump;
    acc.edge_dev += edge_jump * dev_jump;
    acc.dev_vtx += dev_jump * vtx_jump;
  }
  while (next_t < ts.size()) out[next_t++] = acc;
  return out;
}

QvValues quadratic_covariations(const Graph& g, const TimeAssignment& assignment,
                                double t) {
  return quadratic_covariations(g, assignment, std::span<const double>(&t, 1)).front();
}

double quadratic_covariation(const Graph& g, const TimeAssignment& assignment,
                             FluctPair pair, double t) {
  return quadratic_covariations(g, assignment, t).get(pair);
}

double expected_qv(const DegreeStats& stats, int n, FluctPair pair, double t) {
  if (t < 0.0 || t > 1.0) throw OutOfDomain("expected_qv: t outside [0,1]");
  if (t >= 1.0) throw MartingaleAtOne("expected_qv: defined for t < 1 only");
  const double u = 1.0 - t;
  const double ratio = t / u;
  const double edges = static_cast<double>(n) * stats.mean_degree / 2.0;
  switch (pair) {
    case FluctPair::EdgeEdge: return edges * t * t / (u * u);
    case FluctPair::DegDeg: return static_cast<double>(stats.square_sum) * ratio;
    case FluctPair::VtxVtx: return static_cast<double>(n) * ratio;
    case FluctPair::DegVtx: return 2.0 * edges * ratio;
    case FluctPair::DevDev: return stats.centered_square_sum * ratio;
    case FluctPair::EdgeDeg:
    case FluctPair::EdgeVtx:
    case FluctPair::EdgeDev:
    case FluctPair::DevVtx:
      return 0.0;
  }
  throw Error("expected_qv: unknown pair");
}

double expected_qv(const Graph& g, FluctPair pair, double t) {
  return expected_qv(degree_stats(g), g.vertex_count(), pair, t);
}

TriangleDecomposition triangle_decomposition(const Graph& g,
                                             const TimeAssignment& assignment,
                                             const TriangleCensus& census, double t) {
  const int n = g.vertex_count();
  if (static_cast<int>(assignment.times.size()) != n)
    throw DimensionMismatch("triangle_decomposition: assignment does not match the graph");
  if (t < 0.0 || t > 1.0) throw OutOfDomain("triangle_decomposition: t outside [0,1]");
  if (static_cast<int>(census.per_vertex.size()) != n ||
      census.per_edge.size() != g.edges().size())
    throw DimensionMismatch("triangle_decomposition: census does not match the graph");

  std::vector<double> centered(n);
  for (int v = 0; v < n; ++v)
    centered[v] = (assignment.times[v] <= t ? 1.0 : 0.0) - t;

  TriangleDecomposition d;
  // Ordered adjacent pairs weighted by common-neighbour counts.
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto& [u, v] = g.edges()[e];
    d.pairs += 2.0 * static_cast<double>(census.per_edge[e]) * centered[u] * centered[v];
  }
  // Ordered triangle triples, enumerated once per unordered triangle.
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto& [u, v] = g.edges()[e];
    const auto a = g.neighbors(u);
    const auto b = g.neighbors(v);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) ++i;
      else if (a[i] > b[j]) ++j;
      else {
        const int w = a[i];
        if (w > v) {
          d.leading += 6.0 * centered[u] * centered[v] * centered[w];
          if (assignment.times[u] <= t && assignment.times[v] <= t &&
              assignment.times[w] <= t)
            ++d.visible;
        }
        ++i;
        ++j;
      }
    }
  }
  for (int v = 0; v < n; ++v)
    d.vertices += 2.0 * static_cast<double>(census.per_vertex[v]) * centered[v];

  d.residual = 6.0 * static_cast<double>(d.visible) -
               (d.leading + 3.0 * t * d.pairs + 3.0 * t * t * d.vertices +
                6.0 * t * t * t * static_cast<double>(census.triangle_count));
  return d;
}

double triangle_leading_qv(const Graph& g, const TimeAssignment& assignment, double t) {
  const int n = g.vertex_count();
  if (static_cast<int>(assignment.times.size()) != n)
    throw DimensionMismatch("triangle_leading_qv: assignment does not match the graph");
  if (t < 0.0 || t > 1.0) throw OutOfDomain("triangle_leading_qv: t outside [0,1]");
  if (t >= 1.0) throw MartingaleAtOne("triangle_leading_qv: jump sums require t < 1");

  double acc = 0;
  std::vector<std::int32_t> rank(n, 0);
  std::vector<std::int32_t> nbrs;
  for (int k = 1; k <= n; ++k) {
    const double tv = assignment.tau[k - 1];
    if (tv > t) break;
    const int v = assignment.order[k - 1];
    const double w = 1.0 / (1.0 - tv);
    // Ordered pairs (j, k) of neighbours of v that close a triangle; the
    // compensated indicators use the state just before this event.
    nbrs.assign(g.neighbors(v).begin(), g.neighbors(v).end());
    double inner = 0;
    for (std::size_t a = 0; a < nbrs.size(); ++a) {
      for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
        if (!g.has_edge(nbrs[a], nbrs[b])) continue;
        const double ca = ((rank[nbrs[a]] != 0 ? 1.0 : 0.0) - tv) * w;
        const double cb = ((rank[nbrs[b]] != 0 ? 1.0 : 0.0) - tv) * w;
        inner += 2.0 * ca * cb;
      }
    }
    rank[v] = k;
    const double jump = 3.0 * w * inner;
    acc += jump * jump;
  }
  return acc;
}

double expected_triangle_leading_qv(const TriangleCensus& census, double t) {
  if (t < 0.0 || t > 1.0) throw OutOfDomain("expected_triangle_leading_qv: t outside [0,1]");
  if (t >= 1.0) throw MartingaleAtOne("expected_triangle_leading_qv: defined for t < 1");
  const double u = 1.0 - t;
  return 36.0 * static_cast<double>(census.triangle_count) * t * t * t / (u * u * u);
}

}  // namespace uncover
