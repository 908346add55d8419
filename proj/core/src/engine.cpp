#include "uncover/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "uncover/errors.hpp"

namespace uncover {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Returns true if the two roots were distinct.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> size_;
};

}  // namespace

TimeAssignment sample_uncover_times(int n, RngStream& rng) {
  if (n < 1) throw InvalidSpec("sample_uncover_times: n must be at least 1");
  std::vector<double> times(n);
  for (auto& t : times) t = rng.next_open_unit();
  return assignment_from_times(std::move(times));
}

TimeAssignment assignment_from_times(std::vector<double> times) {
  const int n = static_cast<int>(times.size());
  if (n < 1) throw InvalidSpec("assignment_from_times: need at least one time");
  for (double t : times)
    if (!(t > 0.0) || !(t < 1.0))
      throw OutOfDomain("assignment_from_times: times must lie strictly in (0,1)");
  TimeAssignment a;
  a.times = std::move(times);
  a.order.resize(n);
  std::iota(a.order.begin(), a.order.end(), 0);
  std::sort(a.order.begin(), a.order.end(), [&](std::int32_t x, std::int32_t y) {
    if (a.times[x] != a.times[y]) return a.times[x] < a.times[y];
    return x < y;
  });
  a.tau.resize(n);
  for (int k = 0; k < n; ++k) a.tau[k] = a.times[a.order[k]];
  return a;
}

Realization run(const Graph& g, const TimeAssignment& assignment, bool track_triangles) {
  const int n = g.vertex_count();
  if (static_cast<int>(assignment.times.size()) != n ||
      static_cast<int>(assignment.order.size()) != n)
    throw DimensionMismatch("run: assignment does not match the graph order");

  // rank[v] = k means v is the k-th vertex revealed (1-based); 0 = hidden.
  std::vector<std::int32_t> rank(n, 0);
  UnionFind uf(n);

  Realization r;
  r.assignment = assignment;
  r.edges_at.assign(n + 1, 0);
  r.components_at.assign(n + 1, 0);
  if (track_triangles) r.triangles_at.assign(n + 1, 0);

  std::vector<double> edge_vals(n), vertex_vals(n), comp_vals(n);
  std::vector<double> tri_vals;
  if (track_triangles) tri_vals.resize(n);

  long long edges = 0, components = 0, triangles = 0;
  std::vector<std::int32_t> visible_nbrs;
  for (int k = 1; k <= n; ++k) {
    const int v = assignment.order[k - 1];
    visible_nbrs.clear();
    for (std::int32_t j : g.neighbors(v))
      if (rank[j] != 0) visible_nbrs.push_back(j);
    rank[v] = k;

    edges += static_cast<long long>(visible_nbrs.size());
    ++components;
    for (std::int32_t j : visible_nbrs)
      if (uf.unite(v, j)) --components;
    if (track_triangles) {
      for (std::size_t a = 0; a < visible_nbrs.size(); ++a)
        for (std::size_t b = a + 1; b < visible_nbrs.size(); ++b)
          if (g.has_edge(visible_nbrs[a], visible_nbrs[b])) ++triangles;
    }

    r.edges_at[k] = edges;
    r.components_at[k] = components;
    edge_vals[k - 1] = static_cast<double>(edges);
    vertex_vals[k - 1] = static_cast<double>(k);
    comp_vals[k - 1] = static_cast<double>(components);
    if (track_triangles) {
      r.triangles_at[k] = triangles;
      tri_vals[k - 1] = static_cast<double>(triangles);
    }
  }

  r.edges = StepPath(0.0, assignment.tau, std::move(edge_vals));
  r.vertices = StepPath(0.0, assignment.tau, std::move(vertex_vals));
  r.components = StepPath(0.0, assignment.tau, std::move(comp_vals));
  if (track_triangles)
    r.triangles = StepPath(0.0, assignment.tau, std::move(tri_vals));
  return r;
}

void write_realization_csv(const Realization& r, std::ostream& out) {
  out << "event_time,edges,vertices,components,triangles\n";
  char buf[64];
  const std::size_t n = r.assignment.tau.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", r.assignment.tau[k]);
    out << buf << ',' << r.edges_at[k + 1] << ',' << k + 1 << ','
        << r.components_at[k + 1] << ',';
    if (r.triangles) out << r.triangles_at[k + 1];
    out << '\n';
  }
}

}  // namespace uncover
