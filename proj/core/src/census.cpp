#include "uncover/census.hpp"

#include <algorithm>

#include "uncover/errors.hpp"

namespace uncover {

TriangleCensus triangle_census(const Graph& g) {
  const int n = g.vertex_count();
  TriangleCensus c;
  c.per_vertex.assign(n, 0);
  c.per_edge.reserve(g.edges().size());
  long long twice_per_vertex_total = 0;
  for (const auto& [u, v] : g.edges()) {
    const auto a = g.neighbors(u);
    const auto b = g.neighbors(v);
    long long common = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) ++i;
      else if (a[i] > b[j]) ++j;
      else { ++common; ++i; ++j; }
    }
    c.per_edge.push_back(common);
    c.per_vertex[u] += common;
    c.per_vertex[v] += common;
    twice_per_vertex_total += 2 * common;
  }
  // Each triangle at v is seen by the two edges of v it contains.
  for (auto& e : c.per_vertex) e /= 2;
  c.triangle_count = twice_per_vertex_total / 6;
  return c;
}

long long hom_count(Pattern pattern, const Graph& g) {
  const int n = g.vertex_count();
  switch (pattern) {
    case Pattern::ThreeStar: {
      long long total = 0;
      for (int v = 0; v < n; ++v) {
        const long long d = g.degree(v);
        total += d * d * d;
      }
      return total;
    }
    case Pattern::FourStar: {
      long long total = 0;
      for (int v = 0; v < n; ++v) {
        const long long d = g.degree(v);
        total += d * d * d * d;
      }
      return total;
    }
    case Pattern::FourPath: {
      // 3-step walks: both orientations of every middle edge.
      long long total = 0;
      for (const auto& [u, v] : g.edges())
        total += 2LL * g.degree(u) * g.degree(v);
      return total;
    }
    case Pattern::FourCycle: {
      if (n > 2000)
        throw TooLarge("hom_count: FourCycle enumeration is limited to n <= 2000");
      // Closed 4-walks: for each start vertex, square the counts of 2-step
      // walk endpoints. Costs O(sum_j d_j^2).
      long long total = 0;
      std::vector<long long> count(n, 0);
      std::vector<int> touched;
      for (int v = 0; v < n; ++v) {
        touched.clear();
        for (int u : g.neighbors(v)) {
          for (int w : g.neighbors(u)) {
            if (count[w] == 0) touched.push_back(w);
            ++count[w];
          }
        }
        for (int w : touched) {
          total += count[w] * count[w];
          count[w] = 0;
        }
      }
      return total;
    }
  }
  throw Error("hom_count: unknown pattern");
}

}  // namespace uncover
