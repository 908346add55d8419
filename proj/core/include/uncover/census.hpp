#pragma once

#include <vector>

#include "uncover/graph.hpp"

namespace uncover {

// Exact triangle counts: the total, per-vertex counts, and per-edge
// common-neighbour counts aligned with the canonical edge order.
struct TriangleCensus {
  long long triangle_count = 0;
  std::vector<long long> per_vertex;  // triangles containing v
  std::vector<long long> per_edge;    // common neighbours of the endpoints
};

// Neighbour-list intersection per edge; O(sum d_i^2) time.
TriangleCensus triangle_census(const Graph& g);

// Small patterns whose homomorphism counts bound the variance of the
// jump-sum quadratic variations. Counts are homomorphisms (walks, repeats
// allowed), not injective copies: FourPath counts 3-step walks, the stars
// have closed forms sum d_i^3 and sum d_i^4.
enum class Pattern { FourCycle, FourPath, ThreeStar, FourStar };

// FourCycle counts closed 4-walks per vertex neighbourhood, costing
// O(sum_j d_j^2); it is guarded to n <= 2000.
long long hom_count(Pattern pattern, const Graph& g);

}  // namespace uncover
