#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "uncover/graph.hpp"
#include "uncover/rng.hpp"
#include "uncover/step_path.hpp"

namespace uncover {

// Uncovering times for the continuous clock and the reveal order they induce.
struct TimeAssignment {
  std::vector<double> times;        // per-vertex time in (0,1)
  std::vector<std::int32_t> order;  // vertices sorted by time (ties by index)
  std::vector<double> tau;          // sorted times; tau[k-1] = k-th reveal
};

// i.i.d. uniform times. Ties are a probability-zero event at 53-bit
// resolution and are broken by vertex index rather than aborting.
TimeAssignment sample_uncover_times(int n, RngStream& rng);

// Builds the order/tau view for explicit times (hand traces, tests).
TimeAssignment assignment_from_times(std::vector<double> times);

// One realization of the uncovering process in both clocks.
//
// The discrete arrays are filled in the same sweep that emits the step
// paths, so edges_at[k] == edges.eval(tau[k-1]) is an identity of the
// construction, not an approximation.
struct Realization {
  StepPath edges;       // visible-edge count
  StepPath vertices;    // visible-vertex count
  StepPath components;  // visible components (union-find; exact for any graph)
  std::optional<StepPath> triangles;
  TimeAssignment assignment;
  std::vector<long long> edges_at;       // index k = 0..n
  std::vector<long long> components_at;  // index k = 0..n
  std::vector<long long> triangles_at;   // empty unless tracked
};

// Processes vertices in time order. On uncovering v the edge count grows by
// the number of visible neighbours, the component count by one minus the
// number of distinct visible components adjacent to v, and (if tracked) the
// triangle count by the number of visible triangles closed at v, at
// O(d_v^2 log d) per vertex.
Realization run(const Graph& g, const TimeAssignment& assignment,
                bool track_triangles = false);

// CSV rows (event_time, edges, vertices, components, triangles); the
// triangle column is left empty when untracked.
void write_realization_csv(const Realization& r, std::ostream& out);

}  // namespace uncover
