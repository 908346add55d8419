#pragma once

#include <span>
#include <vector>

#include "uncover/census.hpp"
#include "uncover/degree_stats.hpp"
#include "uncover/engine.hpp"
#include "uncover/graph.hpp"

namespace uncover {

// The centered components of the visible-edge count and their compensated
// martingale versions.
//
// Writing I_v(t) for the visibility indicator of v and c_v(t) = I_v(t) - t,
// the plain processes are
//   edge_fluct(t)   = sum over edges uv of c_u(t) c_v(t)
//   degree_fluct(t) = sum over v of d_v c_v(t)
//   vertex_fluct(t) = sum over v of c_v(t) = N(t) - n t
//   degdev_fluct(t) = sum over v of (d_v - mean_degree) c_v(t)
// and they satisfy, exactly in t,
//   edges(t) = edge_fluct(t) + t degree_fluct(t) + t^2 |E|.
// The compensated versions divide by (1-t)^2 (edge) or (1-t) (the others),
// which makes them martingales on [0,1); they blow up at t = 1, so
// evaluating them there raises MartingaleAtOne instead of extrapolating.
//
// Between reveal times the plain processes are polynomials in t (degree 2
// for the edge term, 1 for the rest), so evaluation at arbitrary t is exact:
// the class stores the step data and the incrementally accumulated edge term
// at each event and continues the local polynomial piece.
class MartingalePaths {
 public:
  MartingalePaths(const Graph& g, const TimeAssignment& assignment);

  double edge_fluct(double t) const;
  double degree_fluct(double t) const;
  double vertex_fluct(double t) const;
  double degdev_fluct(double t) const;

  double edge_mart(double t) const;    // (1-t)^{-2} edge_fluct(t), t < 1
  double degree_mart(double t) const;  // (1-t)^{-1} degree_fluct(t), t < 1
  double vertex_mart(double t) const;
  double degdev_mart(double t) const;

  double visible_edges(double t) const;  // the step path value L(t)

  int vertex_count() const { return n_; }
  long long edge_count() const { return edge_count_; }
  double mean_degree() const { return mean_degree_; }
  std::size_t events() const { return tau_.size(); }
  double event_time(std::size_t k) const { return tau_[k]; }

 private:
  // Index of the last event with time <= t, 0 if none.
  std::size_t locate(double t) const;
  static void check_domain(double t);
  static void check_mart_domain(double t);

  int n_ = 0;
  long long edge_count_ = 0;
  double mean_degree_ = 0;
  std::vector<double> tau_;
  std::vector<long long> visible_edges_;      // per event
  std::vector<long long> visible_degree_;     // sum of d_v over visible v
  std::vector<double> edge_fluct_at_event_;   // accumulated drift + jumps
};

// Residuals of the exact decompositions of the visible-edge count:
//   edge_form   = L(t) - (edge_fluct + t degree_fluct + t^2 |E|)
//   degree_form = L(t) - (edge_fluct + t degdev_fluct
//                         + t mean_degree vertex_fluct + t^2 n mean_degree/2)
// Both vanish identically; the computed values expose only accumulated
// floating error, bounded by 1e-9 (1 + |E|) under the module contract.
struct DecompositionResidual {
  double edge_form = 0;
  double degree_form = 0;
};
DecompositionResidual decomposition_residual(const Graph& g,
                                             const TimeAssignment& assignment,
                                             double t);
DecompositionResidual decomposition_residual(const MartingalePaths& paths, double t);

// Pairs of compensated martingales for the jump-sum quadratic covariations.
enum class FluctPair {
  EdgeEdge,
  DegDeg,
  VtxVtx,
  EdgeDeg,
  EdgeVtx,
  DegVtx,
  DevDev,
  EdgeDev,
  DevVtx,
};

struct QvValues {
  double edge_edge = 0, deg_deg = 0, vtx_vtx = 0;
  double edge_deg = 0, edge_vtx = 0, deg_vtx = 0;
  double dev_dev = 0, edge_dev = 0, dev_vtx = 0;
  double get(FluctPair pair) const;
};

// Exact jump sums up to time t < 1. The jump of the compensated edge
// martingale at the reveal time T of v is
//   (1-T)^{-2} (visible neighbours of v just before T  -  d_v T),
// the degree/vertex/deviation martingales jump by d_v/(1-T), 1/(1-T),
// (d_v - mean_degree)/(1-T).
QvValues quadratic_covariations(const Graph& g, const TimeAssignment& assignment,
                                double t);
// One sweep, snapshotting the sums at each requested time (ascending).
std::vector<QvValues> quadratic_covariations(const Graph& g,
                                             const TimeAssignment& assignment,
                                             std::span<const double> ts);
double quadratic_covariation(const Graph& g, const TimeAssignment& assignment,
                             FluctPair pair, double t);

// Closed-form expectations of the jump sums over the uniform times:
//   edge/edge: |E| t^2/(1-t)^2        degree/degree: (sum d^2) t/(1-t)
//   vertex/vertex: n t/(1-t)          degree/vertex: 2|E| t/(1-t)
//   deviation/deviation: sum (d-mean)^2 t/(1-t)
// and zero for every pair involving the edge martingale or
// deviation/vertex.
double expected_qv(const DegreeStats& stats, int n, FluctPair pair, double t);
double expected_qv(const Graph& g, FluctPair pair, double t);

// Triangle-count analogue of the edge decomposition. With
// c_v(t) = I_v(t) - t and T(t) the number of visible triangles,
//   6 T(t) = leading(t) + 3t pairs(t) + 3t^2 vertices(t) + 6t^3 T(1)
// holds exactly, where leading sums c_i c_j c_k over ordered triangle
// triples, pairs sums (common neighbours) c_i c_j over ordered adjacent
// pairs, and vertices sums 2 (triangles at v) c_v.
struct TriangleDecomposition {
  double leading = 0;
  double pairs = 0;
  double vertices = 0;
  double residual = 0;       // 6T(t) - (leading + 3t pairs + 3t^2 vertices + 6t^3 T(1))
  long long visible = 0;     // T(t)
};
TriangleDecomposition triangle_decomposition(const Graph& g,
                                             const TimeAssignment& assignment,
                                             const TriangleCensus& census, double t);

// Jump-sum quadratic variation of the compensated leading triangle term and
// its closed-form expectation 36 T(1) t^3/(1-t)^3.
double triangle_leading_qv(const Graph& g, const TimeAssignment& assignment, double t);
double expected_triangle_leading_qv(const TriangleCensus& census, double t);

}  // namespace uncover
