#pragma once

#include <optional>
#include <vector>

#include "uncover/graph.hpp"

namespace uncover {

// Degree moments of a graph. The power sums that drive the variance bounds
// of the jump-sum quadratic variations are kept as exact integers.
struct DegreeStats {
  std::vector<int> degrees;
  double mean_degree = 0;    // (1/n) sum d_i
  double second_moment = 0;  // (1/n) sum d_i^2
  double variance = 0;       // second_moment - mean_degree^2
  int max_degree = 0;
  double centered_square_sum = 0;  // sum (d_i - mean_degree)^2
  double centered_fourth_sum = 0;  // sum (d_i - mean_degree)^4
  long long square_sum = 0;        // sum d_i^2
  long long cube_sum = 0;          // sum d_i^3
  long long fourth_sum = 0;        // sum d_i^4
};

DegreeStats degree_stats(const Graph& g);

enum class Regime { Sparse, Regular, General };

// Finite-n scaling parameters for a limit regime, computed from the actual
// degree sequence; no limits are taken, so plugging these into a covariance
// model keeps finite-size bias out of desk-scale comparisons.
struct LimitParams {
  Regime regime = Regime::Sparse;
  double scale = 0;            // beta_n
  double edge_ratio = 0;       // n * mean_degree / beta_n^2
  double variance_ratio = 0;   // sum (d_i - mean)^2 / beta_n^2
  double density_ratio = 0;    // sqrt(n) * mean_degree / beta_n
  double mean_degree = 0;      // sparse-regime limit of the mean degree
  double second_moment = 0;    // sparse-regime limit of the second moment
  double degree_variance = 0;  // second_moment - mean_degree^2
};

// Sparse fixes beta_n = sqrt(n); Regular requires all degrees equal and uses
// beta_n = sqrt(n d); General requires an explicit positive scale.
LimitParams limit_params(const DegreeStats& stats, int n, Regime regime,
                         std::optional<double> scale = std::nullopt);

}  // namespace uncover
