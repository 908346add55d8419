#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uncover/covariance.hpp"
#include "uncover/degree_stats.hpp"
#include "uncover/generators.hpp"
#include "uncover/graph.hpp"

namespace uncover {

// Which normalized process a run estimates. Centerings use the realized
// per-replicate graph quantities (|E|, triangle count), matching the fact
// that the limits are stated with random centerings for random graphs.
//
//   EdgesDiscrete        (edges_at[floor(n t)] - t^2 |E|) / scale
//   EdgesContinuous      (edges(t) - t^2 |E|) / continuous scale
//   ComponentsDiscrete   (components_at[floor(n t)] - t(1-t) n) / sqrt(n)
//   ComponentsContinuous (components(t) - t(1-t) n) / sqrt(n)
//   TrianglesDiscrete    (triangles_at[floor(n t)] - t^3 T(1)) / sqrt(n)
//   BipartiteDiscrete    (edges_at[floor(n t)] - floor(n t)^2 / 4) / n
//
// The scale is sqrt(n) in the sparse regime, sqrt(n d) (discrete clock) or
// sqrt(n) d (continuous clock) in the regular regime, and the explicit
// beta_n in the general regime; `dense_continuous` switches the continuous
// clock to sqrt(n) * mean_degree for runs whose vertex-count fluctuations
// dominate.
enum class ProcessKind {
  EdgesDiscrete,
  EdgesContinuous,
  ComponentsDiscrete,
  ComponentsContinuous,
  TrianglesDiscrete,
  BipartiteDiscrete,
};

std::string to_string(ProcessKind kind);
ProcessKind process_kind_from_string(const std::string& name);

struct ExperimentSpec {
  ModelSpec model;
  int replicates = 0;          // >= 100
  std::vector<double> grid;    // strictly increasing, inside (0,1)
  ProcessKind process = ProcessKind::EdgesDiscrete;
  Regime regime = Regime::Sparse;
  std::optional<double> scale;   // beta_n, required for the general regime
  bool dense_continuous = false;
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = machine parallelism; results do not depend on it
};

struct EnsembleStats {
  std::vector<double> grid;
  std::vector<double> mean;
  std::vector<double> skewness;          // standardized third moment
  std::vector<double> kurtosis;          // standardized fourth moment (3 = Gaussian)
  std::vector<double> frac_nonpositive;  // fraction of replicates <= 0
  std::vector<double> cov;               // row-major G x G, sample covariance
  std::vector<double> se_cov;            // jackknife standard errors (50 blocks)
  int replicates = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::string process;
  std::string normalization;
  bool gaussian_screen = false;
};

// Replicate r draws from substream (seed, r+1): fresh graph when the model
// is random, fresh uncovering times always. Accumulation is a deterministic
// post-pass over the stored replicate rows, so the output is bit-identical
// for any worker count.
EnsembleStats run_ensemble(const ExperimentSpec& spec);

// Loose skew/kurtosis screen: catches grossly non-Gaussian marginals (the
// complete-bipartite square-of-bridge limit fails it decisively).
bool gaussian_screen_pass(const EnsembleStats& stats, double skew_tol = 0.15,
                          double excess_kurtosis_tol = 0.3);

struct CompareOptions {
  double abs_tol = 0.02;
  double z_tol = 5.0;
  double rel_tol = 0.0;  // when > 0, cell tolerance rel_tol*sqrt(s_ii s_jj)
};

struct ComparisonReport {
  bool pass = false;
  bool cov_pass = false;
  bool mean_pass = false;
  double max_abs_dev = 0;        // max |empirical - model| over grid pairs
  double max_dev_se = 0;         // same deviation in jackknife SE units
  double worst_s = 0, worst_t = 0;
  double max_mean_drift_se = 0;  // max |mean| / sqrt(sigma(t,t)/R)
  double abs_tol = 0, z_tol = 0, rel_tol = 0;
};

// Pass iff every covariance cell is within max(abs_tol, z_tol * se_cov)
// (or max(rel_tol * sqrt(diag_i diag_j), z_tol * se_cov) when rel_tol > 0)
// of the model, and every |mean| <= z_tol * sqrt(sigma(t,t)/R).
ComparisonReport compare(const EnsembleStats& stats, const CovarianceModel& model,
                         CompareOptions options = {});
ComparisonReport compare(const EnsembleStats& stats, std::span<const double> grid,
                         std::span<const double> model_cov, CompareOptions options = {});

// Exact moments of the discrete-clock edge and component counts after k
// reveals, by enumerating all n! reveal orders; n <= 8.
struct OracleMoments {
  double edge_mean = 0, edge_variance = 0;
  double component_mean = 0, component_variance = 0;
};
OracleMoments brute_force_oracle(const Graph& g, int k);
struct OracleTable {
  std::vector<double> edge_mean, edge_variance;
  std::vector<double> component_mean, component_variance;  // index k = 0..n
};
OracleTable brute_force_oracle_all(const Graph& g);

// JSON with alphabetically sorted keys and floats at 17 significant digits.
std::string to_json(const EnsembleStats& stats);
EnsembleStats ensemble_stats_from_json(const std::string& text);
std::string to_json(const ComparisonReport& report);

}  // namespace uncover
