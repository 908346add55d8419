#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "uncover/rng.hpp"

namespace uncover {

// Closed-form limit covariances sigma(s,t) of the normalized visible-edge /
// component processes, one kind per regime and clock. All formulas are
// stated for s <= t and symmetrized internally.
//
//   SparseDiscrete          (d*/2) s^2 (1-t)^2 + g* s^2 t(1-t)
//   SparseContinuous        (d*/2) s^2 (1-t)^2 + x* s^2 t(1-t)
//   RegularDiscrete         (1/2) s^2 (1-t)^2
//   RegularContinuous       (1/(2 d_inf)) s^2 (1-t)^2 + s^2 t(1-t)
//   GeneralDiscrete         (l1/2) s^2 (1-t)^2 + l2 s^2 t(1-t)
//   GeneralContinuous       (l1/2) s^2 (1-t)^2 + (l2 + a^2) s^2 t(1-t)
//   GeneralContinuousDense  s^2 t(1-t)
//   ComponentsDiscrete      s^2 (1-t)^2 + g* s^2 t(1-t)
//   ComponentsContinuous    ... + s(1-2s)(1-t)(1-2t)
//   GnmBridge               s^2 (1-t^2)        (a Brownian bridge at t^2)
//   BipartiteSquare         (1/8) s^2 (1-t)^2, the covariance of -B(t)^2/4,
//                           with the nonzero mean -t(1-t)/4
// where d* = limit mean degree, x* = limit second degree moment,
// g* = x* - d*^2, l1 = n d-bar / beta^2, l2 = sum(d-d-bar)^2/beta^2,
// a = sqrt(n) d-bar / beta, and d_inf is the limiting regular degree.
enum class ModelKind {
  SparseDiscrete,
  SparseContinuous,
  RegularDiscrete,
  RegularContinuous,
  GeneralDiscrete,
  GeneralContinuous,
  GeneralContinuousDense,
  ComponentsDiscrete,
  ComponentsContinuous,
  GnmBridge,
  BipartiteSquare,
};

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

class CovarianceModel {
 public:
  static CovarianceModel sparse_discrete(double mean_degree, double degree_variance);
  static CovarianceModel sparse_continuous(double mean_degree, double second_moment);
  static CovarianceModel regular_discrete();
  static CovarianceModel regular_continuous(double limit_degree);
  static CovarianceModel general_discrete(double edge_ratio, double variance_ratio);
  static CovarianceModel general_continuous(double edge_ratio, double variance_ratio,
                                            double density_ratio);
  static CovarianceModel general_continuous_dense();
  static CovarianceModel components_discrete(double degree_variance);
  static CovarianceModel components_continuous(double degree_variance);
  static CovarianceModel gnm_bridge();
  static CovarianceModel bipartite_square();

  double covariance(double s, double t) const;
  double mean(double t) const;  // zero except for BipartiteSquare
  ModelKind kind() const { return kind_; }

  // How the empirical process this model describes is normalized (centering
  // and scale), so the ensemble layer and docs stay consistent.
  const std::string& normalization() const { return normalization_; }

  // Row-major covariance matrix on a grid.
  std::vector<double> covariance_matrix(std::span<const double> grid) const;

  friend CovarianceModel derandomize(const CovarianceModel& model, double c,
                                     std::function<double(double)> fprime);
  friend CovarianceModel randomize(const CovarianceModel& model, double c,
                                   std::function<double(double)> fprime);

 private:
  CovarianceModel(ModelKind kind, std::string normalization)
      : kind_(kind), normalization_(std::move(normalization)) {}

  struct TimeChange {
    double c = 0;
    std::function<double(double)> fprime;
    double sign = 0;  // -1 removes the clock-randomness term, +1 restores it
  };

  ModelKind kind_;
  std::string normalization_;
  double mean_degree_ = 0, second_moment_ = 0, degree_variance_ = 0;
  double edge_ratio_ = 0, variance_ratio_ = 0, density_ratio_ = 0;
  double limit_degree_ = 0;
  std::vector<TimeChange> transforms_;
};

// Passing between the two clocks: the fixed-order limit differs from the
// random-time limit by a bridge term coming from the fluctuation of the
// visible-vertex count around n t. For a centering b_n f(t) with
// c = lim b_n / (a_n^{-1} sqrt(n)),
//   derandomize: sigma(s,t) -> sigma(s,t) - c^2 s(1-t) f'(s) f'(t)
//   randomize:   the inverse transform (adds the term back).
CovarianceModel derandomize(const CovarianceModel& model, double c,
                            std::function<double(double)> fprime);
CovarianceModel randomize(const CovarianceModel& model, double c,
                          std::function<double(double)> fprime);

// Eigenvalues of a symmetric row-major m x m matrix (cyclic Jacobi),
// ascending.
std::vector<double> symmetric_eigenvalues(std::span<const double> matrix, int m);

// Draws one path of the model on the grid: a centered multivariate Gaussian
// with the model covariance via eigen square root (eigenvalues below
// -1e-10 * trace raise NotPsd, rounding noise above that is clipped to 0).
// BipartiteSquare draws a Brownian bridge B and returns -B^2/4 instead.
std::vector<double> gaussian_sample(const CovarianceModel& model,
                                    std::span<const double> grid, RngStream& rng);

// Same sampler with the factorization done once for repeated draws.
class GaussianSampler {
 public:
  GaussianSampler(const CovarianceModel& model, std::span<const double> grid);
  std::vector<double> sample(RngStream& rng) const;

 private:
  bool square_transform_ = false;
  std::vector<double> grid_;
  std::vector<double> factor_;  // row-major m x m, sample = factor * z
  std::vector<bool> degenerate_;
};

// Covariance CSV: header "s,<t1>,...,<tm>", one row per s value.
void write_covariance_csv(std::span<const double> grid, std::span<const double> matrix,
                          std::ostream& out);
struct CovarianceTable {
  std::vector<double> grid;
  std::vector<double> matrix;  // row-major
};
CovarianceTable read_covariance_csv(std::istream& in);

}  // namespace uncover
