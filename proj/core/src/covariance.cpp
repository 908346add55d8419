#include "uncover/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "uncover/errors.hpp"

namespace uncover {

namespace {

void check_unit(double s, double t) {
  if (s < 0.0 || s > 1.0 || t < 0.0 || t > 1.0)
    throw OutOfDomain("covariance: arguments outside [0,1]");
}

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw InvalidSpec("grid must be nonempty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || grid[i] > 1.0) throw OutOfDomain("grid point outside [0,1]");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw InvalidSpec("grid must be strictly increasing");
  }
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::SparseDiscrete: return "sparse-discrete";
    case ModelKind::SparseContinuous: return "sparse-continuous";
    case ModelKind::RegularDiscrete: return "regular-discrete";
    case ModelKind::RegularContinuous: return "regular-continuous";
    case ModelKind::GeneralDiscrete: return "general-discrete";
    case ModelKind::GeneralContinuous: return "general-continuous";
    case ModelKind::GeneralContinuousDense: return "general-continuous-dense";
    case ModelKind::ComponentsDiscrete: return "components-discrete";
    case ModelKind::ComponentsContinuous: return "components-continuous";
    case ModelKind::GnmBridge: return "gnm-bridge";
    case ModelKind::BipartiteSquare: return "bipartite-square";
  }
  throw Error("to_string: unknown model kind");
}

ModelKind model_kind_from_string(const std::string& name) {
  for (ModelKind k :
       {ModelKind::SparseDiscrete, ModelKind::SparseContinuous, ModelKind::RegularDiscrete,
        ModelKind::RegularContinuous, ModelKind::GeneralDiscrete, ModelKind::GeneralContinuous,
        ModelKind::GeneralContinuousDense, ModelKind::ComponentsDiscrete,
        ModelKind::ComponentsContinuous, ModelKind::GnmBridge, ModelKind::BipartiteSquare}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidSpec("unknown covariance model '" + name + "'");
}

CovarianceModel CovarianceModel::sparse_discrete(double mean_degree, double degree_variance) {
  CovarianceModel m(ModelKind::SparseDiscrete,
                    "(edges_at[floor(n t)] - t^2 |E|) / sqrt(n)");
  m.mean_degree_ = mean_degree;
  m.degree_variance_ = degree_variance;
  return m;
}

CovarianceModel CovarianceModel::sparse_continuous(double mean_degree, double second_moment) {
  CovarianceModel m(ModelKind::SparseContinuous, "(edges(t) - t^2 |E|) / sqrt(n)");
  m.mean_degree_ = mean_degree;
  m.second_moment_ = second_moment;
  return m;
}

CovarianceModel CovarianceModel::regular_discrete() {
  return CovarianceModel(ModelKind::RegularDiscrete,
                         "(edges_at[floor(n t)] - t^2 |E|) / sqrt(n d)");
}

CovarianceModel CovarianceModel::regular_continuous(double limit_degree) {
  if (!(limit_degree > 0))
    throw InvalidSpec("regular_continuous: limit degree must be positive");
  CovarianceModel m(ModelKind::RegularContinuous, "(edges(t) - t^2 |E|) / (sqrt(n) d)");
  m.limit_degree_ = limit_degree;
  return m;
}

CovarianceModel CovarianceModel::general_discrete(double edge_ratio, double variance_ratio) {
  CovarianceModel m(ModelKind::GeneralDiscrete,
                    "(edges_at[floor(n t)] - t^2 |E|) / beta_n");
  m.edge_ratio_ = edge_ratio;
  m.variance_ratio_ = variance_ratio;
  return m;
}

CovarianceModel CovarianceModel::general_continuous(double edge_ratio, double variance_ratio,
                                                    double density_ratio) {
  CovarianceModel m(ModelKind::GeneralContinuous, "(edges(t) - t^2 |E|) / beta_n");
  m.edge_ratio_ = edge_ratio;
  m.variance_ratio_ = variance_ratio;
  m.density_ratio_ = density_ratio;
  return m;
}

CovarianceModel CovarianceModel::general_continuous_dense() {
  return CovarianceModel(ModelKind::GeneralContinuousDense,
                         "(edges(t) - t^2 |E|) / (sqrt(n) mean_degree)");
}

CovarianceModel CovarianceModel::components_discrete(double degree_variance) {
  CovarianceModel m(ModelKind::ComponentsDiscrete,
                    "(components_at[floor(n t)] - t(1-t) n) / sqrt(n)");
  m.degree_variance_ = degree_variance;
  return m;
}

CovarianceModel CovarianceModel::components_continuous(double degree_variance) {
  CovarianceModel m(ModelKind::ComponentsContinuous,
                    "(components(t) - t(1-t) n) / sqrt(n)");
  m.degree_variance_ = degree_variance;
  return m;
}

CovarianceModel CovarianceModel::gnm_bridge() {
  return CovarianceModel(ModelKind::GnmBridge,
                         "(edges_at[floor(n t)] - t^2 m) / sqrt(m)");
}

CovarianceModel CovarianceModel::bipartite_square() {
  return CovarianceModel(ModelKind::BipartiteSquare,
                         "(edges_at[floor(n t)] - floor(n t)^2 / 4) / n");
}

double CovarianceModel::covariance(double s, double t) const {
  check_unit(s, t);
  if (s > t) std::swap(s, t);
  const double u = 1.0 - t;
  const double hump = s * s * t * u;      // s^2 t(1-t)
  const double ridge = s * s * u * u;     // s^2 (1-t)^2
  double value = 0;
  switch (kind_) {
    case ModelKind::SparseDiscrete:
      value = 0.5 * mean_degree_ * ridge + degree_variance_ * hump;
      break;
    case ModelKind::SparseContinuous:
      value = 0.5 * mean_degree_ * ridge + second_moment_ * hump;
      break;
    case ModelKind::RegularDiscrete:
      value = 0.5 * ridge;
      break;
    case ModelKind::RegularContinuous:
      value = 0.5 / limit_degree_ * ridge + hump;
      break;
    case ModelKind::GeneralDiscrete:
      value = 0.5 * edge_ratio_ * ridge + variance_ratio_ * hump;
      break;
    case ModelKind::GeneralContinuous:
      value = 0.5 * edge_ratio_ * ridge +
              (variance_ratio_ + density_ratio_ * density_ratio_) * hump;
      break;
    case ModelKind::GeneralContinuousDense:
      value = hump;
      break;
    case ModelKind::ComponentsDiscrete:
      value = ridge + degree_variance_ * hump;
      break;
    case ModelKind::ComponentsContinuous:
      value = ridge + degree_variance_ * hump +
              s * (1.0 - 2.0 * s) * u * (1.0 - 2.0 * t);
      break;
    case ModelKind::GnmBridge:
      value = s * s * (1.0 - t * t);
      break;
    case ModelKind::BipartiteSquare:
      value = 0.125 * ridge;
      break;
  }
  for (const auto& tc : transforms_)
    value += tc.sign * tc.c * tc.c * s * u * tc.fprime(s) * tc.fprime(t);
  return value;
}

double CovarianceModel::mean(double t) const {
  check_unit(t, t);
  if (kind_ == ModelKind::BipartiteSquare) return -0.25 * t * (1.0 - t);
  return 0.0;
}

std::vector<double> CovarianceModel::covariance_matrix(std::span<const double> grid) const {
  check_grid(grid);
  const std::size_t m = grid.size();
  std::vector<double> out(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      out[i * m + j] = out[j * m + i] = covariance(grid[i], grid[j]);
  return out;
}

CovarianceModel derandomize(const CovarianceModel& model, double c,
                            std::function<double(double)> fprime) {
  CovarianceModel out = model;
  out.transforms_.push_back({c, std::move(fprime), -1.0});
  return out;
}

CovarianceModel randomize(const CovarianceModel& model, double c,
                          std::function<double(double)> fprime) {
  CovarianceModel out = model;
  out.transforms_.push_back({c, std::move(fprime), +1.0});
  return out;
}

namespace {

// Cyclic Jacobi on a symmetric matrix; adequate for the small grids used
// here (a few dozen points at most).
void jacobi_eigen(std::vector<double>& a, int m, std::vector<double>& values,
                  std::vector<double>* vectors) {
  if (vectors) {
    vectors->assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) (*vectors)[i * m + i] = 1.0;
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) off += a[p * m + q] * a[p * m + q];
    if (off < 1e-30) break;
    for (int p = 0; p < m; ++p) {
      for (int q = p + 1; q < m; ++q) {
        const double apq = a[p * m + q];
        if (apq == 0.0) continue;
        const double app = a[p * m + p], aqq = a[q * m + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double sign = theta >= 0 ? 1.0 : -1.0;
        const double tan =
            sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cos = 1.0 / std::sqrt(tan * tan + 1.0);
        const double sin = tan * cos;
        for (int k = 0; k < m; ++k) {
          const double akp = a[k * m + p], akq = a[k * m + q];
          a[k * m + p] = cos * akp - sin * akq;
          a[k * m + q] = sin * akp + cos * akq;
        }
        for (int k = 0; k < m; ++k) {
          const double apk = a[p * m + k], aqk = a[q * m + k];
          a[p * m + k] = cos * apk - sin * aqk;
          a[q * m + k] = sin * apk + cos * aqk;
        }
        if (vectors) {
          for (int k = 0; k < m; ++k) {
            const double vkp = (*vectors)[k * m + p], vkq = (*vectors)[k * m + q];
            (*vectors)[k * m + p] = cos * vkp - sin * vkq;
            (*vectors)[k * m + q] = sin * vkp + cos * vkq;
          }
        }
      }
    }
  }
  values.resize(m);
  for (int i = 0; i < m; ++i) values[i] = a[i * m + i];
}

// Square-root factor of a covariance matrix with rounding-noise clipping.
std::vector<double> psd_factor(std::vector<double> matrix, int m) {
  double trace = 0;
  for (int i = 0; i < m; ++i) trace += matrix[i * m + i];
  std::vector<double> values, vectors;
  jacobi_eigen(matrix, m, values, &vectors);
  const double floor_eig = -1e-10 * std::max(trace, 0.0);
  std::vector<double> factor(static_cast<std::size_t>(m) * m);
  for (int j = 0; j < m; ++j) {
    if (values[j] < floor_eig)
      throw NotPsd("covariance matrix has eigenvalue " + fmt(values[j]) +
                   " below -1e-10 * trace");
    const double root = values[j] > 0 ? std::sqrt(values[j]) : 0.0;
    for (int i = 0; i < m; ++i) factor[i * m + j] = vectors[i * m + j] * root;
  }
  return factor;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(std::span<const double> matrix, int m) {
  if (static_cast<int>(matrix.size()) != m * m)
    throw DimensionMismatch("symmetric_eigenvalues: matrix size mismatch");
  std::vector<double> a(matrix.begin(), matrix.end());
  std::vector<double> values;
  jacobi_eigen(a, m, values, nullptr);
  std::sort(values.begin(), values.end());
  return values;
}

GaussianSampler::GaussianSampler(const CovarianceModel& model, std::span<const double> grid)
    : grid_(grid.begin(), grid.end()) {
  check_grid(grid);
  const int m = static_cast<int>(grid.size());
  std::vector<double> matrix;
  if (model.kind() == ModelKind::BipartiteSquare) {
    // Draw the underlying Brownian bridge and square it.
    square_transform_ = true;
    matrix.resize(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double s = std::min(grid[i], grid[j]);
        const double t = std::max(grid[i], grid[j]);
        matrix[i * m + j] = s * (1.0 - t);
      }
  } else {
    matrix = model.covariance_matrix(grid);
  }
  degenerate_.resize(m);
  for (int i = 0; i < m; ++i) degenerate_[i] = matrix[i * m + i] == 0.0;
  factor_ = psd_factor(std::move(matrix), m);
}

std::vector<double> GaussianSampler::sample(RngStream& rng) const {
  const int m = static_cast<int>(grid_.size());
  std::vector<double> z(m), x(m, 0.0);
  for (auto& v : z) v = rng.next_normal();
  for (int i = 0; i < m; ++i) {
    double acc = 0;
    for (int j = 0; j < m; ++j) acc += factor_[i * m + j] * z[j];
    x[i] = acc;
  }
  for (int i = 0; i < m; ++i)
    if (degenerate_[i]) x[i] = 0.0;
  if (square_transform_)
    for (auto& v : x) v = -0.25 * v * v;
  return x;
}

std::vector<double> gaussian_sample(const CovarianceModel& model,
                                    std::span<const double> grid, RngStream& rng) {
  return GaussianSampler(model, grid).sample(rng);
}

void write_covariance_csv(std::span<const double> grid, std::span<const double> matrix,
                          std::ostream& out) {
  const std::size_t m = grid.size();
  if (matrix.size() != m * m)
    throw DimensionMismatch("write_covariance_csv: matrix size mismatch");
  out << 's';
  for (double t : grid) out << ',' << fmt(t);
  out << '\n';
  for (std::size_t i = 0; i < m; ++i) {
    out << fmt(grid[i]);
    for (std::size_t j = 0; j < m; ++j) out << ',' << fmt(matrix[i * m + j]);
    out << '\n';
  }
}

CovarianceTable read_covariance_csv(std::istream& in) {
  CovarianceTable table;
  std::string line;
  if (!std::getline(in, line)) throw InvalidSpec("covariance csv: empty file");
  {
    std::stringstream header(line);
    std::string cell;
    if (!std::getline(header, cell, ',') || cell != "s")
      throw InvalidSpec("covariance csv: header must start with 's'");
    while (std::getline(header, cell, ',')) table.grid.push_back(std::stod(cell));
  }
  const std::size_t m = table.grid.size();
  if (m == 0) throw InvalidSpec("covariance csv: no grid columns");
  table.matrix.reserve(m * m);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    if (!std::getline(row, cell, ',')) throw InvalidSpec("covariance csv: bad row");
    if (rows >= m) throw InvalidSpec("covariance csv: too many rows");
    if (std::stod(cell) != table.grid[rows])
      throw InvalidSpec("covariance csv: row label differs from header grid");
    std::size_t cols = 0;
    while (std::getline(row, cell, ',')) {
      table.matrix.push_back(std::stod(cell));
      ++cols;
    }
    if (cols != m) throw InvalidSpec("covariance csv: wrong column count");
    ++rows;
  }
  if (rows != m) throw InvalidSpec("covariance csv: wrong row count");
  return table;
}

}  // namespace uncover
