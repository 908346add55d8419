#include "uncover/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "json.hpp"
#include "uncover/engine.hpp"
#include "uncover/errors.hpp"

namespace uncover {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void append_array(std::string& out, const std::vector<double>& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt(v[i]);
  }
  out += ']';
}

void append_matrix(std::string& out, const std::vector<double>& m, std::size_t g) {
  out += '[';
  for (std::size_t i = 0; i < g; ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < g; ++j) {
      if (j) out += ',';
      out += fmt(m[i * g + j]);
    }
    out += ']';
  }
  out += ']';
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

bool all_degrees_equal(const Graph& g) {
  const int d = g.degree(0);
  for (int v = 1; v < g.vertex_count(); ++v)
    if (g.degree(v) != d) return false;
  return true;
}

struct Normalizer {
  double discrete_scale = 1;
  double continuous_scale = 1;
};

Normalizer make_normalizer(const ExperimentSpec& spec, const Graph& g) {
  Normalizer norm;
  const double n = g.vertex_count();
  const double mean_degree = 2.0 * static_cast<double>(g.edge_count()) / n;
  switch (spec.regime) {
    case Regime::Sparse:
      norm.discrete_scale = std::sqrt(n);
      norm.continuous_scale = std::sqrt(n);
      break;
    case Regime::Regular: {
      if (!all_degrees_equal(g))
        throw NotRegular("run_ensemble: the regular regime needs equal degrees");
      const double d = g.degree(0);
      if (!(d >= 1)) throw NotRegular("run_ensemble: regular degree must be >= 1");
      norm.discrete_scale = std::sqrt(n * d);
      norm.continuous_scale = std::sqrt(n) * d;
      break;
    }
    case Regime::General:
      if (!spec.scale || !(*spec.scale > 0))
        throw BadScale("run_ensemble: the general regime needs a positive scale");
      norm.discrete_scale = *spec.scale;
      norm.continuous_scale =
          spec.dense_continuous ? std::sqrt(n) * mean_degree : *spec.scale;
      break;
  }
  return norm;
}

std::string normalization_text(const ExperimentSpec& spec) {
  switch (spec.process) {
    case ProcessKind::EdgesDiscrete: {
      const char* scale = spec.regime == Regime::Sparse     ? "sqrt(n)"
                          : spec.regime == Regime::Regular  ? "sqrt(n d)"
                                                            : "beta_n";
      return std::string("(edges_at[floor(n t)] - t^2 |E|) / ") + scale;
    }
    case ProcessKind::EdgesContinuous: {
      const char* scale = spec.regime == Regime::Sparse    ? "sqrt(n)"
                          : spec.regime == Regime::Regular ? "(sqrt(n) d)"
                          : spec.dense_continuous          ? "(sqrt(n) mean_degree)"
                                                           : "beta_n";
      return std::string("(edges(t) - t^2 |E|) / ") + scale;
    }
    case ProcessKind::ComponentsDiscrete:
      return "(components_at[floor(n t)] - t(1-t) n) / sqrt(n)";
    case ProcessKind::ComponentsContinuous:
      return "(components(t) - t(1-t) n) / sqrt(n)";
    case ProcessKind::TrianglesDiscrete:
      return "(triangles_at[floor(n t)] - t^3 T(1)) / sqrt(n)";
    case ProcessKind::BipartiteDiscrete:
      return "(edges_at[floor(n t)] - floor(n t)^2 / 4) / n";
  }
  throw Error("normalization_text: unknown process");
}

void validate_spec(const ExperimentSpec& spec) {
  if (spec.replicates < 100)
    throw InvalidSpec("run_ensemble: need at least 100 replicates");
  if (spec.grid.empty()) throw InvalidSpec("run_ensemble: empty grid");
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    if (!(spec.grid[i] > 0.0) || !(spec.grid[i] < 1.0))
      throw InvalidSpec("run_ensemble: grid points must lie strictly in (0,1)");
    if (i > 0 && !(spec.grid[i] > spec.grid[i - 1]))
      throw InvalidSpec("run_ensemble: grid must be strictly increasing");
  }
  if (spec.process == ProcessKind::BipartiteDiscrete &&
      spec.model.kind != GraphModel::CompleteBipartite)
    throw InvalidSpec("run_ensemble: the bipartite process needs the complete-bipartite model");
  if (spec.model.n < 1) throw InvalidSpec("run_ensemble: model n must be >= 1");
}

}  // namespace

std::string to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::EdgesDiscrete: return "edges-discrete";
    case ProcessKind::EdgesContinuous: return "edges-continuous";
    case ProcessKind::ComponentsDiscrete: return "components-discrete";
    case ProcessKind::ComponentsContinuous: return "components-continuous";
    case ProcessKind::TrianglesDiscrete: return "triangles-discrete";
    case ProcessKind::BipartiteDiscrete: return "bipartite-discrete";
  }
  throw Error("to_string: unknown process kind");
}

ProcessKind process_kind_from_string(const std::string& name) {
  for (ProcessKind k : {ProcessKind::EdgesDiscrete, ProcessKind::EdgesContinuous,
                        ProcessKind::ComponentsDiscrete, ProcessKind::ComponentsContinuous,
                        ProcessKind::TrianglesDiscrete, ProcessKind::BipartiteDiscrete}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidSpec("unknown process '" + name + "'");
}

EnsembleStats run_ensemble(const ExperimentSpec& spec) {
  validate_spec(spec);
  const int n = spec.model.n;
  const int R = spec.replicates;
  const std::size_t G = spec.grid.size();
  const bool track_triangles = spec.process == ProcessKind::TrianglesDiscrete;

  std::optional<Graph> shared_graph;
  std::optional<Normalizer> shared_norm;
  if (is_deterministic(spec.model.kind)) {
    RngStream rng(spec.seed, 0);
    shared_graph.emplace(generate(spec.model, rng));
    shared_norm = make_normalizer(spec, *shared_graph);
  }

  std::vector<double> values(static_cast<std::size_t>(R) * G);

  auto evaluate = [&](const Graph& g, const Normalizer& norm, const Realization& real,
                      double* row) {
    const double edge_total = static_cast<double>(g.edge_count());
    for (std::size_t gi = 0; gi < G; ++gi) {
      const double t = spec.grid[gi];
      const int k = static_cast<int>(std::floor(n * t));
      double x = 0;
      switch (spec.process) {
        case ProcessKind::EdgesDiscrete:
          x = (static_cast<double>(real.edges_at[k]) - t * t * edge_total) /
              norm.discrete_scale;
          break;
        case ProcessKind::EdgesContinuous:
          x = (real.edges.eval(t) - t * t * edge_total) / norm.continuous_scale;
          break;
        case ProcessKind::ComponentsDiscrete:
          x = (static_cast<double>(real.components_at[k]) - t * (1.0 - t) * n) /
              norm.discrete_scale;
          break;
        case ProcessKind::ComponentsContinuous:
          x = (real.components.eval(t) - t * (1.0 - t) * n) / norm.discrete_scale;
          break;
        case ProcessKind::TrianglesDiscrete: {
          const double total = static_cast<double>(real.triangles_at[n]);
          x = (static_cast<double>(real.triangles_at[k]) - t * t * t * total) /
              norm.discrete_scale;
          break;
        }
        case ProcessKind::BipartiteDiscrete:
          x = (static_cast<double>(real.edges_at[k]) -
               static_cast<double>(k) * k / 4.0) /
              static_cast<double>(n);
          break;
      }
      row[gi] = x;
    }
  };

  // Components/triangles/bipartite scales do not depend on the regime block
  // above; overwrite for the processes with fixed normalizations.
  auto fix_scales = [&](Normalizer norm) {
    switch (spec.process) {
      case ProcessKind::ComponentsDiscrete:
      case ProcessKind::ComponentsContinuous:
      case ProcessKind::TrianglesDiscrete:
        norm.discrete_scale = std::sqrt(static_cast<double>(n));
        break;
      default:
        break;
    }
    return norm;
  };

  std::atomic<int> next_replicate{0};
  std::exception_ptr worker_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    try {
      for (;;) {
        const int r = next_replicate.fetch_add(1);
        if (r >= R) break;
        RngStream rng(spec.seed, static_cast<std::uint64_t>(r) + 1);
        double* row = values.data() + static_cast<std::size_t>(r) * G;
        if (shared_graph) {
          const Realization real = run(*shared_graph, sample_uncover_times(n, rng),
                                       track_triangles);
          evaluate(*shared_graph, fix_scales(*shared_norm), real, row);
        } else {
          const Graph g = generate(spec.model, rng);
          const Normalizer norm = fix_scales(make_normalizer(spec, g));
          const Realization real = run(g, sample_uncover_times(n, rng), track_triangles);
          evaluate(g, norm, real, row);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!worker_error) worker_error = std::current_exception();
      next_replicate.store(R);
    }
  };

  int workers = spec.workers > 0
                    ? spec.workers
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, R);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (worker_error) std::rethrow_exception(worker_error);

  // Deterministic reduction: per-jackknife-block raw sums accumulated in
  // replicate order, independent of how workers were scheduled.
  const int B = std::min(50, R);
  const std::size_t pairs = G * (G + 1) / 2;
  std::vector<double> bsum(static_cast<std::size_t>(B) * G, 0.0);
  std::vector<double> bprod(static_cast<std::size_t>(B) * pairs, 0.0);
  std::vector<long long> bcount(B, 0);
  std::vector<double> sum3(G, 0.0), sum4(G, 0.0);
  std::vector<long long> nonpos(G, 0);
  for (int r = 0; r < R; ++r) {
    const int b = static_cast<int>((static_cast<long long>(r) * B) / R);
    const double* row = values.data() + static_cast<std::size_t>(r) * G;
    ++bcount[b];
    double* bs = bsum.data() + static_cast<std::size_t>(b) * G;
    double* bp = bprod.data() + static_cast<std::size_t>(b) * pairs;
    std::size_t p = 0;
    for (std::size_t i = 0; i < G; ++i) {
      bs[i] += row[i];
      const double sq = row[i] * row[i];
      sum3[i] += sq * row[i];
      sum4[i] += sq * sq;
      if (row[i] <= 0.0) ++nonpos[i];
      for (std::size_t j = i; j < G; ++j, ++p) bp[p] += row[i] * row[j];
    }
  }

  std::vector<double> tot_sum(G, 0.0), tot_prod(pairs, 0.0);
  for (int b = 0; b < B; ++b) {
    for (std::size_t i = 0; i < G; ++i) tot_sum[i] += bsum[b * G + i];
    for (std::size_t p = 0; p < pairs; ++p) tot_prod[p] += bprod[b * pairs + p];
  }

  EnsembleStats stats;
  stats.grid = spec.grid;
  stats.replicates = R;
  stats.n = n;
  stats.seed = spec.seed;
  stats.process = to_string(spec.process);
  stats.normalization = normalization_text(spec);
  stats.mean.resize(G);
  stats.skewness.resize(G);
  stats.kurtosis.resize(G);
  stats.frac_nonpositive.resize(G);
  stats.cov.assign(G * G, 0.0);
  stats.se_cov.assign(G * G, 0.0);

  for (std::size_t i = 0; i < G; ++i) {
    const double mean = tot_sum[i] / R;
    stats.mean[i] = mean;
    stats.frac_nonpositive[i] = static_cast<double>(nonpos[i]) / R;
  }
  auto pair_index = [&](std::size_t i, std::size_t j) {
    // i <= j assumed; offset into the packed upper triangle.
    return i * G - i * (i - 1) / 2 + (j - i);
  };
  for (std::size_t i = 0; i < G; ++i) {
    const double mi = stats.mean[i];
    const double m2 = tot_prod[pair_index(i, i)] / R - mi * mi;
    const double m3 = sum3[i] / R - 3.0 * mi * (tot_prod[pair_index(i, i)] / R) +
                      2.0 * mi * mi * mi;
    const double m4 = sum4[i] / R - 4.0 * mi * (sum3[i] / R) +
                      6.0 * mi * mi * (tot_prod[pair_index(i, i)] / R) -
                      3.0 * mi * mi * mi * mi;
    stats.skewness[i] = m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;
    stats.kurtosis[i] = m2 > 0 ? m4 / (m2 * m2) : 0.0;
    for (std::size_t j = i; j < G; ++j) {
      const double c = (tot_prod[pair_index(i, j)] - tot_sum[i] * tot_sum[j] / R) /
                       (R - 1);
      stats.cov[i * G + j] = stats.cov[j * G + i] = c;
    }
  }

  // Jackknife over the blocks.
  for (std::size_t i = 0; i < G; ++i) {
    for (std::size_t j = i; j < G; ++j) {
      const std::size_t p = pair_index(i, j);
      double mean_theta = 0;
      std::vector<double> theta(B);
      for (int b = 0; b < B; ++b) {
        const double cnt = static_cast<double>(R - bcount[b]);
        const double sx = tot_sum[i] - bsum[b * G + i];
        const double sy = tot_sum[j] - bsum[b * G + j];
        const double sxy = tot_prod[p] - bprod[b * pairs + p];
        theta[b] = (sxy - sx * sy / cnt) / (cnt - 1);
        mean_theta += theta[b];
      }
      mean_theta /= B;
      double ss = 0;
      for (int b = 0; b < B; ++b) {
        const double d = theta[b] - mean_theta;
        ss += d * d;
      }
      const double se = std::sqrt(ss * (B - 1) / B);
      stats.se_cov[i * G + j] = stats.se_cov[j * G + i] = se;
    }
  }

  stats.gaussian_screen = gaussian_screen_pass(stats);
  return stats;
}

bool gaussian_screen_pass(const EnsembleStats& stats, double skew_tol,
                          double excess_kurtosis_tol) {
  for (std::size_t i = 0; i < stats.grid.size(); ++i) {
    if (std::abs(stats.skewness[i]) > skew_tol) return false;
    if (std::abs(stats.kurtosis[i] - 3.0) > excess_kurtosis_tol) return false;
  }
  return true;
}

ComparisonReport compare(const EnsembleStats& stats, std::span<const double> grid,
                         std::span<const double> model_cov, CompareOptions options) {
  const std::size_t G = stats.grid.size();
  if (grid.size() != G || !std::equal(grid.begin(), grid.end(), stats.grid.begin()))
    throw GridMismatch("compare: stats and model grids differ");
  if (model_cov.size() != G * G)
    throw DimensionMismatch("compare: model covariance size mismatch");

  ComparisonReport report;
  report.abs_tol = options.abs_tol;
  report.z_tol = options.z_tol;
  report.rel_tol = options.rel_tol;
  report.cov_pass = true;
  report.mean_pass = true;
  for (std::size_t i = 0; i < G; ++i) {
    for (std::size_t j = i; j < G; ++j) {
      const double model = model_cov[i * G + j];
      const double dev = std::abs(stats.cov[i * G + j] - model);
      const double se = stats.se_cov[i * G + j];
      const double dev_se = se > 0 ? dev / se
                                   : (dev == 0 ? 0.0 : std::numeric_limits<double>::infinity());
      double base_tol = options.abs_tol;
      if (options.rel_tol > 0) {
        const double diag = std::sqrt(std::max(model_cov[i * G + i], 0.0) *
                                      std::max(model_cov[j * G + j], 0.0));
        base_tol = options.rel_tol * diag;
      }
      const double tol = std::max(base_tol, options.z_tol * se);
      if (dev > report.max_abs_dev) {
        report.max_abs_dev = dev;
        report.worst_s = stats.grid[i];
        report.worst_t = stats.grid[j];
      }
      report.max_dev_se = std::max(report.max_dev_se, dev_se);
      if (dev > tol) report.cov_pass = false;
    }
    const double diag = std::max(model_cov[i * G + i], 0.0);
    const double drift_se = std::sqrt(diag / stats.replicates);
    const double drift = std::abs(stats.mean[i]);
    const double drift_units =
        drift_se > 0 ? drift / drift_se
                     : (drift == 0 ? 0.0 : std::numeric_limits<double>::infinity());
    report.max_mean_drift_se = std::max(report.max_mean_drift_se, drift_units);
    if (drift > options.z_tol * drift_se) report.mean_pass = false;
  }
  report.pass = report.cov_pass && report.mean_pass;
  return report;
}

ComparisonReport compare(const EnsembleStats& stats, const CovarianceModel& model,
                         CompareOptions options) {
  const auto matrix = model.covariance_matrix(stats.grid);
  return compare(stats, stats.grid, matrix, options);
}

namespace {

// Exact discrete-clock moments by enumeration of reveal orders.
OracleTable enumerate_orders(const Graph& g) {
  const int n = g.vertex_count();
  if (n > 8) throw TooLarge("brute_force_oracle: enumeration is limited to n <= 8");
  std::vector<std::uint8_t> adj_mask(n, 0);
  for (const auto& [u, v] : g.edges()) {
    adj_mask[u] |= static_cast<std::uint8_t>(1u << v);
    adj_mask[v] |= static_cast<std::uint8_t>(1u << u);
  }
  std::vector<long long> edge_sum(n + 1, 0), edge_sq(n + 1, 0);
  std::vector<long long> comp_sum(n + 1, 0), comp_sq(n + 1, 0);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> parent(n);
  long long total = 0;
  do {
    ++total;
    std::uint8_t visible = 0;
    int edges = 0, components = 0;
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int k = 1; k <= n; ++k) {
      const int v = perm[k - 1];
      const std::uint8_t nbrs = adj_mask[v] & visible;
      edges += std::popcount(static_cast<unsigned>(nbrs));
      ++components;
      for (int j = 0; j < n; ++j) {
        if (!(nbrs & (1u << j))) continue;
        const int rv = find(v), rj = find(j);
        if (rv != rj) {
          parent[rj] = rv;
          --components;
        }
      }
      visible |= static_cast<std::uint8_t>(1u << v);
      edge_sum[k] += edges;
      edge_sq[k] += static_cast<long long>(edges) * edges;
      comp_sum[k] += components;
      comp_sq[k] += static_cast<long long>(components) * components;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  OracleTable table;
  table.edge_mean.resize(n + 1);
  table.edge_variance.resize(n + 1);
  table.component_mean.resize(n + 1);
  table.component_variance.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    const long double t = static_cast<long double>(total);
    const long double em = edge_sum[k] / t;
    const long double cm = comp_sum[k] / t;
    table.edge_mean[k] = static_cast<double>(em);
    table.edge_variance[k] = static_cast<double>(edge_sq[k] / t - em * em);
    table.component_mean[k] = static_cast<double>(cm);
    table.component_variance[k] = static_cast<double>(comp_sq[k] / t - cm * cm);
  }
  return table;
}

}  // namespace

OracleTable brute_force_oracle_all(const Graph& g) { return enumerate_orders(g); }

OracleMoments brute_force_oracle(const Graph& g, int k) {
  if (k < 0 || k > g.vertex_count())
    throw OutOfDomain("brute_force_oracle: k outside [0, n]");
  const OracleTable table = enumerate_orders(g);
  OracleMoments m;
  m.edge_mean = table.edge_mean[k];
  m.edge_variance = table.edge_variance[k];
  m.component_mean = table.component_mean[k];
  m.component_variance = table.component_variance[k];
  return m;
}

std::string to_json(const EnsembleStats& stats) {
  const std::size_t G = stats.grid.size();
  std::string out = "{\"cov\":";
  append_matrix(out, stats.cov, G);
  out += ",\"frac_nonpositive\":";
  append_array(out, stats.frac_nonpositive);
  out += ",\"gaussian_screen\":";
  out += stats.gaussian_screen ? "true" : "false";
  out += ",\"grid\":";
  append_array(out, stats.grid);
  out += ",\"kurtosis\":";
  append_array(out, stats.kurtosis);
  out += ",\"mean\":";
  append_array(out, stats.mean);
  out += ",\"n\":" + std::to_string(stats.n);
  out += ",\"normalization\":\"" + json_escape(stats.normalization) + "\"";
  out += ",\"process\":\"" + json_escape(stats.process) + "\"";
  out += ",\"replicates\":" + std::to_string(stats.replicates);
  out += ",\"se_cov\":";
  append_matrix(out, stats.se_cov, G);
  out += ",\"seed\":" + std::to_string(stats.seed);
  out += ",\"skewness\":";
  append_array(out, stats.skewness);
  out += "}";
  return out;
}

EnsembleStats ensemble_stats_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  EnsembleStats stats;
  stats.grid = j.at("grid").get<std::vector<double>>();
  stats.mean = j.at("mean").get<std::vector<double>>();
  stats.skewness = j.at("skewness").get<std::vector<double>>();
  stats.kurtosis = j.at("kurtosis").get<std::vector<double>>();
  stats.frac_nonpositive = j.at("frac_nonpositive").get<std::vector<double>>();
  const auto cov = j.at("cov").get<std::vector<std::vector<double>>>();
  const auto se = j.at("se_cov").get<std::vector<std::vector<double>>>();
  const std::size_t G = stats.grid.size();
  if (cov.size() != G || se.size() != G)
    throw InvalidSpec("ensemble stats json: matrix size mismatch");
  for (const auto& row : cov) {
    if (row.size() != G) throw InvalidSpec("ensemble stats json: ragged cov");
    stats.cov.insert(stats.cov.end(), row.begin(), row.end());
  }
  for (const auto& row : se) {
    if (row.size() != G) throw InvalidSpec("ensemble stats json: ragged se_cov");
    stats.se_cov.insert(stats.se_cov.end(), row.begin(), row.end());
  }
  stats.replicates = j.at("replicates").get<int>();
  stats.n = j.at("n").get<int>();
  stats.seed = j.at("seed").get<std::uint64_t>();
  stats.process = j.at("process").get<std::string>();
  stats.normalization = j.at("normalization").get<std::string>();
  stats.gaussian_screen = j.at("gaussian_screen").get<bool>();
  return stats;
}

std::string to_json(const ComparisonReport& report) {
  std::string out = "{";
  out += "\"abs_tol\":" + fmt(report.abs_tol);
  out += ",\"cov_pass\":";
  out += report.cov_pass ? "true" : "false";
  out += ",\"max_abs_dev\":" + fmt(report.max_abs_dev);
  out += ",\"max_dev_se\":" + fmt(report.max_dev_se);
  out += ",\"max_mean_drift_se\":" + fmt(report.max_mean_drift_se);
  out += ",\"mean_pass\":";
  out += report.mean_pass ? "true" : "false";
  out += ",\"pass\":";
  out += report.pass ? "true" : "false";
  out += ",\"rel_tol\":" + fmt(report.rel_tol);
  out += ",\"worst_s\":" + fmt(report.worst_s);
  out += ",\"worst_t\":" + fmt(report.worst_t);
  out += ",\"z_tol\":" + fmt(report.z_tol);
  out += "}";
  return out;
}

}  // namespace uncover
