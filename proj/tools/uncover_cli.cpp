// Command-line front end for the uncovering-process workbench.
//
// Subcommands: generate, simulate, theory, ensemble, compare, oracle.
// Exit codes: 0 success (or comparison pass), 1 comparison fail,
// 2 usage/config error, 3 runtime error. Errors are printed to stderr with
// the prefix "error:". All floating values are printed with 17 significant
// digits, so fixed-seed runs are byte-identical across platforms.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "uncover/census.hpp"
#include "uncover/covariance.hpp"
#include "uncover/degree_stats.hpp"
#include "uncover/engine.hpp"
#include "uncover/ensemble.hpp"
#include "uncover/errors.hpp"
#include "uncover/generators.hpp"
#include "uncover/graph.hpp"
#include "uncover/martingale.hpp"

namespace {

using namespace uncover;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty()) grid.push_back(std::stod(cell));
  }
  if (grid.empty()) throw InvalidSpec("grid: no values parsed from '" + text + "'");
  return grid;
}

std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> degrees;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty()) degrees.push_back(std::stoi(cell));
  }
  return degrees;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Regime regime_from_string(const std::string& name) {
  if (name == "sparse") return Regime::Sparse;
  if (name == "regular") return Regime::Regular;
  if (name == "general") return Regime::General;
  throw InvalidSpec("unknown regime '" + name + "' (sparse|regular|general)");
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string model;
  int n = 0;
  std::uint64_t seed = 1;
  std::string out;
  long long m = -1;
  double p = -1;
  std::string degrees;
};

int run_generate(const GenerateArgs& args) {
  ModelSpec spec;
  spec.kind = graph_model_from_string(args.model);
  spec.n = args.n;
  if (spec.kind == GraphModel::Gnm) {
    if (args.m < 0) throw InvalidSpec("generate: --m is required for gnm");
    spec.m = args.m;
  }
  if (spec.kind == GraphModel::Gnp) {
    if (args.p < 0) throw InvalidSpec("generate: --p is required for gnp");
    spec.p = args.p;
  }
  if (spec.kind == GraphModel::Configuration) {
    if (args.degrees.empty())
      throw InvalidSpec("generate: --degrees is required for config");
    spec.degrees = parse_degrees(args.degrees);
  }
  RngStream rng(args.seed, 0);
  const Graph g = generate(spec, rng);
  write_edge_list_file(g, args.out);
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string graph;
  std::uint64_t seed = 1;
  std::string out;
  bool martingales = false;
};

int run_simulate(const SimulateArgs& args) {
  const Graph g = read_edge_list_file(args.graph);
  RngStream rng(args.seed, 0);
  const TimeAssignment assignment = sample_uncover_times(g.vertex_count(), rng);
  const Realization real = run(g, assignment, true);

  std::stringstream out;
  if (!args.martingales) {
    write_realization_csv(real, out);
  } else {
    const MartingalePaths paths(g, assignment);
    out << "event_time,edges,vertices,components,triangles,"
           "edge_fluct,degree_fluct,vertex_fluct,degdev_fluct,"
           "edge_mart,degree_mart,vertex_mart,degdev_mart\n";
    const int n = g.vertex_count();
    for (int k = 1; k <= n; ++k) {
      const double t = assignment.tau[k - 1];
      out << fmt(t) << ',' << real.edges_at[k] << ',' << k << ','
          << real.components_at[k] << ',' << real.triangles_at[k] << ','
          << fmt(paths.edge_fluct(t)) << ',' << fmt(paths.degree_fluct(t)) << ','
          << fmt(paths.vertex_fluct(t)) << ',' << fmt(paths.degdev_fluct(t)) << ','
          << fmt(paths.edge_mart(t)) << ',' << fmt(paths.degree_mart(t)) << ','
          << fmt(paths.vertex_mart(t)) << ',' << fmt(paths.degdev_mart(t)) << '\n';
    }
  }
  write_file(args.out, out.str());
  return 0;
}

// ---------------------------------------------------------------------------
// theory

struct TheoryArgs {
  std::string kind;
  std::string grid = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  std::string out;
  double mean_degree = -1;
  double second_moment = -1;
  double degree_variance = -1;
  double limit_degree = -1;
  double edge_ratio = -1;
  double variance_ratio = -1;
  double density_ratio = -1;
};

CovarianceModel build_model(const TheoryArgs& args) {
  auto need = [&](double v, const char* flag) {
    if (v < 0) throw InvalidSpec(std::string("theory: ") + flag +
                                 " is required for kind '" + args.kind + "'");
    return v;
  };
  switch (model_kind_from_string(args.kind)) {
    case ModelKind::SparseDiscrete:
      return CovarianceModel::sparse_discrete(need(args.mean_degree, "--mean-degree"),
                                              need(args.degree_variance, "--degree-variance"));
    case ModelKind::SparseContinuous:
      return CovarianceModel::sparse_continuous(need(args.mean_degree, "--mean-degree"),
                                                need(args.second_moment, "--second-moment"));
    case ModelKind::RegularDiscrete:
      return CovarianceModel::regular_discrete();
    case ModelKind::RegularContinuous:
      return CovarianceModel::regular_continuous(need(args.limit_degree, "--limit-degree"));
    case ModelKind::GeneralDiscrete:
      return CovarianceModel::general_discrete(need(args.edge_ratio, "--edge-ratio"),
                                               need(args.variance_ratio, "--variance-ratio"));
    case ModelKind::GeneralContinuous:
      return CovarianceModel::general_continuous(need(args.edge_ratio, "--edge-ratio"),
                                                 need(args.variance_ratio, "--variance-ratio"),
                                                 need(args.density_ratio, "--density-ratio"));
    case ModelKind::GeneralContinuousDense:
      return CovarianceModel::general_continuous_dense();
    case ModelKind::ComponentsDiscrete:
      return CovarianceModel::components_discrete(need(args.degree_variance, "--degree-variance"));
    case ModelKind::ComponentsContinuous:
      return CovarianceModel::components_continuous(
          need(args.degree_variance, "--degree-variance"));
    case ModelKind::GnmBridge:
      return CovarianceModel::gnm_bridge();
    case ModelKind::BipartiteSquare:
      return CovarianceModel::bipartite_square();
  }
  throw InvalidSpec("theory: unknown kind '" + args.kind + "'");
}

int run_theory(const TheoryArgs& args) {
  const CovarianceModel model = build_model(args);
  const std::vector<double> grid = parse_grid(args.grid);
  const std::vector<double> matrix = model.covariance_matrix(grid);
  std::stringstream out;
  write_covariance_csv(grid, matrix, out);
  write_file(args.out, out.str());
  return 0;
}

// ---------------------------------------------------------------------------
// ensemble

void reject_unknown_keys(const nlohmann::json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const auto& k : allowed)
      if (it.key() == k) known = true;
    if (!known)
      throw InvalidSpec("config: unknown key '" + it.key() + "' in " + where);
  }
}

struct EnsembleConfig {
  ExperimentSpec spec;
  std::string out;
  std::string cov_csv;  // optional: empirical covariance matrix as CSV
  std::optional<TheoryArgs> theory;
  std::string theory_out;
};

EnsembleConfig parse_ensemble_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpec(std::string("config: ") + e.what());
  }
  reject_unknown_keys(j, {"model", "replicates", "grid", "process", "regime", "scale",
                          "dense", "seed", "out", "cov_csv", "workers", "theory"},
                      "the top level");
  EnsembleConfig config;
  try {
    const auto& model = j.at("model");
    reject_unknown_keys(model, {"kind", "n", "m", "p", "degrees"}, "model");
    config.spec.model.kind = graph_model_from_string(model.at("kind").get<std::string>());
    config.spec.model.n = model.at("n").get<int>();
    if (model.contains("m")) config.spec.model.m = model.at("m").get<long long>();
    if (model.contains("p")) config.spec.model.p = model.at("p").get<double>();
    if (model.contains("degrees"))
      config.spec.model.degrees = model.at("degrees").get<std::vector<int>>();
    config.spec.replicates = j.at("replicates").get<int>();
    config.spec.grid = j.at("grid").get<std::vector<double>>();
    config.spec.process = process_kind_from_string(j.at("process").get<std::string>());
    config.spec.regime = regime_from_string(j.at("regime").get<std::string>());
    if (j.contains("scale")) config.spec.scale = j.at("scale").get<double>();
    if (j.contains("dense")) config.spec.dense_continuous = j.at("dense").get<bool>();
    config.spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("workers")) config.spec.workers = j.at("workers").get<int>();
    config.out = j.at("out").get<std::string>();
    if (j.contains("cov_csv")) config.cov_csv = j.at("cov_csv").get<std::string>();
    if (j.contains("theory")) {
      const auto& theory = j.at("theory");
      reject_unknown_keys(theory,
                          {"kind", "out", "mean_degree", "second_moment", "degree_variance",
                           "limit_degree", "edge_ratio", "variance_ratio", "density_ratio"},
                          "theory");
      TheoryArgs t;
      t.kind = theory.at("kind").get<std::string>();
      if (theory.contains("mean_degree")) t.mean_degree = theory.at("mean_degree").get<double>();
      if (theory.contains("second_moment"))
        t.second_moment = theory.at("second_moment").get<double>();
      if (theory.contains("degree_variance"))
        t.degree_variance = theory.at("degree_variance").get<double>();
      if (theory.contains("limit_degree"))
        t.limit_degree = theory.at("limit_degree").get<double>();
      if (theory.contains("edge_ratio")) t.edge_ratio = theory.at("edge_ratio").get<double>();
      if (theory.contains("variance_ratio"))
        t.variance_ratio = theory.at("variance_ratio").get<double>();
      if (theory.contains("density_ratio"))
        t.density_ratio = theory.at("density_ratio").get<double>();
      config.theory_out = theory.at("out").get<std::string>();
      config.theory = t;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpec(std::string("config: ") + e.what());
  }
  return config;
}

int run_ensemble_cmd(const std::string& config_path, int workers_override) {
  EnsembleConfig config = parse_ensemble_config(read_file(config_path));
  if (workers_override > 0) config.spec.workers = workers_override;
  const EnsembleStats stats = run_ensemble(config.spec);
  write_file(config.out, to_json(stats) + "\n");
  if (!config.cov_csv.empty()) {
    std::stringstream csv;
    write_covariance_csv(stats.grid, stats.cov, csv);
    write_file(config.cov_csv, csv.str());
  }
  if (config.theory) {
    TheoryArgs t = *config.theory;
    t.out = config.theory_out;
    std::string grid_text;
    for (std::size_t i = 0; i < config.spec.grid.size(); ++i) {
      if (i) grid_text += ',';
      grid_text += fmt(config.spec.grid[i]);
    }
    t.grid = grid_text;
    run_theory(t);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
  std::string stats;
  std::string theory;
  double abs_tol = 0.02;
  double z_tol = 5.0;
  double rel_tol = 0.0;
  std::string out;
};

int run_compare(const CompareArgs& args) {
  const EnsembleStats stats = ensemble_stats_from_json(read_file(args.stats));
  std::ifstream theory_file(args.theory);
  if (!theory_file) throw Error("cannot open '" + args.theory + "' for reading");
  const CovarianceTable table = read_covariance_csv(theory_file);
  CompareOptions options;
  options.abs_tol = args.abs_tol;
  options.z_tol = args.z_tol;
  options.rel_tol = args.rel_tol;
  const ComparisonReport report = compare(stats, table.grid, table.matrix, options);
  const std::string text = to_json(report) + "\n";
  std::cout << text;
  if (!args.out.empty()) write_file(args.out, text);
  return report.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleArgs {
  std::string graph;
  int k = 0;
};

int run_oracle(const OracleArgs& args) {
  const Graph g = read_edge_list_file(args.graph);
  const OracleMoments m = brute_force_oracle(g, args.k);
  std::cout << "{\"component_mean\":" << fmt(m.component_mean)
            << ",\"component_variance\":" << fmt(m.component_variance)
            << ",\"edge_mean\":" << fmt(m.edge_mean)
            << ",\"edge_variance\":" << fmt(m.edge_variance) << ",\"k\":" << args.k
            << ",\"n\":" << g.vertex_count() << "}\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "uncover: simulate random vertex uncovering on graphs and compare the\n"
      "normalized edge/component/triangle processes against closed-form\n"
      "Gaussian limit covariances."};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand(
      "generate", "Draw a graph from a model and write it as an edge list\n"
                  "(format: line 'n m', then one 'u v' line per edge, 1-based).");
  cmd_gen->add_option("--model", gen.model,
                      "path|cycle|complete-bipartite|labelled-tree|gw-poisson|"
                      "gw-binomial|gw-geometric|bst|recursive-tree|gnm|gnp|config")
      ->required();
  cmd_gen->add_option("--n", gen.n, "vertex count")->required();
  cmd_gen->add_option("--seed", gen.seed, "random seed (default 1)");
  cmd_gen->add_option("--out", gen.out, "output edge-list file")->required();
  cmd_gen->add_option("--m", gen.m, "edge count (gnm)");
  cmd_gen->add_option("--p", gen.p, "edge probability (gnp)");
  cmd_gen->add_option("--degrees", gen.degrees, "comma-separated degrees (config)");

  SimulateArgs sim;
  auto* cmd_sim = app.add_subcommand(
      "simulate", "Run one uncovering realization and write it as CSV with\n"
                  "columns event_time,edges,vertices,components,triangles;\n"
                  "--martingales appends edge_fluct,degree_fluct,vertex_fluct,\n"
                  "degdev_fluct and their compensated (mart) versions.");
  cmd_sim->add_option("--graph", sim.graph, "input edge-list file")->required();
  cmd_sim->add_option("--seed", sim.seed, "random seed (default 1)");
  cmd_sim->add_option("--out", sim.out, "output CSV file")->required();
  cmd_sim->add_flag("--martingales", sim.martingales, "append the martingale columns");

  TheoryArgs theory;
  auto* cmd_theory = app.add_subcommand(
      "theory", "Evaluate a closed-form limit covariance on a grid and write\n"
                "it as CSV (header 's,<t-grid>', one row per s).");
  cmd_theory->add_option("--kind", theory.kind,
                         "sparse-discrete|sparse-continuous|regular-discrete|"
                         "regular-continuous|general-discrete|general-continuous|"
                         "general-continuous-dense|components-discrete|"
                         "components-continuous|gnm-bridge|bipartite-square")
      ->required();
  cmd_theory->add_option("--grid", theory.grid, "comma-separated grid (default 0.1..0.9)");
  cmd_theory->add_option("--out", theory.out, "output CSV file")->required();
  cmd_theory->add_option("--mean-degree", theory.mean_degree, "limit mean degree");
  cmd_theory->add_option("--second-moment", theory.second_moment,
                         "limit second degree moment");
  cmd_theory->add_option("--degree-variance", theory.degree_variance,
                         "limit degree variance");
  cmd_theory->add_option("--limit-degree", theory.limit_degree,
                         "limiting regular degree (regular-continuous)");
  cmd_theory->add_option("--edge-ratio", theory.edge_ratio, "n*mean_degree/beta_n^2");
  cmd_theory->add_option("--variance-ratio", theory.variance_ratio,
                         "sum (d-mean)^2 / beta_n^2");
  cmd_theory->add_option("--density-ratio", theory.density_ratio,
                         "sqrt(n)*mean_degree/beta_n");

  std::string config_path;
  int workers_override = 0;
  auto* cmd_ens = app.add_subcommand(
      "ensemble", "Run a Monte Carlo ensemble described by a JSON config and\n"
                  "write the empirical statistics as JSON (see the README for\n"
                  "the schema; unknown keys are rejected).");
  cmd_ens->add_option("--config", config_path, "experiment config JSON")->required();
  cmd_ens->add_option("--workers", workers_override,
                      "worker threads (default: machine parallelism; output\n"
                      "does not depend on it)");

  CompareArgs cmp;
  auto* cmd_cmp = app.add_subcommand(
      "compare", "Compare ensemble statistics against a theory covariance CSV;\n"
                 "prints a JSON report and exits 0 on pass, 1 on fail.");
  cmd_cmp->add_option("--stats", cmp.stats, "ensemble stats JSON")->required();
  cmd_cmp->add_option("--theory", cmp.theory, "theory covariance CSV")->required();
  cmd_cmp->add_option("--abs-tol", cmp.abs_tol, "absolute cell tolerance (default 0.02)");
  cmd_cmp->add_option("--z-tol", cmp.z_tol, "tolerance in jackknife SE units (default 5)");
  cmd_cmp->add_option("--rel-tol", cmp.rel_tol,
                      "when > 0, cell tolerance rel_tol*sqrt(diag_i*diag_j)");
  cmd_cmp->add_option("--out", cmp.out, "also write the report JSON here");

  OracleArgs oracle;
  auto* cmd_oracle = app.add_subcommand(
      "oracle", "Exact mean/variance of the discrete edge and component counts\n"
                "after k reveals by enumerating all n! orders (n <= 8).");
  cmd_oracle->add_option("--graph", oracle.graph, "input edge-list file")->required();
  cmd_oracle->add_option("--k", oracle.k, "number of revealed vertices")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_gen->parsed()) return run_generate(gen);
    if (cmd_sim->parsed()) return run_simulate(sim);
    if (cmd_theory->parsed()) return run_theory(theory);
    if (cmd_ens->parsed()) return run_ensemble_cmd(config_path, workers_override);
    if (cmd_cmp->parsed()) return run_compare(cmp);
    if (cmd_oracle->parsed()) return run_oracle(oracle);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const InvalidSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BadScale& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
