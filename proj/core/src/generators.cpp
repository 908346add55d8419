#include "uncover/generators.hpp"

#include <algorithm>
#include <unordered_set>

#include "uncover/errors.hpp"

namespace uncover {

namespace {

using Edge = std::pair<std::int32_t, std::int32_t>;

Graph make_path(int n) {
  std::vector<Edge> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, std::move(edges));
}

Graph make_cycle(int n) {
  if (n < 3) throw InvalidSpec("cycle needs n >= 3");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(0, n - 1);
  return Graph(n, std::move(edges));
}

Graph make_complete_bipartite(int n) {
  if (n < 2 || n % 2 != 0)
    throw InvalidSpec("complete bipartite model needs an even n >= 2");
  const int half = n / 2;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(half) * half);
  for (int u = 0; u < half; ++u)
    for (int v = half; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

Graph make_labelled_tree(int n, RngStream& rng) {
  if (n == 1) return Graph(1, {});
  if (n == 2) return Graph(2, {{0, 1}});
  // Decode a uniform Pruefer sequence in linear time.
  std::vector<int> seq(static_cast<std::size_t>(n) - 2);
  std::vector<int> degree(n, 1);
  for (auto& a : seq) {
    a = rng.next_index(n);
    ++degree[a];
  }
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  int ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int a : seq) {
    edges.emplace_back(leaf, a);
    if (--degree[a] == 1 && a < ptr) {
      leaf = a;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n - 1);
  return Graph(n, std::move(edges));
}

Graph tree_from_child_counts(const std::vector<int>& counts) {
  const int n = static_cast<int>(counts.size());
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  // Depth-first construction: labels follow discovery order, vertex 0 is the
  // root, and vertex u has counts[u] children.
  std::vector<std::pair<int, int>> stack;
  stack.emplace_back(0, counts[0]);
  int next = 1;
  while (!stack.empty()) {
    auto& [v, remaining] = stack.back();
    if (remaining == 0) {
      stack.pop_back();
      continue;
    }
    --remaining;
    const int u = next++;
    edges.emplace_back(v, u);
    stack.emplace_back(u, counts[u]);
  }
  if (next != n) throw Error("tree_from_child_counts: invalid walk encoding");
  return Graph(n, std::move(edges));
}

Graph make_cond_gw(Offspring law, int n, long long trial_cap, RngStream& rng) {
  return tree_from_child_counts(gw_degree_sequence(law, n, rng, trial_cap));
}

Graph make_bst(int n, RngStream& rng) {
  if (n == 1) return Graph(1, {});
  std::vector<int> keys(n);
  for (int i = 0; i < n; ++i) keys[i] = i;
  rng.shuffle(keys);
  // Insert the permutation into a binary search tree; vertex labels follow
  // insertion order, so the root is vertex 0.
  std::vector<std::int32_t> left(n, -1), right(n, -1);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int i = 1; i < n; ++i) {
    int cur = 0;
    for (;;) {
      auto& child = keys[i] < keys[cur] ? left[cur] : right[cur];
      if (child < 0) {
        child = i;
        edges.emplace_back(cur, i);
        break;
      }
      cur = child;
    }
  }
  return Graph(n, std::move(edges));
}

Graph make_recursive_tree(int n, RngStream& rng) {
  std::vector<Edge> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  for (int j = 1; j < n; ++j) edges.emplace_back(rng.next_index(j), j);
  return Graph(n, std::move(edges));
}

Edge decode_pair(long long code, int n) {
  // Pair (u, v), u < v, has code u*(2n-u-1)/2 + (v-u-1).
  long long u = 0;
  long long offset = 0;
  while (offset + (n - 1 - u) <= code) {
    offset += n - 1 - u;
    ++u;
  }
  const long long v = u + 1 + (code - offset);
  return {static_cast<std::int32_t>(u), static_cast<std::int32_t>(v)};
}

Graph make_gnm(int n, long long m, RngStream& rng) {
  const long long total = static_cast<long long>(n) * (n - 1) / 2;
  if (m < 0 || m > total) throw InvalidSpec("gnm: m outside [0, n(n-1)/2]");
  // Floyd's sampler: a uniform m-subset of pair codes.
  std::unordered_set<long long> chosen;
  chosen.reserve(static_cast<std::size_t>(2 * m + 1));
  for (long long j = total - m; j < total; ++j) {
    const long long r = static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(j + 1)));
    if (!chosen.insert(r).second) chosen.insert(j);
  }
  std::vector<long long> codes(chosen.begin(), chosen.end());
  std::sort(codes.begin(), codes.end());
  std::vector<Edge> edges;
  edges.reserve(codes.size());
  for (long long code : codes) edges.push_back(decode_pair(code, n));
  return Graph(n, std::move(edges));
}

Graph make_gnp(int n, double p, RngStream& rng) {
  if (p < 0.0 || p > 1.0) throw InvalidSpec("gnp: p outside [0,1]");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.next_unit() < p) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

Graph make_configuration(int n, const std::vector<int>& degrees, int attempt_cap,
                         RngStream& rng) {
  if (static_cast<int>(degrees.size()) != n)
    throw InvalidSpec("configuration: degree list length differs from n");
  long long stub_total = 0;
  for (int d : degrees) {
    if (d < 0 || d > n - 1) throw InvalidSpec("configuration: degree outside [0, n-1]");
    stub_total += d;
  }
  if (stub_total % 2 != 0) throw InvalidSpec("configuration: degree sum must be even");

  std::vector<std::int32_t> stubs;
  stubs.reserve(static_cast<std::size_t>(stub_total));
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < degrees[v]; ++i) stubs.push_back(v);

  const std::size_t m = stubs.size() / 2;
  std::unordered_set<long long> seen;
  seen.reserve(2 * m + 1);
  std::vector<Edge> edges;
  edges.reserve(m);
  for (int attempt = 0; attempt < attempt_cap; ++attempt) {
    rng.shuffle(stubs);
    seen.clear();
    edges.clear();
    bool simple = true;
    for (std::size_t i = 0; i < m; ++i) {
      std::int32_t u = stubs[2 * i], v = stubs[2 * i + 1];
      if (u == v) {
        simple = false;
        break;
      }
      if (u > v) std::swap(u, v);
      if (!seen.insert(static_cast<long long>(u) * n + v).second) {
        simple = false;
        break;
      }
      edges.emplace_back(u, v);
    }
    if (simple) return Graph(n, std::move(edges));
  }
  throw ConfigRejectionExceeded("configuration: no simple matching within " +
                                std::to_string(attempt_cap) + " attempts");
}

}  // namespace

bool is_deterministic(GraphModel kind) {
  switch (kind) {
    case GraphModel::Path:
    case GraphModel::Cycle:
    case GraphModel::CompleteBipartite:
      return true;
    default:
      return false;
  }
}

std::string to_string(GraphModel kind) {
  switch (kind) {
    case GraphModel::Path: return "path";
    case GraphModel::Cycle: return "cycle";
    case GraphModel::CompleteBipartite: return "complete-bipartite";
    case GraphModel::LabelledTree: return "labelled-tree";
    case GraphModel::CondGwPoisson: return "gw-poisson";
    case GraphModel::CondGwBinomial: return "gw-binomial";
    case GraphModel::CondGwGeometric: return "gw-geometric";
    case GraphModel::BinarySearchTree: return "bst";
    case GraphModel::RecursiveTree: return "recursive-tree";
    case GraphModel::Gnm: return "gnm";
    case GraphModel::Gnp: return "gnp";
    case GraphModel::Configuration: return "config";
  }
  throw Error("to_string: unknown graph model");
}

GraphModel graph_model_from_string(const std::string& name) {
  for (GraphModel k : {GraphModel::Path, GraphModel::Cycle, GraphModel::CompleteBipartite,
                       GraphModel::LabelledTree, GraphModel::CondGwPoisson,
                       GraphModel::CondGwBinomial, GraphModel::CondGwGeometric,
                       GraphModel::BinarySearchTree, GraphModel::RecursiveTree,
                       GraphModel::Gnm, GraphModel::Gnp, GraphModel::Configuration}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidSpec("unknown graph model '" + name + "'");
}

Graph generate(const ModelSpec& spec, RngStream& rng) {
  if (spec.n < 1) throw InvalidSpec("generate: n must be at least 1");
  switch (spec.kind) {
    case GraphModel::Path: return make_path(spec.n);
    case GraphModel::Cycle: return make_cycle(spec.n);
    case GraphModel::CompleteBipartite: return make_complete_bipartite(spec.n);
    case GraphModel::LabelledTree: return make_labelled_tree(spec.n, rng);
    case GraphModel::CondGwPoisson:
      return make_cond_gw(Offspring::PoissonOne, spec.n, spec.sum_trial_cap, rng);
    case GraphModel::CondGwBinomial:
      return make_cond_gw(Offspring::BinomialTwoHalf, spec.n, spec.sum_trial_cap, rng);
    case GraphModel::CondGwGeometric:
      return make_cond_gw(Offspring::GeometricHalf, spec.n, spec.sum_trial_cap, rng);
    case GraphModel::BinarySearchTree: return make_bst(spec.n, rng);
    case GraphModel::RecursiveTree: return make_recursive_tree(spec.n, rng);
    case GraphModel::Gnm: return make_gnm(spec.n, spec.m, rng);
    case GraphModel::Gnp: return make_gnp(spec.n, spec.p, rng);
    case GraphModel::Configuration:
      return make_configuration(spec.n, spec.degrees, spec.matching_attempt_cap, rng);
  }
  throw Error("generate: unknown graph model");
}

std::vector<int> gw_degree_sequence(Offspring law, int n, RngStream& rng,
                                    long long trial_cap) {
  if (n < 1) throw InvalidSpec("gw_degree_sequence: n must be at least 1");
  if (n == 1) return {0};
  const long long target = n - 1;
  std::vector<int> counts(n);
  for (long long trial = 0; trial < trial_cap; ++trial) {
    long long sum = 0;
    bool overshoot = false;
    for (int i = 0; i < n; ++i) {
      int x;
      switch (law) {
        case Offspring::PoissonOne: x = rng.next_poisson_one(); break;
        case Offspring::BinomialTwoHalf: x = rng.next_binomial_two_half(); break;
        case Offspring::GeometricHalf: x = rng.next_geometric_half(); break;
        default: throw Error("gw_degree_sequence: unknown offspring law");
      }
      counts[i] = x;
      sum += x;
      if (sum > target) {
        overshoot = true;
        break;
      }
    }
    if (overshoot || sum != target) continue;

    // Cycle lemma: rotate to start right after the first minimum of the
    // prefix walk, which is the unique rotation whose proper prefixes are
    // all nonnegative.
    long long walk = 0, best = 0;
    int cut = 0;
    for (int i = 0; i < n; ++i) {
      walk += counts[i] - 1;
      if (walk < best) {
        best = walk;
        cut = i + 1;
      }
    }
    std::rotate(counts.begin(), counts.begin() + (cut % n), counts.end());
    return counts;
  }
  throw RejectionBudgetExceeded("gw_degree_sequence: sum conditioning failed within " +
                                std::to_string(trial_cap) + " trials");
}

}  // namespace uncover
