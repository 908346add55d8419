#include "uncover/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "uncover/errors.hpp"

namespace uncover {

Graph::Graph(int n, std::vector<std::pair<std::int32_t, std::int32_t>> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ <= 0) throw InvalidSpec("graph must have at least one vertex");
  for (auto& [u, v] : edges_) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw InvalidSpec("edge endpoint out of range");
    if (u == v) throw InvalidSpec("self-loops are not allowed");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw InvalidSpec("duplicate edge");

  adj_offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (const auto& [u, v] : edges_) {
    ++adj_offsets_[u + 1];
    ++adj_offsets_[v + 1];
  }
  for (int i = 0; i < n_; ++i) adj_offsets_[i + 1] += adj_offsets_[i];
  adj_.resize(adj_offsets_[n_]);
  std::vector<std::int32_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adj_[cursor[u]++] = v;
    adj_[cursor[v]++] = u;
  }
  // Canonical edge order fills each list in increasing order except for the
  // lower endpoints, so one sort keeps the invariant explicit.
  for (int v = 0; v < n_; ++v)
    std::sort(adj_.begin() + adj_offsets_[v], adj_.begin() + adj_offsets_[v + 1]);
}

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto list = neighbors(u);
  return std::binary_search(list.begin(), list.end(), v);
}

Graph read_edge_list(std::istream& in) {
  long long n = 0, m = 0;
  if (!(in >> n >> m)) throw InvalidSpec("edge list: missing 'n m' header");
  if (n <= 0 || m < 0) throw InvalidSpec("edge list: invalid header");
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw InvalidSpec("edge list: truncated edge section");
    if (u < 1 || u > n || v < 1 || v > n)
      throw InvalidSpec("edge list: vertex id outside [1, n]");
    edges.emplace_back(static_cast<std::int32_t>(u - 1), static_cast<std::int32_t>(v - 1));
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_edge_list(g, out);
}

}  // namespace uncover
