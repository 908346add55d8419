#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace uncover {

// Immutable undirected simple graph on vertices 0..n-1.
//
// Edges are stored canonically (u < v, lexicographically sorted) and
// adjacency lists are sorted, so iteration order is deterministic and seeded
// runs reproduce byte-for-byte. Instances are safe to share across threads.
class Graph {
 public:
  Graph(int n, std::vector<std::pair<std::int32_t, std::int32_t>> edges);

  int vertex_count() const { return n_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
  int degree(int v) const { return adj_offsets_[v + 1] - adj_offsets_[v]; }
  std::span<const std::int32_t> neighbors(int v) const {
    return {adj_.data() + adj_offsets_[v],
            static_cast<std::size_t>(adj_offsets_[v + 1] - adj_offsets_[v])};
  }
  const std::vector<std::pair<std::int32_t, std::int32_t>>& edges() const { return edges_; }
  bool has_edge(int u, int v) const;

 private:
  int n_ = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges_;
  std::vector<std::int32_t> adj_offsets_;
  std::vector<std::int32_t> adj_;
};

// Edge-list text format: first line "n m", then m lines "u v" with 1-based
// vertex ids. The reader rejects loops, duplicate edges, and ids outside
// [1, n]; the writer emits edges in canonical order.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list_file(const Graph& g, const std::string& path);

}  // namespace uncover
