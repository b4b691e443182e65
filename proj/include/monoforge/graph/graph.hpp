#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace monoforge::graph {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;  // first < second

/// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adj_(n) {}
  Graph(std::size_t n, const std::vector<Edge>& edges);

  /// Throws std::invalid_argument on self-loops, duplicates, or range errors.
  void add_edge(Vertex u, Vertex v);

  std::size_t n() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const noexcept { return adj_[v]; }
  std::size_t degree(Vertex v) const noexcept { return adj_[v].size(); }
  bool has_edge(Vertex u, Vertex v) const;

  /// Adjacency bitmasks; requires n <= 64.
  std::vector<std::uint64_t> adjacency_masks() const;
  /// e(G[S]) for S given as a bitmask, n <= 64.
  std::size_t induced_edge_count(std::uint64_t support) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;  // sorted
  std::vector<std::vector<Vertex>> adj_;
};

Graph empty_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph petersen_graph();
Graph dodecahedron_graph();
Graph hypercube_graph(unsigned dim);
Graph circulant_graph(std::size_t n, const std::vector<std::size_t>& offsets);
Graph disjoint_union(const Graph& a, const Graph& b);
/// Subgraph induced on the first `keep` vertices.
Graph induced_prefix(const Graph& g, std::size_t keep);
/// Graph with the listed edges (by index in g.edges()) removed.
Graph delete_edges(const Graph& g, const std::vector<std::size_t>& edge_ids);

/// Named graphs: "C<n>", "K<n>", "E<n>" (edgeless), "Q<d>" (hypercube),
/// "petersen", "dodecahedron". Throws ParseError for unknown names.
Graph named_graph(const std::string& name);

/// "graph <n>" header, then one 1-indexed "u v" pair per line. '#' starts a comment.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace monoforge::graph
