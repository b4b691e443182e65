#include "monoforge/graph/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "monoforge/errors.hpp"

namespace monoforge::graph {

Graph::Graph(std::size_t n, const std::vector<Edge>& edges) : Graph(n) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u + 1));
  if (u > v) std::swap(u, v);
  const Edge e{u, v};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e)
    throw std::invalid_argument("duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
  edges_.insert(it, e);
  adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::uint64_t> Graph::adjacency_masks() const {
  if (n_ > 64) throw std::invalid_argument("adjacency masks need n <= 64");
  std::vector<std::uint64_t> masks(n_, 0);
  for (const auto& [u, v] : edges_) {
    masks[u] |= std::uint64_t{1} << v;
    masks[v] |= std::uint64_t{1} << u;
  }
  return masks;
}

std::size_t Graph::induced_edge_count(std::uint64_t support) const {
  std::size_t c = 0;
  for (const auto& [u, v] : edges_)
    c += ((support >> u) & 1U) & ((support >> v) & 1U);
  return c;
}

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return g;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph petersen_graph() {
  Graph g(10);
  for (Vertex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);      // outer cycle
    g.add_edge(i, i + 5);            // spokes
    g.add_edge(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return g;
}

Graph dodecahedron_graph() {
  // Outer 5-cycle 0..4, middle 10-cycle 5..14, inner 5-cycle 15..19.
  Graph g(20);
  for (Vertex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, 5 + 2 * i);
    g.add_edge(15 + i, 15 + (i + 1) % 5);
    g.add_edge(15 + i, 5 + 2 * i + 1);
  }
  for (Vertex j = 0; j < 10; ++j) g.add_edge(5 + j, 5 + (j + 1) % 10);
  return g;
}

Graph hypercube_graph(unsigned dim) {
  const std::size_t n = std::size_t{1} << dim;
  Graph g(n);
  for (Vertex v = 0; v < n; ++v)
    for (unsigned b = 0; b < dim; ++b)
      if (!((v >> b) & 1U)) g.add_edge(v, v | (Vertex{1} << b));
  return g;
}

Graph circulant_graph(std::size_t n, const std::vector<std::size_t>& offsets) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t o : offsets) {
      const auto u = static_cast<Vertex>(i), v = static_cast<Vertex>((i + o) % n);
      if (u != v && !g.has_edge(u, v)) g.add_edge(u, v);
    }
  return g;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.n() + b.n());
  for (const auto& [u, v] : a.edges()) g.add_edge(u, v);
  const auto shift = static_cast<Vertex>(a.n());
  for (const auto& [u, v] : b.edges()) g.add_edge(u + shift, v + shift);
  return g;
}

Graph induced_prefix(const Graph& g, std::size_t keep) {
  Graph h(keep);
  for (const auto& [u, v] : g.edges())
    if (v < keep) h.add_edge(u, v);
  return h;
}

Graph delete_edges(const Graph& g, const std::vector<std::size_t>& edge_ids) {
  std::vector<std::uint8_t> drop(g.edge_count(), 0);
  for (auto id : edge_ids) drop.at(id) = 1;
  Graph h(g.n());
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    if (!drop[i]) h.add_edge(g.edges()[i].first, g.edges()[i].second);
  return h;
}

Graph named_graph(const std::string& name) {
  if (name == "petersen") return petersen_graph();
  if (name == "dodecahedron") return dodecahedron_graph();
  if (name.size() >= 2 && std::string("CKEQ").find(name[0]) != std::string::npos) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(name.substr(1), &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == name.size() - 1 && v <= 64) {
      switch (name[0]) {
        case 'C': return cycle_graph(v);
        case 'K': return complete_graph(v);
        case 'E': return empty_graph(v);
        case 'Q': return hypercube_graph(static_cast<unsigned>(v));
      }
    }
  }
  throw ParseError("unknown graph name '" + name + "'");
}

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  Graph g;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_header) {
      long long n = -1;
      if (first != "graph" || !(ls >> n) || n < 0) throw ParseError("graph file must start with 'graph <n>'");
      g = Graph(static_cast<std::size_t>(n));
      have_header = true;
      continue;
    }
    long long u = 0, v = 0;
    std::istringstream es(line);
    if (!(es >> u >> v)) throw ParseError("line " + std::to_string(lineno) + ": expected 'u v'");
    if (u < 1 || v < 1 || static_cast<std::size_t>(u) > g.n() || static_cast<std::size_t>(v) > g.n())
      throw ParseError("line " + std::to_string(lineno) + ": vertex out of range");
    try {
      g.add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    } catch (const std::invalid_argument& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header) throw ParseError("empty graph file");
  return g;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "graph " << g.n() << '\n';
  for (const auto& [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

}  // namespace monoforge::graph
