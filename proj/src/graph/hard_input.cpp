#include "monoforge/graph/hard_input.hpp"

#include <stdexcept>

#include "monoforge/errors.hpp"
#include "monoforge/parallel.hpp"

namespace monoforge::graph {

bool f_G_eval(const Graph& g, const Bits& a) {
  if (a.size() != g.n()) throw std::invalid_argument("input length differs from vertex count");
  std::size_t count = 0;
  for (const auto& [u, v] : g.edges()) count += (a[u] && a[v]);
  return count != 1;
}

bool udisj_ne1(const Bits& b, const Bits& c) {
  if (b.size() != c.size()) throw std::invalid_argument("udisj inputs differ in length");
  std::size_t common = 0;
  for (std::size_t i = 0; i < b.size(); ++i) common += (b[i] && c[i]);
  return common != 1;
}

bool is_induced_matching(const Graph& g, const std::vector<Edge>& edges) {
  std::vector<int> owner(g.n(), -1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    if (u >= g.n() || v >= g.n() || !g.has_edge(u, v)) return false;
    if (owner[u] != -1 || owner[v] != -1) return false;
    owner[u] = owner[v] = static_cast<int>(i);
  }
  for (const auto& [u, v] : g.edges())
    if (owner[u] != -1 && owner[v] != -1 && owner[u] != owner[v]) return false;
  return true;
}

Matching sample_matching(const Graph& g, std::size_t m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("matching size must be at least 1");
  std::vector<std::uint8_t> removed(g.n(), 0);
  Matching out;
  for (std::size_t i = 1; i <= m; ++i) {
    std::vector<std::size_t> alive;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto [u, v] = g.edges()[e];
      if (!removed[u] && !removed[v]) alive.push_back(e);
    }
    if (alive.empty()) throw GraphExhausted(i);
    const Edge picked = g.edges()[alive[uniform_below(rng, alive.size())]];
    out.edges.push_back(picked);
    for (Vertex s : {picked.first, picked.second}) {
      removed[s] = 1;
      for (Vertex x : g.neighbors(s)) {
        removed[x] = 1;
        for (Vertex y : g.neighbors(x)) removed[y] = 1;
      }
    }
  }
  out.induced = true;
  return out;
}

Matching sample_matching(const Graph& g, std::size_t m, std::uint64_t seed, std::uint64_t stream) {
  Rng rng = make_rng(seed, stream);
  return sample_matching(g, m, rng);
}

Bits sample_hard_input(const Graph& g, const Matching& m, Rng& rng) {
  if (!is_induced_matching(g, m.edges)) throw NotInducedMatching();
  Bits a(g.n(), 0);
  for (const auto& [u, v] : m.edges) {
    switch (uniform_below(rng, 3)) {
      case 1: a[u] = 1; break;
      case 2: a[v] = 1; break;
      default: break;
    }
  }
  return a;
}

Bits sample_hard_input(const Graph& g, const Matching& m, std::uint64_t seed, std::uint64_t stream) {
  Rng rng = make_rng(seed, stream);
  return sample_hard_input(g, m, rng);
}

HardInputTally& HardInputTally::operator+=(const HardInputTally& o) {
  samples += o.samples;
  f_zero += o.f_zero;
  induced_nonzero += o.induced_nonzero;
  for (std::size_t i = 0; i < 3; ++i) pair_counts[i] += o.pair_counts[i];
  pairs += o.pairs;
  return *this;
}

namespace {

auto hard_input_body(const Graph& g, std::size_t m) {
  return [&g, m](Rng& rng, std::size_t count, HardInputTally& t) {
    for (std::size_t s = 0; s < count; ++s) {
      const Matching mt = sample_matching(g, m, rng);
      const Bits a = sample_hard_input(g, mt, rng);
      ++t.samples;
      std::size_t induced = 0;
      for (const auto& [u, v] : g.edges()) induced += (a[u] && a[v]);
      t.induced_nonzero += induced > 0;
      t.f_zero += induced == 1;
      for (const auto& [u, v] : mt.edges) {
        ++t.pairs;
        ++t.pair_counts[a[u] ? 1 : (a[v] ? 2 : 0)];
      }
    }
  };
}

constexpr std::uint64_t kHardInputStream = 0x4800;

}  // namespace

HardInputTally hard_input_experiment(const Graph& g, std::size_t m, std::size_t trials, std::uint64_t seed) {
  return par::sharded_trials<HardInputTally>(seed, kHardInputStream, trials, hard_input_body(g, m));
}

HardInputTally hard_input_experiment_serial(const Graph& g, std::size_t m, std::size_t trials,
                                            std::uint64_t seed) {
  return par::sharded_trials_serial<HardInputTally>(seed, kHardInputStream, trials, hard_input_body(g, m));
}

}  // namespace monoforge::graph
