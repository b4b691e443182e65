#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "monoforge/graph/graph.hpp"
#include "monoforge/random.hpp"

namespace monoforge::graph {

using Bits = std::vector<std::uint8_t>;

/// [e(G[supp a]) != 1].
bool f_G_eval(const Graph& g, const Bits& a);
/// [|supp b ∩ supp c| != 1]. Throws std::invalid_argument on length mismatch.
bool udisj_ne1(const Bits& b, const Bits& c);

struct Matching {
  std::vector<Edge> edges;
  bool induced = false;
};

/// Independent oracle: pairwise disjoint edges of g with no other edge of g
/// between their endpoints.
bool is_induced_matching(const Graph& g, const std::vector<Edge>& edges);

/// Before each pick, deletes every vertex within distance 2 (in g) of a
/// matched vertex, then picks a uniform edge of what remains.
/// Throws GraphExhausted(i) when pick i finds no edge.
Matching sample_matching(const Graph& g, std::size_t m, Rng& rng);
Matching sample_matching(const Graph& g, std::size_t m, std::uint64_t seed, std::uint64_t stream = 0);

/// Zero off the matching; each matched pair uniform on {(0,0),(1,0),(0,1)}.
/// Throws NotInducedMatching.
Bits sample_hard_input(const Graph& g, const Matching& m, Rng& rng);
Bits sample_hard_input(const Graph& g, const Matching& m, std::uint64_t seed, std::uint64_t stream = 0);

struct HardInputTally {
  std::uint64_t samples = 0;
  std::uint64_t f_zero = 0;          // samples with f_G(a) = 0
  std::uint64_t induced_nonzero = 0; // samples with e(G[supp a]) > 0
  std::array<std::uint64_t, 3> pair_counts{};  // (0,0), (1,0), (0,1) over all matched pairs
  std::uint64_t pairs = 0;

  HardInputTally& operator+=(const HardInputTally& o);
  friend bool operator==(const HardInputTally&, const HardInputTally&) = default;
};

/// Each trial samples a fresh matching of size m and a hard input on it.
/// Deterministic for a given seed regardless of thread count.
HardInputTally hard_input_experiment(const Graph& g, std::size_t m, std::size_t trials, std::uint64_t seed);
HardInputTally hard_input_experiment_serial(const Graph& g, std::size_t m, std::size_t trials, std::uint64_t seed);

}  // namespace monoforge::graph
