#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "monoforge/algebra/polynomial.hpp"
#include "monoforge/graph/graph.hpp"
#include "monoforge/stats.hpp"

namespace monoforge::graph {

/// Subsets of [n] (n <= 64) are bitmasks throughout.
using Mask = std::uint64_t;

/// Product family {S ∪ T : S ∈ fam_y, T ∈ fam_z} over the partition (Y, [n]∖Y).
struct Rectangle {
  std::size_t n = 0;
  Mask y = 0;
  std::vector<Mask> fam_y;
  std::vector<Mask> fam_z;

  Mask z() const noexcept;
  /// |Y|, |Z| ∈ [1/3, 2/3)·n.
  bool balanced() const noexcept;
  /// Members of fam_y inside Y and members of fam_z inside Z.
  bool well_formed() const noexcept;
  bool contains(Mask s) const;
  std::set<Mask> generated() const;
};

struct CoverVerdict {
  bool covered = false;
  bool balanced_all = false;
  std::optional<Mask> witness;  // least set of the symmetric difference
};

CoverVerdict verify_rectangle_cover(const std::vector<Rectangle>& rects, const std::set<Mask>& f_ones);

/// Supports of f_G's 1-inputs.
std::set<Mask> f_G_ones(const Graph& g);

struct MonotonePair {
  algebra::SparsePoly g;
  algebra::SparsePoly h;
  std::set<algebra::VarId> y;
  std::set<algebra::VarId> z;
};

struct DecompositionVerdict {
  bool ok = false;
  std::string failed_clause;  // empty when ok
  std::size_t pair_index = 0; // meaningful for per-pair clauses
};

/// Per pair, in order: "variables", "monotonicity", "refinement", "balance";
/// then globally "support containment" and "sum".
DecompositionVerdict verify_pair_decomposition(const algebra::SparsePoly& p, const std::vector<MonotonePair>& pairs,
                                               const algebra::VarPartition& part);

/// Monte Carlo estimate of Pr[supp(a) ∈ R] for a drawn from the matching
/// hard distribution with matchings of size m.
struct MassEstimate {
  std::uint64_t hits = 0, trials = 0;
  stats::Interval ci;
};
MassEstimate estimate_rectangle_mass(const Graph& g, std::size_t m, const Rectangle& r, std::size_t trials,
                                     std::uint64_t seed);

}  // namespace monoforge::graph
