#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "monoforge/algebra/rational.hpp"
#include "monoforge/rank/distributions.hpp"
#include "monoforge/rank/real_matrix.hpp"
#include "monoforge/stats.hpp"

namespace monoforge::rank {

struct WellBehavedOptions {
  std::size_t k = 0;      // 0: ⌈√(log2 m)⌉
  std::size_t t_max = 0;  // 0: ⌊n^0.1⌋; an explicit value is used as given
  std::size_t c = 0;      // containment threshold, 0: 10k
  std::size_t trials = 2000;
  std::uint64_t seed = 1;
  std::optional<std::size_t> weight;  // |S| for the full-rank property; default 10·n·⌈log n⌉
  LogBase base = LogBase::Two;
  std::size_t adversarial_pairs = 64;
};

struct ContainmentViolation {
  std::vector<std::size_t> tau;
  std::size_t contained = 0;  // positions j with τ_j c-contained
};

struct WellBehavedReport {
  // Effective parameters.
  std::size_t n = 0, m = 0, s = 0, k = 0, c = 0, t_cap = 0, weight = 0;
  // Property 1: every column has support ≥ s/2.
  std::size_t min_col_support = 0;
  // Property 2: Pr[M[S] full rank] for uniform |S| = weight.
  std::size_t full_rank_hits = 0, full_rank_trials = 0;
  Rational full_rank_estimate;
  stats::Interval full_rank_ci;
  // Property 3: one-sided search for tuples with too many contained positions.
  std::size_t tuples_examined = 0;
  std::vector<ContainmentViolation> containment_violations;
  bool passes[3] = {false, false, false};
  bool all() const noexcept { return passes[0] && passes[1] && passes[2]; }
};

/// Throws ParameterDegeneration if the default |S| exceeds m.
WellBehavedReport check_well_behaved(const RealMatrix01& m, const WellBehavedOptions& opt);
WellBehavedReport check_well_behaved_serial(const RealMatrix01& m, const WellBehavedOptions& opt);

/// Number of positions j of τ that are c-contained.
std::size_t contained_positions(const RealMatrix01& m, const std::vector<std::size_t>& tau, std::size_t c);

struct PatternStat {
  std::uint64_t pattern = 0;  // bit p is a_{τ_{p+1}}
  std::size_t count = 0;
  std::size_t ones = 0;
  Rational exact;  // set when the probe ran exhaustively
  stats::Interval ci;
};

struct ProbeResult {
  bool exact = false;
  std::size_t points = 0;  // witnesses enumerated or sampled
  std::vector<PatternStat> patterns;  // observed conditioning patterns, ascending
  double min_estimate = 1.0;
  std::uint64_t min_pattern = 0;
  std::size_t k = 0;
  double scaled() const noexcept { return min_estimate * static_cast<double>(k); }
};

struct ProbeOptions {
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  std::size_t k = 0;  // 0: ⌈√(log2 m)⌉
  bool force_monte_carlo = false;
  std::size_t exact_support_cap = 12;  // exhaustive when the τ supports span ≤ this many rows
};

/// Pr[a_{τ_j} = 1 | a_{τ_1..τ_{j-1}}] under the real witness distribution, per
/// conditioning pattern. Throws PreconditionViolated if τ_j is c-contained.
ProbeResult weak_independence_probe(const RealMatrix01& m, const std::vector<std::size_t>& tau, std::size_t j,
                                    std::size_t c, const ProbeOptions& opt);

}  // namespace monoforge::rank
