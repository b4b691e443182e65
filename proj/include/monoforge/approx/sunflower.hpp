#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monoforge/approx/distribution.hpp"
#include "monoforge/approx/set_family.hpp"

namespace monoforge::approx {

struct ProbOptions {
  ProbMode mode = ProbMode::Auto;
  std::size_t trials = 20000;
  std::uint64_t seed = 1;
};

struct SunflowerCert {
  std::vector<Mask> members;
  Mask core = 0;
  Rational eps;
  Probability prob;  // Pr[some member minus the core is contained in x]
  bool accepted = false;
};

/// Tests Pr_{x∼d}[∃S: S∖K ⊆ x] > 1 - eps with K the common intersection.
/// Monte Carlo mode accepts only when the CI lower bound clears 1 - eps.
/// Fewer than two members is always a rejection.
SunflowerCert is_sunflower(const std::vector<Mask>& members, const Dist& d, const Rational& eps,
                           const ProbOptions& opt = {});

struct ClassicalSunflower {
  std::vector<Mask> petals;
  Mask core = 0;
};

/// True when all pairwise intersections equal one common core (≥ 1 set).
bool is_classical_sunflower(const std::vector<Mask>& petals);

/// Recursive disjoint-family / popular-element search for r petals. When it
/// finds nothing on a family of at most 12 sets the answer is confirmed (or
/// corrected) by exhaustive search.
std::optional<ClassicalSunflower> find_classical_sunflower(const std::vector<Mask>& fam, std::size_t r);
std::optional<ClassicalSunflower> find_sunflower_brute(const std::vector<Mask>& fam, std::size_t r);

struct PluckStep {
  std::size_t slice = 0;  // ℓ
  Mask core = 0;
  std::size_t members = 0;
  std::string tier;       // "core-scan" or "classical"
  double eps_est = 0;     // 1 - Pr[sunflower event] (upper CI end in Monte Carlo mode)
  bool measured_exact = false;
  Rational measured_error;  // Pr_d0[new DNF = 1, old DNF = 0] when exact
  double measured_error_mc = 0;
};

struct PluckResult {
  SetFamily family;
  std::vector<PluckStep> ledger;
  Rational total_measured_error;  // exact mode only
  bool measured_exact = true;
};

struct PluckOptions {
  ProbOptions prob;
  std::size_t max_iterations = 100000;
  std::size_t classical_max_petals = 16;
  bool measure_error = true;
};

/// Repeatedly replaces a (d0, eps)-sunflower inside an oversized ℓ-slice
/// (ℓ ≤ 2w) by its core until the family is r-small. Throws SunflowerNotFound(ℓ).
PluckResult pluck(const SetFamily& fam, const Dist& d0, const Rational& eps, std::uint64_t r, std::size_t w,
                  const PluckOptions& opt = {});

}  // namespace monoforge::approx
