#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "monoforge/approx/bool_circuit.hpp"
#include "monoforge/approx/distribution.hpp"
#include "monoforge/approx/set_family.hpp"
#include "monoforge/approx/sunflower.hpp"

namespace monoforge::approx {

/// Minimal satisfying sets of a monotone function on n ≤ 20 variables.
SetFamily minterms(std::size_t n, const std::function<bool(Mask)>& f);
/// OR of ANDs over the family, as a fan-in-2 circuit on variables 0..n-1.
BoolCircuit dnf_circuit(const SetFamily& fam);

struct GateReport {
  std::size_t gate_id = 0;
  std::string kind;  // "input", "const", "and", "or"
  std::size_t combined_size = 0, final_size = 0, truncated = 0;
  Probability e0;  // d0 mass where the approximation is 1 and the combined sub-DNF is 0
  Probability e1;  // d1 mass where the approximation is 0 and the combined sub-DNF is 1
  std::vector<PluckStep> plucks;
};

struct ApproximationReport {
  SetFamily final_family;
  std::vector<GateReport> gates;
  std::size_t gate_count = 0;
  bool exact = true;
  Rational total_e0, total_e1;  // exact mode
  double total_e0_point = 0, total_e1_point = 0;
  Probability agreement;  // Pr_{x∼(d0+d1)/2}[final(x) = circuit(x)]
};

struct ApproxOptions {
  PluckOptions pluck;
  std::size_t w = 1;
  std::uint64_t r = 1;
  Rational eps = make_rational(1, 10);
};

/// Gate-by-gate (w, r)-DNF approximation. OR gates pluck the union, AND gates
/// pluck the pairwise unions then drop sets wider than w. Combined families
/// are reduced by absorption first, which leaves their DNF unchanged.
ApproximationReport approximate_circuit(const BoolCircuit& c, const Dist& d0, const Dist& d1, const ApproxOptions& opt);

struct SpreadVerdict {
  bool spread = true;
  bool exact = true;
  std::size_t sets_checked = 0;
  std::size_t max_size = 0;
  Mask worst_set = 0;
  Rational worst_probability;  // exact mode; estimate otherwise
  double worst_ratio = 0;      // Pr[A ⊆ x] · q^{|A|}
};

/// Checks Pr[A ⊆ x] ≤ q^{-|A|} for all |A| ≤ min(t, 4) exactly (n ≤ 20), or for
/// `samples` random sets A with Monte Carlo probabilities (CI lower bound).
SpreadVerdict spread_check(const Dist& d, std::size_t t, const Rational& q, ProbMode mode = ProbMode::Auto,
                           std::size_t samples = 200, std::size_t trials = 20000, std::uint64_t seed = 1);
SpreadVerdict spread_check_serial(const Dist& d, std::size_t t, const Rational& q);

struct CriterionParams {
  Rational alpha = 1;
  Rational q = 1;
  std::size_t t = 0, w = 0;
  Rational r_w = 1;
  Rational c = make_rational(1, 20);
  std::size_t n = 0;
};

struct CriterionValue {
  Rational value;  // (c α q / r_w)^w
  bool width_ok = false;   // w ≤ t/2
  bool q_lower_ok = false; // 8 r_w ≤ q
  bool q_upper_ok = false; // q ≤ r_w n
  bool vacuous = false;    // w = 0
  bool applicable() const noexcept { return width_ok && q_lower_ok && q_upper_ok && !vacuous; }
};
CriterionValue lb_criterion(const CriterionParams& p);

/// Pr_{x∼d}[fam(x) = f(x)].
Probability dnf_agreement(const SetFamily& fam, const std::function<bool(Mask)>& f, const Dist& d,
                          ProbMode mode = ProbMode::Auto, std::size_t trials = 20000, std::uint64_t seed = 1);

nlohmann::ordered_json probability_to_json(const Probability& p);
nlohmann::ordered_json report_to_json(const ApproximationReport& r);
nlohmann::ordered_json criterion_to_json(const CriterionParams& p, const CriterionValue& v);

}  // namespace monoforge::approx
