#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "monoforge/algebra/rational.hpp"
#include "monoforge/approx/set_family.hpp"
#include "monoforge/linalg/bitmatrix.hpp"
#include "monoforge/random.hpp"
#include "monoforge/rank/real_matrix.hpp"
#include "monoforge/stats.hpp"

namespace monoforge::approx {

/// Distribution over {0,1}ⁿ (n ≤ 64) as bit masks. Every distribution can be
/// sampled; small ones also carry their exact support with integer weights
/// over a common denominator.
class Dist {
 public:
  using Sampler = std::function<Mask(Rng&)>;

  std::size_t n() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }
  bool exact_capable() const noexcept { return exact_; }
  const std::vector<Mask>& points() const;
  const std::vector<Integer>& weights() const;
  const Integer& denominator() const;
  Rational probability_of(Mask x) const;

  Mask sample(Rng& rng) const;

  static constexpr std::size_t kExactCap = std::size_t{1} << 20;

  static Dist explicit_points(std::size_t n, const std::vector<Mask>& points, const std::vector<Rational>& weights,
                              std::string name = "explicit");
  static Dist uniform(std::size_t n);
  static Dist uniform_weight(std::size_t n, std::size_t weight);
  static Dist point_mass(std::size_t n, Mask x);
  /// a_j = [⟨column j, u⟩ = 0], u uniform in 𝔽₂^rows.
  static Dist d0_f2(const linalg::BitMatrix& m);
  /// a_j = [⟨column j, u⟩ = 0] over ℚ, u uniform in {-1,0,1}ⁿ.
  static Dist d0_real(const rank::RealMatrix01& m);
  /// weight·a + (1 - weight)·b.
  static Dist mixture(const Dist& a, const Dist& b, const Rational& weight_a = make_rational(1, 2));
  /// Restriction to {x : keep(x)}, renormalized. Sampling rejects up to 10^6 draws.
  Dist conditioned(const std::function<bool(Mask)>& keep, std::string name) const;

 private:
  void set_exact(std::vector<std::pair<Mask, Integer>> pts, Integer denom);
  void build_cumulative();
  std::size_t n_ = 0;
  std::string name_;
  bool exact_ = false;
  std::vector<Mask> points_;
  std::vector<Integer> weights_;
  Integer denom_ = 1;
  std::shared_ptr<std::vector<Integer>> cumulative_;
  Sampler sampler_;
};

/// Pr[pred(x)] exactly. Throws invalid_argument if the distribution is not exact capable.
Rational prob_exact(const Dist& d, const std::function<bool(Mask)>& pred);
Rational prob_exact_serial(const Dist& d, const std::function<bool(Mask)>& pred);

struct McEstimate {
  std::size_t hits = 0, trials = 0;
  stats::Interval ci;
  double estimate() const noexcept { return trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0; }
};

/// Sharded Monte Carlo; independent of thread count.
McEstimate prob_mc(const Dist& d, const std::function<bool(Mask)>& pred, std::size_t trials, std::uint64_t seed,
                   std::uint64_t stream = 0x6100);

/// Exact when possible, otherwise Monte Carlo. `exact` tells which.
struct Probability {
  bool exact = false;
  Rational value;  // exact value, or hits/trials
  McEstimate mc;
  double lower() const;  // exact value or CI lower bound
  double upper() const;
  double point() const;
};

enum class ProbMode { Auto, Exact, MonteCarlo };
Probability probability(const Dist& d, const std::function<bool(Mask)>& pred, ProbMode mode, std::size_t trials,
                        std::uint64_t seed, std::uint64_t stream = 0x6100);

}  // namespace monoforge::approx
