#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "monoforge/algebra/rational.hpp"

namespace monoforge::algebra {

using VarId = std::uint32_t;
using Assignment = std::map<VarId, Rational>;

/// Product of variables with positive exponents. The empty monomial is 1.
class Monomial {
 public:
  using Factor = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  /// Accepts factors in any order; repeated variables are merged and zero
  /// exponents dropped.
  explicit Monomial(std::vector<Factor> factors);

  static Monomial variable(VarId v, std::uint32_t exponent = 1);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  std::uint32_t degree() const noexcept;
  std::uint32_t exponent_of(VarId v) const noexcept;
  bool is_one() const noexcept { return factors_.empty(); }
  bool is_multilinear() const noexcept;

  Monomial operator*(const Monomial& other) const;
  Monomial pow(std::uint32_t e) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.factors_ <=> b.factors_; }

 private:
  std::vector<Factor> factors_;  // strictly increasing VarId, exponents > 0
};

/// Exact sparse polynomial over the rationals. Never stores a zero coefficient.
class SparsePoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  SparsePoly() = default;
  static SparsePoly constant(const Rational& c);
  static SparsePoly variable(VarId v);

  /// Adds c·m to the polynomial.
  void add_term(const Monomial& m, const Rational& c);

  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;

  std::uint32_t degree() const noexcept;
  bool is_monotone() const noexcept;
  std::set<VarId> variables() const;

  /// Throws MissingVariable when a variable of the polynomial is unassigned.
  Rational evaluate(const Assignment& at) const;

  SparsePoly& operator+=(const SparsePoly& other);
  SparsePoly& operator-=(const SparsePoly& other);
  SparsePoly& operator*=(const Rational& c);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(SparsePoly a, const Rational& c) { return a *= c; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) { return multiply(a, b, 0); }

  /// Product; when term_cap > 0 and the result would exceed it, throws
  /// TermBudgetExceeded.
  static SparsePoly multiply(const SparsePoly& a, const SparsePoly& b, std::size_t term_cap);

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

 private:
  Terms terms_;
};

/// True iff p and q have identical canonical term maps.
bool poly_equal(const SparsePoly& p, const SparsePoly& q);

/// Partition of a variable universe into disjoint blocks.
class VarPartition {
 public:
  VarPartition() = default;
  /// Throws std::invalid_argument if blocks overlap.
  explicit VarPartition(std::vector<std::set<VarId>> blocks);

  const std::vector<std::set<VarId>>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  /// Index of the block holding v, or size() if none.
  std::size_t block_of(VarId v) const;
  std::set<VarId> universe() const;

 private:
  std::vector<std::set<VarId>> blocks_;
  std::map<VarId, std::size_t> owner_;
};

/// Every monomial takes exactly one variable, with exponent 1, from every block.
bool is_set_multilinear(const SparsePoly& p, const VarPartition& part);

}  // namespace monoforge::algebra
