#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "monoforge/algebra/rational.hpp"

namespace monoforge::linalg {

/// Dense matrix over the rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Rational& at(std::size_t i, std::size_t j) const noexcept { return a_[i * cols_ + j]; }
  Rational& at(std::size_t i, std::size_t j) noexcept { return a_[i * cols_ + j]; }

  QMatrix select_columns(const std::vector<std::size_t>& cols) const;
  QMatrix transpose() const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Exact rank by fraction-free (Bareiss) elimination over the integers.
std::size_t rank_exact(const QMatrix& m);
/// Exact determinant, Bareiss. Throws std::invalid_argument unless square.
Rational determinant(const QMatrix& m);

inline constexpr std::uint64_t kRankPrime = (std::uint64_t{1} << 61) - 1;

/// Rank of the matrix reduced modulo kRankPrime, or nullopt if some
/// denominator vanishes mod p. Never exceeds the rational rank.
std::optional<std::size_t> rank_mod_p(const QMatrix& m);

/// Rational rank. A modular rank equal to min(rows, cols) is already exact;
/// anything smaller is confirmed by Bareiss.
std::size_t rank(const QMatrix& m);

namespace modp {
std::uint64_t add(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t sub(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t mul(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t inv(std::uint64_t a) noexcept;
/// Residue of a rational, nullopt when the denominator is divisible by p.
std::optional<std::uint64_t> reduce(const Rational& q);
}  // namespace modp

}  // namespace monoforge::linalg
