#pragma once

#include <cstddef>
#include <vector>

#include "monoforge/algebra/polynomial.hpp"
#include "monoforge/linalg/bitmatrix.hpp"
#include "monoforge/linalg/qmatrix.hpp"

namespace monoforge::rank {

struct CauchyBinetResult {
  algebra::SparsePoly direct;  // Σ_S det(A[S])² ∏_{i∈S} x_i
  algebra::SparsePoly via_det; // det(A·diag(x)·Aᵀ)
  bool equal = false;
  bool positivity_link = true;  // P(1_S) > 0 ⇔ rank(A[S]) = rows, on every S
  std::size_t points_checked = 0;
};

/// Variable i is the indicator of column i. Throws EnumerationTooLarge beyond
/// 6 rows or 14 columns.
CauchyBinetResult cauchy_binet_poly(const linalg::QMatrix& a);

/// Symbolic determinant of a square matrix with polynomial entries by
/// memoized cofactor expansion (division free).
algebra::SparsePoly symbolic_determinant(const std::vector<std::vector<algebra::SparsePoly>>& entries);

struct BallCount {
  std::uint64_t count = 0;
  std::uint64_t bound = 0;  // Σ_{i≤s} C(dim, i)
  std::size_t dim = 0;
  bool holds = false;
  const char* route = "";
};

/// |V ∩ {x ∈ {0,1}ⁿ : |x| ≤ s}| for V = span(generators) ⊆ 𝔽₂ⁿ. Enumerates V
/// when dim ≤ 20, otherwise the ball when it has at most 2^24 points.
BallCount count_ball_subspace(const std::vector<linalg::BitVector>& generators, std::size_t n, std::size_t s);
BallCount count_ball_by_span(const std::vector<linalg::BitVector>& generators, std::size_t n, std::size_t s);
BallCount count_ball_by_ball(const std::vector<linalg::BitVector>& generators, std::size_t n, std::size_t s);

/// Rational variant: V is the row space of `generators` (rows × n); the ball is
/// enumerated (n ≤ 20) and membership decided by exact rank.
BallCount count_ball_subspace(const linalg::QMatrix& generators, std::size_t s);

}  // namespace monoforge::rank
