#include "monoforge/rank/cauchy_binet.hpp"

#include <bit>
#include <cstdint>
#include <unordered_map>

#include "monoforge/errors.hpp"

namespace monoforge::rank {

using algebra::Monomial;
using algebra::SparsePoly;
using algebra::VarId;

SparsePoly symbolic_determinant(const std::vector<std::vector<SparsePoly>>& e) {
  const std::size_t n = e.size();
  if (n > 20) throw EnumerationTooLarge("symbolic determinant limited to 20 rows");
  for (const auto& row : e)
    if (row.size() != n) throw std::invalid_argument("matrix is not square");
  // memo[mask] = determinant of the rows popcount(mask).. restricted to columns outside mask.
  std::unordered_map<std::uint32_t, SparsePoly> memo;
  const std::uint32_t full = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  auto rec = [&](auto&& self, std::uint32_t mask) -> SparsePoly {
    if (mask == full) return SparsePoly::constant(1);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
    SparsePoly acc;
    std::size_t free_before = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (mask >> c & 1U) continue;
      if (!e[row][c].is_zero()) {
        SparsePoly term = e[row][c] * self(self, mask | (std::uint32_t{1} << c));
        if (free_before % 2) term *= Rational(-1);
        acc += term;
      }
      ++free_before;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return rec(rec, 0);
}

CauchyBinetResult cauchy_binet_poly(const linalg::QMatrix& a) {
  const std::size_t n = a.rows(), m = a.cols();
  if (n > 6 || m > 14)
    throw EnumerationTooLarge("Cauchy-Binet enumeration needs at most 6 rows and 14 columns, got " +
                              std::to_string(n) + "x" + std::to_string(m));
  CauchyBinetResult res;
  std::vector<std::size_t> sub;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != n) continue;
    sub.clear();
    std::vector<std::pair<VarId, std::uint32_t>> factors;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1U) sub.push_back(i), factors.emplace_back(static_cast<VarId>(i), 1);
    const Rational d = linalg::determinant(a.select_columns(sub));
    if (d != 0) res.direct.add_term(Monomial(factors), d * d);
  }

  std::vector<std::vector<SparsePoly>> gram(n, std::vector<SparsePoly>(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t i = 0; i < m; ++i) {
        const Rational c = a.at(p, i) * a.at(q, i);
        if (c != 0) gram[p][q].add_term(Monomial::variable(static_cast<VarId>(i), 1), c);
      }
  res.via_det = symbolic_determinant(gram);
  res.equal = algebra::poly_equal(res.direct, res.via_det);

  // P(1_S) is the sum of coefficients of monomials supported inside S.
  std::vector<std::pair<std::uint32_t, Rational>> terms;
  for (const auto& [mono, coef] : res.direct.terms()) {
    std::uint32_t supp = 0;
    for (const auto& [v, e] : mono.factors()) supp |= std::uint32_t{1} << v;
    terms.emplace_back(supp, coef);
  }
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    Rational val = 0;
    for (const auto& [supp, coef] : terms)
      if ((supp & ~mask) == 0) val += coef;
    sub.clear();
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1U) sub.push_back(i);
    const bool full = n == 0 || (sub.size() >= n && linalg::rank(a.select_columns(sub)) == n);
    if ((val > 0) != full) res.positivity_link = false;
    ++res.points_checked;
  }
  return res;
}

namespace {

std::uint64_t ball_bound(std::size_t dim, std::size_t s) {
  std::uint64_t total = 0, b = 1;
  for (std::size_t i = 0; i <= std::min(dim, s); ++i) {
    total += b;
    b = b * (dim - i) / (i + 1);
  }
  return total;
}

std::uint64_t ball_size(std::size_t n, std::size_t s) { return ball_bound(n, s); }

// Calls f on every x ∈ {0,1}ⁿ with |x| ≤ s, as a sorted support.
template <class F>
void for_each_ball_point(std::size_t n, std::size_t s, F&& f) {
  std::vector<std::size_t> supp;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    f(supp);
    if (supp.size() == s) return;
    for (std::size_t i = start; i < n; ++i) {
      supp.push_back(i);
      self(self, i + 1);
      supp.pop_back();
    }
  };
  rec(rec, 0);
}

linalg::BitMatrix generator_matrix(const std::vector<linalg::BitVector>& gens, std::size_t n) {
  for (const auto& g : gens)
    if (g.size() != n) throw std::invalid_argument("generator length differs from n");
  return linalg::BitMatrix::from_rows(gens, n);
}

}  // namespace

BallCount count_ball_by_span(const std::vector<linalg::BitVector>& gens, std::size_t n, std::size_t s) {
  const auto basis = linalg::row_echelon_basis(generator_matrix(gens, n));
  BallCount bc;
  bc.dim = basis.size();
  if (bc.dim > 20) throw EnumerationTooLarge("subspace dimension " + std::to_string(bc.dim) + " exceeds 20");
  bc.route = "span";
  linalg::BitVector v(n);
  // Gray-code walk over all 2^dim combinations.
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << bc.dim); ++i) {
    if (i) v ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
    if (v.popcount() <= s) ++bc.count;
  }
  bc.bound = ball_bound(bc.dim, s);
  bc.holds = bc.count <= bc.bound;
  return bc;
}

BallCount count_ball_by_ball(const std::vector<linalg::BitVector>& gens, std::size_t n, std::size_t s) {
  const auto mat = generator_matrix(gens, n);
  BallCount bc;
  bc.dim = mat.rank();
  if (ball_size(n, s) > (std::uint64_t{1} << 24))
    throw EnumerationTooLarge("Hamming ball exceeds 2^24 points");
  bc.route = "ball";
  const auto basis = linalg::row_echelon_basis(mat);
  const auto echelon = linalg::BitMatrix::from_rows(basis, n);
  for_each_ball_point(n, s, [&](const std::vector<std::size_t>& supp) {
    linalg::BitVector x(n);
    for (auto i : supp) x.set(i);
    if (x.is_zero() || echelon.row_space_contains(x)) ++bc.count;
  });
  bc.bound = ball_bound(bc.dim, s);
  bc.holds = bc.count <= bc.bound;
  return bc;
}

BallCount count_ball_subspace(const std::vector<linalg::BitVector>& gens, std::size_t n, std::size_t s) {
  const std::size_t dim = generator_matrix(gens, n).rank();
  if (dim <= 20) return count_ball_by_span(gens, n, s);
  return count_ball_by_ball(gens, n, s);
}

BallCount count_ball_subspace(const linalg::QMatrix& gens, std::size_t s) {
  const std::size_t n = gens.cols();
  if (n > 20) throw EnumerationTooLarge("ball enumeration limited to n ≤ 20");
  BallCount bc;
  bc.route = "ball";
  bc.dim = linalg::rank(gens);
  linalg::QMatrix ext(gens.rows() + 1, n);
  for (std::size_t i = 0; i < gens.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) ext.at(i, j) = gens.at(i, j);
  for_each_ball_point(n, s, [&](const std::vector<std::size_t>& supp) {
    for (std::size_t j = 0; j < n; ++j) ext.at(gens.rows(), j) = 0;
    for (auto i : supp) ext.at(gens.rows(), i) = 1;
    if (supp.empty() || linalg::rank(ext) == bc.dim) ++bc.count;
  });
  bc.bound = ball_bound(bc.dim, s);
  bc.holds = bc.count <= bc.bound;
  return bc;
}

}  // namespace monoforge::rank
