#include "monoforge/linalg/qmatrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace monoforge::linalg {

QMatrix QMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  QMatrix s(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols.size(); ++k) s.at(i, k) = at(i, cols[k]);
  return s;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

namespace {

struct IntRows {
  std::vector<std::vector<Integer>> a;
  Rational scale = 1;  // product of the factors the rows were multiplied by
};

IntRows clear_denominators(const QMatrix& m) {
  IntRows out;
  out.a.assign(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) out.a[i][j] = m.at(i, j).get_num() * (l / m.at(i, j).get_den());
    out.scale *= Rational(l);
  }
  return out;
}

// Fraction-free echelon form in place. Returns the rank; *sign tracks swaps.
std::size_t bareiss(std::vector<std::vector<Integer>>& a, std::size_t cols, int* sign) {
  const std::size_t rows = a.size();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      if (sign) *sign = -*sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank_exact(const QMatrix& m) {
  auto ir = clear_denominators(m);
  return bareiss(ir.a, m.cols(), nullptr);
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  auto ir = clear_denominators(m);
  int sign = 1;
  if (bareiss(ir.a, m.cols(), &sign) < m.rows()) return 0;
  Rational d(ir.a.back().back());
  d *= sign;
  return d / ir.scale;
}

namespace modp {

std::uint64_t add(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t s = a + b;
  return s >= kRankPrime ? s - kRankPrime : s;
}

std::uint64_t sub(std::uint64_t a, std::uint64_t b) noexcept { return a >= b ? a - b : a + kRankPrime - b; }

std::uint64_t mul(std::uint64_t a, std::uint64_t b) noexcept {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kRankPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  return add(lo, hi % kRankPrime);
}

std::uint64_t inv(std::uint64_t a) noexcept {
  std::uint64_t result = 1, e = kRankPrime - 2;
  while (e) {
    if (e & 1U) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::optional<std::uint64_t> reduce(const Rational& q) {
  static const Integer p(std::to_string(kRankPrime));
  Integer num = q.get_num() % p;
  if (num < 0) num += p;
  const Integer den = q.get_den() % p;
  if (den == 0) return std::nullopt;
  auto to_u64 = [](const Integer& z) {
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof v, 0, 0, z.get_mpz_t());
    return v;
  };
  return mul(to_u64(num), inv(to_u64(den)));
}

}  // namespace modp

std::optional<std::size_t> rank_mod_p(const QMatrix& m) {
  std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto r = modp::reduce(m.at(i, j));
      if (!r) return std::nullopt;
      a[i][j] = *r;
    }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    const std::uint64_t s = modp::inv(a[r][c]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (a[i][c] == 0) continue;
      const std::uint64_t f = modp::mul(a[i][c], s);
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] = modp::sub(a[i][j], modp::mul(f, a[r][j]));
    }
    ++r;
  }
  return r;
}

std::size_t rank(const QMatrix& m) {
  const auto fast = rank_mod_p(m);
  if (fast && *fast == std::min(m.rows(), m.cols())) return *fast;
  return rank_exact(m);
}

}  // namespace monoforge::linalg
