#include "monoforge/linalg/gf2e.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "monoforge/errors.hpp"

namespace monoforge::linalg {

namespace {

int poly_degree(std::uint64_t p) { return p ? 63 - std::countl_zero(p) : -1; }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = poly_degree(m);
  for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) a ^= m << (d - dm);
  return a;
}

}  // namespace

bool is_irreducible_f2(std::uint32_t poly) {
  const int d = poly_degree(poly);
  if (d < 1) return false;
  // Trial division by every polynomial of degree 1..d/2.
  for (std::uint64_t f = 2; poly_degree(f) <= d / 2; ++f)
    if (poly_mod(poly, f) == 0) return false;
  return true;
}

std::uint32_t default_modulus(unsigned l) {
  if (l < 1 || l > 16) throw std::invalid_argument("extension degree must be in [1, 16]");
  for (std::uint32_t p = 1U << l; p < (2U << l); ++p)
    if (is_irreducible_f2(p)) return p;
  throw std::logic_error("no irreducible polynomial found");
}

GF2eCtx::GF2eCtx(unsigned l) : l_(l), modulus_(default_modulus(l)) {}

GF2eCtx::GF2eCtx(unsigned l, std::uint32_t modulus) : l_(l), modulus_(modulus) {
  if (l < 1 || l > 16) throw std::invalid_argument("extension degree must be in [1, 16]");
  if (poly_degree(modulus) != static_cast<int>(l) || !is_irreducible_f2(modulus))
    throw std::invalid_argument("modulus " + std::to_string(modulus) + " is not irreducible of degree " +
                                std::to_string(l));
}

Gf GF2eCtx::mul(Gf a, Gf b) const noexcept {
  std::uint64_t prod = 0;
  for (std::uint64_t x = a; b; b >>= 1, x <<= 1)
    if (b & 1U) prod ^= x;
  return static_cast<Gf>(poly_mod(prod, modulus_));
}

Gf GF2eCtx::pow(Gf a, std::uint64_t e) const noexcept {
  Gf result = 1;
  while (e) {
    if (e & 1U) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Gf GF2eCtx::inv(Gf a) const {
  if (a == 0) throw DivisionByZero();
  return pow(a, size() - 2);
}

FieldBasis::FieldBasis(const GF2eCtx& ctx) : FieldBasis(ctx, [&] {
  std::vector<Gf> b;
  for (unsigned i = 0; i < ctx.degree(); ++i) b.push_back(Gf{1} << i);
  return b;
}()) {}

FieldBasis::FieldBasis(const GF2eCtx& ctx, std::vector<Gf> basis) : ctx_(ctx), basis_(std::move(basis)) {
  const unsigned l = ctx_.degree();
  if (basis_.size() != l) throw std::invalid_argument("basis must have exactly l elements");
  // Invert the l×l matrix B whose column j is b_j, by Gauss-Jordan on [B | I].
  std::vector<std::uint64_t> aug(l);
  for (unsigned i = 0; i < l; ++i) {
    std::uint64_t row = 0;
    for (unsigned j = 0; j < l; ++j)
      if ((basis_[j] >> i) & 1U) row |= std::uint64_t{1} << j;
    aug[i] = row | (std::uint64_t{1} << (l + i));
  }
  for (unsigned c = 0; c < l; ++c) {
    unsigned p = c;
    while (p < l && !((aug[p] >> c) & 1U)) ++p;
    if (p == l) throw std::invalid_argument("field elements are linearly dependent");
    std::swap(aug[c], aug[p]);
    for (unsigned r = 0; r < l; ++r)
      if (r != c && ((aug[r] >> c) & 1U)) aug[r] ^= aug[c];
  }
  inverse_rows_.resize(l);
  for (unsigned i = 0; i < l; ++i) inverse_rows_[i] = static_cast<std::uint32_t>(aug[i] >> l);
}

std::uint32_t FieldBasis::coordinate_mask(Gf a) const {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < inverse_rows_.size(); ++i)
    if (std::popcount(inverse_rows_[i] & a) & 1) out |= std::uint32_t{1} << i;
  return out;
}

BitVector FieldBasis::coordinates(Gf a) const {
  return BitVector::from_mask(coordinate_mask(a), ctx_.degree());
}

Gf FieldBasis::from_coordinates(std::uint32_t mask) const {
  Gf a = 0;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if ((mask >> i) & 1U) a ^= basis_[i];
  return a;
}

BitVector basis_expand(const FieldBasis& basis, const std::vector<Gf>& v) {
  const unsigned l = basis.ctx().degree();
  BitVector out(l * v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const auto c = basis.coordinate_mask(v[j]);
    for (unsigned i = 0; i < l; ++i)
      if ((c >> i) & 1U) out.set(j * l + i);
  }
  return out;
}

std::vector<Gf> GfMatrix::row(std::size_t i) const {
  return {a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<Gf> GfMatrix::combine_rows(const std::vector<Gf>& w) const {
  std::vector<Gf> out(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (w[i] == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j) out[j] ^= ctx_.mul(w[i], at(i, j));
  }
  return out;
}

std::vector<std::vector<Gf>> GfMatrix::rref(std::vector<std::size_t>* pivots) const {
  std::vector<std::vector<Gf>> m;
  for (std::size_t i = 0; i < rows_; ++i) m.push_back(row(i));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t p = rank;
    while (p < rows_ && m[p][c] == 0) ++p;
    if (p == rows_) continue;
    std::swap(m[rank], m[p]);
    const Gf s = ctx_.inv(m[rank][c]);
    for (auto& x : m[rank]) x = ctx_.mul(x, s);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Gf f = m[r][c];
      for (std::size_t j = 0; j < cols_; ++j) m[r][j] ^= ctx_.mul(f, m[rank][j]);
    }
    if (pivots) pivots->push_back(c);
    ++rank;
  }
  m.resize(rank);
  return m;
}

std::size_t GfMatrix::rank() const { return rref(nullptr).size(); }

std::vector<std::vector<Gf>> GfMatrix::kernel() const {
  std::vector<std::size_t> pivots;
  const auto r = rref(&pivots);
  std::vector<std::uint8_t> is_pivot(cols_, 0);
  for (auto p : pivots) is_pivot[p] = 1;
  std::vector<std::vector<Gf>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Gf> x(cols_, 0);
    x[f] = 1;
    // Characteristic 2: -r[i][f] = r[i][f].
    for (std::size_t i = 0; i < r.size(); ++i) x[pivots[i]] = r[i][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace monoforge::linalg
