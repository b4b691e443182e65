#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monoforge/linalg/bitmatrix.hpp"

namespace monoforge::linalg {

/// Field element of GF(2^l): bit i is the coefficient of α^i.
using Gf = std::uint32_t;

/// True iff the bit-encoded polynomial is irreducible over GF(2).
bool is_irreducible_f2(std::uint32_t poly);

/// Least irreducible polynomial of degree l in bit-integer order.
std::uint32_t default_modulus(unsigned l);

/// GF(2^l) for 1 <= l <= 16.
class GF2eCtx {
 public:
  explicit GF2eCtx(unsigned l);
  /// Throws std::invalid_argument unless modulus is irreducible of degree l.
  GF2eCtx(unsigned l, std::uint32_t modulus);

  unsigned degree() const noexcept { return l_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  std::uint32_t size() const noexcept { return std::uint32_t{1} << l_; }
  bool contains(Gf a) const noexcept { return a < size(); }

  Gf add(Gf a, Gf b) const noexcept { return a ^ b; }
  Gf mul(Gf a, Gf b) const noexcept;
  Gf pow(Gf a, std::uint64_t e) const noexcept;
  /// Throws DivisionByZero for a = 0.
  Gf inv(Gf a) const;

  friend bool operator==(const GF2eCtx& a, const GF2eCtx& b) noexcept {
    return a.l_ == b.l_ && a.modulus_ == b.modulus_;
  }

 private:
  unsigned l_;
  std::uint32_t modulus_;
};

/// A GF(2)-basis b_1..b_l of GF(2^l) with the coordinate map φ.
class FieldBasis {
 public:
  /// Polynomial basis 1, α, ..., α^{l-1}.
  explicit FieldBasis(const GF2eCtx& ctx);
  /// Throws std::invalid_argument if the elements are not a basis.
  FieldBasis(const GF2eCtx& ctx, std::vector<Gf> basis);

  const GF2eCtx& ctx() const noexcept { return ctx_; }
  const std::vector<Gf>& elements() const noexcept { return basis_; }

  /// φ(a): coordinates of a with respect to the basis, as an l-bit vector.
  BitVector coordinates(Gf a) const;
  std::uint32_t coordinate_mask(Gf a) const;
  /// Inverse of φ.
  Gf from_coordinates(std::uint32_t mask) const;

 private:
  GF2eCtx ctx_;
  std::vector<Gf> basis_;
  std::vector<std::uint32_t> inverse_rows_;  // row i: mask of a-bits whose parity is coordinate i
};

/// γ(v): concatenated coordinates, coordinate i of v_j at index j·l + i.
BitVector basis_expand(const FieldBasis& basis, const std::vector<Gf>& v);

/// Dense matrix over GF(2^l).
class GfMatrix {
 public:
  GfMatrix(const GF2eCtx& ctx, std::size_t rows, std::size_t cols)
      : ctx_(ctx), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  const GF2eCtx& ctx() const noexcept { return ctx_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Gf at(std::size_t i, std::size_t j) const noexcept { return a_[i * cols_ + j]; }
  Gf& at(std::size_t i, std::size_t j) noexcept { return a_[i * cols_ + j]; }
  std::vector<Gf> row(std::size_t i) const;

  /// wᵀ · A.
  std::vector<Gf> combine_rows(const std::vector<Gf>& w) const;
  std::size_t rank() const;
  /// Basis of {x : A·x = 0}.
  std::vector<std::vector<Gf>> kernel() const;

 private:
  std::vector<std::vector<Gf>> rref(std::vector<std::size_t>* pivots) const;
  GF2eCtx ctx_;
  std::size_t rows_, cols_;
  std::vector<Gf> a_;
};

}  // namespace monoforge::linalg
