#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace monoforge::linalg {

/// Packed GF(2) vector.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  static BitVector from_string(std::string_view bits);  // "0110"
  static BitVector from_mask(std::uint64_t mask, std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    words_[i >> 6] = v ? (words_[i >> 6] | bit) : (words_[i >> 6] & ~bit);
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& o) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) noexcept { return a ^= b; }

  std::size_t popcount() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool is_zero() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  /// Parity of the bitwise AND.
  bool dot(const BitVector& o) const noexcept {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
    return std::popcount(acc) & 1;
  }
  /// Index of the lowest set bit, or size() when zero.
  std::size_t first_set() const noexcept;

  std::vector<std::uint64_t>& words() noexcept { return words_; }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend auto operator<=>(const BitVector& a, const BitVector& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense GF(2) matrix stored as packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows, BitVector(cols)), cols_(cols) {}
  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(const std::vector<BitVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool get(std::size_t i, std::size_t j) const noexcept { return rows_[i].get(j); }
  void set(std::size_t i, std::size_t j, bool v = true) noexcept { rows_[i].set(j, v); }
  const BitVector& row(std::size_t i) const noexcept { return rows_[i]; }
  BitVector& row(std::size_t i) noexcept { return rows_[i]; }
  BitVector column(std::size_t j) const;

  BitMatrix transpose() const;
  BitMatrix select_columns(const std::vector<std::size_t>& cols) const;
  /// m · w for w of length cols().
  BitVector apply(const BitVector& w) const;
  /// wᵀ · m for w of length rows(): the XOR of the selected rows.
  BitVector combine_rows(const BitVector& w) const;

  std::size_t rank() const;
  bool row_space_contains(const BitVector& v) const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::vector<BitVector> rows_;
  std::size_t cols_ = 0;
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<BitVector> kernel;  // basis of {w : m·w = 0}
};

RankKernel f2_rank_kernel(const BitMatrix& m);

/// Reduced row echelon form of the row space; rows are independent and the
/// pivots strictly increase.
std::vector<BitVector> row_echelon_basis(const BitMatrix& m);

/// "f2 <rows> <cols>" then one 0/1 string per row. Throws ParseError.
BitMatrix read_f2_matrix(std::istream& in);
void write_f2_matrix(std::ostream& out, const BitMatrix& m);

}  // namespace monoforge::linalg
