#include "monoforge/linalg/bitmatrix.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "monoforge/errors.hpp"

namespace monoforge::linalg {

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i);
    else if (bits[i] != '0')
      throw ParseError("bit string contains '" + std::string(1, bits[i]) + "'");
  }
  return v;
}

BitVector BitVector::from_mask(std::uint64_t mask, std::size_t n) {
  BitVector v(n);
  if (n > 0) v.words_[0] = n >= 64 ? mask : mask & ((std::uint64_t{1} << n) - 1);
  return v;
}

std::size_t BitVector::first_set() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  return n_;
}

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows, std::size_t cols) {
  BitMatrix m;
  m.cols_ = cols;
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("row length differs from column count");
    m.rows_.push_back(r);
  }
  return m;
}

BitVector BitMatrix::column(std::size_t j) const {
  BitVector c(rows());
  for (std::size_t i = 0; i < rows(); ++i)
    if (get(i, j)) c.set(i);
  return c;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (get(i, j)) t.set(j, i);
  return t;
}

BitMatrix BitMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  BitMatrix s(rows(), cols.size());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (get(i, cols[k])) s.set(i, k);
  return s;
}

BitVector BitMatrix::apply(const BitVector& w) const {
  BitVector out(rows());
  for (std::size_t i = 0; i < rows(); ++i)
    if (rows_[i].dot(w)) out.set(i);
  return out;
}

BitVector BitMatrix::combine_rows(const BitVector& w) const {
  BitVector out(cols_);
  for (std::size_t i = 0; i < rows(); ++i)
    if (w.get(i)) out ^= rows_[i];
  return out;
}

std::vector<BitVector> row_echelon_basis(const BitMatrix& m) {
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && !rows[piv].get(col)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && rows[i].get(col)) rows[i] ^= rows[rank];
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

std::size_t BitMatrix::rank() const { return row_echelon_basis(*this).size(); }

bool BitMatrix::row_space_contains(const BitVector& v) const {
  BitVector r = v;
  for (const auto& b : row_echelon_basis(*this)) {
    const std::size_t p = b.first_set();
    if (r.get(p)) r ^= b;
  }
  return r.is_zero();
}

RankKernel f2_rank_kernel(const BitMatrix& m) {
  const auto basis = row_echelon_basis(m);
  RankKernel out;
  out.rank = basis.size();
  std::vector<std::size_t> pivots;
  std::vector<std::uint8_t> is_pivot(m.cols(), 0);
  for (const auto& b : basis) {
    pivots.push_back(b.first_set());
    is_pivot[pivots.back()] = 1;
  }
  // In RREF each free column f gives the kernel vector e_f + Σ_{rows with bit f} e_pivot.
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector w(m.cols());
    w.set(f);
    for (std::size_t r = 0; r < basis.size(); ++r)
      if (basis[r].get(f)) w.set(pivots[r]);
    out.kernel.push_back(std::move(w));
  }
  return out;
}

BitMatrix read_f2_matrix(std::istream& in) {
  std::string tag;
  long long r = -1, c = -1;
  if (!(in >> tag >> r >> c) || tag != "f2" || r < 0 || c < 0)
    throw ParseError("matrix file must start with 'f2 <rows> <cols>'");
  BitMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  for (long long i = 0; i < r; ++i) {
    std::string bits;
    if (!(in >> bits)) throw ParseError("matrix file ends after " + std::to_string(i) + " rows");
    if (bits.size() != static_cast<std::size_t>(c))
      throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(bits.size()) + " entries");
    m.row(static_cast<std::size_t>(i)) = BitVector::from_string(bits);
  }
  return m;
}

void write_f2_matrix(std::ostream& out, const BitMatrix& m) {
  out << "f2 " << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) out << m.row(i).to_string() << '\n';
}

}  // namespace monoforge::linalg
