#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "monoforge/linalg/qmatrix.hpp"
#include "monoforge/random.hpp"

namespace monoforge::rank {

/// 0/1 matrix over the rationals stored by column supports.
struct RealMatrix01 {
  std::size_t n = 0;  // rows
  std::vector<std::vector<std::uint32_t>> cols;  // sorted row indices per column
  std::size_t s = 0;  // recorded sparsity bound

  std::size_t m() const noexcept { return cols.size(); }
  std::size_t weight(std::size_t j) const noexcept { return cols[j].size(); }
  linalg::QMatrix to_qmatrix() const;
  static RealMatrix01 from_qmatrix(const linalg::QMatrix& q);  // entries must be 0/1
};

/// "q01 <n> <m> <s>" then one line per column listing its 0-based row indices.
RealMatrix01 read_q01(std::istream& in);
void write_q01(std::ostream& out, const RealMatrix01& m);

/// ⌈√(log2 m)⌉.
std::size_t default_k(std::size_t m);
/// 200·k².
std::size_t default_s(std::size_t k);

struct SparseParams {
  std::size_t n = 0;
  std::size_t m = 0;  // 0 means n²
  std::optional<std::size_t> s_override;
  // Resolved by sample_sparse_matrix.
  std::size_t k = 0;
  std::size_t s = 0;
};

/// Each column uniform over {v ∈ {0,1}^n : |v| ≤ s}. Without an override the
/// default s = 200k² must not exceed n (ParameterDegeneration); an override
/// above n throws SparsityExceedsRows.
RealMatrix01 sample_sparse_matrix(SparseParams& params, std::uint64_t seed);

/// supp(column τ_j) shares at least c rows with the union of the earlier
/// columns of τ. j is 1-based.
bool is_c_contained(const RealMatrix01& m, const std::vector<std::size_t>& tau, std::size_t j, std::size_t c);

/// Whether the selected columns span ℚ^n, via incremental elimination modulo
/// a 61-bit prime with an exact Bareiss fallback when the modular rank is short.
bool full_row_rank(const RealMatrix01& m, const std::vector<std::size_t>& cols);

/// Uniform integer below a positive big bound.
Integer uniform_below_big(Rng& rng, const Integer& bound);

}  // namespace monoforge::rank
