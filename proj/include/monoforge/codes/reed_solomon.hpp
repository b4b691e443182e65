#pragma once

#include <cstddef>
#include <vector>

#include "monoforge/codes/linear_code.hpp"
#include "monoforge/linalg/gf2e.hpp"

namespace monoforge::codes {

using linalg::FieldBasis;
using linalg::GF2eCtx;
using linalg::Gf;
using linalg::GfMatrix;

/// Reed–Solomon code of dimension n and length m over GF(2^l).
struct RSCode {
  GF2eCtx ctx;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Gf> points;

  /// Points default to the field elements 0, 1, ..., m-1 in bit-integer order.
  /// Throws std::invalid_argument on repeated points, m > 2^l, or n > m.
  RSCode(const GF2eCtx& ctx, std::size_t n, std::size_t m, std::vector<Gf> points = {});
};

/// G[i][j] = points[j]^i for i < n.
GfMatrix rs_generator(const RSCode& code);

/// Rows γ(b_j · g_i) at index i·l + j.
LinearCodeF2 binary_expand_code(const RSCode& code, const FieldBasis& basis);

struct QaryStats {
  std::size_t distance = 0;
  std::size_t dual_distance = 0;
  bool dual_by_enumeration = false;  // also cross-checked by enumerating the dual
};

/// Distance by enumerating all q^n codewords; dual distance as the smallest
/// set of dependent columns of G, and additionally by enumerating the dual
/// (a GF(q) kernel basis of G) when q^{m-n} <= 2^24, with both required to agree.
QaryStats qary_stats(const GfMatrix& gen);

}  // namespace monoforge::codes
