#include "monoforge/rank/real_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "monoforge/errors.hpp"

namespace monoforge::rank {

linalg::QMatrix RealMatrix01::to_qmatrix() const {
  linalg::QMatrix q(n, m());
  for (std::size_t j = 0; j < m(); ++j)
    for (auto i : cols[j]) q.at(i, j) = 1;
  return q;
}

RealMatrix01 RealMatrix01::from_qmatrix(const linalg::QMatrix& q) {
  RealMatrix01 r;
  r.n = q.rows();
  r.cols.resize(q.cols());
  for (std::size_t j = 0; j < q.cols(); ++j)
    for (std::size_t i = 0; i < q.rows(); ++i) {
      if (q.at(i, j) == 1)
        r.cols[j].push_back(static_cast<std::uint32_t>(i));
      else if (q.at(i, j) != 0)
        throw std::invalid_argument("matrix entry is not 0/1");
    }
  for (const auto& c : r.cols) r.s = std::max(r.s, c.size());
  return r;
}

RealMatrix01 read_q01(std::istream& in) {
  std::string line, tag;
  if (!std::getline(in, line)) throw ParseError("empty q01 file");
  std::istringstream hs(line);
  long long n = -1, m = -1, s = -1;
  if (!(hs >> tag >> n >> m >> s) || tag != "q01" || n < 0 || m < 0 || s < 0)
    throw ParseError("q01 file must start with 'q01 <n> <m> <s>'");
  RealMatrix01 r;
  r.n = static_cast<std::size_t>(n);
  r.s = static_cast<std::size_t>(s);
  for (long long j = 0; j < m; ++j) {
    if (!std::getline(in, line)) throw ParseError("q01 file ends after " + std::to_string(j) + " columns");
    std::istringstream cs(line);
    std::vector<std::uint32_t> supp;
    long long i = 0;
    while (cs >> i) {
      if (i < 0 || i >= n) throw ParseError("column " + std::to_string(j + 1) + ": row index out of range");
      supp.push_back(static_cast<std::uint32_t>(i));
    }
    if (!cs.eof()) throw ParseError("column " + std::to_string(j + 1) + ": malformed entry");
    std::sort(supp.begin(), supp.end());
    if (std::adjacent_find(supp.begin(), supp.end()) != supp.end())
      throw ParseError("column " + std::to_string(j + 1) + ": repeated row index");
    if (supp.size() > r.s) throw ParseError("column " + std::to_string(j + 1) + " exceeds the sparsity bound");
    r.cols.push_back(std::move(supp));
  }
  return r;
}

void write_q01(std::ostream& out, const RealMatrix01& m) {
  out << "q01 " << m.n << ' ' << m.m() << ' ' << m.s << '\n';
  for (const auto& c : m.cols) {
    for (std::size_t k = 0; k < c.size(); ++k) out << (k ? " " : "") << c[k];
    out << '\n';
  }
}

std::size_t default_k(std::size_t m) {
  return static_cast<std::size_t>(std::ceil(std::sqrt(std::log2(static_cast<double>(m)))));
}

std::size_t default_s(std::size_t k) { return 200 * k * k; }

Integer uniform_below_big(Rng& rng, const Integer& bound) {
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t limbs = (bits + 63) / 64;
  while (true) {
    Integer x = 0;
    for (std::size_t i = 0; i < limbs; ++i) {
      std::uint64_t w = rng();
      if (i + 1 == limbs && bits % 64) w &= (std::uint64_t{1} << (bits % 64)) - 1;
      Integer limb;
      mpz_import(limb.get_mpz_t(), 1, -1, sizeof w, 0, 0, &w);
      x = (x << 64) + limb;
    }
    if (x < bound) return x;
  }
}

RealMatrix01 sample_sparse_matrix(SparseParams& p, std::uint64_t seed) {
  if (p.m == 0) p.m = p.n * p.n;
  p.k = default_k(p.m);
  if (p.s_override) {
    if (*p.s_override > p.n) throw SparsityExceedsRows(*p.s_override, p.n);
    p.s = *p.s_override;
  } else {
    p.s = default_s(p.k);
    if (p.s > p.n)
      throw ParameterDegeneration("default sparsity 200k^2 = " + std::to_string(p.s) + " exceeds n = " +
                                  std::to_string(p.n) + "; pass an explicit sparsity override");
  }
  // Weight w is chosen with probability C(n,w) / Σ_{j≤s} C(n,j), then a uniform w-subset.
  std::vector<Integer> cumulative;
  Integer total = 0;
  for (std::size_t w = 0; w <= p.s; ++w) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), p.n, w);
    total += b;
    cumulative.push_back(total);
  }
  Rng rng = make_rng(seed, 0x5350);
  RealMatrix01 mat;
  mat.n = p.n;
  mat.s = p.s;
  mat.cols.reserve(p.m);
  for (std::size_t j = 0; j < p.m; ++j) {
    const Integer x = uniform_below_big(rng, total);
    const auto w = static_cast<std::uint32_t>(std::upper_bound(cumulative.begin(), cumulative.end(), x) -
                                              cumulative.begin());
    mat.cols.push_back(random_subset(rng, static_cast<std::uint32_t>(p.n), w));
  }
  return mat;
}

bool is_c_contained(const RealMatrix01& m, const std::vector<std::size_t>& tau, std::size_t j, std::size_t c) {
  if (j < 1 || j > tau.size()) throw std::invalid_argument("position outside the tuple");
  for (std::size_t a = 0; a < tau.size(); ++a)
    for (std::size_t b = a + 1; b < tau.size(); ++b)
      if (tau[a] == tau[b]) throw std::invalid_argument("tuple indices must be distinct");
  std::vector<std::uint8_t> seen(m.n, 0);
  for (std::size_t p = 0; p + 1 < j; ++p)
    for (auto i : m.cols.at(tau[p])) seen[i] = 1;
  std::size_t common = 0;
  for (auto i : m.cols.at(tau[j - 1])) common += seen[i];
  return common >= c;
}

bool full_row_rank(const RealMatrix01& m, const std::vector<std::size_t>& cols) {
  namespace mp = linalg::modp;
  const std::size_t n = m.n;
  if (n == 0) return true;
  if (cols.size() < n) return false;
  std::vector<std::vector<std::uint64_t>> basis;  // each normalized to 1 at its pivot
  std::vector<std::size_t> pivots;
  std::vector<std::uint64_t> v(n);
  for (std::size_t j : cols) {
    std::fill(v.begin(), v.end(), 0);
    for (auto i : m.cols[j]) v[i] = 1;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::uint64_t f = v[pivots[b]];
      if (f == 0) continue;
      for (std::size_t i = 0; i < n; ++i)
        if (basis[b][i]) v[i] = mp::sub(v[i], mp::mul(f, basis[b][i]));
    }
    std::size_t p = 0;
    while (p < n && v[p] == 0) ++p;
    if (p == n) continue;
    const std::uint64_t inv = mp::inv(v[p]);
    for (auto& x : v) x = mp::mul(x, inv);
    basis.push_back(v);
    pivots.push_back(p);
    if (basis.size() == n) return true;
  }
  // A short modular rank may still hide a full rational rank.
  std::vector<std::size_t> sel(cols.begin(), cols.end());
  return linalg::rank_exact(m.to_qmatrix().select_columns(sel)) == n;
}

}  // namespace monoforge::rank
