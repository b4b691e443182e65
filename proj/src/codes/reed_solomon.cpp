#include "monoforge/codes/reed_solomon.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "monoforge/errors.hpp"

namespace monoforge::codes {

RSCode::RSCode(const GF2eCtx& c, std::size_t n_, std::size_t m_, std::vector<Gf> pts)
    : ctx(c), n(n_), m(m_), points(std::move(pts)) {
  if (m > ctx.size()) throw std::invalid_argument("code length exceeds field size");
  if (n > m) throw std::invalid_argument("dimension exceeds length");
  if (points.empty())
    for (std::size_t j = 0; j < m; ++j) points.push_back(static_cast<Gf>(j));
  if (points.size() != m) throw std::invalid_argument("need exactly m evaluation points");
  std::set<Gf> seen;
  for (Gf p : points) {
    if (!ctx.contains(p)) throw std::invalid_argument("evaluation point outside the field");
    if (!seen.insert(p).second) throw std::invalid_argument("evaluation points must be distinct");
  }
}

GfMatrix rs_generator(const RSCode& code) {
  GfMatrix g(code.ctx, code.n, code.m);
  for (std::size_t i = 0; i < code.n; ++i)
    for (std::size_t j = 0; j < code.m; ++j) g.at(i, j) = code.ctx.pow(code.points[j], i);
  return g;
}

LinearCodeF2 binary_expand_code(const RSCode& code, const FieldBasis& basis) {
  if (!(basis.ctx() == code.ctx)) throw std::invalid_argument("basis belongs to a different field");
  const GfMatrix g = rs_generator(code);
  const unsigned l = code.ctx.degree();
  BitMatrix mtx(code.n * l, code.m * l);
  for (std::size_t i = 0; i < code.n; ++i)
    for (unsigned j = 0; j < l; ++j) {
      std::vector<Gf> scaled(code.m);
      for (std::size_t c = 0; c < code.m; ++c) scaled[c] = code.ctx.mul(basis.elements()[j], g.at(i, c));
      mtx.row(i * l + j) = linalg::basis_expand(basis, scaled);
    }
  return LinearCodeF2(std::move(mtx));
}

namespace {

std::size_t hamming_weight(const std::vector<Gf>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Gf x) { return x != 0; }));
}

// Minimum weight of the nonzero words in the GF(q)-span of the rows.
std::size_t min_weight_qary(const GF2eCtx& ctx, const std::vector<std::vector<Gf>>& rows, std::size_t length) {
  const std::size_t k = rows.size();
  std::size_t best = length + 1;
  std::vector<Gf> msg(k, 0);
  std::function<void(std::size_t, std::vector<Gf>)> rec = [&](std::size_t i, std::vector<Gf> acc) {
    if (i == k) {
      const auto w = hamming_weight(acc);
      if (w > 0) best = std::min(best, w);
      return;
    }
    for (Gf a = 0; a < ctx.size(); ++a) {
      auto next = acc;
      if (a != 0)
        for (std::size_t c = 0; c < length; ++c) next[c] ^= ctx.mul(a, rows[i][c]);
      rec(i + 1, std::move(next));
    }
  };
  rec(0, std::vector<Gf>(length, 0));
  return best;
}

bool enumerable(std::size_t q, std::size_t dim) {
  double words = 1;
  for (std::size_t i = 0; i < dim; ++i) words *= static_cast<double>(q);
  return words <= static_cast<double>(std::uint64_t{1} << kEnumerationLog2Cap);
}

}  // namespace

QaryStats qary_stats(const GfMatrix& gen) {
  const auto& ctx = gen.ctx();
  if (gen.rank() != gen.rows()) throw std::invalid_argument("generator rows are dependent");
  if (!enumerable(ctx.size(), gen.rows())) throw EnumerationTooLarge("q^n exceeds the enumeration cap");
  QaryStats st;
  std::vector<std::vector<Gf>> rows;
  for (std::size_t i = 0; i < gen.rows(); ++i) rows.push_back(gen.row(i));
  st.distance = min_weight_qary(ctx, rows, gen.cols());

  // Smallest dependent column set, by increasing size.
  st.dual_distance = gen.cols() + 1;
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t start, std::size_t size) -> bool {
    if (pick.size() == size) {
      GfMatrix sub(ctx, gen.rows(), size);
      for (std::size_t i = 0; i < gen.rows(); ++i)
        for (std::size_t c = 0; c < size; ++c) sub.at(i, c) = gen.at(i, pick[c]);
      return sub.rank() < size;
    }
    for (std::size_t j = start; j < gen.cols(); ++j) {
      pick.push_back(j);
      if (search(j + 1, size)) return true;
      pick.pop_back();
    }
    return false;
  };
  for (std::size_t size = 1; size <= gen.cols(); ++size) {
    pick.clear();
    if (search(0, size)) {
      st.dual_distance = size;
      break;
    }
  }

  const std::size_t dual_dim = gen.cols() - gen.rows();
  if (dual_dim > 0 && enumerable(ctx.size(), dual_dim)) {
    const auto dual = min_weight_qary(ctx, gen.kernel(), gen.cols());
    if (dual != st.dual_distance) throw std::logic_error("dual distance routes disagree");
    st.dual_by_enumeration = true;
  }
  return st;
}

}  // namespace monoforge::codes
