// Acceptance suite: one PASS/FAIL line per criterion. Every expected value is
// produced by a test-side oracle, never by the code path under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/oracles.hpp"

#include "monoforge/algebra/arith_circuit.hpp"
#include "monoforge/approx/bool_circuit.hpp"
#include "monoforge/approx/distribution.hpp"
#include "monoforge/approx/sunflower.hpp"
#include "monoforge/codes/linear_code.hpp"
#include "monoforge/codes/reed_solomon.hpp"
#include "monoforge/errors.hpp"
#include "monoforge/graph/expander.hpp"
#include "monoforge/graph/graph.hpp"
#include "monoforge/graph/hard_input.hpp"
#include "monoforge/graph/polys.hpp"
#include "monoforge/linalg/bitmatrix.hpp"
#include "monoforge/linalg/gf2e.hpp"
#include "monoforge/linalg/qmatrix.hpp"
#include "monoforge/random.hpp"
#include "monoforge/rank/cauchy_binet.hpp"
#include "monoforge/rank/distributions.hpp"
#include "monoforge/rank/real_matrix.hpp"

using namespace monoforge;
using algebra::SparsePoly;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << "s";
  return o.str();
}

oracle::EdgeList edge_list(const graph::Graph& g) {
  oracle::EdgeList e;
  for (auto [u, v] : g.edges()) e.emplace_back(static_cast<int>(u), static_cast<int>(v));
  return e;
}

// ---------------------------------------------------------------- corpus

struct NamedGraph {
  std::string name;
  graph::Graph g;
};

std::vector<NamedGraph> graph_corpus() {
  std::vector<NamedGraph> out;
  for (const char* name : {"C4", "C6", "C8", "K4", "K5"}) out.push_back({name, graph::named_graph(name)});
  const auto p = graph::petersen_graph();
  out.push_back({"petersen", p});
  for (std::size_t keep : {6, 8, 9})
    out.push_back({"petersen[0.." + std::to_string(keep - 1) + "]", graph::induced_prefix(p, keep)});
  out.push_back({"petersen-minus-{0}", graph::delete_edges(p, {0})});
  out.push_back({"petersen-minus-{1,5,9}", graph::delete_edges(p, {1, 5, 9})});
  return out;
}

std::vector<std::size_t> divisors(std::size_t n) {
  std::vector<std::size_t> d;
  for (std::size_t k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

// ---------------------------------------------------------------- 1-3

Outcome criterion1() {
  Outcome o;
  std::size_t pairs = 0, bad = 0;
  for (const auto& [name, g] : graph_corpus()) {
    for (std::size_t k : divisors(g.n())) {
      ++pairs;
      const auto expected = oracle::brute_Q(static_cast<int>(g.n()), edge_list(g), static_cast<int>(k));
      const auto built = graph::build_Q(g, k);
      const auto expanded = algebra::expand_circuit(graph::build_sps_circuit(g, k), 0);
      if (!(expanded == built) || !(built == expected)) {
        ++bad;
        o.detail += " mismatch:" + name + "/k=" + std::to_string(k);
      }
    }
  }
  o.pass = bad == 0;
  o.detail = std::to_string(pairs) + " (graph,k) pairs, " + std::to_string(bad) + " mismatches" + o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::size_t pairs = 0, bad = 0;
  for (const auto& [name, g] : graph_corpus()) {
    const auto p = oracle::brute_Q(static_cast<int>(g.n()), edge_list(g), static_cast<int>(g.n()));
    for (std::size_t k : divisors(g.n())) {
      ++pairs;
      if (!(graph::substitute_Q_to_P(graph::build_Q(g, k), g.n(), k) == p)) {
        ++bad;
        o.detail += " mismatch:" + name + "/k=" + std::to_string(k);
      }
    }
  }
  o.pass = bad == 0;
  o.detail = std::to_string(pairs) + " (graph,k) pairs, " + std::to_string(bad) + " mismatches" + o.detail;
  return o;
}

Outcome criterion3() {
  Outcome o;
  double worst = 0;
  std::string worst_at;
  std::size_t bad = 0;
  for (const auto& [name, g] : graph_corpus()) {
    for (std::size_t k : divisors(g.n())) {
      const double e = static_cast<double>(g.edge_count());
      const double unit = e * e * static_cast<double>(k) * std::ldexp(1.0, static_cast<int>(g.n() / k));
      const double wires = static_cast<double>(graph::build_sps_circuit(g, k).wire_count());
      if (wires > 40 * unit) ++bad;
      if (wires / unit > worst) {
        worst = wires / unit;
        worst_at = name + "/k=" + std::to_string(k);
      }
    }
  }
  std::ostringstream d;
  d << "max wires/(e^2 k 2^(n/k)) = " << worst << " at " << worst_at << ", violations " << bad;
  o.pass = bad == 0;
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- 4

using QRows = std::vector<std::vector<Rational>>;

// Σ_S det(A[S])² ∏_{i∈S} x_i over column subsets of size rows, via Laplace.
SparsePoly minor_sum(const QRows& a, std::size_t cols) {
  const std::size_t rows = a.size();
  SparsePoly out;
  for (std::uint32_t s = 0; s < (1u << cols); ++s) {
    if (static_cast<std::size_t>(__builtin_popcount(s)) != rows) continue;
    QRows sub(rows);
    std::vector<algebra::Monomial::Factor> f;
    for (std::size_t j = 0; j < cols; ++j)
      if (s >> j & 1) {
        for (std::size_t i = 0; i < rows; ++i) sub[i].push_back(a[i][j]);
        f.emplace_back(static_cast<algebra::VarId>(j), 1);
      }
    const Rational d = oracle::det_laplace(sub);
    if (d != 0) out.add_term(algebra::Monomial(f), d * d);
  }
  return out;
}

// det(A·diag(x)·Aᵀ) via the Leibniz sum over symbolic entries.
SparsePoly gram_det(const QRows& a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::vector<SparsePoly>> e(rows, std::vector<SparsePoly>(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t k = 0; k < cols; ++k) {
        const Rational c = a[i][k] * a[j][k];
        if (c != 0) e[i][j].add_term(algebra::Monomial::variable(static_cast<algebra::VarId>(k)), c);
      }
  return oracle::det_leibniz(e);
}

bool cb_instance(const QRows& a, std::size_t cols) {
  linalg::QMatrix q(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) q.at(i, j) = a[i][j];
  const auto lib = rank::cauchy_binet_poly(q);
  const auto direct = minor_sum(a, cols);
  const auto via_det = gram_det(a, cols);
  return direct == via_det && lib.equal && lib.direct == direct && lib.via_det == via_det && lib.positivity_link;
}

Outcome criterion4() {
  Outcome o;
  std::size_t checked = 0, bad = 0;
  for (std::size_t rows = 1; rows <= 3; ++rows)
    for (std::size_t cols = 1; cols <= 5; ++cols) {
      const std::size_t cells = rows * cols;
      for (std::uint32_t bits = 0; bits < (1u << cells); ++bits) {
        QRows a(rows, std::vector<Rational>(cols));
        for (std::size_t c = 0; c < cells; ++c) a[c / cols][c % cols] = (bits >> c) & 1;
        ++checked;
        if (!cb_instance(a, cols)) ++bad;
      }
    }
  const std::size_t exhaustive = checked;
  auto rng = make_rng(0xACCE, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + uniform_below(rng, 4);
    const std::size_t cols = rows + uniform_below(rng, 8 - rows);
    QRows a(rows, std::vector<Rational>(cols));
    for (auto& row : a)
      for (auto& x : row) {
        const long num = static_cast<long>(uniform_below(rng, 11)) - 5;
        const long den = 1 + static_cast<long>(uniform_below(rng, 4));
        x = make_rational(num, den);
      }
    ++checked;
    if (!cb_instance(a, cols)) ++bad;
  }
  o.pass = bad == 0;
  o.detail = std::to_string(exhaustive) + " exhaustive 0/1 + " + std::to_string(checked - exhaustive) +
             " random rational matrices, " + std::to_string(bad) + " mismatches";
  return o;
}

// ---------------------------------------------------------------- 5-6

// GF(2^l) arithmetic from the oracle multiplication table.
struct TableField {
  std::vector<std::vector<std::uint32_t>> mul;
  std::vector<std::uint32_t> inv;
  TableField(unsigned l, std::uint32_t modulus) : mul(oracle::gf_mul_table(l, modulus)), inv(mul.size(), 0) {
    for (std::uint32_t a = 1; a < mul.size(); ++a)
      for (std::uint32_t b = 1; b < mul.size(); ++b)
        if (mul[a][b] == 1) inv[a] = b;
  }
  std::uint32_t pow(std::uint32_t a, std::size_t e) const {
    std::uint32_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r = mul[r][a];
    return r;
  }
  std::size_t rank(std::vector<std::vector<std::uint32_t>> m) const {
    std::size_t r = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
      std::size_t p = r;
      while (p < rows && m[p][c] == 0) ++p;
      if (p == rows) continue;
      std::swap(m[p], m[r]);
      const auto iv = inv[m[r][c]];
      for (auto& x : m[r]) x = mul[x][iv];
      for (std::size_t i = 0; i < rows; ++i)
        if (i != r && m[i][c]) {
          const auto f = m[i][c];
          for (std::size_t j = 0; j < cols; ++j) m[i][j] ^= mul[f][m[r][j]];
        }
      ++r;
    }
    return r;
  }
};

// Visits every k-subset of {0..n-1}; stops early when visit returns true.
bool any_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return false;
  while (true) {
    if (visit(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct QaryOracle {
  std::size_t distance = 0, dual = 0;
};

QaryOracle qary_oracle(const TableField& f, std::size_t n, std::size_t m, const std::vector<std::uint32_t>& points) {
  const std::size_t q = f.mul.size();
  std::vector<std::vector<std::uint32_t>> g(n, std::vector<std::uint32_t>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) g[i][j] = f.pow(points[j], i);
  QaryOracle o;
  o.distance = m + 1;
  std::vector<std::uint32_t> w(n, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  for (std::size_t msg = 1; msg < total; ++msg) {
    std::size_t x = msg;
    for (std::size_t i = 0; i < n; ++i, x /= q) w[i] = static_cast<std::uint32_t>(x % q);
    std::size_t weight = 0;
    for (std::size_t j = 0; j < m; ++j) {
      std::uint32_t c = 0;
      for (std::size_t i = 0; i < n; ++i) c ^= f.mul[w[i]][g[i][j]];
      weight += c != 0;
    }
    o.distance = std::min(o.distance, weight);
  }
  for (std::size_t s = 1; s <= m && !o.dual; ++s) {
    const bool dependent = any_subset(m, s, [&](const std::vector<std::size_t>& cols) {
      std::vector<std::vector<std::uint32_t>> sub(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c : cols) sub[i].push_back(g[i][c]);
      return f.rank(sub) < s;
    });
    if (dependent) o.dual = s;
  }
  return o;
}

std::vector<std::vector<int>> bit_rows(const linalg::BitMatrix& m) {
  std::vector<std::vector<int>> rows(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m.get(i, j);
  return rows;
}

// Columns as row-bit masks (rows <= 32).
std::vector<std::uint32_t> column_masks(const linalg::BitMatrix& m) {
  std::vector<std::uint32_t> c(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.get(i, j)) c[j] |= 1u << i;
  return c;
}

// Smallest nonempty set of columns summing to zero.
std::size_t binary_dual_oracle(const linalg::BitMatrix& m) {
  const auto cols = column_masks(m);
  for (std::size_t s = 1; s <= cols.size(); ++s) {
    const bool found = any_subset(cols.size(), s, [&](const std::vector<std::size_t>& idx) {
      std::uint32_t x = 0;
      for (auto j : idx) x ^= cols[j];
      return x == 0;
    });
    if (found) return s;
  }
  return cols.size() + 1;
}

struct CodeCase {
  unsigned l;
  std::size_t n, m;
};

constexpr CodeCase kCodeCases[] = {{3, 2, 7}, {4, 3, 15}};

Outcome criterion5() {
  Outcome o;
  std::ostringstream d;
  for (const auto& cc : kCodeCases) {
    const linalg::GF2eCtx ctx(cc.l);
    const codes::RSCode rs(ctx, cc.n, cc.m);
    const TableField f(cc.l, ctx.modulus());
    const auto qo = qary_oracle(f, cc.n, cc.m, rs.points);
    const auto lib = codes::qary_stats(codes::rs_generator(rs));
    const auto bin = codes::binary_expand_code(rs, linalg::FieldBasis(ctx));
    const auto st = codes::code_stats(bin);
    const auto bd = static_cast<std::size_t>(oracle::min_weight_brute(bit_rows(bin.generator())));
    const auto bdual = binary_dual_oracle(bin.generator());
    const bool ok = qo.distance == cc.m - cc.n + 1 && qo.dual == cc.n + 1 && lib.distance == qo.distance &&
                    lib.dual_distance == qo.dual && st.distance_exact && st.dual_exact && st.distance == bd &&
                    st.dual_distance == bdual && qo.distance <= bd && bd <= cc.l * qo.distance &&
                    qo.dual <= bdual && bdual <= cc.l * qo.dual;
    o.pass = o.pass && ok;
    d << "q=" << (1u << cc.l) << ",n=" << cc.n << ",m=" << cc.m << ": d=" << qo.distance << " d'=" << qo.dual
      << " binary " << bin.dimension() << "x" << bin.length() << " d=" << bd << " d'=" << bdual << "; ";
  }
  o.detail = d.str();
  return o;
}

// Exhaustive over u: are all coordinate sets of size <= t uniform?
// Returns the first non-uniform set of size exactly `size` if any.
bool sets_uniform(const std::vector<std::uint32_t>& cols, std::size_t rows, std::size_t size) {
  const std::size_t points = std::size_t{1} << rows;
  std::vector<std::uint8_t> a(points * cols.size());
  for (std::size_t u = 0; u < points; ++u)
    for (std::size_t j = 0; j < cols.size(); ++j)
      a[u * cols.size() + j] = (__builtin_popcount(cols[j] & static_cast<std::uint32_t>(u)) % 2) == 0;
  return !any_subset(cols.size(), size, [&](const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> count(std::size_t{1} << size, 0);
    for (std::size_t u = 0; u < points; ++u) {
      std::size_t pat = 0;
      for (std::size_t k = 0; k < size; ++k) pat |= std::size_t{a[u * cols.size() + idx[k]]} << k;
      ++count[pat];
    }
    const std::size_t expect = points >> size;
    return std::any_of(count.begin(), count.end(), [&](std::size_t c) { return c != expect; });
  });
}

Outcome criterion6() {
  Outcome o;
  std::ostringstream d;
  for (const auto& cc : kCodeCases) {
    const linalg::GF2eCtx ctx(cc.l);
    const codes::RSCode rs(ctx, cc.n, cc.m);
    const auto bin = codes::binary_expand_code(rs, linalg::FieldBasis(ctx));
    const auto& M = bin.generator();
    const auto dual = binary_dual_oracle(M);
    const auto cols = column_masks(M);
    bool uniform = true;
    for (std::size_t s = 1; s + 1 <= dual; ++s) uniform = uniform && sets_uniform(cols, M.rows(), s);
    bool fails_above = false;
    if (cc.m <= 7) {
      fails_above = !sets_uniform(cols, M.rows(), dual);
    } else {
      // Too many sets for the naive sweep: take the library's failing set and
      // recount its patterns here.
      const auto rep = rank::d0_f2_independence(M, dual);
      const auto& fs = rep.uniformity.failing_set;
      if (!rep.uniformity.uniform && fs.size() <= dual) {
        std::vector<std::uint32_t> sub;
        for (auto j : fs) sub.push_back(cols[j]);
        fails_above = !sets_uniform(sub, M.rows(), sub.size());
      }
    }
    const auto lib_at = rank::d0_f2_independence(M, dual - 1);
    const bool ok = uniform && fails_above && lib_at.uniformity.uniform && lib_at.kernel_identity;
    o.pass = o.pass && ok;
    d << "q=" << (1u << cc.l) << ": uniform up to t=" << dual - 1 << (uniform ? " yes" : " NO") << ", fails at t="
      << dual << (fails_above ? " yes" : " NO") << "; ";
  }
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- 7-8

Outcome criterion7() {
  Outcome o;
  std::size_t rows = 0, violations = 0, mismatches = 0;
  for (std::size_t m = 10; m <= 200; ++m)
    for (std::size_t w = 0; 2 * w <= m; ++w) {
      const auto table = rank::spreadness_exact(m, w, w);
      Rational pr = 1;
      const Rational ratio = make_rational(static_cast<long>(w), static_cast<long>(m));
      Rational bound = 1;
      for (std::size_t k = 0; k <= w; ++k) {
        if (k > 0) {
          pr *= make_rational(static_cast<long>(w - k + 1), static_cast<long>(m - k + 1));
          bound *= ratio;
        }
        ++rows;
        if (pr > bound) ++violations;
        if (table[k].probability != pr || table[k].holds != (pr <= bound)) ++mismatches;
      }
    }
  o.pass = violations == 0 && mismatches == 0;
  o.detail = std::to_string(rows) + " (m,W,k) rows, " + std::to_string(violations) + " violations, " +
             std::to_string(mismatches) + " library mismatches";
  return o;
}

std::uint64_t ball_bound(std::size_t dim, std::size_t s) {
  Rational b = 0;
  for (std::size_t i = 0; i <= std::min(s, dim); ++i) b += oracle::binom(static_cast<long>(dim), static_cast<long>(i));
  return b.get_num().get_ui();
}

Outcome criterion8() {
  Outcome o;
  auto rng = make_rng(0xACCE, 8);
  std::size_t bad = 0, tight_bad = 0, tight = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 14);
    const std::size_t d = 1 + uniform_below(rng, std::min<std::size_t>(n, 7));
    const std::size_t s = uniform_below(rng, 5);
    std::vector<linalg::BitVector> gens;
    std::vector<std::uint32_t> masks;
    for (std::size_t i = 0; i < d; ++i) {
      linalg::BitVector v(n);
      std::uint32_t mask = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (rng() & 1) {
          v.set(j, true);
          mask |= 1u << j;
        }
      gens.push_back(v);
      masks.push_back(mask);
    }
    // Span and its dimension, enumerated here.
    std::vector<std::uint32_t> span{0};
    for (auto g : masks) {
      if (std::find(span.begin(), span.end(), g) != span.end()) continue;
      const std::size_t sz = span.size();
      for (std::size_t i = 0; i < sz; ++i) span.push_back(span[i] ^ g);
    }
    std::size_t dim = 0;
    while ((std::size_t{1} << dim) < span.size()) ++dim;
    std::uint64_t count = 0;
    for (auto x : span) count += static_cast<std::size_t>(__builtin_popcount(x)) <= s;
    const auto lib = rank::count_ball_subspace(gens, n, s);
    if (count > ball_bound(dim, s) || lib.count != count || lib.dim != dim) ++bad;
  }
  for (std::size_t n = 1; n <= 14; ++n)
    for (std::size_t d = 1; d <= std::min<std::size_t>(n, 7); ++d)
      for (std::size_t s = 0; s <= 4; ++s) {
        std::vector<linalg::BitVector> gens;
        for (std::size_t i = 0; i < d; ++i) {
          linalg::BitVector v(n);
          v.set(i, true);
          gens.push_back(v);
        }
        ++tight;
        const auto lib = rank::count_ball_subspace(gens, n, s);
        if (lib.count != ball_bound(d, s)) ++tight_bad;
      }
  o.pass = bad == 0 && tight_bad == 0;
  o.detail = "1000 random subspaces, " + std::to_string(bad) + " violations; " + std::to_string(tight) +
             " standard-basis cases, " + std::to_string(tight_bad) + " without equality";
  return o;
}

// ---------------------------------------------------------------- 9

bool family_eval(const std::vector<approx::Mask>& sets, approx::Mask x) {
  return std::any_of(sets.begin(), sets.end(), [&](approx::Mask s) { return (s & ~x) == 0; });
}

Outcome criterion9() {
  Outcome o;
  auto rng = make_rng(0xACCE, 9);
  std::size_t violations = 0, failures = 0, total_plucks = 0;
  std::string first;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 6 + uniform_below(rng, 11);
    const std::size_t w = 1 + uniform_below(rng, 2);
    const std::uint64_t r = 3;
    const Rational eps = make_rational(1, 2);
    // Distribution: uniform, fixed weight, or 𝔽₂ witness distribution of a random matrix.
    const auto kind = uniform_below(rng, 3);
    std::optional<approx::Dist> dist;
    if (kind == 0) {
      dist = approx::Dist::uniform(n);
    } else if (kind == 1) {
      dist = approx::Dist::uniform_weight(n, n / 2);
    } else {
      linalg::BitMatrix mat(6, n);
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < n; ++j) mat.set(i, j, rng() & 1);
      dist = approx::Dist::d0_f2(mat);
    }
    std::vector<approx::Mask> sets;
    const std::size_t count = 30 + uniform_below(rng, 120);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t size = 2 + uniform_below(rng, 2 * w - 1);
      const auto sub = random_subset(rng, static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(size));
      approx::Mask m = 0;
      for (auto e : sub) m |= approx::Mask{1} << e;
      sets.push_back(m);
    }
    const approx::SetFamily fam(n, sets);
    try {
      approx::PluckOptions opt;
      opt.prob.mode = approx::ProbMode::Exact;
      const auto res = approx::pluck(fam, *dist, eps, r, w, opt);
      const auto& out = res.family.sets();
      bool ok = res.family.width() <= 2 * w;
      for (std::size_t ell = 0; ell <= 2 * w; ++ell) {
        const auto in_slice = static_cast<std::size_t>(std::count_if(
            out.begin(), out.end(), [&](approx::Mask s) { return static_cast<std::size_t>(__builtin_popcountll(s)) == ell; }));
        std::uint64_t cap = 1;
        for (std::size_t i = 0; i < ell; ++i) cap *= r;
        ok = ok && in_slice <= cap;
      }
      for (approx::Mask x = 0; x < (approx::Mask{1} << n) && ok; ++x)
        ok = !family_eval(fam.sets(), x) || family_eval(out, x);
      Integer err = 0;
      const auto& pts = dist->points();
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (family_eval(out, pts[i]) && !family_eval(fam.sets(), pts[i])) err += dist->weights()[i];
      const Rational measured = make_rational(err, dist->denominator());
      ok = ok && measured <= eps * Rational(static_cast<unsigned long>(res.ledger.size()));
      total_plucks += res.ledger.size();
      if (!ok) {
        ++violations;
        if (first.empty()) first = " first violation at trial " + std::to_string(trial);
      }
    } catch (const SunflowerNotFound& e) {
      ++failures;
      if (first.empty()) first = " first failure at trial " + std::to_string(trial) + ": " + e.what();
    }
  }
  o.pass = violations == 0 && failures == 0;
  o.detail = "200 families, " + std::to_string(total_plucks) + " plucks, " + std::to_string(violations) +
             " violations, " + std::to_string(failures) + " pluck failures" + first;
  return o;
}

// ---------------------------------------------------------------- 10

Outcome criterion10() {
  Outcome o;
  auto rng = make_rng(0xACCE, 10);
  std::size_t matrices = 0, bad = 0;
  for (std::size_t n = 1; n <= 8; ++n)
    for (int rep = 0; rep < 2; ++rep) {
      // Identity block first so M has full row rank, then random sparse columns.
      const std::size_t extra = 1 + uniform_below(rng, n + 3);
      rank::RealMatrix01 m;
      m.n = n;
      m.s = n;
      for (std::uint32_t i = 0; i < n; ++i) m.cols.push_back({i});
      for (std::size_t j = 0; j < extra; ++j) {
        const std::size_t w = 1 + uniform_below(rng, std::min<std::size_t>(n, 4));
        const auto sub = random_subset(rng, static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(w));
        m.cols.emplace_back(sub.begin(), sub.end());
      }
      std::uint64_t points = 1;
      for (std::size_t i = 0; i < n; ++i) points *= 3;
      std::uint64_t accepted = 0, unsound = 0;
      std::vector<int> u(n);
      for (std::uint64_t code = 0; code < points; ++code) {
        std::uint64_t c = code;
        bool zero = true;
        for (std::size_t i = 0; i < n; ++i, c /= 3) {
          u[i] = static_cast<int>(c % 3) - 1;
          zero = zero && u[i] == 0;
        }
        std::vector<std::vector<Rational>> sel(n);
        for (const auto& col : m.cols) {
          int dot = 0;
          for (auto r : col) dot += u[r];
          if (dot != 0) continue;
          std::vector<Rational> entries(n, 0);
          for (auto r : col) entries[r] = 1;
          for (std::size_t i = 0; i < n; ++i) sel[i].push_back(entries[i]);
        }
        const bool f = !sel[0].empty() && oracle::rank_gauss(sel) == static_cast<int>(n);
        accepted += f;
        unsound += f && !zero;
      }
      const auto lib = rank::d0_real_soundness(m);
      const Rational pr_zero = 1 - make_rational(static_cast<long>(accepted), static_cast<long>(points));
      const Rational expected = 1 - make_rational(1, static_cast<long>(points));
      ++matrices;
      if (unsound != 0 || pr_zero != expected || lib.accepted != accepted || lib.accepted_nonzero != 0 ||
          lib.points != points)
        ++bad;
    }
  o.pass = bad == 0;
  o.detail = std::to_string(matrices) + " matrices with n = 1..8, exhaustive over 3^n witnesses, " +
             std::to_string(bad) + " failures";
  return o;
}

// ---------------------------------------------------------------- 11

Outcome criterion11() {
  Outcome o;
  const auto g = graph::dodecahedron_graph();
  const auto cert = graph::check_expander(g);
  const std::size_t samples = 100000, m = 2;
  auto rng = make_rng(0xACCE, 11);
  std::uint64_t bad = 0, pairs = 0, not_induced = 0;
  std::uint64_t counts[3] = {0, 0, 0};
  const auto& edges = g.edges();
  for (std::size_t t = 0; t < samples; ++t) {
    const auto mt = graph::sample_matching(g, m, rng);
    // Induced matching, checked against the edge list directly.
    std::vector<int> mark(g.n(), -1);
    for (std::size_t i = 0; i < mt.edges.size(); ++i) {
      mark[mt.edges[i].first] = static_cast<int>(i);
      mark[mt.edges[i].second] = static_cast<int>(i);
    }
    for (auto [u, v] : edges)
      if (mark[u] >= 0 && mark[v] >= 0 && mark[u] != mark[v]) ++not_induced;
    const auto a = graph::sample_hard_input(g, mt, rng);
    std::size_t induced = 0;
    for (auto [u, v] : edges) induced += a[u] && a[v];
    if (induced != 0) ++bad;  // e = 0, so f_G(a) = [e != 1] = 1
    for (auto [u, v] : mt.edges) {
      ++pairs;
      if (!a[u] && !a[v]) ++counts[0];
      else if (a[u] && !a[v]) ++counts[1];
      else if (!a[u] && a[v]) ++counts[2];
      else ++bad;
    }
    for (std::size_t v = 0; v < g.n(); ++v)
      if (a[v] && mark[v] < 0) ++bad;
  }
  bool close = true;
  std::ostringstream d;
  d << "lambda2 = " << cert.lambda2 << " <= " << cert.threshold << (cert.passes ? "" : " FAILS") << "; "
    << samples << " samples, " << bad << " bad, " << not_induced << " non-induced; marginals";
  for (auto c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(pairs);
    close = close && std::abs(p - 1.0 / 3.0) <= 0.02;
    d << ' ' << p;
  }
  o.pass = cert.passes && g.n() == 20 && bad == 0 && not_induced == 0 && close;
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- 12

Rational eval_arith(const algebra::ArithCircuit& c, approx::Mask x) {
  const auto& nodes = c.nodes();
  std::vector<Rational> val(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    switch (nd.op) {
      case algebra::ArithOp::Input: val[i] = (x >> nd.var) & 1; break;
      case algebra::ArithOp::Const: val[i] = nd.value; break;
      case algebra::ArithOp::Add:
        val[i] = 0;
        for (auto a : nd.args) val[i] += val[a];
        break;
      case algebra::ArithOp::Mul:
        val[i] = 1;
        for (auto a : nd.args) val[i] *= val[a];
        break;
    }
  }
  return val[c.output()];
}

Outcome criterion12() {
  Outcome o;
  auto rng = make_rng(0xACCE, 12);
  std::size_t bad = 0, points = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 12);
    algebra::ArithCircuit c;
    std::vector<std::size_t> ids;
    for (std::size_t v = 0; v < n; ++v) ids.push_back(c.add_input(static_cast<algebra::VarId>(v)));
    ids.push_back(c.add_const(0));
    ids.push_back(c.add_const(make_rational(3, 2)));
    const std::size_t gates = 3 + uniform_below(rng, 25);
    for (std::size_t gi = 0; gi < gates; ++gi) {
      const std::size_t fan = 2 + uniform_below(rng, 2);
      std::vector<std::size_t> args;
      for (std::size_t k = 0; k < fan; ++k) args.push_back(ids[uniform_below(rng, ids.size())]);
      ids.push_back((rng() & 1) ? c.add_add(args) : c.add_mul(args));
    }
    const auto b = algebra::booleanize(c);
    for (approx::Mask x = 0; x < (approx::Mask{1} << n); ++x) {
      ++points;
      if (b.eval_mask(x) != (eval_arith(c, x) > 0)) ++bad;
    }
  }
  o.pass = bad == 0;
  o.detail = "50 circuits, " + std::to_string(points) + " Boolean points, " + std::to_string(bad) + " disagreements";
  return o;
}

// ---------------------------------------------------------------- 13

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion13() {
  Outcome o;
  std::ostringstream d;
  const std::string dir = (std::filesystem::temp_directory_path() / "monoforge_acceptance").string();
  std::filesystem::create_directories(dir);
  for (const char* preset : {"thm-main1", "thm-main4", "thm-main3"}) {
    std::string reference;
    bool same = true, exit_ok = true;
    for (int threads : {1, 2, 8}) {
      const std::string out = dir + "/" + preset + "." + std::to_string(threads) + ".json";
      const std::string cmd = std::string(MONOFORGE_CLI_PATH) + " experiment " + preset +
                              " --seed 20261016 --quiet --threads " + std::to_string(threads) + " --out " + out;
      const int rc = std::system(cmd.c_str());
      exit_ok = exit_ok && rc == 0;
      const auto text = slurp(out);
      if (threads == 1)
        reference = text;
      else
        same = same && text == reference && !text.empty();
    }
    o.pass = o.pass && exit_ok && same;
    d << preset << (exit_ok ? " exit 0" : " NONZERO EXIT") << (same ? ", identical" : ", DIFFERS") << "; ";
  }
  o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"sps expansion equals Q_{k,G}", criterion1},
      {"substitution gives P_G", criterion2},
      {"sps wire count within 40 e^2 k 2^(n/k)", criterion3},
      {"Cauchy-Binet identity", criterion4},
      {"code distances and sandwich", criterion5},
      {"t-wise independence of D0 over F2", criterion6},
      {"exact spreadness grid", criterion7},
      {"subspace meets Hamming ball", criterion8},
      {"pluck postconditions", criterion9},
      {"D0 real soundness", criterion10},
      {"hard-input soundness", criterion11},
      {"booleanization", criterion12},
      {"end-to-end presets", criterion13},
  };
  const auto start = Clock::now();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                fmt_seconds(seconds_since(t0)).c_str());
    std::fflush(stdout);
  }
  std::printf("total wall time %s, %d failed\n", fmt_seconds(seconds_since(start)).c_str(), failed);
  return failed == 0 ? 0 : 1;
}
