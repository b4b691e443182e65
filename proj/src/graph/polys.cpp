#include "monoforge/graph/polys.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

#include "monoforge/errors.hpp"

namespace monoforge::graph {

using algebra::Monomial;

BlockLayout::BlockLayout(std::size_t n_, std::size_t k_) : n(n_), k(k_) {
  if (k == 0 || n % k != 0) throw NotADivisor(k, n);
  b = n / k;
  if (b > 30) throw EnumerationTooLarge("block of " + std::to_string(b) + " vertices is too wide");
}

Monomial BlockLayout::selector(std::uint64_t a) const {
  std::vector<Monomial::Factor> f;
  f.reserve(k);
  for (std::size_t i = 0; i < k; ++i) f.emplace_back(var(i, pattern_of(a, i)), 1);
  return Monomial(std::move(f));
}

algebra::VarPartition BlockLayout::partition() const {
  std::vector<std::set<VarId>> blocks(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::uint64_t p = 0; p < patterns(); ++p) blocks[i].insert(var(i, p));
  return algebra::VarPartition(std::move(blocks));
}

namespace {

void guard_size(const Graph& g) {
  if (g.n() > kMaxBuildVertices)
    throw EnumerationTooLarge("graph has " + std::to_string(g.n()) + " vertices; limit is " +
                              std::to_string(kMaxBuildVertices));
}

std::uint32_t squared_excess(std::size_t edges) {
  const auto e = static_cast<std::int64_t>(edges) - 1;
  return static_cast<std::uint32_t>(e * e);
}

}  // namespace

std::vector<std::uint32_t> selector_coefficients_serial(const Graph& g) {
  guard_size(g);
  const std::uint64_t total = std::uint64_t{1} << g.n();
  std::vector<std::uint32_t> c(total);
  for (std::uint64_t a = 0; a < total; ++a) c[a] = squared_excess(g.induced_edge_count(a));
  return c;
}

std::vector<std::uint32_t> selector_coefficients(const Graph& g) {
  guard_size(g);
  const auto adj = g.adjacency_masks();
  const auto total = static_cast<long long>(std::uint64_t{1} << g.n());
  std::vector<std::uint32_t> c(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static)
  for (long long s = 0; s < total; ++s) {
    const auto a = static_cast<std::uint64_t>(s);
    std::size_t twice = 0;
    for (std::uint64_t rest = a; rest; rest &= rest - 1)
      twice += static_cast<std::size_t>(std::popcount(adj[std::countr_zero(rest)] & a));
    c[static_cast<std::size_t>(s)] = squared_excess(twice / 2);
  }
  return c;
}

SparsePoly build_Q(const Graph& g, std::size_t k) {
  const BlockLayout layout(g.n(), k);
  const auto coeff = selector_coefficients(g);
  SparsePoly q;
  for (std::uint64_t a = 0; a < coeff.size(); ++a)
    if (coeff[a] != 0) q.add_term(layout.selector(a), Rational(coeff[a]));
  return q;
}

SparsePoly substitute_Q_to_P(const SparsePoly& q, std::size_t n, std::size_t k) {
  const BlockLayout layout(n, k);
  SparsePoly p;
  for (const auto& [m, c] : q.terms()) {
    std::vector<Monomial::Factor> f;
    for (const auto& [v, e] : m.factors()) {
      if (v >= layout.var_count())
        throw VariableUniverseMismatch("variable " + std::to_string(v) + " is outside the " + std::to_string(k) +
                                       "-block layout of " + std::to_string(n) + " vertices");
      const std::size_t block = v / layout.patterns();
      const std::uint64_t pattern = v % layout.patterns();
      for (std::size_t j = 0; j < layout.b; ++j) {
        const std::size_t vertex = block * layout.b + j;
        f.emplace_back(static_cast<VarId>(2 * vertex + ((pattern >> j) & 1U)), e);
      }
    }
    p.add_term(Monomial(std::move(f)), c);
  }
  return p;
}

ArithCircuit build_sps_circuit(const Graph& g, std::size_t k) {
  const BlockLayout layout(g.n(), k);
  if (layout.b > 20) throw EnumerationTooLarge("block patterns exceed 2^20");
  ArithCircuit c;
  std::vector<std::size_t> input(layout.var_count());
  for (std::size_t v = 0; v < layout.var_count(); ++v) input[v] = c.add_input(static_cast<VarId>(v));

  // Product over blocks of Σ x_{i,a} restricted to patterns with the forced bits set.
  auto product_with_forced = [&](std::uint64_t forced, std::vector<std::size_t> factors) {
    for (std::size_t i = 0; i < layout.k; ++i) {
      const std::uint64_t need = layout.pattern_of(forced, i);
      std::vector<std::size_t> terms;
      for (std::uint64_t p = 0; p < layout.patterns(); ++p)
        if ((p & need) == need) terms.push_back(input[layout.var(i, p)]);
      factors.push_back(c.add_add(std::move(terms)));
    }
    return c.add_mul(std::move(factors));
  };
  auto edge_mask = [](const Edge& e) { return (std::uint64_t{1} << e.first) | (std::uint64_t{1} << e.second); };

  std::vector<std::size_t> top;
  top.push_back(product_with_forced(0, {}));
  for (const auto& e : g.edges()) top.push_back(product_with_forced(edge_mask(e), {c.add_const(-2)}));
  for (const auto& e : g.edges())
    for (const auto& f : g.edges()) top.push_back(product_with_forced(edge_mask(e) | edge_mask(f), {}));
  c.set_output(c.add_add(std::move(top)));
  return c;
}

std::uint64_t selector_support(const Monomial& m, std::size_t n) {
  if (m.factors().size() != n)
    throw VariableUniverseMismatch("monomial does not pick one variable per vertex");
  std::uint64_t support = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [v, e] = m.factors()[i];
    if (e != 1 || v / 2 != i) throw VariableUniverseMismatch("monomial is not a selector monomial");
    if (v & 1U) support |= std::uint64_t{1} << i;
  }
  return support;
}

}  // namespace monoforge::graph
