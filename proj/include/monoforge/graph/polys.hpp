#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monoforge/algebra/arith_circuit.hpp"
#include "monoforge/graph/graph.hpp"

namespace monoforge::graph {

using algebra::ArithCircuit;
using algebra::SparsePoly;
using algebra::VarId;

inline constexpr std::size_t kMaxBuildVertices = 22;

/// Layout of the variables x_{i,a} of the k-block polynomial: block i covers
/// vertices i·b .. i·b+b-1 with b = n/k, and x_{i,a} has id i·2^b + a where
/// bit j of a is the value of vertex i·b+j. With k = n this is id 2v + a_v.
struct BlockLayout {
  std::size_t n = 0, k = 0, b = 0;

  /// Throws NotADivisor.
  BlockLayout(std::size_t n, std::size_t k);
  std::size_t patterns() const noexcept { return std::size_t{1} << b; }
  VarId var(std::size_t block, std::uint64_t pattern) const noexcept {
    return static_cast<VarId>(block * patterns() + pattern);
  }
  std::size_t var_count() const noexcept { return k * patterns(); }
  /// Pattern of block i inside the full assignment mask a.
  std::uint64_t pattern_of(std::uint64_t a, std::size_t block) const noexcept {
    return (a >> (block * b)) & (patterns() - 1);
  }
  algebra::Monomial selector(std::uint64_t a) const;
  algebra::VarPartition partition() const;
};

/// Coefficient table c[a] = (e(G[supp a]) - 1)^2 over all a in {0,1}^n.
std::vector<std::uint32_t> selector_coefficients(const Graph& g);
std::vector<std::uint32_t> selector_coefficients_serial(const Graph& g);

/// Q_{k,G}; build_Q(g, n) is P_G. Throws NotADivisor, EnumerationTooLarge.
SparsePoly build_Q(const Graph& g, std::size_t k);

/// Replaces x_{i,a} of the k-block layout by the product of the n/k vertex
/// variables it selects. Throws VariableUniverseMismatch for foreign variables.
SparsePoly substitute_Q_to_P(const SparsePoly& q, std::size_t n, std::size_t k);

/// Depth-3 sum of products of linear forms computing Q_{k,G} as Q2 - 2·Q1 + Q0.
/// Inputs are shared leaves; every linear form is its own gate.
ArithCircuit build_sps_circuit(const Graph& g, std::size_t k);

/// Support of the assignment a monomial of build_Q(g, n) selects, as a mask.
/// Throws VariableUniverseMismatch when the monomial is not a selector.
std::uint64_t selector_support(const algebra::Monomial& m, std::size_t n);

}  // namespace monoforge::graph
