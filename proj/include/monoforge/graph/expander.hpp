#pragma once

#include "monoforge/graph/graph.hpp"

namespace monoforge::graph {

enum class SpectrumMode { Signed, Absolute };

struct ExpanderCert {
  std::size_t d = 0;
  double lambda1 = 0;
  double lambda2 = 0;     // second largest signed eigenvalue, or largest |λ| below λ1
  double threshold = 0;   // d^0.75
  double residual = 0;    // max ‖Av − λv‖ over the two reported eigenpairs
  SpectrumMode mode = SpectrumMode::Signed;
  bool passes = false;
};

/// Dense symmetric eigensolve of the adjacency matrix (n <= 2000).
/// passes ⇔ regular ∧ residual ≤ tol ∧ λ2 ≤ d^0.75 + tol. Throws NotRegular.
ExpanderCert check_expander(const Graph& g, double tol = 1e-9, SpectrumMode mode = SpectrumMode::Signed);

/// Smallest-offset circulant on n vertices with the given even degree (or
/// odd degree when n is even) that passes check_expander, found by
/// lexicographic search over offset sets. Throws PreconditionViolated if none.
Graph search_circulant_expander(std::size_t n, std::size_t d);

}  // namespace monoforge::graph
