#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "monoforge/algebra/polynomial.hpp"
#include "monoforge/approx/bool_circuit.hpp"

namespace monoforge::algebra {

enum class ArithOp : std::uint8_t { Input, Const, Add, Mul };

struct ArithNode {
  ArithOp op = ArithOp::Const;
  VarId var = 0;                  // Input only
  Rational value;                 // Const only
  std::vector<std::size_t> args;  // Add / Mul, each < own id
};

/// Arithmetic circuit stored children-first: every argument id is smaller than
/// the id of the gate using it, so the node order is a topological order.
/// Gates may have any fan-in. The output defaults to the last node added.
class ArithCircuit {
 public:
  std::size_t add_input(VarId v);
  std::size_t add_const(const Rational& c);
  std::size_t add_add(std::vector<std::size_t> args);
  std::size_t add_mul(std::vector<std::size_t> args);
  void set_output(std::size_t id);

  /// Appends a node read from a file; validates that arguments precede it.
  std::size_t push(ArithNode node);

  const std::vector<ArithNode>& nodes() const noexcept { return nodes_; }
  std::size_t output() const;
  bool empty() const noexcept { return nodes_.empty(); }

  /// Node ids the output depends on, ascending.
  std::vector<std::size_t> reachable() const;

  // Size metrics over the nodes reachable from the output.
  std::size_t gate_count() const;  // add + mul gates
  std::size_t wire_count() const;  // total fan-in of those gates
  std::size_t depth() const;       // gates on the longest input-output path
  std::uint32_t formal_degree() const;

  bool is_monotone() const;  // every reachable constant >= 0
  std::set<VarId> input_vars() const;

 private:
  std::size_t append(ArithNode node);
  std::vector<ArithNode> nodes_;
  std::optional<std::size_t> output_;
};

/// Throws MissingVariable if an input of the circuit is unassigned.
Rational eval_circuit(const ArithCircuit& c, const Assignment& at);

/// Exact expansion. Throws TermBudgetExceeded when any intermediate
/// polynomial has more than term_cap terms (term_cap == 0 disables the cap).
SparsePoly expand_circuit(const ArithCircuit& c, std::size_t term_cap);

struct IdentityVerdict {
  bool equal_whp = true;
  std::size_t trials_run = 0;
  std::uint64_t point_range = 0;  // coordinates drawn from [0, point_range]
  Assignment witness;             // set when equal_whp is false
};

/// Probabilistic identity test of c against p with exact arithmetic. Points
/// have coordinates uniform in [0, 2·deg·trials·nvars].
IdentityVerdict random_identity_test(const ArithCircuit& c, const SparsePoly& p, std::size_t trials,
                                     std::uint64_t seed);

/// Monotone arithmetic circuit to OR/AND circuit. Throws NotMonotone.
approx::BoolCircuit booleanize(const ArithCircuit& c);

}  // namespace monoforge::algebra
