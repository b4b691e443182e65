#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace monoforge::approx {

enum class BoolOp : std::uint8_t { Input, Const, And, Or };

struct BoolNode {
  BoolOp op = BoolOp::Const;
  std::uint32_t var = 0;  // Input
  bool value = false;     // Const
  std::size_t a = 0, b = 0;
};

/// Monotone fan-in-2 Boolean circuit, children-first like ArithCircuit.
class BoolCircuit {
 public:
  std::size_t add_input(std::uint32_t var);
  std::size_t add_const(bool v);
  std::size_t add_and(std::size_t a, std::size_t b);
  std::size_t add_or(std::size_t a, std::size_t b);
  void set_output(std::size_t id);
  std::size_t push(const BoolNode& node);

  const std::vector<BoolNode>& nodes() const noexcept { return nodes_; }
  std::size_t output() const;

  /// Number of AND/OR gates.
  std::size_t gate_count() const;
  /// One more than the largest input variable, 0 without inputs.
  std::uint32_t num_vars() const;

  /// x[v] is the value of variable v; missing variables read as 0.
  bool eval(const std::vector<std::uint8_t>& x) const;
  /// Variables 0..63 packed into a mask.
  bool eval_mask(std::uint64_t x) const;
  /// Values of all nodes on mask input.
  std::vector<std::uint8_t> eval_all_mask(std::uint64_t x) const;

 private:
  std::size_t append(const BoolNode& node);
  std::vector<BoolNode> nodes_;
  std::optional<std::size_t> output_;
};

}  // namespace monoforge::approx
