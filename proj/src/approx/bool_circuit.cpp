#include "monoforge/approx/bool_circuit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace monoforge::approx {

std::size_t BoolCircuit::append(const BoolNode& node) {
  nodes_.push_back(node);
  return nodes_.size() - 1;
}

std::size_t BoolCircuit::push(const BoolNode& node) {
  const std::size_t id = nodes_.size();
  if ((node.op == BoolOp::And || node.op == BoolOp::Or) && (node.a >= id || node.b >= id))
    throw std::invalid_argument("bool gate " + std::to_string(id) + " references a later node");
  return append(node);
}

std::size_t BoolCircuit::add_input(std::uint32_t var) {
  BoolNode n;
  n.op = BoolOp::Input;
  n.var = var;
  return append(n);
}

std::size_t BoolCircuit::add_const(bool v) {
  BoolNode n;
  n.op = BoolOp::Const;
  n.value = v;
  return append(n);
}

std::size_t BoolCircuit::add_and(std::size_t a, std::size_t b) {
  BoolNode n;
  n.op = BoolOp::And;
  n.a = a;
  n.b = b;
  return push(n);
}

std::size_t BoolCircuit::add_or(std::size_t a, std::size_t b) {
  BoolNode n;
  n.op = BoolOp::Or;
  n.a = a;
  n.b = b;
  return push(n);
}

void BoolCircuit::set_output(std::size_t id) {
  if (id >= nodes_.size()) throw std::out_of_range("bool circuit output out of range");
  output_ = id;
}

std::size_t BoolCircuit::output() const {
  if (nodes_.empty()) throw std::logic_error("empty bool circuit has no output");
  return output_.value_or(nodes_.size() - 1);
}

std::size_t BoolCircuit::gate_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const BoolNode& n) {
    return n.op == BoolOp::And || n.op == BoolOp::Or;
  }));
}

std::uint32_t BoolCircuit::num_vars() const {
  std::uint32_t n = 0;
  for (const auto& node : nodes_)
    if (node.op == BoolOp::Input) n = std::max(n, node.var + 1);
  return n;
}

bool BoolCircuit::eval(const std::vector<std::uint8_t>& x) const {
  std::vector<std::uint8_t> val(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    switch (n.op) {
      case BoolOp::Input: val[i] = n.var < x.size() && x[n.var]; break;
      case BoolOp::Const: val[i] = n.value; break;
      case BoolOp::And: val[i] = val[n.a] & val[n.b]; break;
      case BoolOp::Or: val[i] = val[n.a] | val[n.b]; break;
    }
  }
  return val[output()];
}

std::vector<std::uint8_t> BoolCircuit::eval_all_mask(std::uint64_t x) const {
  std::vector<std::uint8_t> val(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    switch (n.op) {
      case BoolOp::Input: val[i] = n.var < 64 && ((x >> n.var) & 1U); break;
      case BoolOp::Const: val[i] = n.value; break;
      case BoolOp::And: val[i] = val[n.a] & val[n.b]; break;
      case BoolOp::Or: val[i] = val[n.a] | val[n.b]; break;
    }
  }
  return val;
}

bool BoolCircuit::eval_mask(std::uint64_t x) const { return eval_all_mask(x)[output()]; }

}  // namespace monoforge::approx
