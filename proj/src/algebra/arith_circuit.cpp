#include "monoforge/algebra/arith_circuit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "monoforge/errors.hpp"
#include "monoforge/random.hpp"

namespace monoforge::algebra {

std::size_t ArithCircuit::append(ArithNode node) {
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

std::size_t ArithCircuit::push(ArithNode node) {
  const std::size_t id = nodes_.size();
  for (std::size_t a : node.args)
    if (a >= id) throw std::invalid_argument("node " + std::to_string(id) + " references node " + std::to_string(a));
  if ((node.op == ArithOp::Input || node.op == ArithOp::Const) && !node.args.empty())
    throw std::invalid_argument("leaf node " + std::to_string(id) + " has arguments");
  return append(std::move(node));
}

std::size_t ArithCircuit::add_input(VarId v) {
  ArithNode n;
  n.op = ArithOp::Input;
  n.var = v;
  return append(std::move(n));
}

std::size_t ArithCircuit::add_const(const Rational& c) {
  ArithNode n;
  n.op = ArithOp::Const;
  n.value = c;
  return append(std::move(n));
}

std::size_t ArithCircuit::add_add(std::vector<std::size_t> args) {
  ArithNode n;
  n.op = ArithOp::Add;
  n.args = std::move(args);
  return push(std::move(n));
}

std::size_t ArithCircuit::add_mul(std::vector<std::size_t> args) {
  ArithNode n;
  n.op = ArithOp::Mul;
  n.args = std::move(args);
  return push(std::move(n));
}

void ArithCircuit::set_output(std::size_t id) {
  if (id >= nodes_.size()) throw std::out_of_range("circuit output out of range");
  output_ = id;
}

std::size_t ArithCircuit::output() const {
  if (nodes_.empty()) throw std::logic_error("empty circuit has no output");
  return output_.value_or(nodes_.size() - 1);
}

std::vector<std::size_t> ArithCircuit::reachable() const {
  if (nodes_.empty()) return {};
  std::vector<bool> mark(nodes_.size(), false);
  mark[output()] = true;
  for (std::size_t i = nodes_.size(); i-- > 0;)
    if (mark[i])
      for (std::size_t a : nodes_[i].args) mark[a] = true;
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (mark[i]) ids.push_back(i);
  return ids;
}

static bool is_gate(const ArithNode& n) { return n.op == ArithOp::Add || n.op == ArithOp::Mul; }

std::size_t ArithCircuit::gate_count() const {
  std::size_t g = 0;
  for (std::size_t i : reachable()) g += is_gate(nodes_[i]);
  return g;
}

std::size_t ArithCircuit::wire_count() const {
  std::size_t w = 0;
  for (std::size_t i : reachable()) w += nodes_[i].args.size();
  return w;
}

std::size_t ArithCircuit::depth() const {
  if (nodes_.empty()) return 0;
  std::vector<std::size_t> d(nodes_.size(), 0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!is_gate(nodes_[i])) continue;
    std::size_t best = 0;
    for (std::size_t a : nodes_[i].args) best = std::max(best, d[a]);
    d[i] = best + 1;
  }
  return d[output()];
}

std::uint32_t ArithCircuit::formal_degree() const {
  if (nodes_.empty()) return 0;
  std::vector<std::uint32_t> d(nodes_.size(), 0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    switch (n.op) {
      case ArithOp::Input: d[i] = 1; break;
      case ArithOp::Const: d[i] = 0; break;
      case ArithOp::Add:
        for (std::size_t a : n.args) d[i] = std::max(d[i], d[a]);
        break;
      case ArithOp::Mul:
        for (std::size_t a : n.args) d[i] += d[a];
        break;
    }
  }
  return d[output()];
}

bool ArithCircuit::is_monotone() const {
  for (std::size_t i : reachable())
    if (nodes_[i].op == ArithOp::Const && sgn(nodes_[i].value) < 0) return false;
  return true;
}

std::set<VarId> ArithCircuit::input_vars() const {
  std::set<VarId> vars;
  for (std::size_t i : reachable())
    if (nodes_[i].op == ArithOp::Input) vars.insert(nodes_[i].var);
  return vars;
}

Rational eval_circuit(const ArithCircuit& c, const Assignment& at) {
  const auto& nodes = c.nodes();
  std::vector<Rational> val(nodes.size());
  for (std::size_t i : c.reachable()) {
    const auto& n = nodes[i];
    switch (n.op) {
      case ArithOp::Input: {
        auto it = at.find(n.var);
        if (it == at.end()) throw MissingVariable(n.var);
        val[i] = it->second;
        break;
      }
      case ArithOp::Const: val[i] = n.value; break;
      case ArithOp::Add:
        val[i] = 0;
        for (std::size_t a : n.args) val[i] += val[a];
        break;
      case ArithOp::Mul:
        val[i] = 1;
        for (std::size_t a : n.args) val[i] *= val[a];
        break;
    }
  }
  return val[c.output()];
}

SparsePoly expand_circuit(const ArithCircuit& c, std::size_t term_cap) {
  const auto& nodes = c.nodes();
  const auto order = c.reachable();
  // Release each intermediate polynomial once its last consumer has run.
  std::vector<std::size_t> uses(nodes.size(), 0);
  for (std::size_t i : order)
    for (std::size_t a : nodes[i].args) ++uses[a];

  std::vector<SparsePoly> poly(nodes.size());
  auto check = [&](const SparsePoly& p) {
    if (term_cap > 0 && p.size() > term_cap) throw TermBudgetExceeded(term_cap);
  };
  auto release = [&](std::size_t a) {
    if (--uses[a] == 0) poly[a] = SparsePoly{};
  };

  for (std::size_t i : order) {
    const auto& n = nodes[i];
    switch (n.op) {
      case ArithOp::Input: poly[i] = SparsePoly::variable(n.var); break;
      case ArithOp::Const: poly[i] = SparsePoly::constant(n.value); break;
      case ArithOp::Add:
        for (std::size_t a : n.args) {
          poly[i] += poly[a];
          check(poly[i]);
        }
        for (std::size_t a : n.args) release(a);
        break;
      case ArithOp::Mul: {
        SparsePoly acc = SparsePoly::constant(1);
        for (std::size_t a : n.args) acc = SparsePoly::multiply(acc, poly[a], term_cap);
        poly[i] = std::move(acc);
        for (std::size_t a : n.args) release(a);
        break;
      }
    }
  }
  return std::move(poly[c.output()]);
}

IdentityVerdict random_identity_test(const ArithCircuit& c, const SparsePoly& p, std::size_t trials,
                                     std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("identity test needs at least one trial");
  std::set<VarId> vars = c.input_vars();
  const auto pv = p.variables();
  vars.insert(pv.begin(), pv.end());
  const std::uint64_t deg = std::max<std::uint64_t>(1, std::max<std::uint64_t>(c.formal_degree(), p.degree()));
  const std::uint64_t nv = std::max<std::size_t>(1, vars.size());

  IdentityVerdict v;
  v.point_range = 2 * deg * trials * nv;
  Rng rng = make_rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Assignment at;
    for (VarId x : vars) at[x] = Rational(static_cast<unsigned long>(uniform_below(rng, v.point_range + 1)));
    ++v.trials_run;
    if (eval_circuit(c, at) != p.evaluate(at)) {
      v.equal_whp = false;
      v.witness = std::move(at);
      return v;
    }
  }
  return v;
}

approx::BoolCircuit booleanize(const ArithCircuit& c) {
  if (!c.is_monotone()) throw NotMonotone();
  const auto& nodes = c.nodes();
  approx::BoolCircuit out;
  std::vector<std::size_t> map(nodes.size());
  for (std::size_t i : c.reachable()) {
    const auto& n = nodes[i];
    switch (n.op) {
      case ArithOp::Input: map[i] = out.add_input(n.var); break;
      case ArithOp::Const: map[i] = out.add_const(sgn(n.value) > 0); break;
      case ArithOp::Add:
      case ArithOp::Mul: {
        const bool is_add = n.op == ArithOp::Add;
        if (n.args.empty()) {
          map[i] = out.add_const(!is_add);
          break;
        }
        std::size_t acc = map[n.args[0]];
        for (std::size_t k = 1; k < n.args.size(); ++k)
          acc = is_add ? out.add_or(acc, map[n.args[k]]) : out.add_and(acc, map[n.args[k]]);
        map[i] = acc;
        break;
      }
    }
  }
  out.set_output(map[c.output()]);
  return out;
}

}  // namespace monoforge::algebra
