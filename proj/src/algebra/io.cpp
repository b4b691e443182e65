#include "monoforge/algebra/io.hpp"

#include <string>

#include "monoforge/errors.hpp"

namespace monoforge::algebra {

namespace {

std::string rational_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError("expected a rational string");
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Json poly_to_json(const SparsePoly& p, std::size_t nvars) {
  if (nvars == 0) {
    const auto vars = p.variables();
    nvars = vars.empty() ? 0 : *vars.rbegin() + 1;
  }
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json mono = Json::array();
    for (const auto& [v, e] : m.factors()) mono.push_back({v, e});
    terms.push_back({{"m", mono}, {"c", to_fraction_string(c)}});
  }
  return {{"vars", nvars}, {"terms", terms}};
}

SparsePoly poly_from_json(const Json& j) {
  return guarded([&] {
    SparsePoly p;
    for (const auto& t : j.at("terms")) {
      std::vector<Monomial::Factor> f;
      for (const auto& ve : t.at("m")) f.emplace_back(ve.at(0).get<VarId>(), ve.at(1).get<std::uint32_t>());
      p.add_term(Monomial(std::move(f)), parse_rational(rational_text(t.at("c"))));
    }
    return p;
  });
}

Json circuit_to_json(const ArithCircuit& c) {
  Json nodes = Json::array();
  const auto& ns = c.nodes();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    Json n = {{"id", i}};
    switch (ns[i].op) {
      case ArithOp::Input:
        n["op"] = "in";
        n["var"] = ns[i].var;
        break;
      case ArithOp::Const:
        n["op"] = "const";
        n["value"] = to_fraction_string(ns[i].value);
        break;
      case ArithOp::Add:
        n["op"] = "add";
        n["args"] = ns[i].args;
        break;
      case ArithOp::Mul:
        n["op"] = "mul";
        n["args"] = ns[i].args;
        break;
    }
    nodes.push_back(std::move(n));
  }
  Json out = {{"nodes", nodes}};
  if (!ns.empty()) out["output"] = c.output();
  return out;
}

ArithCircuit circuit_from_json(const Json& j) {
  return guarded([&] {
    ArithCircuit c;
    for (const auto& n : j.at("nodes")) {
      if (n.contains("id") && n.at("id").get<std::size_t>() != c.nodes().size())
        throw ParseError("circuit nodes must be listed in id order");
      const auto op = n.at("op").get<std::string>();
      ArithNode node;
      if (op == "in") {
        node.op = ArithOp::Input;
        node.var = n.at("var").get<VarId>();
      } else if (op == "const") {
        node.op = ArithOp::Const;
        node.value = parse_rational(rational_text(n.at("value")));
      } else if (op == "add" || op == "mul") {
        node.op = op == "add" ? ArithOp::Add : ArithOp::Mul;
        node.args = n.at("args").get<std::vector<std::size_t>>();
      } else {
        throw ParseError("unknown circuit op '" + op + "'");
      }
      try {
        c.push(std::move(node));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    }
    if (j.contains("output")) {
      const auto out = j.at("output").get<std::size_t>();
      if (out >= c.nodes().size()) throw ParseError("circuit output out of range");
      c.set_output(out);
    }
    return c;
  });
}

Json bool_circuit_to_json(const approx::BoolCircuit& c) {
  using approx::BoolOp;
  Json nodes = Json::array();
  const auto& ns = c.nodes();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    Json n = {{"id", i}};
    switch (ns[i].op) {
      case BoolOp::Input:
        n["op"] = "in";
        n["var"] = ns[i].var;
        break;
      case BoolOp::Const:
        n["op"] = "const";
        n["value"] = ns[i].value;
        break;
      case BoolOp::And:
      case BoolOp::Or:
        n["op"] = ns[i].op == BoolOp::And ? "and" : "or";
        n["args"] = {ns[i].a, ns[i].b};
        break;
    }
    nodes.push_back(std::move(n));
  }
  Json out = {{"nodes", nodes}};
  if (!ns.empty()) out["output"] = c.output();
  return out;
}

approx::BoolCircuit bool_circuit_from_json(const Json& j) {
  using approx::BoolOp;
  return guarded([&] {
    approx::BoolCircuit c;
    for (const auto& n : j.at("nodes")) {
      const auto op = n.at("op").get<std::string>();
      approx::BoolNode node;
      if (op == "in") {
        node.op = BoolOp::Input;
        node.var = n.at("var").get<std::uint32_t>();
      } else if (op == "const") {
        node.op = BoolOp::Const;
        node.value = n.at("value").get<bool>();
      } else if (op == "and" || op == "or") {
        node.op = op == "and" ? BoolOp::And : BoolOp::Or;
        const auto& args = n.at("args");
        if (args.size() != 2) throw ParseError("boolean gates take exactly two arguments");
        node.a = args.at(0).get<std::size_t>();
        node.b = args.at(1).get<std::size_t>();
      } else {
        throw ParseError("unknown boolean op '" + op + "'");
      }
      try {
        c.push(node);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    }
    if (j.contains("output")) {
      const auto out = j.at("output").get<std::size_t>();
      if (out >= c.nodes().size()) throw ParseError("circuit output out of range");
      c.set_output(out);
    }
    return c;
  });
}

}  // namespace monoforge::algebra
