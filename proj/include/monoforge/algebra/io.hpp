#pragma once

#include <json.hpp>

#include "monoforge/algebra/arith_circuit.hpp"

namespace monoforge::algebra {

using Json = nlohmann::ordered_json;

/// {"vars": n, "terms": [{"m": [[var, exp], ...], "c": "p/q"}, ...]}. When
/// nvars is 0 it is taken as one more than the largest variable id.
Json poly_to_json(const SparsePoly& p, std::size_t nvars = 0);
SparsePoly poly_from_json(const Json& j);

/// {"nodes": [{"id": 0, "op": "in", "var": 3}, {"id": 1, "op": "const",
/// "value": "-2/1"}, {"id": 2, "op": "mul", "args": [0, 1]}], "output": 2}
Json circuit_to_json(const ArithCircuit& c);
ArithCircuit circuit_from_json(const Json& j);

Json bool_circuit_to_json(const approx::BoolCircuit& c);
approx::BoolCircuit bool_circuit_from_json(const Json& j);

}  // namespace monoforge::algebra
