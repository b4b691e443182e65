#pragma once

#include "cli_common.hpp"

#include "monoforge/graph/graph.hpp"

namespace monoforge::cli {

// Pipeline stages shared by the subcommands and the presets. Each appends its
// checks to the report (ids get `tag` appended when non-empty) and returns
// its results block.

Json stage_expander(Report& rep, const graph::Graph& g, const std::string& tag = "");
Json stage_build(Report& rep, const graph::Graph& g, std::size_t k, const std::string& save, const std::string& tag = "");
Json stage_sps(Report& rep, const graph::Graph& g, std::size_t k, const std::string& save, const std::string& tag = "");
/// Exact mode expands the circuit; MC mode runs a randomized identity test.
Json stage_identity(Report& rep, const graph::Graph& g, std::size_t k, bool exact, std::size_t trials,
                    std::optional<std::uint64_t> seed, const std::string& tag = "");
Json stage_substitution(Report& rep, const graph::Graph& g, std::size_t k, const std::string& tag = "");
Json stage_hard_input(Report& rep, const graph::Graph& g, std::size_t m, std::size_t trials, std::uint64_t seed,
                      const std::string& tag = "");

std::string tagged(const std::string& id, const std::string& tag);
std::vector<std::size_t> divisors(std::size_t n);
Json rational_json(const Rational& q);  // {"exact": "p/q", "approx": double}

}  // namespace monoforge::cli

#include "monoforge/codes/linear_code.hpp"
#include "monoforge/codes/reed_solomon.hpp"

namespace monoforge::cli {

struct RsBundle {
  codes::RSCode rs;
  linalg::FieldBasis basis;
  codes::LinearCodeF2 binary;
};

/// RS code over GF(2^l) at the default points with the polynomial basis.
RsBundle make_rs(unsigned l, std::size_t n, std::size_t m, std::uint32_t modulus = 0);
Json code_json(const RsBundle& b);
Json stats_json(const codes::CodeStats& s);

/// q-ary and binary distances with the exact RS values and sandwich checks.
Json stage_code_stats(Report& rep, const RsBundle& b, codes::CodeStats* binary_out, const std::string& tag = "");
/// Uniform at t = dual - 1, not uniform at t = dual (exhaustive over the code).
Json stage_independence(Report& rep, const codes::LinearCodeF2& c, std::size_t dual_distance,
                        const std::string& tag = "");

}  // namespace monoforge::cli

#include "monoforge/rank/distributions.hpp"
#include "monoforge/rank/well_behaved.hpp"

namespace monoforge::cli {

Json stage_spread(Report& rep, std::size_t m, std::size_t weight, std::size_t kmax, const std::string& tag = "");
/// Exhaustive over u: uniform at t, and (when check_above) not uniform at t+1.
Json stage_d0_independence(Report& rep, const linalg::BitMatrix& m, std::size_t t, bool check_above,
                           const std::string& tag = "");
/// With gate_column_weights, property 1 is only checked when the weight-deficit
/// union bound is below 1; otherwise it is reported without a check.
Json stage_well_behaved(Report& rep, const rank::RealMatrix01& m, const rank::WellBehavedOptions& opt,
                        bool gate_column_weights, const std::string& tag = "");
Json stage_cauchy_binet(Report& rep, const linalg::QMatrix& a, const std::string& tag = "");
Json stage_d0_soundness(Report& rep, const rank::RealMatrix01& m, const std::string& tag = "");
Json interval_json(const stats::Interval& ci);

inline constexpr std::uint64_t kSampleStream = 0x4400;

}  // namespace monoforge::cli

#include "monoforge/approx/approximate.hpp"
#include "monoforge/approx/sunflower.hpp"

namespace monoforge::cli {

/// Runs pluck and checks its postconditions: r-small, width <= 2w, output
/// pointwise >= input on every point (n <= 20), measured error <= plucks * eps.
Json stage_pluck(Report& rep, const approx::SetFamily& fam, const approx::Dist& d0, const Rational& eps,
                 std::uint64_t r, std::size_t w, const approx::PluckOptions& opt, const std::string& tag = "");
Json stage_approximation(Report& rep, const approx::BoolCircuit& c, const approx::Dist& d0, const approx::Dist& d1,
                         const approx::ApproxOptions& opt, const std::string& tag = "");

}  // namespace monoforge::cli
