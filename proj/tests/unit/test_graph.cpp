#include <doctest.h>

#include <cmath>
#include <sstream>

#include "monoforge/errors.hpp"
#include "monoforge/graph/expander.hpp"
#include "monoforge/graph/hard_input.hpp"
#include "monoforge/graph/polys.hpp"
#include "monoforge/graph/rectangles.hpp"
#include "oracles/oracles.hpp"

using namespace monoforge;
using namespace monoforge::graph;
using algebra::Monomial;

namespace {

oracle::EdgeList edge_list(const Graph& g) {
  oracle::EdgeList e;
  for (auto [u, v] : g.edges()) e.emplace_back(static_cast<int>(u), static_cast<int>(v));
  return e;
}

Monomial selector_of(std::initializer_list<int> bits) {
  std::vector<Monomial::Factor> f;
  int i = 0;
  for (int b : bits) {
    f.emplace_back(static_cast<algebra::VarId>(2 * i + b), 1);
    ++i;
  }
  return Monomial(f);
}

std::vector<Graph> small_corpus() {
  std::vector<Graph> gs = {cycle_graph(4), cycle_graph(6), complete_graph(4), complete_graph(5), empty_graph(4),
                           Graph(2, {{0, 1}}), induced_prefix(petersen_graph(), 8)};
  return gs;
}

}  // namespace

TEST_CASE("build_Q examples") {
  const auto e4 = build_Q(empty_graph(4), 4);
  CHECK(e4.size() == 16);
  for (const auto& [m, c] : e4.terms()) CHECK(c == 1);

  const auto c4 = build_Q(cycle_graph(4), 4);
  CHECK(c4.coefficient(selector_of({1, 1, 0, 0})) == 0);
  CHECK(c4.coefficient(selector_of({1, 1, 1, 1})) == 9);
  CHECK(c4.coefficient(selector_of({0, 0, 0, 0})) == 1);

  const auto edge = build_Q(Graph(2, {{0, 1}}), 2);
  CHECK(edge.size() == 3);
  CHECK(edge.coefficient(selector_of({1, 1})) == 0);

  CHECK_THROWS_AS(build_Q(cycle_graph(6), 4), NotADivisor);
  CHECK_THROWS_AS(build_Q(empty_graph(23), 23), EnumerationTooLarge);
}

TEST_CASE("build_Q matches the brute-force oracle and is set-multilinear") {
  for (const auto& g : small_corpus())
    for (std::size_t k = 1; k <= g.n(); ++k) {
      if (g.n() % k) continue;
      const auto q = build_Q(g, k);
      REQUIRE(algebra::poly_equal(q, oracle::brute_Q(static_cast<int>(g.n()), edge_list(g), static_cast<int>(k))));
      REQUIRE(algebra::is_set_multilinear(q, BlockLayout(g.n(), k).partition()));
    }
}

TEST_CASE("coefficient kernels agree") {
  const auto g = petersen_graph();
  CHECK(selector_coefficients(g) == selector_coefficients_serial(g));
}

TEST_CASE("substitution examples") {
  const auto c4 = cycle_graph(4);
  const auto p = build_Q(c4, 4);
  CHECK(algebra::poly_equal(substitute_Q_to_P(p, 4, 4), p));
  CHECK(algebra::poly_equal(substitute_Q_to_P(build_Q(c4, 2), 4, 2), p));
  const auto c6 = cycle_graph(6);
  CHECK(algebra::poly_equal(substitute_Q_to_P(build_Q(c6, 3), 6, 3), build_Q(c6, 6)));
  CHECK_THROWS_AS(substitute_Q_to_P(algebra::SparsePoly::variable(99), 4, 2), VariableUniverseMismatch);
}

TEST_CASE("sps circuit examples") {
  const auto e = build_sps_circuit(empty_graph(4), 4);
  CHECK(algebra::poly_equal(algebra::expand_circuit(e, 0), build_Q(empty_graph(4), 4)));
  algebra::Assignment ones;
  for (algebra::VarId v = 0; v < 8; ++v) ones[v] = 1;
  CHECK(algebra::eval_circuit(e, ones) == 16);
  CHECK(e.depth() == 3);

  const auto c4 = cycle_graph(4);
  CHECK(algebra::poly_equal(algebra::expand_circuit(build_sps_circuit(c4, 4), 0), build_Q(c4, 4)));
  const auto c = build_sps_circuit(c4, 2);
  CHECK(c.wire_count() <= 40 * 16 * 2 * 4);
  CHECK(c.depth() == 3);
}

TEST_CASE("f_G and udisj examples") {
  const auto c4 = cycle_graph(4);
  CHECK(f_G_eval(c4, {0, 0, 0, 0}));
  CHECK_FALSE(f_G_eval(c4, {1, 1, 0, 0}));
  CHECK(f_G_eval(c4, {1, 1, 1, 0}));
  CHECK(udisj_ne1({0, 0}, {0, 0}));
  CHECK_FALSE(udisj_ne1({1, 0}, {1, 0}));
  CHECK(udisj_ne1({1, 1}, {1, 1}));
}

TEST_CASE("assignment-support identity") {
  for (const auto& g : small_corpus()) {
    std::set<Mask> from_poly;
    const auto p = build_Q(g, g.n());
    for (const auto& [m, c] : p.terms()) from_poly.insert(selector_support(m, g.n()));
    REQUIRE(from_poly == f_G_ones(g));
  }
}

TEST_CASE("expander examples") {
  auto k6 = check_expander(complete_graph(6));
  CHECK(k6.d == 5);
  CHECK(k6.lambda2 == doctest::Approx(-1.0));
  CHECK(k6.passes);
  auto c4 = check_expander(cycle_graph(4));
  CHECK(c4.lambda2 == doctest::Approx(0.0));
  CHECK(c4.passes);
  auto tri = check_expander(disjoint_union(complete_graph(3), complete_graph(3)));
  CHECK(tri.lambda2 == doctest::Approx(2.0));
  CHECK_FALSE(tri.passes);
  auto dod = check_expander(dodecahedron_graph());
  CHECK(dod.d == 3);
  CHECK(dod.lambda2 == doctest::Approx(std::sqrt(5.0)));
  CHECK(dod.passes);
  CHECK(check_expander(petersen_graph()).lambda2 == doctest::Approx(1.0));
  auto abs_mode = check_expander(complete_graph(6), 1e-9, SpectrumMode::Absolute);
  CHECK(abs_mode.lambda2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(check_expander(induced_prefix(petersen_graph(), 8)), NotRegular);
  CHECK(check_expander(search_circulant_expander(10, 4)).passes);
}

TEST_CASE("matching sampler examples") {
  const auto k4 = complete_graph(4);
  CHECK(sample_matching(k4, 1, 1).edges.size() == 1);
  CHECK_THROWS_AS(sample_matching(k4, 2, 1), GraphExhausted);
  try {
    sample_matching(k4, 2, 1);
  } catch (const GraphExhausted& e) {
    CHECK(e.step() == 2);
  }
  const auto dod = dodecahedron_graph();
  // Whatever the first edge, a second edge always survives the distance-2 removal.
  for (const auto& [u, v] : dod.edges()) {
    std::set<Vertex> gone;
    for (Vertex s : {u, v}) {
      gone.insert(s);
      for (Vertex x : dod.neighbors(s)) {
        gone.insert(x);
        for (Vertex y : dod.neighbors(x)) gone.insert(y);
      }
    }
    const bool survivor = std::any_of(dod.edges().begin(), dod.edges().end(),
                                      [&](const Edge& e) { return !gone.count(e.first) && !gone.count(e.second); });
    REQUIRE(survivor);
  }
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto m = sample_matching(dod, 2, seed);
    REQUIRE(m.edges.size() == 2);
    REQUIRE(is_induced_matching(dod, m.edges));
  }
}

TEST_CASE("hard input examples") {
  const auto c6 = cycle_graph(6);
  Matching empty{{}, true};
  const auto z = sample_hard_input(c6, empty, 3);
  CHECK(std::count(z.begin(), z.end(), 1) == 0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto m = sample_matching(c6, 1, seed);
    auto a = sample_hard_input(c6, m, seed);
    Mask s = 0;
    for (std::size_t v = 0; v < 6; ++v)
      if (a[v]) s |= Mask{1} << v;
    REQUIRE(c6.induced_edge_count(s) == 0);
    REQUIRE(f_G_eval(c6, a));
  }
  Matching bad{{{0, 1}, {2, 3}}, true};
  CHECK_THROWS_AS(sample_hard_input(c6, bad, 1), NotInducedMatching);

  const auto dod = dodecahedron_graph();
  CHECK(hard_input_experiment(dod, 2, 3000, 17) == hard_input_experiment_serial(dod, 2, 3000, 17));
  CHECK_THROWS_AS(hard_input_experiment(complete_graph(4), 2, 10, 17), GraphExhausted);
}

TEST_CASE("rectangle cover examples") {
  Rectangle full{2, 0b01, {0b00, 0b01}, {0b00, 0b10}};
  std::set<Mask> cube = {0, 1, 2, 3};
  auto v = verify_rectangle_cover({full}, cube);
  CHECK(v.covered);
  CHECK(v.balanced_all);
  auto v2 = verify_rectangle_cover({full}, {0, 1, 2});
  CHECK_FALSE(v2.covered);
  CHECK(v2.witness == Mask{3});

  // C4 is K_{2,2} with sides {1,3} and {2,4}; e(S) = |S∩Y|·|S∩Z|.
  const Mask y = 0b0101, z = 0b1010;
  std::vector<Mask> py = {0, 0b0001, 0b0100, y}, pz = {0, 0b0010, 0b1000, z};
  std::vector<Rectangle> cover = {{4, y, {0}, pz}, {4, y, py, {0}}, {4, y, {y}, pz}, {4, y, py, {z}}};
  auto c = verify_rectangle_cover(cover, f_G_ones(cycle_graph(4)));
  CHECK(c.covered);
  CHECK(c.balanced_all);
  cover.pop_back();
  CHECK_FALSE(verify_rectangle_cover(cover, f_G_ones(cycle_graph(4))).covered);
}

TEST_CASE("pair decomposition examples") {
  using algebra::SparsePoly;
  auto x = [](algebra::VarId v) { return SparsePoly::variable(v); };
  // Variables: x_{1,0}=0, x_{1,1}=1, x_{2,0}=2, x_{2,1}=3.
  algebra::VarPartition part({{0, 1}, {2, 3}});
  SparsePoly p = x(0) * x(2) + x(1) * x(3);
  std::set<algebra::VarId> y = {0, 1}, z = {2, 3};
  std::vector<MonotonePair> good = {{x(0), x(2), y, z}, {x(1), x(3), y, z}};
  CHECK(verify_pair_decomposition(p, good, part).ok);

  auto neg = good;
  neg[0].g = x(0) * Rational(-1);
  CHECK(verify_pair_decomposition(p, neg, part).failed_clause == "monotonicity");

  auto extra = good;
  extra.push_back({x(0), x(3), y, z});
  CHECK(verify_pair_decomposition(p, extra, part).failed_clause == "support containment");

  auto split = good;
  split[0].y = {0, 2};
  split[0].z = {1, 3};
  split[0].g = x(0);
  split[0].h = x(3);
  CHECK_FALSE(verify_pair_decomposition(p, split, part).ok);
}

TEST_CASE("graph file format") {
  std::istringstream in("graph 4\n# square\n1 2\n2 3\n3 4\n4 1\n");
  CHECK(read_graph(in) == cycle_graph(4));
  std::ostringstream out;
  write_graph(out, cycle_graph(4));
  std::istringstream back(out.str());
  CHECK(read_graph(back) == cycle_graph(4));
  std::istringstream loop("graph 3\n1 1\n");
  CHECK_THROWS_AS(read_graph(loop), ParseError);
  std::istringstream range("graph 3\n1 4\n");
  CHECK_THROWS_AS(read_graph(range), ParseError);
}
