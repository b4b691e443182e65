#include <doctest.h>

#include <cmath>

#include "monoforge/codes/reed_solomon.hpp"
#include "monoforge/errors.hpp"
#include "monoforge/random.hpp"
#include "monoforge/stats.hpp"
#include "oracles/oracles.hpp"

using namespace monoforge;
using namespace monoforge::codes;

namespace {

BitMatrix rows_of(std::initializer_list<const char*> rows) {
  std::vector<BitVector> r;
  for (const char* s : rows) r.push_back(BitVector::from_string(s));
  return BitMatrix::from_rows(r, r.front().size());
}

std::vector<std::vector<int>> plain(const BitMatrix& m) {
  std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.get(i, j);
  return out;
}

LinearCodeF2 rs_binary(unsigned l, std::size_t n, std::size_t m) {
  GF2eCtx ctx(l);
  return binary_expand_code(RSCode(ctx, n, m), FieldBasis(ctx));
}

}  // namespace

TEST_CASE("rs_generator examples") {
  GF2eCtx f8(3);
  std::vector<Gf> nonzero = {1, 2, 3, 4, 5, 6, 7};
  RSCode code(f8, 2, 7, nonzero);
  auto g = rs_generator(code);
  CHECK(g.rows() == 2);
  CHECK(g.cols() == 7);
  CHECK(g.rank() == 2);
  auto st = qary_stats(g);
  CHECK(st.distance == 6);
  CHECK(st.dual_distance == 3);
  CHECK(st.dual_by_enumeration);

  auto ones = rs_generator(RSCode(f8, 1, 7));
  for (std::size_t j = 0; j < 7; ++j) CHECK(ones.at(0, j) == 1);
  CHECK(qary_stats(ones).distance == 7);

  CHECK_THROWS_AS(RSCode(f8, 2, 9), std::invalid_argument);
  CHECK_THROWS_AS(RSCode(f8, 2, 3, {1, 1, 2}), std::invalid_argument);
}

TEST_CASE("binary expansion examples") {
  GF2eCtx f8(3);
  RSCode code(f8, 2, 7);
  FieldBasis basis(f8);
  auto c = binary_expand_code(code, basis);
  CHECK(c.dimension() == 6);
  CHECK(c.length() == 21);

  // γ(Gᵀw) lies in the row space of M for random messages w.
  auto g = rs_generator(code);
  Rng rng = make_rng(4);
  for (int i = 0; i < 100; ++i) {
    std::vector<Gf> w = {static_cast<Gf>(uniform_below(rng, 8)), static_cast<Gf>(uniform_below(rng, 8))};
    REQUIRE(c.generator().row_space_contains(linalg::basis_expand(basis, g.combine_rows(w))));
  }
  CHECK(linalg::basis_expand(basis, std::vector<Gf>(7, 0)).is_zero());
}

TEST_CASE("code_stats examples") {
  auto rep = code_stats(LinearCodeF2(rows_of({"111"})));
  CHECK(rep.distance == 3);
  CHECK(rep.dual_distance == 2);
  CHECK(code_stats(LinearCodeF2(BitMatrix::identity(4))).distance == 1);

  auto rs = code_stats(rs_binary(3, 2, 7));
  CHECK(rs.distance >= 6);
  CHECK(rs.distance <= 18);
  CHECK(rs.dual_distance >= 3);
  CHECK(rs.dual_distance <= 9);
  // Frozen from an independent script over the same field, modulus and basis.
  CHECK(rs.distance == 7);
  CHECK(rs.dual_distance == 4);
  CHECK(rs.delta == make_rational(2, 3));

  CHECK_THROWS_AS(LinearCodeF2(rows_of({"11", "11"})), std::invalid_argument);
}

TEST_CASE("GF(16) code uses the syndrome route for the dual") {
  auto c = rs_binary(4, 3, 15);
  CHECK(c.dimension() == 12);
  CHECK(c.length() == 60);
  auto st = code_stats(c);
  CHECK(st.distance_method == Method::Enumeration);
  CHECK(st.dual_method == Method::SyndromeSearch);
  CHECK(st.distance == 15);
  CHECK(st.dual_distance == 4);
}

TEST_CASE("distance routes agree") {
  auto c = rs_binary(3, 2, 7);
  const auto h = c.parity_check();
  CHECK(min_weight_enumerate(c.generator()) == min_dependent_columns(h));
  CHECK(min_weight_enumerate(h) == min_dependent_columns(c.generator()));
  CHECK(min_weight_enumerate(c.generator()) == min_weight_enumerate_serial(c.generator()));
  CHECK(min_weight_enumerate(c.generator()) == oracle::min_weight_brute(plain(c.generator())));
  CHECK(min_weight_information_set(c.generator(), 200, 1) >= min_weight_enumerate(c.generator()));

  Rng rng = make_rng(77);
  for (int round = 0; round < 150; ++round) {
    const std::size_t r = 1 + uniform_below(rng, 8), s = r + uniform_below(rng, 10);
    BitMatrix m(r, s);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < s; ++j) m.set(i, j, uniform_below(rng, 2));
    if (m.rank() != r) continue;
    LinearCodeF2 code(m);
    const auto h = code.parity_check();
    REQUIRE(min_weight_enumerate(m) == static_cast<std::size_t>(oracle::min_weight_brute(plain(m))));
    if (h.rows() > 0) {
      REQUIRE(min_weight_enumerate(m) == min_dependent_columns(h));
      REQUIRE(min_weight_enumerate(h) == min_dependent_columns(m));
    }
  }
}

TEST_CASE("t-wise independence examples") {
  LinearCodeF2 even(rows_of({"110", "011"}));
  CHECK(code_stats(even).dual_distance == 3);
  CHECK(check_t_wise_independence(even, 2).uniform);
  auto three = check_t_wise_independence(even, 3);
  CHECK_FALSE(three.uniform);
  CHECK(three.failing_set.size() == 3);

  for (auto [l, n, m] : {std::tuple{3U, 2UL, 7UL}, std::tuple{4U, 3UL, 15UL}}) {
    auto c = rs_binary(l, n, m);
    const auto d = code_stats(c).dual_distance;
    CHECK(check_t_wise_independence(c, d - 1).uniform);
    CHECK_FALSE(check_t_wise_independence(c, d).uniform);
  }
}

TEST_CASE("column independence and hyperplane statements on the RS code") {
  auto c = rs_binary(3, 2, 7);
  const auto& m = c.generator();
  const auto st = code_stats(c);
  // Every set of at most d⊥ − 1 columns is independent.
  const std::size_t cols = m.cols();
  for (std::size_t a = 0; a < cols; ++a)
    for (std::size_t b = a + 1; b < cols; ++b)
      for (std::size_t e = b + 1; e < cols; ++e) {
        REQUIRE(m.select_columns({a, b, e}).rank() == 3);
        REQUIRE(st.dual_distance - 1 == 3);
      }
  // Columns inside a hyperplane u⊥: at most 1 − d/m of them with d = distance − 1.
  Rng rng = make_rng(8);
  const double delta = 1.0 - static_cast<double>(st.distance - 1) / static_cast<double>(cols);
  for (int i = 0; i < 200; ++i) {
    BitVector u(m.rows());
    while (u.is_zero())
      for (std::size_t k = 0; k < m.rows(); ++k) u.set(k, uniform_below(rng, 2));
    const auto word = m.combine_rows(u);
    const double inside = static_cast<double>(cols - word.popcount()) / static_cast<double>(cols);
    REQUIRE(inside <= delta);
  }
  // Pr[M[S] not full rank] for |S| = N stays below 2^r Δ^N.
  const std::size_t big_n = 15;
  std::size_t deficient = 0;
  const std::size_t trials = 10000;
  for (std::size_t t = 0; t < trials; ++t) {
    auto s = random_subset(rng, static_cast<std::uint32_t>(cols), big_n);
    std::vector<std::size_t> sel(s.begin(), s.end());
    deficient += m.select_columns(sel).rank() < m.rows();
  }
  const double bound = std::pow(2.0, static_cast<double>(m.rows())) * std::pow(delta, static_cast<double>(big_n));
  CHECK(stats::wilson(deficient, trials).lo <= bound);
}

TEST_CASE("thm43 bound") {
  CHECK(thm43_bound(4, 100, 8, 4).value == doctest::Approx(1.0));
  auto v = thm43_bound(10, 1000, 500, 100, 10);
  CHECK(v.value == doctest::Approx(1.1752681832306922));
  CHECK(v.applicable);
  CHECK_FALSE(thm43_bound(10, 1000, 15, 100).applicable);
}
