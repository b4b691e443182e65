#include <doctest.h>

#include <bit>
#include <cmath>

#include "monoforge/approx/approximate.hpp"
#include "monoforge/errors.hpp"
#include "monoforge/rank/distributions.hpp"
#include "oracles/oracles.hpp"

using namespace monoforge;
using namespace monoforge::approx;

namespace {

Mask m_of(std::initializer_list<std::size_t> e) { return mask_of(std::vector<std::size_t>(e)); }

SetFamily random_family(Rng& rng, std::size_t n, std::size_t count, std::size_t max_width) {
  std::vector<Mask> sets;
  for (std::size_t i = 0; i < count; ++i) {
    const auto w = static_cast<std::uint32_t>(1 + uniform_below(rng, max_width));
    Mask s = 0;
    for (auto e : random_subset(rng, static_cast<std::uint32_t>(n), w)) s |= Mask{1} << e;
    sets.push_back(s);
  }
  return SetFamily(n, sets);
}

// Pr over the uniform cube by direct counting.
Rational uniform_prob(std::size_t n, const std::function<bool(Mask)>& f) {
  long hits = 0;
  for (Mask x = 0; x < (Mask{1} << n); ++x) hits += f(x);
  return make_rational(hits, 1L << n);
}

}  // namespace

TEST_CASE("dnf_eval examples") {
  CHECK(dnf_eval(SetFamily(3, {0}), {0, 0, 0}));
  CHECK(dnf_eval(SetFamily(3, {0}), {1, 0, 1}));
  CHECK(dnf_eval(SetFamily(2, {m_of({0}), m_of({1})}), {0, 1}));
  CHECK_FALSE(dnf_eval(SetFamily(2), {1, 1}));
  CHECK_THROWS_AS(dnf_eval(SetFamily(2), {1}), std::invalid_argument);
}

TEST_CASE("SetFamily invariants, r-smallness and JSON") {
  SetFamily f(5, {m_of({1, 2}), m_of({0}), m_of({1, 2}), m_of({3, 4}), m_of({0, 1, 4})});
  CHECK(f.size() == 4);
  CHECK(f.width() == 3);
  CHECK(f.slice_size(2) == 2);
  CHECK(f.r_small(2));
  CHECK_FALSE(f.r_small(1));
  const auto j = family_to_json(f);
  CHECK(j.dump() == R"({"n":5,"sets":[[0],[1,2],[3,4],[0,1,4]]})");
  CHECK(family_from_json(j) == f);
  CHECK_THROWS_AS(family_from_json(nlohmann::ordered_json::parse(R"({"n":2,"sets":[[2]]})")), ParseError);
  CHECK_THROWS_AS(SetFamily(2, {m_of({3})}), std::invalid_argument);
  CHECK(saturating_pow(3, 4) == 81);
  CHECK(saturating_pow(1u << 20, 4) == UINT64_MAX);
}

TEST_CASE("Dist factories carry exact supports") {
  const auto u = Dist::uniform(3);
  CHECK(u.exact_capable());
  CHECK(u.points().size() == 8);
  CHECK(prob_exact(u, [](Mask x) { return x & 1; }) == make_rational(1, 2));

  const auto uw = Dist::uniform_weight(10, 4);
  CHECK(uw.points().size() == 210);
  for (Mask x : uw.points()) CHECK(std::popcount(x) == 4);
  CHECK_THROWS_AS(Dist::uniform_weight(3, 4), WeightExceedsLength);
  CHECK(Dist::uniform_weight(5, 0).points() == std::vector<Mask>{0});
  CHECK(Dist::uniform_weight(5, 5).points() == std::vector<Mask>{31});

  const auto d0 = Dist::d0_f2(linalg::BitMatrix::identity(2));
  CHECK(d0.probability_of(3) == make_rational(1, 4));
  CHECK(d0.probability_of(0) == make_rational(1, 4));

  rank::RealMatrix01 rm;
  rm.n = 2;
  rm.s = 2;
  rm.cols = {{0, 1}, {0}};
  const auto dr = Dist::d0_real(rm);
  // Oracle: a = ([u0+u1=0], [u0=0]) over the 9 witnesses.
  std::map<Mask, long> counts;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) ++counts[Mask(a + b == 0) | (Mask(a == 0) << 1)];
  for (const auto& [x, c] : counts) CHECK(dr.probability_of(x) == make_rational(c, 9));

  CHECK_THROWS_AS(Dist::explicit_points(2, {0, 1}, {make_rational(1, 2), make_rational(1, 3)}), std::invalid_argument);
  const auto ex = Dist::explicit_points(2, {0, 3, 3}, {make_rational(1, 2), make_rational(1, 4), make_rational(1, 4)});
  CHECK(ex.points().size() == 2);
  CHECK(ex.probability_of(3) == make_rational(1, 2));

  const auto mix = Dist::mixture(Dist::point_mass(2, 0), Dist::point_mass(2, 3));
  CHECK(mix.probability_of(0) == make_rational(1, 2));
  const auto cond = mix.conditioned([](Mask x) { return x != 0; }, "ones");
  CHECK(cond.probability_of(3) == 1);
  CHECK_THROWS_AS(mix.conditioned([](Mask) { return false; }, "none"), PreconditionViolated);
}

TEST_CASE("Dist sampling matches exact probabilities") {
  rank::RealMatrix01 rm;
  rm.n = 3;
  rm.s = 2;
  rm.cols = {{0, 1}, {1, 2}, {0}, {2}};
  const auto dists = {Dist::d0_real(rm), Dist::uniform_weight(6, 2),
                      Dist::mixture(Dist::uniform(4), Dist::point_mass(4, 5), make_rational(1, 3)),
                      Dist::explicit_points(3, {1, 6}, {make_rational(1, 5), make_rational(4, 5)})};
  for (const auto& d : dists) {
    for (Mask target : {Mask{0}, Mask{1}, Mask{5}, Mask{6}}) {
      auto pred = [target](Mask x) { return (target & ~x) == 0; };
      const double exact = prob_exact(d, pred).get_d();
      CHECK(prob_exact_serial(d, pred) == prob_exact(d, pred));
      const auto est = prob_mc(d, pred, 20000, 3);
      const auto wide = stats::wilson(est.hits, est.trials, 4.0);
      CHECK(wide.lo <= exact + 1e-12);
      CHECK(wide.hi >= exact - 1e-12);
    }
  }
}

TEST_CASE("is_sunflower examples") {
  const auto u = Dist::uniform(3);
  const std::vector<Mask> fam = {m_of({0, 1}), m_of({0, 2})};
  const auto ok = is_sunflower(fam, u, make_rational(3, 10));
  CHECK(ok.accepted);
  CHECK(ok.core == m_of({0}));
  CHECK(ok.prob.value == make_rational(3, 4));
  CHECK(ok.prob.value == uniform_prob(3, [](Mask x) { return (x & 2) || (x & 4); }));
  CHECK_FALSE(is_sunflower(fam, u, make_rational(1, 4)).accepted);
  CHECK_FALSE(is_sunflower({m_of({0, 1})}, u, make_rational(9, 10)).accepted);
}

TEST_CASE("is_sunflower exact and Monte Carlo agree on fuzzed cases") {
  Rng rng = make_rng(41);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + uniform_below(rng, 6);
    const auto fam = random_family(rng, n, 2 + uniform_below(rng, 4), 3);
    if (fam.size() < 2) continue;
    const auto d = trial % 2 ? Dist::uniform(n) : Dist::uniform_weight(n, n / 2);
    const auto ex = is_sunflower(fam.sets(), d, make_rational(1, 2));
    ProbOptions mc;
    mc.mode = ProbMode::MonteCarlo;
    mc.trials = 4000;
    mc.seed = static_cast<std::uint64_t>(trial);
    const auto est = is_sunflower(fam.sets(), d, make_rational(1, 2), mc);
    const double p = ex.prob.value.get_d();
    const double sigma = std::sqrt(p * (1 - p) / 4000.0);
    CHECK(std::abs(est.prob.mc.estimate() - p) <= 3 * sigma + 1e-9);
    // Monte Carlo acceptance is one-sided: it never accepts what the exact test rejects by a margin.
    if (est.accepted) CHECK(p > 0.5 - 3 * sigma);
    ++checked;
  }
  CHECK(checked >= 90);
}

TEST_CASE("find_classical_sunflower examples") {
  const auto singles = find_classical_sunflower({m_of({0}), m_of({1}), m_of({2})}, 3);
  REQUIRE(singles);
  CHECK(singles->core == 0);
  CHECK(singles->petals.size() == 3);
  const auto star = find_classical_sunflower({m_of({0, 1}), m_of({0, 2}), m_of({0, 3})}, 3);
  REQUIRE(star);
  CHECK(star->core == m_of({0}));
  CHECK(star->petals.size() == 3);
  // A triangle has no 3-sunflower.
  CHECK_FALSE(find_classical_sunflower({m_of({0, 1}), m_of({1, 2}), m_of({0, 2})}, 3));
}

TEST_CASE("find_classical_sunflower is valid and matches brute force on small families") {
  Rng rng = make_rng(43);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 5 + uniform_below(rng, 4);
    const auto fam = random_family(rng, n, 1 + uniform_below(rng, 12), 3);
    const std::size_t r = 2 + uniform_below(rng, 3);
    const auto found = find_classical_sunflower(fam.sets(), r);
    // Oracle: every r-subset of the family, pairwise intersections compared directly.
    bool exists = false;
    const auto& s = fam.sets();
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (exists) return;
      if (pick.size() == r) {
        Mask core = ~Mask{0};
        for (auto i : pick) core &= s[i];
        bool ok = true;
        for (std::size_t a = 0; a < r && ok; ++a)
          for (std::size_t b = a + 1; b < r && ok; ++b) ok = (s[pick[a]] & s[pick[b]]) == core;
        exists = ok;
        return;
      }
      for (std::size_t i = start; i < s.size(); ++i) {
        pick.push_back(i);
        self(self, i + 1);
        pick.pop_back();
      }
    };
    rec(rec, 0);
    CHECK(found.has_value() == exists);
    if (found) {
      CHECK(found->petals.size() == r);
      CHECK(is_classical_sunflower(found->petals));
      for (Mask p : found->petals) CHECK(std::find(s.begin(), s.end(), p) != s.end());
    }
  }
}

TEST_CASE("pluck examples") {
  const auto u = Dist::uniform(3);
  const SetFamily small(3, {m_of({0}), m_of({1, 2})});
  const auto same = pluck(small, u, make_rational(1, 5), 1, 1);
  CHECK(same.family == small);
  CHECK(same.ledger.empty());

  const SetFamily singles(3, {m_of({0}), m_of({1}), m_of({2})});
  const auto p = pluck(singles, u, make_rational(1, 5), 1, 1);
  CHECK(p.family == SetFamily(3, {0}));
  REQUIRE(p.ledger.size() == 1);
  CHECK(p.ledger[0].core == 0);
  // The first accepted sunflower is a pair of singletons: 3/4 mass, so 1/4 slack < 1/5 fails; the whole slice passes with 7/8.
  CHECK(p.ledger[0].members == 3);
  CHECK(p.ledger[0].eps_est == doctest::Approx(1.0 / 8));
  CHECK(p.ledger[0].measured_error == uniform_prob(3, [](Mask x) { return x == 0; }));

  CHECK_THROWS_AS(pluck(SetFamily(3, {7}), u, make_rational(1, 5), 1, 1), PreconditionViolated);
  // A tiny ε leaves no sunflower to pluck.
  CHECK_THROWS_AS(pluck(singles, u, make_rational(1, 100), 1, 1), SunflowerNotFound);
}

TEST_CASE("pluck on 200 random families: r-small, width, pointwise domination, error accounting") {
  Rng rng = make_rng(47);
  int plucked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 6 + uniform_below(rng, 11);  // up to 16
    const std::size_t w = 1 + uniform_below(rng, 2);
    const auto fam = random_family(rng, n, 2 + uniform_below(rng, 14), 2 * w);
    const std::uint64_t r = 1 + uniform_below(rng, 2);
    const Rational eps = make_rational(1, 2);
    const auto d0 = Dist::uniform_weight(n, n / 2);
    PluckResult res;
    try {
      res = pluck(fam, d0, eps, r, w);
    } catch (const SunflowerNotFound&) {
      continue;
    }
    ++plucked;
    CHECK(res.family.r_small(r));
    CHECK(res.family.width() <= 2 * w);
    for (Mask x = 0; x < (Mask{1} << n); ++x)
      if (fam.eval(x)) CHECK(res.family.eval(x));
    CHECK(res.measured_exact);
    CHECK(res.total_measured_error <= eps * Rational(static_cast<unsigned long>(res.ledger.size())));
    // The measured error is the exact mass where the DNF rose.
    const Rational rose = prob_exact(d0, [&](Mask x) { return res.family.eval(x) && !fam.eval(x); });
    CHECK(rose <= res.total_measured_error);
  }
  CHECK(plucked >= 100);
}

TEST_CASE("approximate_circuit examples") {
  const auto d0 = Dist::uniform(2), d1 = Dist::uniform_weight(2, 2);
  ApproxOptions opt;
  opt.w = 2;
  opt.r = 4;
  BoolCircuit single;
  single.set_output(single.add_input(0));
  auto r1 = approximate_circuit(single, d0, d1, opt);
  CHECK(r1.final_family == SetFamily(2, {m_of({0})}));
  CHECK(r1.total_e0 == 0);
  CHECK(r1.total_e1 == 0);
  CHECK(r1.gate_count == 0);

  BoolCircuit both;
  both.set_output(both.add_and(both.add_input(0), both.add_input(1)));
  auto r2 = approximate_circuit(both, d0, d1, opt);
  CHECK(r2.final_family == SetFamily(2, {m_of({0, 1})}));
  CHECK(r2.total_e0 == 0);
  CHECK(r2.total_e1 == 0);
  CHECK(r2.gates.back().truncated == 0);
  CHECK(r2.agreement.value == 1);
}

TEST_CASE("approximate_circuit reproduces the minterm DNF when budgets never bind") {
  Rng rng = make_rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 5;
    const auto target = random_family(rng, n, 1 + uniform_below(rng, 4), 2);
    const auto c = dnf_circuit(target);
    const auto mins = minterms(n, [&](Mask x) { return target.eval(x); });
    ApproxOptions opt;
    opt.w = 2 * 8;
    opt.r = 1u << 20;
    const auto rep = approximate_circuit(c, Dist::uniform(n), Dist::uniform(n), opt);
    CHECK(rep.final_family == mins);
    CHECK(rep.total_e0 == 0);
    CHECK(rep.total_e1 == 0);
    CHECK(rep.agreement.value == 1);
  }
}

TEST_CASE("approximate_circuit on the rank function of I_3 plus a dependent column") {
  linalg::BitMatrix m(3, 4);
  for (std::size_t i = 0; i < 3; ++i) m.set(i, i);
  m.set(0, 3);
  m.set(1, 3);
  auto f = [&m](Mask x) {
    rank::Bits b(4);
    for (std::size_t j = 0; j < 4; ++j) b[j] = (x >> j) & 1;
    return rank::f_M_eval(m, b);
  };
  const auto mins = minterms(4, f);
  CHECK(mins.size() == 3);  // {0,1,2}, {0,2,3}, {1,2,3}
  const auto c = dnf_circuit(mins);
  const auto d0 = Dist::d0_f2(m);
  const auto d1 = Dist::uniform_weight(4, 3);
  const auto spread = spread_check(d1, 3, make_rational(4, 3));
  CHECK(spread.spread);
  ApproxOptions opt;
  opt.w = 1;
  opt.r = 1;
  opt.eps = make_rational(1, 2);
  const auto rep = approximate_circuit(c, d0, d1, opt);
  CHECK(rep.exact);
  const Rational q = make_rational(4, 3);
  Rational per_gate = Rational(2 * opt.r) / q;  // (2r/q)^w with w = 1
  CHECK(rep.total_e1 <= Rational(static_cast<unsigned long>(rep.gate_count)) * per_gate);
  Rational e1 = 0;
  for (const auto& g : rep.gates) e1 += g.e1.value;
  CHECK(e1 == rep.total_e1);
}

TEST_CASE("spread_check examples") {
  const auto uw = Dist::uniform_weight(10, 4);
  const auto table = rank::spreadness_exact(10, 4, 4);
  const auto v = spread_check(uw, 4, make_rational(5, 2));
  CHECK(v.spread);
  CHECK(v.sets_checked == 1 + 10 + 45 + 120 + 210);
  CHECK(v.worst_ratio == doctest::Approx(1.0));  // the empty set
  // Every |A| = k has exactly the hypergeometric probability.
  const auto serial = spread_check_serial(uw, 4, make_rational(5, 2));
  CHECK(serial.sets_checked == v.sets_checked);
  CHECK(serial.worst_probability == v.worst_probability);
  for (const auto& row : table) {
    const Mask a = row.k ? (Mask{1} << row.k) - 1 : 0;
    CHECK(prob_exact(uw, [a](Mask x) { return (a & ~x) == 0; }) == row.probability);
  }
  const auto pm = spread_check(Dist::point_mass(4, 15), 2, make_rational(11, 10));
  CHECK_FALSE(pm.spread);
  CHECK(std::popcount(pm.worst_set) >= 1);
  const auto mc = spread_check(uw, 4, make_rational(5, 2), ProbMode::MonteCarlo, 30, 4000, 5);
  CHECK_FALSE(mc.exact);
  CHECK(mc.spread);
}

TEST_CASE("lb_criterion examples") {
  CriterionParams p;
  p.alpha = make_rational(1, 2);
  p.r_w = 3;
  p.q = 24;
  p.w = 1;
  p.t = 2;
  p.n = 100;
  const auto v = lb_criterion(p);
  CHECK(v.value == make_rational(1, 5));
  CHECK(v.applicable());
  p.w = 0;
  const auto z = lb_criterion(p);
  CHECK(z.value == 1);
  CHECK(z.vacuous);
  CHECK_FALSE(z.applicable());
  p.w = 2;
  p.t = 3;
  p.q = 20;
  const auto bad = lb_criterion(p);
  CHECK_FALSE(bad.width_ok);
  CHECK_FALSE(bad.q_lower_ok);
  CHECK(bad.q_upper_ok);
}

TEST_CASE("dnf_agreement examples") {
  // f = x0 ∧ x1 on 3 variables; d0 on zeros of f, d1 on ones.
  auto f = [](Mask x) { return (x & 3) == 3; };
  const auto mins = minterms(3, f);
  CHECK(mins == SetFamily(3, {m_of({0, 1})}));
  const auto d0 = Dist::uniform(3).conditioned([&](Mask x) { return !f(x); }, "zeros");
  const auto d1 = Dist::uniform(3).conditioned(f, "ones");
  const auto mix = Dist::mixture(d0, d1);
  CHECK(dnf_agreement(mins, f, mix).value == 1);
  CHECK(dnf_agreement(SetFamily(3, {0}), f, mix).value == make_rational(1, 2));
  const auto mc = dnf_agreement(SetFamily(3, {0}), f, mix, ProbMode::MonteCarlo, 10000, 2);
  CHECK(mc.mc.ci.lo <= 0.5);
  CHECK(mc.mc.ci.hi >= 0.5);
}

TEST_CASE("minterms and dnf_circuit round trip") {
  Rng rng = make_rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const auto fam = random_family(rng, 6, 1 + uniform_below(rng, 5), 3);
    const auto c = dnf_circuit(fam);
    for (Mask x = 0; x < 64; ++x) CHECK(c.eval_mask(x) == fam.eval(x));
    const auto mins = minterms(6, [&](Mask x) { return fam.eval(x); });
    for (Mask s : mins.sets()) CHECK(fam.eval(s));
    for (Mask x = 0; x < 64; ++x) CHECK(mins.eval(x) == fam.eval(x));
  }
  CHECK(dnf_circuit(SetFamily(2)).eval_mask(3) == false);
  CHECK(dnf_circuit(SetFamily(2, {0})).eval_mask(0) == true);
}
