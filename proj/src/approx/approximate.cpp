#include "monoforge/approx/approximate.hpp"

#include <bit>
#include <stdexcept>

#include "monoforge/errors.hpp"

namespace monoforge::approx {

using Json = nlohmann::ordered_json;

SetFamily minterms(std::size_t n, const std::function<bool(Mask)>& f) {
  if (n > 20) throw EnumerationTooLarge("minterm enumeration limited to 20 variables");
  SetFamily fam(n);
  for (Mask x = 0; x < (Mask{1} << n); ++x) {
    if (!f(x)) continue;
    bool minimal = true;
    for (Mask y = x; y && minimal; y &= y - 1)
      if (f(x & ~(y & -y))) minimal = false;
    if (minimal) fam.insert(x);
  }
  return fam;
}

BoolCircuit dnf_circuit(const SetFamily& fam) {
  BoolCircuit c;
  std::optional<std::size_t> top;
  for (Mask s : fam.sets()) {
    std::optional<std::size_t> term;
    for (auto v : mask_elements(s)) {
      const auto in = c.add_input(static_cast<std::uint32_t>(v));
      term = term ? c.add_and(*term, in) : in;
    }
    if (!term) term = c.add_const(true);
    top = top ? c.add_or(*top, *term) : *term;
  }
  c.set_output(top ? *top : c.add_const(false));
  return c;
}

namespace {

Probability zero_probability() {
  Probability p;
  p.exact = true;
  p.value = 0;
  return p;
}

void accumulate(ApproximationReport& r, const Probability& p, Rational& total, double& point) {
  if (p.exact)
    total += p.value;
  else
    r.exact = false;
  point += p.point();
}

}  // namespace

ApproximationReport approximate_circuit(const BoolCircuit& c, const Dist& d0, const Dist& d1, const ApproxOptions& opt) {
  const std::size_t n = d0.n();
  if (d1.n() != n) throw std::invalid_argument("distributions differ in length");
  if (c.num_vars() > n) throw std::invalid_argument("circuit reads variables beyond the distribution length");
  if (opt.w == 0) throw std::invalid_argument("width bound must be positive");
  const auto& nodes = c.nodes();
  const std::size_t out = c.output();
  std::vector<std::uint8_t> live(nodes.size(), 0);
  live[out] = 1;
  for (std::size_t i = out + 1; i-- > 0;) {
    if (!live[i]) continue;
    if (nodes[i].op == BoolOp::And || nodes[i].op == BoolOp::Or) live[nodes[i].a] = live[nodes[i].b] = 1;
  }

  ApproximationReport rep;
  rep.total_e0 = rep.total_e1 = 0;
  std::vector<SetFamily> fam(nodes.size());
  const auto& prob = opt.pluck.prob;
  for (std::size_t i = 0; i <= out; ++i) {
    if (!live[i]) continue;
    const BoolNode& nd = nodes[i];
    GateReport g;
    g.gate_id = i;
    g.e0 = g.e1 = zero_probability();
    switch (nd.op) {
      case BoolOp::Input:
        g.kind = "input";
        fam[i] = SetFamily(n, {Mask{1} << nd.var});
        break;
      case BoolOp::Const:
        g.kind = "const";
        fam[i] = nd.value ? SetFamily(n, {Mask{0}}) : SetFamily(n);
        break;
      case BoolOp::And:
      case BoolOp::Or: {
        const bool is_and = nd.op == BoolOp::And;
        g.kind = is_and ? "and" : "or";
        ++rep.gate_count;
        const SetFamily& fa = fam[nd.a];
        const SetFamily& fb = fam[nd.b];
        SetFamily combined(n);
        if (is_and) {
          std::vector<Mask> prod;
          for (Mask s : fa.sets())
            for (Mask t : fb.sets()) prod.push_back(s | t);
          combined = SetFamily(n, std::move(prod));
        } else {
          combined = fa;
          combined.insert_all(fb);
        }
        combined.absorb();
        g.combined_size = combined.size();
        PluckOptions po = opt.pluck;
        po.prob.seed = prob.seed + 0x9E37 * (i + 1);
        auto plucked = pluck(combined, d0, opt.eps, opt.r, opt.w, po);
        g.plucks = std::move(plucked.ledger);
        SetFamily approx = std::move(plucked.family);
        if (is_and) {
          const std::size_t before = approx.size();
          approx.retain([w = opt.w](Mask s) { return static_cast<std::size_t>(std::popcount(s)) <= w; });
          g.truncated = before - approx.size();
        }
        // The combined sub-DNF is fa ∧ fb or fa ∨ fb as a function.
        auto exact_val = [&fa, &fb, is_and](Mask x) { return is_and ? fa.eval(x) && fb.eval(x) : fa.eval(x) || fb.eval(x); };
        g.e0 = probability(d0, [&](Mask x) { return approx.eval(x) && !exact_val(x); }, prob.mode, prob.trials,
                           po.prob.seed, 0x6400);
        g.e1 = probability(d1, [&](Mask x) { return !approx.eval(x) && exact_val(x); }, prob.mode, prob.trials,
                           po.prob.seed, 0x6500);
        fam[i] = std::move(approx);
        break;
      }
    }
    g.final_size = fam[i].size();
    accumulate(rep, g.e0, rep.total_e0, rep.total_e0_point);
    accumulate(rep, g.e1, rep.total_e1, rep.total_e1_point);
    rep.gates.push_back(std::move(g));
  }
  rep.final_family = fam[out];
  const Dist mix = Dist::mixture(d0, d1);
  const SetFamily& fin = rep.final_family;
  rep.agreement = probability(mix, [&](Mask x) { return fin.eval(x) == c.eval_mask(x); }, prob.mode, prob.trials,
                              prob.seed, 0x6600);
  if (!rep.agreement.exact) rep.exact = false;
  return rep;
}

namespace {

// Calls f on every A ⊆ [n] with |A| ≤ k, by size then mask.
template <class F>
void for_each_small_set(std::size_t n, std::size_t k, F&& f) {
  for (std::size_t size = 0; size <= std::min(k, n); ++size) {
    if (size == 0) {
      f(Mask{0});
      continue;
    }
    Mask x = (size == 64) ? ~Mask{0} : (Mask{1} << size) - 1;
    const Mask lim = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    while (true) {
      f(x);
      const Mask c = x & (~x + 1), r = x + c;
      if (r == 0 || (r & ~lim)) break;
      x = (((r ^ x) >> 2) / c) | r;
      if (x & ~lim) break;
    }
  }
}

void record(SpreadVerdict& v, Mask a, const Rational& prob, const Rational& q) {
  const std::size_t sz = static_cast<std::size_t>(std::popcount(a));
  Rational qp = 1;
  for (std::size_t i = 0; i < sz; ++i) qp *= q;
  const Rational ratio = prob * qp;
  if (ratio > 1) v.spread = false;
  ++v.sets_checked;
  if (v.sets_checked == 1 || ratio.get_d() > v.worst_ratio) {
    v.worst_ratio = ratio.get_d();
    v.worst_set = a;
    v.worst_probability = prob;
  }
}

constexpr std::size_t kSpreadCap = 4;

}  // namespace

SpreadVerdict spread_check(const Dist& d, std::size_t t, const Rational& q, ProbMode mode, std::size_t samples,
                           std::size_t trials, std::uint64_t seed) {
  SpreadVerdict v;
  const std::size_t n = d.n();
  const bool exact = mode == ProbMode::Exact || (mode == ProbMode::Auto && d.exact_capable() && n <= 20);
  if (exact) {
    if (n > 20) throw EnumerationTooLarge("exact spread check limited to 20 coordinates");
    v.max_size = std::min(t, kSpreadCap);
    // Superset sums: up[A] = Σ_{x ⊇ A} weight(x).
    std::vector<Integer> up(std::size_t{1} << n, 0);
    const auto& pts = d.points();
    const auto& w = d.weights();
    for (std::size_t i = 0; i < pts.size(); ++i) up[pts[i]] += w[i];
    const auto size = static_cast<long long>(up.size());
    for (std::size_t bit = 0; bit < n; ++bit) {
      const Mask b = Mask{1} << bit;
#pragma omp parallel for schedule(static)
      for (long long a = 0; a < size; ++a)
        if (!(static_cast<Mask>(a) & b)) up[static_cast<std::size_t>(a)] += up[static_cast<std::size_t>(a) | b];
    }
    for_each_small_set(n, v.max_size, [&](Mask a) { record(v, a, make_rational(up[a], d.denominator()), q); });
    return v;
  }
  v.exact = false;
  v.max_size = std::min(t, n);
  Rng rng = make_rng(seed, 0x6700);
  for (std::size_t s = 0; s < samples && v.max_size > 0; ++s) {
    const auto size = static_cast<std::uint32_t>(1 + uniform_below(rng, v.max_size));
    Mask a = 0;
    for (auto e : random_subset(rng, static_cast<std::uint32_t>(n), size)) a |= Mask{1} << e;
    const auto est = prob_mc(d, [a](Mask x) { return (a & ~x) == 0; }, trials, seed, 0x6800 + s);
    Rational qp = 1;
    for (std::uint32_t i = 0; i < size; ++i) qp *= q;
    // One-sided: flag only when the whole interval sits above the bound.
    if (est.ci.lo * qp.get_d() > 1.0) v.spread = false;
    ++v.sets_checked;
    const double ratio = est.estimate() * qp.get_d();
    if (v.sets_checked == 1 || ratio > v.worst_ratio) {
      v.worst_ratio = ratio;
      v.worst_set = a;
      v.worst_probability =
          make_rational(Integer(static_cast<unsigned long>(est.hits)), Integer(static_cast<unsigned long>(est.trials)));
    }
  }
  return v;
}

SpreadVerdict spread_check_serial(const Dist& d, std::size_t t, const Rational& q) {
  SpreadVerdict v;
  const std::size_t n = d.n();
  if (n > 20) throw EnumerationTooLarge("exact spread check limited to 20 coordinates");
  v.max_size = std::min(t, kSpreadCap);
  const auto& pts = d.points();
  const auto& w = d.weights();
  for_each_small_set(n, v.max_size, [&](Mask a) {
    Integer num = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if ((a & ~pts[i]) == 0) num += w[i];
    record(v, a, make_rational(num, d.denominator()), q);
  });
  return v;
}

CriterionValue lb_criterion(const CriterionParams& p) {
  if (p.r_w <= 0) throw std::invalid_argument("r_w must be positive");
  CriterionValue v;
  const Rational base = p.c * p.alpha * p.q / p.r_w;
  v.value = 1;
  for (std::size_t i = 0; i < p.w; ++i) v.value *= base;
  v.width_ok = 2 * p.w <= p.t;
  v.q_lower_ok = 8 * p.r_w <= p.q;
  v.q_upper_ok = p.q <= p.r_w * Rational(static_cast<unsigned long>(p.n));
  v.vacuous = p.w == 0;
  return v;
}

Probability dnf_agreement(const SetFamily& fam, const std::function<bool(Mask)>& f, const Dist& d, ProbMode mode,
                          std::size_t trials, std::uint64_t seed) {
  return probability(d, [&](Mask x) { return fam.eval(x) == f(x); }, mode, trials, seed, 0x6900);
}

Json probability_to_json(const Probability& p) {
  Json j;
  j["exact"] = p.exact;
  if (p.exact) {
    j["value"] = to_fraction_string(p.value);
    j["approx"] = p.value.get_d();
  } else {
    j["estimate"] = p.mc.estimate();
    j["hits"] = p.mc.hits;
    j["trials"] = p.mc.trials;
    j["ci"] = {p.mc.ci.lo, p.mc.ci.hi};
  }
  return j;
}

Json report_to_json(const ApproximationReport& r) {
  Json j;
  j["gate_count"] = r.gate_count;
  j["gates"] = Json::array();
  for (const auto& g : r.gates) {
    Json gj;
    gj["gate_id"] = g.gate_id;
    gj["kind"] = g.kind;
    gj["combined_size"] = g.combined_size;
    gj["final_size"] = g.final_size;
    gj["truncated"] = g.truncated;
    gj["E0"] = probability_to_json(g.e0);
    gj["E1"] = probability_to_json(g.e1);
    gj["plucks"] = Json::array();
    for (const auto& s : g.plucks)
      gj["plucks"].push_back({{"slice", s.slice},
                              {"core", mask_elements(s.core)},
                              {"members", s.members},
                              {"tier", s.tier},
                              {"eps_est", s.eps_est},
                              {"measured_error", s.measured_exact ? Json(to_fraction_string(s.measured_error))
                                                                  : Json(s.measured_error_mc)}});
    j["gates"].push_back(std::move(gj));
  }
  Json totals;
  totals["exact"] = r.exact;
  if (r.exact) {
    totals["E0"] = to_fraction_string(r.total_e0);
    totals["E1"] = to_fraction_string(r.total_e1);
  }
  totals["E0_approx"] = r.total_e0_point;
  totals["E1_approx"] = r.total_e1_point;
  j["totals"] = totals;
  j["final_family"] = family_to_json(r.final_family);
  j["agreement"] = probability_to_json(r.agreement);
  return j;
}

Json criterion_to_json(const CriterionParams& p, const CriterionValue& v) {
  Json j;
  j["params"] = {{"alpha", to_fraction_string(p.alpha)}, {"q", to_fraction_string(p.q)}, {"t", p.t},
                 {"w", p.w},          {"r_w", to_fraction_string(p.r_w)}, {"c", to_fraction_string(p.c)},
                 {"n", p.n}};
  j["bound"] = to_fraction_string(v.value);
  j["bound_approx"] = v.value.get_d();
  j["flags"] = {{"w_le_t_over_2", v.width_ok},
                {"8rw_le_q", v.q_lower_ok},
                {"q_le_rw_n", v.q_upper_ok},
                {"vacuous", v.vacuous}};
  j["applicable"] = v.applicable();
  return j;
}

}  // namespace monoforge::approx
