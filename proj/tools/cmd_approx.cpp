#include "stages.hpp"

#include "monoforge/algebra/arith_circuit.hpp"
#include "monoforge/algebra/io.hpp"
#include "monoforge/errors.hpp"

namespace monoforge::cli {

using approx::Mask;
using approx::SetFamily;

Json stage_pluck(Report& rep, const SetFamily& fam, const approx::Dist& d0, const Rational& eps, std::uint64_t r,
                 std::size_t w, const approx::PluckOptions& opt, const std::string& tag) {
  const auto res = approx::pluck(fam, d0, eps, r, w, opt);
  Json out;
  out["input_sets"] = fam.size();
  out["input_width"] = fam.width();
  out["output_sets"] = res.family.size();
  out["output_width"] = res.family.width();
  Json ledger = Json::array();
  for (const auto& s : res.ledger)
    ledger.push_back({{"slice", s.slice},
                      {"core", approx::mask_elements(s.core)},
                      {"members", s.members},
                      {"tier", s.tier},
                      {"eps_est", s.eps_est},
                      {"measured_error", s.measured_exact ? Json(to_fraction_string(s.measured_error))
                                                          : Json(s.measured_error_mc)}});
  out["plucks"] = ledger;
  out["family"] = approx::family_to_json(res.family);
  rep.check(tagged("pluck: output is r-small", tag), res.family.r_small(r));
  rep.check(tagged("pluck: output width <= 2w", tag), res.family.width() <= 2 * w);
  if (fam.n() <= 20) {
    bool above = true;
    for (Mask x = 0; x < (Mask{1} << fam.n()) && above; ++x) above = !fam.eval(x) || res.family.eval(x);
    rep.check(tagged("pluck: output >= input on all 2^n points", tag), above);
  }
  if (res.measured_exact) {
    const Rational budget = eps * Rational(static_cast<unsigned long>(res.ledger.size()));
    out["measured_error"] = rational_json(res.total_measured_error);
    out["error_budget"] = rational_json(budget);
    rep.check(tagged("pluck: measured D0 error <= plucks * eps", tag), res.total_measured_error <= budget);
  }
  return out;
}

Json stage_approximation(Report& rep, const approx::BoolCircuit& c, const approx::Dist& d0, const approx::Dist& d1,
                         const approx::ApproxOptions& opt, const std::string& tag) {
  const auto r = approx::approximate_circuit(c, d0, d1, opt);
  Json out = approx::report_to_json(r);
  rep.check(tagged("approximation: final family r-small with width <= 2w", tag),
            r.final_family.r_small(opt.r) && r.final_family.width() <= 2 * opt.w);
  if (r.exact) {
    bool ok = true;
    for (const auto& g : r.gates)
      ok = ok && g.e0.value <= opt.eps * Rational(static_cast<unsigned long>(g.plucks.size()));
    rep.check(tagged("approximation: per-gate E0 <= plucks * eps", tag), ok);
  }
  return out;
}

namespace {

struct ApproxOpts {
  std::string circuit, family, d0 = "uniform", d1 = "uniform", dist = "uniform", eps = "1/10";
  std::string alpha = "1", q, rw;
  std::size_t w = 1, n = 0, t = 0;
  std::uint64_t r = 1;
};

approx::ProbMode prob_mode(const Context& ctx) {
  return ctx.exact_mode() ? approx::ProbMode::Auto : approx::ProbMode::MonteCarlo;
}

approx::BoolCircuit load_circuit(const std::string& path) {
  const auto j = load_json(path);
  bool arithmetic = false;
  if (j.contains("nodes") && j["nodes"].is_array())
    for (const auto& n : j["nodes"])
      if (n.contains("op") && (n["op"] == "add" || n["op"] == "mul")) arithmetic = true;
  if (arithmetic) return algebra::booleanize(algebra::circuit_from_json(j));
  return algebra::bool_circuit_from_json(j);
}

approx::ProbOptions prob_options(const Context& ctx, std::size_t default_trials) {
  approx::ProbOptions p;
  p.mode = prob_mode(ctx);
  p.trials = ctx.trials(default_trials);
  // Exact runs never draw, so the seed is only demanded in Monte Carlo mode.
  p.seed = p.mode == approx::ProbMode::MonteCarlo ? ctx.seed() : ctx.g.seed.value_or(1);
  return p;
}

void echo_common(Report& rep, const ApproxOpts& o, const Context& ctx) {
  rep.config()["eps"] = o.eps;
  rep.config()["r"] = o.r;
  rep.config()["w"] = o.w;
  rep.config()["mode"] = ctx.g.mode;
}

}  // namespace

void register_approx(CLI::App& app, Context& ctx) {
  auto* ap = app.add_subcommand("approx", "DNF approximation of monotone circuits");
  ap->require_subcommand(1);
  auto o = std::make_shared<ApproxOpts>();
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--eps", o->eps, "sunflower error eps (rational)");
    sub->add_option("--r", o->r, "r-small parameter");
    sub->add_option("--w", o->w, "width parameter");
  };

  auto* run = ap->add_subcommand("run", "approximate every gate of a monotone circuit");
  run->add_option("--circuit", o->circuit, "Boolean or monotone arithmetic circuit JSON")->required();
  run->add_option("--n", o->n, "number of variables (default: from the circuit)");
  run->add_option("--d0", o->d0, "'no' distribution spec");
  run->add_option("--d1", o->d1, "'yes' distribution spec");
  run->add_option("--alpha", o->alpha, "criterion: alpha");
  run->add_option("--q", o->q, "criterion: q (default 8 r_w)");
  run->add_option("--rw", o->rw, "criterion: r_w (default r)");
  run->add_option("--t", o->t, "criterion: spreadness t (default 2w)");
  add_common(run);
  run->callback([&ctx, o] {
    ctx.command = "approx run";
    ctx.action = [&ctx, o](Report& rep) {
      const auto c = load_circuit(o->circuit);
      const std::size_t n = o->n ? o->n : c.num_vars();
      if (n > 64) throw UsageError("at most 64 variables are supported");
      approx::ApproxOptions opt;
      opt.pluck.prob = prob_options(ctx, 20000);
      opt.w = o->w;
      opt.r = o->r;
      opt.eps = parse_rational_flag("--eps", o->eps);
      echo_common(rep, *o, ctx);
      rep.config()["circuit"] = o->circuit;
      rep.config()["n"] = n;
      rep.config()["d0"] = o->d0;
      rep.config()["d1"] = o->d1;
      if (opt.pluck.prob.mode == approx::ProbMode::MonteCarlo) {
        rep.rng_stream("sunflower test", 0x6200);
        rep.rng_stream("gate errors", 0x6400);
        rep.rng_stream("agreement", 0x6600);
      }
      const auto d0 = parse_dist(o->d0, n);
      const auto d1 = parse_dist(o->d1, n);
      rep.results()["approximation"] = stage_approximation(rep, c, d0, d1, opt);

      approx::CriterionParams cp;
      cp.alpha = parse_rational_flag("--alpha", o->alpha);
      cp.r_w = o->rw.empty() ? Rational(static_cast<unsigned long>(o->r)) : parse_rational_flag("--rw", o->rw);
      cp.q = o->q.empty() ? Rational(8 * cp.r_w) : parse_rational_flag("--q", o->q);
      cp.t = o->t ? o->t : 2 * o->w;
      cp.w = o->w;
      cp.n = n;
      rep.results()["lb_criterion"] = approx::criterion_to_json(cp, approx::lb_criterion(cp));
    };
  });

  auto* pl = ap->add_subcommand("pluck", "pluck sunflowers from a set family");
  pl->add_option("--family", o->family, "set family JSON")->required();
  pl->add_option("--d0", o->d0, "distribution spec");
  add_common(pl);
  pl->callback([&ctx, o] {
    ctx.command = "approx pluck";
    ctx.action = [&ctx, o](Report& rep) {
      const auto fam = approx::family_from_json(load_json(o->family));
      approx::PluckOptions opt;
      opt.prob = prob_options(ctx, 20000);
      echo_common(rep, *o, ctx);
      rep.config()["family"] = o->family;
      rep.config()["d0"] = o->d0;
      if (opt.prob.mode == approx::ProbMode::MonteCarlo) {
        rep.rng_stream("sunflower test", 0x6200);
        rep.rng_stream("measured error (+ iteration)", 0x6300);
      }
      const auto d0 = parse_dist(o->d0, fam.n());
      rep.results()["pluck"] =
          stage_pluck(rep, fam, d0, parse_rational_flag("--eps", o->eps), o->r, o->w, opt);
    };
  });

  auto* sf = ap->add_subcommand("sunflower", "test whether a family is an eps-robust sunflower");
  sf->add_option("--family", o->family, "set family JSON")->required();
  sf->add_option("--dist", o->dist, "distribution spec");
  sf->add_option("--eps", o->eps, "eps (rational)");
  sf->callback([&ctx, o] {
    ctx.command = "approx sunflower";
    ctx.action = [&ctx, o](Report& rep) {
      const auto fam = approx::family_from_json(load_json(o->family));
      const auto opt = prob_options(ctx, 20000);
      rep.config()["family"] = o->family;
      rep.config()["dist"] = o->dist;
      rep.config()["eps"] = o->eps;
      rep.config()["mode"] = ctx.g.mode;
      if (opt.mode == approx::ProbMode::MonteCarlo) rep.rng_stream("sunflower test", 0x6200);
      const auto d = parse_dist(o->dist, fam.n());
      const auto cert = approx::is_sunflower(fam.sets(), d, parse_rational_flag("--eps", o->eps), opt);
      Json r;
      r["members"] = cert.members.size();
      r["core"] = approx::mask_elements(cert.core);
      r["probability"] = approx::probability_to_json(cert.prob);
      r["accepted"] = cert.accepted;
      if (const auto cl = approx::find_classical_sunflower(fam.sets(), 3)) {
        Json c;
        c["core"] = approx::mask_elements(cl->core);
        Json petals = Json::array();
        for (Mask p : cl->petals) petals.push_back(approx::mask_elements(p));
        c["petals"] = petals;
        r["classical_3_petal"] = c;
      } else {
        r["classical_3_petal"] = nullptr;
      }
      rep.check("family is an eps-robust sunflower", cert.accepted);
      rep.results()["sunflower"] = r;
    };
  });
}

}  // namespace monoforge::cli
