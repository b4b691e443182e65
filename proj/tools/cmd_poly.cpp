#include <cmath>
#include <fstream>

#include "stages.hpp"

#include "monoforge/algebra/io.hpp"
#include "monoforge/errors.hpp"
#include "monoforge/graph/expander.hpp"
#include "monoforge/graph/hard_input.hpp"
#include "monoforge/graph/polys.hpp"
#include "monoforge/graph/rectangles.hpp"

namespace monoforge::cli {

std::string tagged(const std::string& id, const std::string& tag) { return tag.empty() ? id : id + " [" + tag + "]"; }

std::vector<std::size_t> divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k <= n; ++k)
    if (n % k == 0) out.push_back(k);
  return out;
}

Json rational_json(const Rational& q) {
  Json j;
  j["exact"] = to_fraction_string(q);
  j["approx"] = q.get_d();
  return j;
}

namespace {

Json graph_json(const graph::Graph& g) {
  Json j;
  j["n"] = g.n();
  j["edges"] = g.edge_count();
  return j;
}

void save_json(const std::string& path, const Json& j) {
  if (!path.empty()) write_text(path, j.dump(2) + "\n");
}

}  // namespace

Json stage_expander(Report& rep, const graph::Graph& g, const std::string& tag) {
  const auto cert = graph::check_expander(g);
  Json r;
  r["degree"] = cert.d;
  r["lambda1"] = cert.lambda1;
  r["lambda2"] = cert.lambda2;
  r["threshold"] = cert.threshold;
  r["residual"] = cert.residual;
  rep.check(tagged("expander: lambda2 <= d^0.75", tag), cert.passes, r);
  return r;
}

Json stage_build(Report& rep, const graph::Graph& g, std::size_t k, const std::string& save, const std::string& tag) {
  const auto q = graph::build_Q(g, k);
  const graph::BlockLayout layout(g.n(), k);
  Json r;
  r["graph"] = graph_json(g);
  r["k"] = k;
  r["vars"] = layout.var_count();
  r["terms"] = q.size();
  r["degree"] = q.degree();
  rep.check(tagged("Q has nonnegative coefficients", tag), q.is_monotone());
  if (k == g.n() && g.n() <= 20) {
    // Every selector monomial of P_G sits on an input with e(G[S]) != 1 and carries (e-1)^2.
    const auto ones = graph::f_G_ones(g);
    bool ok = q.size() == ones.size();
    for (const auto& [mono, coef] : q.terms()) {
      const auto s = graph::selector_support(mono, g.n());
      const auto e = static_cast<long>(g.induced_edge_count(s));
      ok = ok && ones.count(s) && coef == Rational((e - 1) * (e - 1));
    }
    rep.check(tagged("P_G coefficients == (e(G[S])-1)^2 on f_G^-1(1)", tag), ok);
  }
  save_json(save, algebra::poly_to_json(q, layout.var_count()));
  return r;
}

Json stage_sps(Report& rep, const graph::Graph& g, std::size_t k, const std::string& save, const std::string& tag) {
  const auto c = graph::build_sps_circuit(g, k);
  const double e = static_cast<double>(g.edge_count());
  const double bound = 40.0 * e * e * static_cast<double>(k) * std::ldexp(1.0, static_cast<int>(g.n() / k));
  const double denom = std::max(1.0, e * e * static_cast<double>(k) * std::ldexp(1.0, static_cast<int>(g.n() / k)));
  Json r;
  r["k"] = k;
  r["gates"] = c.gate_count();
  r["wires"] = c.wire_count();
  r["depth"] = c.depth();
  r["wire_bound"] = bound;
  r["measured_constant"] = static_cast<double>(c.wire_count()) / denom;
  rep.check(tagged("wires <= 40*e^2*k*2^(n/k)", tag), static_cast<double>(c.wire_count()) <= bound, r);
  rep.check(tagged("sps circuit has depth <= 3", tag), c.depth() <= 3);
  save_json(save, algebra::circuit_to_json(c));
  return r;
}

Json stage_identity(Report& rep, const graph::Graph& g, std::size_t k, bool exact, std::size_t trials,
                    std::optional<std::uint64_t> seed, const std::string& tag) {
  const auto c = graph::build_sps_circuit(g, k);
  const auto q = graph::build_Q(g, k);
  Json r;
  r["k"] = k;
  r["mode"] = exact ? "exact" : "mc";
  if (exact) {
    const auto expanded = algebra::expand_circuit(c, term_cap());
    r["terms"] = expanded.size();
    r["term_cap"] = term_cap();
    rep.check(tagged("sps == brute-force", tag), algebra::poly_equal(expanded, q), r);
  } else {
    const auto v = algebra::random_identity_test(c, q, trials, *seed);
    r["trials"] = v.trials_run;
    r["point_range"] = v.point_range;
    r["error_bound"] = "<= deg/(range+1) per trial";
    rep.check(tagged("sps == brute-force", tag), v.equal_whp, r);
  }
  return r;
}

Json stage_substitution(Report& rep, const graph::Graph& g, std::size_t k, const std::string& tag) {
  const auto sub = graph::substitute_Q_to_P(graph::build_Q(g, k), g.n(), k);
  const auto p = graph::build_Q(g, g.n());
  Json r;
  r["k"] = k;
  r["terms"] = sub.size();
  rep.check(tagged("substitute(Q_k) == P_G", tag), algebra::poly_equal(sub, p), r);
  return r;
}

Json stage_hard_input(Report& rep, const graph::Graph& g, std::size_t m, std::size_t trials, std::uint64_t seed,
                      const std::string& tag) {
  const auto t = graph::hard_input_experiment(g, m, trials, seed);
  Json r;
  r["matching_size"] = m;
  r["samples"] = t.samples;
  r["f_zero"] = t.f_zero;
  r["induced_nonzero"] = t.induced_nonzero;
  Json marg = Json::array();
  for (std::size_t i = 0; i < 3; ++i)
    marg.push_back(t.pairs ? static_cast<double>(t.pair_counts[i]) / static_cast<double>(t.pairs) : 0.0);
  r["pair_marginals"] = marg;  // (0,0), (1,0), (0,1)
  r["pairs"] = t.pairs;
  rep.check(tagged("hard inputs: f_G(a) = 1 and e(G[supp a]) = 0", tag), t.f_zero == 0 && t.induced_nonzero == 0);
  bool close = t.pairs > 0;
  for (const auto& x : marg) close = close && std::abs(x.get<double>() - 1.0 / 3.0) <= 0.02;
  rep.check(tagged("hard inputs: pair marginals 1/3 +- 0.02", tag), close);
  return r;
}

namespace {

struct PolyOpts {
  std::string graph, named, save, circuit, poly;
  std::size_t k = 0;
};

graph::Graph need_graph(const PolyOpts& o, Report& rep) {
  rep.config()["graph"] = o.named.empty() ? o.graph : o.named;
  return load_graph(o.graph, o.named);
}

}  // namespace

void register_poly(CLI::App& app, Context& ctx) {
  auto* poly = app.add_subcommand("poly", "graph polynomials and their depth-3 circuits");
  poly->require_subcommand(1);
  auto o = std::make_shared<PolyOpts>();
  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--graph", o->graph, "graph file");
    sub->add_option("--named", o->named, "named graph (C<n>, K<n>, Q<d>, petersen, dodecahedron)");
  };

  auto* build = poly->add_subcommand("build", "build Q_{k,G} (k = n gives P_G)");
  add_graph(build);
  build->add_option("--k", o->k, "number of blocks")->required();
  build->add_option("--save", o->save, "write the polynomial JSON here");
  build->callback([&ctx, o] {
    ctx.command = "poly build";
    ctx.action = [&ctx, o](Report& rep) {
      const auto g = need_graph(*o, rep);
      rep.config()["k"] = o->k;
      rep.results()["build"] = stage_build(rep, g, o->k, o->save);
    };
  });

  auto* sps = poly->add_subcommand("sps", "build the depth-3 circuit for Q_{k,G}");
  add_graph(sps);
  sps->add_option("--k", o->k, "number of blocks")->required();
  sps->add_option("--save", o->save, "write the circuit JSON here");
  sps->callback([&ctx, o] {
    ctx.command = "poly sps";
    ctx.action = [&ctx, o](Report& rep) {
      const auto g = need_graph(*o, rep);
      rep.config()["k"] = o->k;
      rep.results()["sps"] = stage_sps(rep, g, o->k, o->save);
    };
  });

  auto* id = poly->add_subcommand("check-identity", "check the circuit against the brute-force polynomial");
  add_graph(id);
  id->add_option("--k", o->k, "number of blocks");
  id->add_option("--circuit", o->circuit, "circuit JSON (instead of a graph)");
  id->add_option("--poly", o->poly, "polynomial JSON to compare the circuit with");
  id->callback([&ctx, o] {
    ctx.command = "poly check-identity";
    ctx.action = [&ctx, o](Report& rep) {
      const bool exact = ctx.exact_mode();
      rep.config()["mode"] = ctx.g.mode;
      if (!o->circuit.empty() || !o->poly.empty()) {
        if (o->circuit.empty() || o->poly.empty()) throw UsageError("--circuit and --poly go together");
        const auto c = algebra::circuit_from_json(load_json(o->circuit));
        const auto p = algebra::poly_from_json(load_json(o->poly));
        Json r;
        if (exact) {
          const auto e = algebra::expand_circuit(c, term_cap());
          r["terms"] = e.size();
          rep.check("circuit == polynomial", algebra::poly_equal(e, p), r);
        } else {
          const auto v = algebra::random_identity_test(c, p, ctx.trials(20), ctx.seed());
          rep.rng_stream("identity points", 0);
          r["trials"] = v.trials_run;
          r["point_range"] = v.point_range;
          rep.check("circuit == polynomial", v.equal_whp, r);
        }
        rep.results()["identity"] = r;
        return;
      }
      if (o->k == 0) throw UsageError("--k is required with a graph");
      const auto g = need_graph(*o, rep);
      rep.config()["k"] = o->k;
      std::optional<std::uint64_t> seed;
      if (!exact) {
        seed = ctx.seed();
        rep.rng_stream("identity points", 0);
      }
      rep.results()["identity"] = stage_identity(rep, g, o->k, exact, ctx.trials(20), seed);
      rep.results()["substitution"] = stage_substitution(rep, g, o->k);
    };
  });
}

}  // namespace monoforge::cli
