#include <cmath>

#include "stages.hpp"

#include "monoforge/errors.hpp"
#include "monoforge/graph/polys.hpp"
#include "monoforge/rank/cauchy_binet.hpp"

namespace monoforge::cli {

namespace {

class StageFailure : public Error {
 public:
  StageFailure(const std::string& stage, const std::string& what) : Error("stage '" + stage + "': " + what) {}
};

template <class F>
void stage(const std::string& name, F&& body) {
  try {
    body();
  } catch (const StageFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw StageFailure(name, e.what());
  }
}

constexpr std::uint64_t kPluckFamilyStream = 0x4501;

void preset_main1(Context& ctx, Report& rep) {
  const auto seed = ctx.seed();
  const std::size_t trials = ctx.trials(10000);
  const std::size_t matching = 1;
  Json& cfg = rep.config();
  cfg["graph"] = "Q3";
  cfg["n"] = 8;
  cfg["divisors"] = divisors(8);
  cfg["identity_mode"] = "exact";
  cfg["term_cap"] = term_cap();
  cfg["hard_input_matching_size"] = matching;
  cfg["hard_input_trials"] = trials;
  rep.rng_stream("hard inputs (+ shard index)", 0x4800);

  graph::Graph g;
  stage("expander", [&] {
    g = graph::named_graph("Q3");
    rep.results()["expander"] = stage_expander(rep, g);
  });
  stage("P_G", [&] { rep.results()["P_G"] = stage_build(rep, g, g.n(), ""); });
  Json per_k = Json::object();
  for (std::size_t k : divisors(g.n())) {
    const std::string tag = "k=" + std::to_string(k);
    Json block;
    stage("sps " + tag, [&] { block["sps"] = stage_sps(rep, g, k, "", tag); });
    stage("identity " + tag, [&] { block["identity"] = stage_identity(rep, g, k, true, 0, std::nullopt, tag); });
    stage("substitution " + tag, [&] { block["substitution"] = stage_substitution(rep, g, k, tag); });
    per_k[tag] = block;
  }
  rep.results()["blocks"] = per_k;
  stage("hard inputs", [&] { rep.results()["hard_inputs"] = stage_hard_input(rep, g, matching, trials, seed); });
}

void preset_main4(Context& ctx, Report& rep) {
  const auto seed = ctx.seed();
  const unsigned l = 3;
  const std::size_t n = 2, m = 7;
  Json& cfg = rep.config();
  cfg["l"] = l;
  cfg["n"] = n;
  cfg["m"] = m;

  std::optional<RsBundle> code;
  codes::CodeStats st;
  stage("reed-solomon", [&] {
    code = make_rs(l, n, m);
    cfg["modulus"] = code->rs.ctx.modulus();
    cfg["points"] = code->rs.points;
  });
  stage("code stats", [&] { rep.results()["code"] = stage_code_stats(rep, *code, &st); });
  const auto& M = code->binary.generator();
  const std::size_t rows = M.rows(), cols = M.cols();
  const std::size_t d = st.distance - 1, t = st.dual_distance - 1;
  cfg["matrix"] = {{"rows", rows}, {"cols", cols}};
  cfg["d"] = d;
  cfg["t"] = t;

  std::optional<approx::Dist> d0;
  stage("D0", [&] {
    d0 = approx::Dist::d0_f2(M);
    rep.results()["D0"] = {{"exact", d0->exact_capable()}, {"support", d0->points().size()}};
  });
  stage("independence", [&] { rep.results()["independence"] = stage_d0_independence(rep, M, t, true); });

  std::size_t W = 0;
  stage("D1", [&] {
    const auto nominal = rank::f2_params(rows, cols, d, t);
    Json r;
    r["nominal_W"] = nominal.weight;
    if (nominal.weight > cols) {
      W = (cols + 1) / 2;
      r["degenerate"] = true;
      r["W"] = W;
      r["note"] = "nominal weight exceeds the length; W = ceil(m/2) used instead";
    } else {
      W = nominal.weight;
      r["degenerate"] = false;
      r["W"] = W;
    }
    const auto d1 = approx::Dist::uniform_weight(cols, W);
    r["support"] = d1.points().size();
    rep.results()["D1"] = r;
  });
  cfg["W"] = W;
  stage("spreadness", [&] { rep.results()["spreadness"] = stage_spread(rep, cols, W, std::min<std::size_t>(W, 6)); });

  const std::uint64_t r = 2;
  const std::size_t w = 1, fam_size = 24;
  const Rational eps = make_rational(1, 2);
  cfg["pluck"] = {{"family", "24 random pairs"}, {"r", r}, {"w", w}, {"eps", "1/2"}};
  stage("pluck demo", [&] {
    auto rng = make_rng(seed, kPluckFamilyStream);
    rep.rng_stream("pluck demo family", kPluckFamilyStream);
    approx::SetFamily fam(cols);
    while (fam.size() < fam_size) {
      const auto pair = random_subset(rng, static_cast<std::uint32_t>(cols), 2);
      fam.insert(approx::mask_of({pair[0], pair[1]}));
    }
    approx::PluckOptions opt;
    opt.prob.mode = approx::ProbMode::Exact;
    rep.results()["pluck"] = stage_pluck(rep, fam, *d0, eps, r, w, opt);
  });

  stage("lb criterion", [&] {
    approx::CriterionParams cp;
    cp.alpha = 1;
    cp.r_w = Rational(static_cast<unsigned long>(r));
    cp.q = 8 * cp.r_w;
    cp.t = t;
    cp.w = w;
    cp.n = cols;
    rep.results()["lb_criterion"] = approx::criterion_to_json(cp, approx::lb_criterion(cp));
  });

  stage("bound report", [&] {
    Json b;
    const auto desk = codes::thm43_bound(double(rows), double(cols), double(d), double(t));
    b["desk"] = {{"n", rows}, {"m", cols}, {"d", d}, {"t", t}, {"b", 10}, {"value", desk.value},
                 {"applicable", desk.applicable}};
    const double pn = 1024;
    const double lg = std::log2(pn);
    const double pm = std::ceil(std::pow(pn, 1.5) * lg * lg);
    const auto regime = codes::thm43_bound(pn, pm, pm - pn, pn);
    b["target_regime"] = {{"n", pn}, {"m", pm}, {"l", std::ceil(std::log2(pm))}, {"d", pm - pn}, {"t", pn},
                          {"b", 10}, {"value", regime.value}, {"applicable", regime.applicable},
                          {"note", "formula evaluation only; not attained at desk scale"}};
    rep.results()["bound"] = b;
  });
}

void preset_main3(Context& ctx, Report& rep) {
  const auto seed = ctx.seed();
  rank::SparseParams sp;
  sp.n = 8;
  sp.m = 64;
  sp.s_override = 4;
  Json& cfg = rep.config();

  rank::RealMatrix01 M;
  stage("sparse matrix", [&] {
    M = rank::sample_sparse_matrix(sp, seed);
    rep.rng_stream("matrix columns", 0x5350);
    cfg["n"] = sp.n;
    cfg["m"] = M.m();
    cfg["s"] = sp.s;
    cfg["k"] = sp.k;
    cfg["nominal_s"] = rank::default_s(sp.k);
  });

  stage("well-behaved", [&] {
    rank::WellBehavedOptions opt;
    opt.t_max = 4;
    opt.trials = ctx.trials(2000);
    opt.seed = seed;
    const std::size_t nominal = 10 * sp.n * rank::ceil_log(sp.n, rank::LogBase::Two);
    Json p;
    p["nominal_subset_size"] = nominal;
    if (nominal > M.m()) {
      opt.weight = M.m() / 2;
      p["degenerate"] = true;
      p["subset_size"] = *opt.weight;
    } else {
      p["degenerate"] = false;
      p["subset_size"] = nominal;
    }
    p["t_max"] = opt.t_max;
    p["trials"] = opt.trials;
    cfg["well_behaved"] = p;
    rep.rng_stream("full-rank subsets", 0x5700);
    rep.rng_stream("tuples of size t (+ 0x100 t)", 0x5800);
    rep.rng_stream("pair sample", 0x5900);
    rep.results()["well_behaved"] = stage_well_behaved(rep, M, opt, true);
  });

  stage("cauchy-binet", [&] {
    const auto q = M.to_qmatrix();
    linalg::QMatrix sub(4, 10);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 10; ++j) sub.at(i, j) = q.at(i, j);
    cfg["cauchy_binet_block"] = {{"rows", "0..3"}, {"cols", "0..9"}};
    rep.results()["cauchy_binet"] = stage_cauchy_binet(rep, sub);
  });

  stage("D0 soundness", [&] { rep.results()["D0_soundness"] = stage_d0_soundness(rep, M); });

  stage("classical sunflower", [&] {
    approx::SetFamily supports(sp.n);
    for (const auto& col : M.cols)
      if (col.size() == sp.s) supports.insert(approx::mask_of(std::vector<std::size_t>(col.begin(), col.end())));
    Json r;
    r["family"] = "distinct column supports of size s";
    r["sets"] = supports.size();
    const auto found = approx::find_classical_sunflower(supports.sets(), 3);
    if (found) {
      Json petals = Json::array();
      for (auto p : found->petals) petals.push_back(approx::mask_elements(p));
      r["core"] = approx::mask_elements(found->core);
      r["petals"] = petals;
      rep.check("classical sunflower certificate is valid", approx::is_classical_sunflower(found->petals));
    } else {
      r["found"] = false;
    }
    rep.results()["classical_sunflower"] = r;
  });

  const std::uint64_t r = 2;
  const std::size_t w = 1, petals = 12;
  cfg["pluck"] = {{"family", "two stars of 12 pairs over random columns"}, {"r", r}, {"w", w}, {"eps", "1/2"}};
  stage("pluck demo", [&] {
    auto rng = make_rng(seed, kPluckFamilyStream);
    rep.rng_stream("pluck demo family", kPluckFamilyStream);
    const auto pick = random_tuple(rng, static_cast<std::uint32_t>(M.m()), static_cast<std::uint32_t>(2 + 2 * petals));
    approx::SetFamily fam(M.m());
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t p = 0; p < petals; ++p) fam.insert(approx::mask_of({pick[c], pick[2 + c * petals + p]}));
    approx::PluckOptions opt;
    opt.prob.mode = approx::ProbMode::Exact;
    rep.results()["pluck"] = stage_pluck(rep, fam, approx::Dist::d0_real(M), make_rational(1, 2), r, w, opt);
  });
}

}  // namespace

void run_preset(const std::string& name, Context& ctx, Report& rep) {
  rep.config()["preset"] = name;
  rep.config()["scale"] = "desk";
  if (name == "thm-main1") return preset_main1(ctx, rep);
  if (name == "thm-main4") return preset_main4(ctx, rep);
  if (name == "thm-main3") return preset_main3(ctx, rep);
  throw UsageError("unknown preset '" + name + "' (thm-main1, thm-main4, thm-main3)");
}

void register_experiment(CLI::App& app, Context& ctx) {
  auto* ex = app.add_subcommand("experiment", "end-to-end preset pipelines");
  auto name = std::make_shared<std::string>();
  ex->add_option("preset", *name, "thm-main1 | thm-main4 | thm-main3");
  ex->callback([&ctx, name] {
    ctx.command = "experiment";
    ctx.action = [&ctx, name](Report& rep) {
      std::string chosen = !name->empty() ? *name : ctx.g.preset;
      if (chosen.empty()) throw UsageError("experiment needs a preset name");
      if (!name->empty() && !ctx.g.preset.empty() && *name != ctx.g.preset)
        throw UsageError("conflicting preset names");
      run_preset(chosen, ctx, rep);
    };
  });
}

}  // namespace monoforge::cli
