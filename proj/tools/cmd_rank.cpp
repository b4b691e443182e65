#include <algorithm>
#include <sstream>

#include "stages.hpp"

#include "monoforge/errors.hpp"
#include "monoforge/rank/cauchy_binet.hpp"

namespace monoforge::cli {

Json interval_json(const stats::Interval& ci) { return Json::array({ci.lo, ci.hi}); }

Json stage_spread(Report& rep, std::size_t m, std::size_t weight, std::size_t kmax, const std::string& tag) {
  const auto rows = rank::spreadness_exact(m, weight, kmax);
  Json table = Json::array();
  bool all = true;
  for (const auto& r : rows) {
    Json row;
    row["k"] = r.k;
    row["probability"] = to_fraction_string(r.probability);
    row["probability_approx"] = r.probability.get_d();
    row["bound"] = to_fraction_string(r.bound);
    row["bound_approx"] = r.bound.get_d();
    row["holds"] = r.holds;
    table.push_back(row);
    all = all && r.holds;
  }
  rep.check(tagged("spread: Pr[K in S] <= (W/m)^k for all k", tag), all);
  Json out;
  out["m"] = m;
  out["W"] = weight;
  out["table"] = table;
  return out;
}

Json stage_d0_independence(Report& rep, const linalg::BitMatrix& m, std::size_t t, bool check_above,
                           const std::string& tag) {
  Json out;
  const auto at = rank::d0_f2_independence(m, t);
  out["t"] = t;
  out["uniform"] = at.uniformity.uniform;
  out["kernel_identity"] = at.kernel_identity;
  out["sets_checked"] = at.sets_checked;
  rep.check(tagged("D0 over F2 is t-wise uniform at t = " + std::to_string(t), tag), at.uniformity.uniform);
  rep.check(tagged("#{u : a_S = 1} = 2^(n - rank M[S])", tag), at.kernel_identity);
  if (check_above) {
    const auto above = rank::d0_f2_independence(m, t + 1);
    Json a;
    a["uniform"] = above.uniformity.uniform;
    a["failing_set"] = above.uniformity.failing_set;
    a["failing_pattern"] = above.uniformity.failing_pattern;
    a["observed"] = above.uniformity.observed;
    a["expected"] = above.uniformity.expected;
    out["at_t_plus_1"] = a;
    rep.check(tagged("D0 over F2 is not uniform at t = " + std::to_string(t + 1), tag), !above.uniformity.uniform);
  }
  return out;
}

Json stage_well_behaved(Report& rep, const rank::RealMatrix01& m, const rank::WellBehavedOptions& opt,
                        bool gate_column_weights, const std::string& tag) {
  const auto r = rank::check_well_behaved(m, opt);
  const auto deficit = rank::weight_deficit(m);
  Json out;
  out["n"] = r.n;
  out["m"] = r.m;
  out["s"] = r.s;
  out["k"] = r.k;
  out["c"] = r.c;
  out["t_cap"] = r.t_cap;
  out["subset_size"] = r.weight;
  Json p1;
  p1["min_col_support"] = r.min_col_support;
  p1["light_columns"] = deficit.light_columns;
  p1["union_bound"] = deficit.union_bound;
  p1["bound_meaningful"] = deficit.meaningful;
  p1["holds"] = r.passes[0];
  out["columns_heavy"] = p1;
  Json p2;
  p2["hits"] = r.full_rank_hits;
  p2["trials"] = r.full_rank_trials;
  p2["estimate"] = r.full_rank_estimate.get_d();
  p2["ci"] = interval_json(r.full_rank_ci);
  p2["holds"] = r.passes[1];
  out["full_rank"] = p2;
  Json p3;
  p3["tuples_examined"] = r.tuples_examined;
  Json viol = Json::array();
  for (const auto& v : r.containment_violations) viol.push_back({{"tau", v.tau}, {"contained", v.contained}});
  p3["violations"] = viol;
  p3["holds"] = r.passes[2];
  out["containment"] = p3;
  if (deficit.meaningful || !gate_column_weights)
    rep.check(tagged("well-behaved: every column has support >= s/2", tag), r.passes[0]);
  rep.check(tagged("well-behaved: Pr[M[S] full rank] CI lower end >= 0.1", tag), r.passes[1]);
  rep.check(tagged("well-behaved: containment search found no violation", tag), r.passes[2]);
  return out;
}

Json stage_cauchy_binet(Report& rep, const linalg::QMatrix& a, const std::string& tag) {
  const auto r = rank::cauchy_binet_poly(a);
  Json out;
  out["rows"] = a.rows();
  out["cols"] = a.cols();
  out["terms"] = r.direct.size();
  out["points_checked"] = r.points_checked;
  rep.check(tagged("det(A diag(x) A^T) == sum_S det(A[S])^2 x^S", tag), r.equal);
  rep.check(tagged("P(1_S) > 0 iff rank A[S] = rows", tag), r.positivity_link);
  return out;
}

Json stage_d0_soundness(Report& rep, const rank::RealMatrix01& m, const std::string& tag) {
  const auto r = rank::d0_real_soundness(m);
  Json out;
  out["witnesses"] = r.points;
  out["accepted"] = r.accepted;
  out["accepted_nonzero"] = r.accepted_nonzero;
  out["full_rank"] = r.full_rank;
  out["acceptance"] = rational_json(r.acceptance());
  rep.check(tagged("D0 real: u != 0 implies f_M(a) = 0", tag), r.sound());
  if (r.full_rank) {
    Integer pts = r.points;
    rep.check(tagged("D0 real: Pr[f_M(a) = 0] = 1 - 3^-n", tag), 1 - r.acceptance() == 1 - make_rational(1, pts));
  }
  return out;
}

namespace {

struct RankOpts {
  std::string matrix, which = "d0", csv, save, x, rows, cols;
  std::size_t m = 0, weight = 0, kmax = 0, n = 0, s = 0, k = 0, t_max = 0, c = 0, samples = 0;
  std::string base = "2";
};

rank::LogBase parse_base(const std::string& b) {
  if (b == "2") return rank::LogBase::Two;
  if (b == "e") return rank::LogBase::Natural;
  throw UsageError("--log must be '2' or 'e'");
}

rank::Bits parse_bits(const std::string& s) {
  rank::Bits b;
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw UsageError("--x expects a 0/1 string");
    b.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return b;
}

linalg::QMatrix load_qmatrix(const std::string& path) {
  const auto kind = file_kind(path);
  if (kind == "q01") return load_q01(path).to_qmatrix();
  if (kind == "f2") {
    const auto b = load_f2_matrix(path);
    linalg::QMatrix q(b.rows(), b.cols());
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) q.at(i, j) = b.get(i, j) ? 1 : 0;
    return q;
  }
  throw UsageError(path + ": expected an 'f2' or 'q01' matrix file");
}

void sample_command(const Context& ctx, const RankOpts& o, Report& rep) {
  if (o.matrix.empty()) throw UsageError("--matrix is required");
  if (o.which != "d0" && o.which != "d1") throw UsageError("--which must be d0 or d1");
  const auto seed = ctx.seed();
  const std::size_t samples = o.samples ? o.samples : ctx.trials(1000);
  const auto kind = file_kind(o.matrix);
  rep.config()["matrix"] = o.matrix;
  rep.config()["which"] = o.which;
  rep.config()["samples"] = samples;
  rep.rng_stream("samples", kSampleStream);
  auto rng = make_rng(seed, kSampleStream);
  std::ostringstream csv;
  rank::write_sample_csv_header(csv);
  std::size_t accepted = 0, unsound = 0, bad_weight = 0;
  Json r;
  std::optional<std::size_t> weight;
  if (o.weight) weight = o.weight;

  auto record = [&](std::size_t id, const rank::Bits& a, bool f, const std::string& w, bool zero_witness) {
    rank::write_sample_csv_row(csv, id, a, f, w);
    accepted += f;
    if (o.which == "d0" && f && !zero_witness) ++unsound;
  };
  if (kind == "f2") {
    const auto m = load_f2_matrix(o.matrix);
    r["field"] = "f2";
    if (o.which == "d0") {
      for (std::size_t i = 0; i < samples; ++i) {
        const auto s = rank::sample_D0(m, rng);
        record(i, s.a, rank::f_M_eval(m, s.a), rank::encode_witness(s.u, rank::FieldTag::F2), s.witness_zero());
      }
    } else {
      const auto st = codes::code_stats(codes::LinearCodeF2::from_spanning_rows(m));
      const auto p = rank::f2_params(m.rows(), m.cols(), st.distance - 1, st.dual_distance - 1, weight);
      r["W"] = p.weight;
      for (std::size_t i = 0; i < samples; ++i) {
        const auto a = rank::sample_D1(p, rng);
        bad_weight += static_cast<std::size_t>(std::count(a.begin(), a.end(), 1)) != p.weight;
        record(i, a, rank::f_M_eval(m, a), "", true);
      }
    }
  } else if (kind == "q01") {
    const auto m = load_q01(o.matrix);
    r["field"] = "real";
    if (o.which == "d0") {
      for (std::size_t i = 0; i < samples; ++i) {
        const auto s = rank::sample_D0(m, rng);
        record(i, s.a, rank::f_M_eval(m, s.a), rank::encode_witness(s.u, rank::FieldTag::Real), s.witness_zero());
      }
    } else {
      const auto p = rank::real_params(m.n, m.m(), m.s, 0, weight, parse_base(o.base));
      r["W"] = p.weight;
      for (std::size_t i = 0; i < samples; ++i) {
        const auto a = rank::sample_D1(p, rng);
        bad_weight += static_cast<std::size_t>(std::count(a.begin(), a.end(), 1)) != p.weight;
        record(i, a, rank::f_M_eval(m, a), "", true);
      }
    }
  } else {
    throw UsageError(o.matrix + ": expected an 'f2' or 'q01' matrix file");
  }
  r["samples"] = samples;
  r["f_M_one"] = accepted;
  if (o.which == "d0") {
    r["accepted_with_nonzero_witness"] = unsound;
    rep.check("D0: u != 0 implies f_M(a) = 0", unsound == 0);
  } else {
    rep.check("D1: every sample has weight W", bad_weight == 0);
  }
  if (!o.csv.empty()) write_text(o.csv, csv.str());
  rep.results()["samples"] = r;
}

}  // namespace

void register_rank(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<RankOpts>();

  auto* dist = app.add_subcommand("dist", "hard distributions");
  dist->require_subcommand(1);
  auto* sample = dist->add_subcommand("sample", "sample D0 or D1 for a matrix and dump CSV");
  sample->add_option("--matrix", o->matrix, "f2 or q01 matrix file");
  sample->add_option("--which", o->which, "d0 or d1");
  sample->add_option("--samples", o->samples, "number of samples (default --trials or 1000)");
  sample->add_option("--weight", o->weight, "override the D1 weight");
  sample->add_option("--log", o->base, "log base for the real D1 weight: 2 or e");
  sample->add_option("--csv", o->csv, "write the samples here");
  sample->callback([&ctx, o] {
    ctx.command = "dist sample";
    ctx.action = [&ctx, o](Report& rep) { sample_command(ctx, *o, rep); };
  });

  auto* spread = dist->add_subcommand("spread", "exact spreadness table of the weight-W distribution");
  spread->add_option("--m", o->m, "length")->required();
  spread->add_option("--W", o->weight, "weight")->required();
  spread->add_option("--kmax", o->kmax, "largest set size")->required();
  spread->add_option("--csv", o->csv, "write the table here");
  spread->callback([&ctx, o] {
    ctx.command = "dist spread";
    ctx.action = [o](Report& rep) {
      rep.config()["m"] = o->m;
      rep.config()["W"] = o->weight;
      rep.config()["kmax"] = o->kmax;
      try {
        rep.results()["spread"] = stage_spread(rep, o->m, o->weight, o->kmax);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (!o->csv.empty()) {
        std::ostringstream out;
        out << "k,probability,bound,holds\n";
        for (const auto& row : rep.results()["spread"]["table"])
          out << row["k"].get<std::size_t>() << ',' << row["probability"].get<std::string>() << ','
              << row["bound"].get<std::string>() << ',' << row["holds"].get<bool>() << '\n';
        write_text(o->csv, out.str());
      }
    };
  });

  auto* matrix = app.add_subcommand("matrix", "sparse real matrices");
  matrix->require_subcommand(1);
  auto* msample = matrix->add_subcommand("sample", "sample a sparse 0/1 matrix");
  msample->add_option("--n", o->n, "rows")->required();
  msample->add_option("--m", o->m, "columns (default n^2)");
  msample->add_option("--s", o->s, "sparsity override (default 200k^2)");
  msample->add_option("--save", o->save, "write the q01 matrix here");
  msample->callback([&ctx, o] {
    ctx.command = "matrix sample";
    ctx.action = [&ctx, o](Report& rep) {
      rank::SparseParams p;
      p.n = o->n;
      p.m = o->m;
      if (o->s) p.s_override = o->s;
      const auto seed = ctx.seed();
      const auto mat = rank::sample_sparse_matrix(p, seed);
      rep.rng_stream("columns", 0x5350);
      rep.config()["n"] = o->n;
      rep.config()["m"] = mat.m();
      rep.config()["s"] = p.s;
      rep.config()["k"] = p.k;
      std::size_t lo = SIZE_MAX, hi = 0;
      for (std::size_t j = 0; j < mat.m(); ++j) {
        lo = std::min(lo, mat.weight(j));
        hi = std::max(hi, mat.weight(j));
      }
      Json r;
      r["min_weight"] = lo;
      r["max_weight"] = hi;
      const auto d = rank::weight_deficit(mat);
      r["light_columns"] = d.light_columns;
      r["union_bound"] = d.union_bound;
      rep.check("column weights <= s", hi <= p.s, r);
      if (!o->save.empty()) {
        std::ostringstream out;
        rank::write_q01(out, mat);
        write_text(o->save, out.str());
      }
      rep.results()["matrix"] = r;
    };
  });

  auto* wb = matrix->add_subcommand("well-behaved", "certify the three well-behavedness properties");
  wb->add_option("--matrix", o->matrix, "q01 matrix file")->required();
  wb->add_option("--k", o->k, "k (default ceil(sqrt(log2 m)))");
  wb->add_option("--t-max", o->t_max, "largest tuple size (default floor(n^0.1))");
  wb->add_option("--c", o->c, "containment threshold (default 10k)");
  wb->add_option("--weight", o->weight, "subset size for the full-rank property");
  wb->add_option("--log", o->base, "log base for the default subset size: 2 or e");
  wb->callback([&ctx, o] {
    ctx.command = "matrix well-behaved";
    ctx.action = [&ctx, o](Report& rep) {
      const auto mat = load_q01(o->matrix);
      rank::WellBehavedOptions opt;
      opt.k = o->k;
      opt.t_max = o->t_max;
      opt.c = o->c;
      opt.trials = ctx.trials(2000);
      opt.seed = ctx.seed();
      if (o->weight) opt.weight = o->weight;
      opt.base = parse_base(o->base);
      rep.config()["matrix"] = o->matrix;
      rep.config()["trials"] = opt.trials;
      rep.rng_stream("full-rank subsets", 0x5700);
      rep.rng_stream("tuples of size t", 0x5800);
      rep.rng_stream("pair sample", 0x5900);
      rep.results()["well_behaved"] = stage_well_behaved(rep, mat, opt, false);
    };
  });

  auto* rk = app.add_subcommand("rank", "the rank function f_M");
  rk->require_subcommand(1);
  auto* eval = rk->add_subcommand("eval", "f_M(x) = [M restricted to supp x has full row rank]");
  eval->add_option("--matrix", o->matrix, "f2 or q01 matrix file")->required();
  eval->add_option("--x", o->x, "0/1 string of length m")->required();
  eval->callback([&ctx, o] {
    ctx.command = "rank eval";
    ctx.action = [o](Report& rep) {
      const auto x = parse_bits(o->x);
      const auto kind = file_kind(o->matrix);
      rep.config()["matrix"] = o->matrix;
      rep.config()["x"] = o->x;
      bool f = false;
      try {
        if (kind == "f2")
          f = rank::f_M_eval(load_f2_matrix(o->matrix), x);
        else if (kind == "q01")
          f = rank::f_M_eval(load_q01(o->matrix), x);
        else
          throw UsageError(o->matrix + ": expected an 'f2' or 'q01' matrix file");
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      rep.results()["f_M"] = f ? 1 : 0;
    };
  });

  auto* cb = app.add_subcommand("cb", "Cauchy-Binet polynomial identity");
  cb->require_subcommand(1);
  auto* verify = cb->add_subcommand("verify", "compare the determinant expansion with the minor sum");
  verify->add_option("--matrix", o->matrix, "f2 or q01 matrix file")->required();
  verify->add_option("--rows", o->rows, "comma-separated row subset (0-based)");
  verify->add_option("--cols", o->cols, "comma-separated column subset (0-based)");
  verify->callback([&ctx, o] {
    ctx.command = "cb verify";
    ctx.action = [o](Report& rep) {
      auto q = load_qmatrix(o->matrix);
      rep.config()["matrix"] = o->matrix;
      if (!o->rows.empty() || !o->cols.empty()) {
        std::vector<std::size_t> rows = o->rows.empty() ? std::vector<std::size_t>{} : parse_index_list(o->rows);
        std::vector<std::size_t> cols = o->cols.empty() ? std::vector<std::size_t>{} : parse_index_list(o->cols);
        if (rows.empty())
          for (std::size_t i = 0; i < q.rows(); ++i) rows.push_back(i);
        if (cols.empty())
          for (std::size_t j = 0; j < q.cols(); ++j) cols.push_back(j);
        linalg::QMatrix sub(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
          for (std::size_t j = 0; j < cols.size(); ++j) {
            if (rows[i] >= q.rows() || cols[j] >= q.cols()) throw UsageError("row/column index out of range");
            sub.at(i, j) = q.at(rows[i], cols[j]);
          }
        q = std::move(sub);
        rep.config()["rows"] = rows;
        rep.config()["cols"] = cols;
      }
      rep.results()["cauchy_binet"] = stage_cauchy_binet(rep, q);
    };
  });
}

}  // namespace monoforge::cli
