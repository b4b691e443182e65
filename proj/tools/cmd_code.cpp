#include <fstream>
#include <sstream>

#include "stages.hpp"

#include "monoforge/errors.hpp"

namespace monoforge::cli {

RsBundle make_rs(unsigned l, std::size_t n, std::size_t m, std::uint32_t modulus) {
  if (l < 1 || l > 16) throw UsageError("--l must be in 1..16");
  linalg::GF2eCtx ctx = modulus ? linalg::GF2eCtx(l, modulus) : linalg::GF2eCtx(l);
  codes::RSCode rs(ctx, n, m);
  linalg::FieldBasis basis(ctx);
  auto bin = codes::binary_expand_code(rs, basis);
  return RsBundle{std::move(rs), std::move(basis), std::move(bin)};
}

Json code_json(const RsBundle& b) {
  std::ostringstream gen;
  linalg::write_f2_matrix(gen, b.binary.generator());
  Json j;
  j["l"] = b.rs.ctx.degree();
  j["n"] = b.rs.n;
  j["m"] = b.rs.m;
  j["modulus"] = b.rs.ctx.modulus();
  j["points"] = b.rs.points;
  j["generator"] = gen.str();
  return j;
}

Json stats_json(const codes::CodeStats& s) {
  Json j;
  j["distance"] = s.distance;
  j["dual_distance"] = s.dual_distance;
  j["delta"] = rational_json(s.delta);
  j["distance_method"] = codes::method_name(s.distance_method);
  j["dual_method"] = codes::method_name(s.dual_method);
  j["distance_exact"] = s.distance_exact;
  j["dual_exact"] = s.dual_exact;
  return j;
}

namespace {
std::string stats_csv(const codes::LinearCodeF2& c, const codes::CodeStats& s) {
  std::ostringstream out;
  out << "rows,cols,distance,dual_distance,delta,distance_exact,dual_exact\n"
      << c.dimension() << ',' << c.length() << ',' << s.distance << ',' << s.dual_distance << ','
      << to_fraction_string(s.delta) << ',' << s.distance_exact << ',' << s.dual_exact << '\n';
  return out.str();
}
}  // namespace

Json stage_code_stats(Report& rep, const RsBundle& b, codes::CodeStats* binary_out, const std::string& tag) {
  const std::size_t n = b.rs.n, m = b.rs.m, l = b.rs.ctx.degree();
  const auto q = codes::qary_stats(codes::rs_generator(b.rs));
  Json qj;
  qj["distance"] = q.distance;
  qj["dual_distance"] = q.dual_distance;
  qj["dual_by_enumeration"] = q.dual_by_enumeration;
  rep.check(tagged("q-ary distance == m-n+1", tag), q.distance == m - n + 1, qj);
  rep.check(tagged("q-ary dual distance == n+1", tag), q.dual_distance == n + 1);

  const auto s = codes::code_stats(b.binary);
  Json bj = stats_json(s);
  bj["rows"] = b.binary.dimension();
  bj["cols"] = b.binary.length();
  rep.check(tagged("binary distance in [d, l*d]", tag), s.distance_exact && q.distance <= s.distance && s.distance <= l * q.distance);
  rep.check(tagged("binary dual distance in [d', l*d']", tag),
            s.dual_exact && q.dual_distance <= s.dual_distance && s.dual_distance <= l * q.dual_distance);
  if (binary_out) *binary_out = s;
  Json r;
  r["qary"] = qj;
  r["binary"] = bj;
  return r;
}

Json stage_independence(Report& rep, const codes::LinearCodeF2& c, std::size_t dual_distance, const std::string& tag) {
  Json r;
  r["dual_distance"] = dual_distance;
  const std::size_t t = dual_distance - 1;
  const auto at = codes::check_t_wise_independence(c, t);
  const auto above = codes::check_t_wise_independence(c, t + 1);
  r["uniform_at"] = t;
  r["fails_at"] = t + 1;
  if (!above.uniform) {
    r["failing_set"] = above.failing_set;
    r["failing_pattern"] = above.failing_pattern;
    r["observed"] = above.observed;
    r["expected"] = above.expected;
  }
  rep.check(tagged("codewords are (d'-1)-wise uniform", tag), at.uniform);
  rep.check(tagged("codewords are not d'-wise uniform", tag), !above.uniform);
  return r;
}

namespace {

struct CodeOpts {
  unsigned l = 0;
  std::size_t n = 0, m = 0, t = 0;
  std::uint32_t modulus = 0;
  std::string save, csv, matrix;
};

RsBundle need_rs(const CodeOpts& o, Report& rep) {
  if (!o.l || !o.n || !o.m) throw UsageError("--l, --n and --m are required");
  rep.config()["l"] = o.l;
  rep.config()["n"] = o.n;
  rep.config()["m"] = o.m;
  if (o.modulus) rep.config()["modulus"] = o.modulus;
  return make_rs(o.l, o.n, o.m, o.modulus);
}

codes::LinearCodeF2 code_from_matrix(const std::string& path) {
  return codes::LinearCodeF2::from_spanning_rows(load_f2_matrix(path));
}

}  // namespace

void register_code(CLI::App& app, Context& ctx) {
  auto* code = app.add_subcommand("code", "Reed-Solomon codes, binary expansion, distances");
  code->require_subcommand(1);
  auto o = std::make_shared<CodeOpts>();
  auto add_rs = [&](CLI::App* sub) {
    sub->add_option("--l", o->l, "field degree (q = 2^l)");
    sub->add_option("--n", o->n, "dimension");
    sub->add_option("--m", o->m, "length");
    sub->add_option("--modulus", o->modulus, "irreducible modulus as a bit integer");
  };

  auto* rs = code->add_subcommand("rs", "q-ary Reed-Solomon distances");
  add_rs(rs);
  rs->callback([&ctx, o] {
    ctx.command = "code rs";
    ctx.action = [o](Report& rep) {
      const auto b = need_rs(*o, rep);
      const auto q = codes::qary_stats(codes::rs_generator(b.rs));
      Json r;
      r["distance"] = q.distance;
      r["dual_distance"] = q.dual_distance;
      r["points"] = b.rs.points;
      rep.check("distance == m-n+1", q.distance == o->m - o->n + 1);
      rep.check("dual distance == n+1", q.dual_distance == o->n + 1);
      rep.results()["rs"] = r;
    };
  });

  auto* expand = code->add_subcommand("expand", "binary expansion of an RS code");
  add_rs(expand);
  expand->add_option("--save", o->save, "write the code JSON here");
  expand->callback([&ctx, o] {
    ctx.command = "code expand";
    ctx.action = [o](Report& rep) {
      const auto b = need_rs(*o, rep);
      const auto j = code_json(b);
      if (!o->save.empty()) write_text(o->save, j.dump(2) + "\n");
      Json r;
      r["rows"] = b.binary.dimension();
      r["cols"] = b.binary.length();
      rep.check("generator is l*n x l*m", b.binary.dimension() == o->l * o->n && b.binary.length() == o->l * o->m, r);
      rep.results()["code"] = j;
    };
  });

  auto* stats = code->add_subcommand("stats", "distance and dual distance");
  add_rs(stats);
  stats->add_option("--matrix", o->matrix, "f2 generator file instead of an RS code");
  stats->add_option("--csv", o->csv, "write the stats as a one-line CSV table");
  stats->callback([&ctx, o] {
    ctx.command = "code stats";
    ctx.action = [o](Report& rep) {
      codes::CodeStats s;
      std::optional<codes::LinearCodeF2> c;
      if (!o->matrix.empty()) {
        rep.config()["matrix"] = o->matrix;
        c = code_from_matrix(o->matrix);
        s = codes::code_stats(*c);
        Json r = stats_json(s);
        r["rows"] = c->dimension();
        r["cols"] = c->length();
        rep.check("distances exact", s.distance_exact && s.dual_exact);
        rep.results()["binary"] = r;
      } else {
        const auto b = need_rs(*o, rep);
        rep.results() = stage_code_stats(rep, b, &s);
        c = b.binary;
      }
      if (!o->csv.empty()) write_text(o->csv, stats_csv(*c, s));
    };
  });

  auto* ind = code->add_subcommand("independence", "t-wise uniformity of the codewords");
  add_rs(ind);
  ind->add_option("--matrix", o->matrix, "f2 generator file instead of an RS code");
  ind->add_option("--t", o->t, "check this t only (default: d'-1 holds and d' fails)");
  ind->callback([&ctx, o] {
    ctx.command = "code independence";
    ctx.action = [o](Report& rep) {
      std::optional<codes::LinearCodeF2> c;
      if (!o->matrix.empty()) {
        rep.config()["matrix"] = o->matrix;
        c = code_from_matrix(o->matrix);
      } else {
        c = need_rs(*o, rep).binary;
      }
      if (o->t) {
        rep.config()["t"] = o->t;
        const auto u = codes::check_t_wise_independence(*c, o->t);
        Json r;
        r["t"] = o->t;
        r["uniform"] = u.uniform;
        if (!u.uniform) {
          r["failing_set"] = u.failing_set;
          r["failing_pattern"] = u.failing_pattern;
        }
        rep.check("codewords are t-wise uniform", u.uniform, r);
        rep.results()["independence"] = r;
        return;
      }
      const auto s = codes::code_stats(*c);
      rep.results()["independence"] = stage_independence(rep, *c, s.dual_distance);
    };
  });
}

}  // namespace monoforge::cli
