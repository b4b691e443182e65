#include "monoforge/rank/well_behaved.hpp"

#include <algorithm>
#include <cmath>

#include "monoforge/errors.hpp"
#include "monoforge/parallel.hpp"

namespace monoforge::rank {

namespace {

constexpr std::size_t kMaxReportedViolations = 8;
constexpr std::uint64_t kFullRankStream = 0x5700;
constexpr std::uint64_t kTupleStream = 0x5800;

struct HitTally {
  std::size_t hits = 0;
  HitTally& operator+=(const HitTally& o) {
    hits += o.hits;
    return *this;
  }
};

struct TupleTally {
  std::size_t examined = 0;
  std::vector<ContainmentViolation> found;
  TupleTally& operator+=(const TupleTally& o) {
    examined += o.examined;
    for (const auto& v : o.found)
      if (found.size() < kMaxReportedViolations) found.push_back(v);
    return *this;
  }
};

std::size_t overlap(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::size_t c = 0;
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      ++c, ++i, ++j;
  }
  return c;
}

bool violates(std::size_t contained, std::size_t t, std::size_t k) { return 2 * k * contained >= t; }

// Highest-overlap column pairs, ties broken by index. All pairs when m is small,
// otherwise a deterministic sample.
std::vector<std::pair<std::size_t, std::size_t>> top_pairs(const RealMatrix01& m, std::size_t want, std::uint64_t seed) {
  struct Scored {
    std::size_t ov, i, j;
  };
  std::vector<Scored> all;
  const std::size_t cols = m.m();
  if (cols < 2 || want == 0) return {};
  if (cols <= 2048) {
    for (std::size_t i = 0; i < cols; ++i)
      for (std::size_t j = i + 1; j < cols; ++j) {
        const std::size_t ov = overlap(m.cols[i], m.cols[j]);
        if (ov) all.push_back({ov, i, j});
      }
  } else {
    Rng rng = make_rng(seed, 0x5900);
    for (std::size_t r = 0; r < 200000; ++r) {
      auto p = random_subset(rng, static_cast<std::uint32_t>(cols), 2);
      all.push_back({overlap(m.cols[p[0]], m.cols[p[1]]), p[0], p[1]});
    }
  }
  const auto better = [](const Scored& a, const Scored& b) {
    if (a.ov != b.ov) return a.ov > b.ov;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  };
  const std::size_t keep = std::min(want, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), better);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t q = 0; q < keep; ++q) out.emplace_back(all[q].i, all[q].j);
  return out;
}

// Extends τ greedily with the column that overlaps the running union the most.
std::vector<std::size_t> greedy_extend(const RealMatrix01& m, std::vector<std::size_t> tau, std::size_t t) {
  std::vector<std::uint8_t> in_union(m.n, 0), used(m.m(), 0);
  for (auto i : tau) {
    used[i] = 1;
    for (auto r : m.cols[i]) in_union[r] = 1;
  }
  while (tau.size() < t && tau.size() < m.m()) {
    std::size_t best = m.m(), best_ov = 0;
    for (std::size_t j = 0; j < m.m(); ++j) {
      if (used[j]) continue;
      std::size_t ov = 0;
      for (auto r : m.cols[j]) ov += in_union[r];
      if (best == m.m() || ov > best_ov) best = j, best_ov = ov;
    }
    tau.push_back(best);
    used[best] = 1;
    for (auto r : m.cols[best]) in_union[r] = 1;
  }
  return tau;
}

template <bool Parallel>
WellBehavedReport check_impl(const RealMatrix01& m, const WellBehavedOptions& opt) {
  WellBehavedReport rep;
  rep.n = m.n;
  rep.m = m.m();
  rep.s = m.s;
  rep.k = opt.k ? opt.k : default_k(std::max<std::size_t>(m.m(), 2));
  rep.c = opt.c ? opt.c : 10 * rep.k;
  rep.t_cap = opt.t_max ? opt.t_max
                        : std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(
                                                       std::pow(static_cast<double>(m.n), 0.1) + 1e-12)));
  rep.weight = opt.weight.value_or(10 * m.n * ceil_log(m.n, opt.base));
  if (rep.weight > rep.m) {
    if (opt.weight) throw WeightExceedsLength(rep.weight, rep.m);
    throw ParameterDegeneration("full-rank subset size 10·n·⌈log n⌉ = " + std::to_string(rep.weight) +
                                " exceeds m = " + std::to_string(rep.m) + "; pass an explicit subset size");
  }

  rep.min_col_support = m.n;
  for (const auto& c : m.cols) rep.min_col_support = std::min(rep.min_col_support, c.size());
  if (m.m() == 0) rep.min_col_support = 0;
  rep.passes[0] = 2 * rep.min_col_support >= rep.s;

  const auto full_rank_body = [&](Rng& rng, std::size_t count, HitTally& t) {
    std::vector<std::size_t> sel;
    for (std::size_t r = 0; r < count; ++r) {
      auto subset = random_subset(rng, static_cast<std::uint32_t>(rep.m), static_cast<std::uint32_t>(rep.weight));
      sel.assign(subset.begin(), subset.end());
      t.hits += full_row_rank(m, sel);
    }
  };
  const HitTally hits = Parallel ? par::sharded_trials<HitTally>(opt.seed, kFullRankStream, opt.trials, full_rank_body)
                                 : par::sharded_trials_serial<HitTally>(opt.seed, kFullRankStream, opt.trials,
                                                                        full_rank_body);
  rep.full_rank_hits = hits.hits;
  rep.full_rank_trials = opt.trials;
  rep.full_rank_estimate =
      opt.trials ? make_rational(Integer(static_cast<unsigned long>(hits.hits)), Integer(static_cast<unsigned long>(opt.trials)))
                 : Rational(0);
  rep.full_rank_ci = stats::hoeffding(hits.hits, opt.trials);
  rep.passes[1] = opt.trials > 0 && rep.full_rank_ci.lo >= 0.1;

  // Adversarial tuples first so planted overlaps are reported ahead of random finds.
  TupleTally tuples;
  const std::size_t t_hi = std::min(rep.t_cap, rep.m);
  const auto pairs = t_hi >= 2 ? top_pairs(m, opt.adversarial_pairs, opt.seed) : decltype(top_pairs(m, 0, 0)){};
  for (std::size_t t = 2; t <= t_hi; ++t)
    for (const auto& [i, j] : pairs) {
      for (const auto& seed_tau : {std::vector<std::size_t>{i, j}, std::vector<std::size_t>{j, i}}) {
        auto tau = greedy_extend(m, seed_tau, t);
        const std::size_t cnt = contained_positions(m, tau, rep.c);
        ++tuples.examined;
        if (violates(cnt, t, rep.k) && tuples.found.size() < kMaxReportedViolations)
          tuples.found.push_back({tau, cnt});
      }
    }
  for (std::size_t t = 2; t <= t_hi; ++t) {
    const auto body = [&](Rng& rng, std::size_t count, TupleTally& tt) {
      for (std::size_t r = 0; r < count; ++r) {
        auto drawn = random_tuple(rng, static_cast<std::uint32_t>(rep.m), static_cast<std::uint32_t>(t));
        std::vector<std::size_t> tau(drawn.begin(), drawn.end());
        const std::size_t cnt = contained_positions(m, tau, rep.c);
        ++tt.examined;
        if (violates(cnt, t, rep.k) && tt.found.size() < kMaxReportedViolations) tt.found.push_back({tau, cnt});
      }
    };
    tuples += Parallel ? par::sharded_trials<TupleTally>(opt.seed, kTupleStream + 0x100 * t, opt.trials, body)
                       : par::sharded_trials_serial<TupleTally>(opt.seed, kTupleStream + 0x100 * t, opt.trials, body);
  }
  rep.tuples_examined = tuples.examined;
  rep.containment_violations = std::move(tuples.found);
  rep.passes[2] = rep.containment_violations.empty();
  return rep;
}

}  // namespace

std::size_t contained_positions(const RealMatrix01& m, const std::vector<std::size_t>& tau, std::size_t c) {
  std::vector<std::uint8_t> in_union(m.n, 0);
  std::size_t count = 0;
  for (std::size_t p = 0; p < tau.size(); ++p) {
    std::size_t common = 0;
    for (auto r : m.cols[tau[p]]) common += in_union[r];
    if (p > 0 && common >= c) ++count;
    for (auto r : m.cols[tau[p]]) in_union[r] = 1;
  }
  return count;
}

WellBehavedReport check_well_behaved(const RealMatrix01& m, const WellBehavedOptions& opt) {
  return check_impl<true>(m, opt);
}

WellBehavedReport check_well_behaved_serial(const RealMatrix01& m, const WellBehavedOptions& opt) {
  return check_impl<false>(m, opt);
}

namespace {

struct PatternTally {
  std::vector<std::size_t> count, ones;
  PatternTally& operator+=(const PatternTally& o) {
    if (count.size() < o.count.size()) count.resize(o.count.size()), ones.resize(o.count.size());
    for (std::size_t i = 0; i < o.count.size(); ++i) count[i] += o.count[i], ones[i] += o.ones[i];
    return *this;
  }
};

}  // namespace

ProbeResult weak_independence_probe(const RealMatrix01& m, const std::vector<std::size_t>& tau, std::size_t j,
                                    std::size_t c, const ProbeOptions& opt) {
  if (is_c_contained(m, tau, j, c))
    throw PreconditionViolated("column " + std::to_string(tau[j - 1]) + " is " + std::to_string(c) +
                               "-contained in the tuple");
  if (j - 1 > 20) throw EnumerationTooLarge("more than 20 conditioning columns");
  for (auto i : tau)
    if (i >= m.m()) throw std::invalid_argument("column index out of range");

  // Only rows touched by τ_1..τ_j influence the pattern.
  std::vector<std::uint32_t> rows;
  for (std::size_t p = 0; p < j; ++p) rows.insert(rows.end(), m.cols[tau[p]].begin(), m.cols[tau[p]].end());
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::vector<std::vector<std::size_t>> local(j);
  for (std::size_t p = 0; p < j; ++p)
    for (auto r : m.cols[tau[p]])
      local[p].push_back(static_cast<std::size_t>(std::lower_bound(rows.begin(), rows.end(), r) - rows.begin()));

  const std::size_t patterns = std::size_t{1} << (j - 1);
  auto classify = [&](const std::vector<int>& u, PatternTally& t) {
    std::uint64_t pat = 0;
    bool last = false;
    for (std::size_t p = 0; p < j; ++p) {
      long long dot = 0;
      for (auto r : local[p]) dot += u[r];
      if (p + 1 < j)
        pat |= static_cast<std::uint64_t>(dot == 0) << p;
      else
        last = dot == 0;
    }
    ++t.count[pat];
    t.ones[pat] += last;
  };

  ProbeResult res;
  res.k = opt.k ? opt.k : default_k(std::max<std::size_t>(m.m(), 2));
  PatternTally tally;
  tally.count.assign(patterns, 0);
  tally.ones.assign(patterns, 0);
  if (!opt.force_monte_carlo && rows.size() <= opt.exact_support_cap) {
    res.exact = true;
    std::vector<int> u(rows.size(), -1);
    std::size_t pts = 0;
    while (true) {
      classify(u, tally);
      ++pts;
      std::size_t q = 0;
      while (q < u.size() && u[q] == 1) u[q++] = -1;
      if (q == u.size()) break;
      ++u[q];
    }
    res.points = pts;
  } else {
    const auto body = [&](Rng& rng, std::size_t count, PatternTally& t) {
      t.count.assign(patterns, 0);
      t.ones.assign(patterns, 0);
      std::vector<int> u(rows.size());
      for (std::size_t r = 0; r < count; ++r) {
        for (auto& v : u) v = static_cast<int>(uniform_below(rng, 3)) - 1;
        classify(u, t);
      }
    };
    PatternTally mc = par::sharded_trials<PatternTally>(opt.seed, 0x5A00, opt.trials, body);
    tally += mc;
    res.points = opt.trials;
  }
  bool first = true;
  for (std::size_t pat = 0; pat < patterns; ++pat) {
    if (!tally.count[pat]) continue;
    PatternStat ps;
    ps.pattern = pat;
    ps.count = tally.count[pat];
    ps.ones = tally.ones[pat];
    const double est = static_cast<double>(ps.ones) / static_cast<double>(ps.count);
    if (res.exact) {
      ps.exact = make_rational(Integer(static_cast<unsigned long>(ps.ones)), Integer(static_cast<unsigned long>(ps.count)));
      ps.ci = {est, est};
    } else {
      ps.ci = stats::wilson(ps.ones, ps.count);
    }
    if (first || est < res.min_estimate) res.min_estimate = est, res.min_pattern = pat;
    first = false;
    res.patterns.push_back(ps);
  }
  return res;
}

}  // namespace monoforge::rank
