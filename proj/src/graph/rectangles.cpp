#include "monoforge/graph/rectangles.hpp"

#include <algorithm>
#include <bit>

#include "monoforge/errors.hpp"
#include "monoforge/graph/hard_input.hpp"
#include "monoforge/parallel.hpp"

namespace monoforge::graph {

namespace {

Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

bool in_third_range(std::size_t part, std::size_t total) { return 3 * part >= total && 3 * part < 2 * total; }

}  // namespace

Mask Rectangle::z() const noexcept { return full_mask(n) & ~y; }

bool Rectangle::balanced() const noexcept {
  const auto ny = static_cast<std::size_t>(std::popcount(y));
  return in_third_range(ny, n) && in_third_range(n - ny, n);
}

bool Rectangle::well_formed() const noexcept {
  const Mask zz = z();
  return std::all_of(fam_y.begin(), fam_y.end(), [&](Mask s) { return (s & ~y) == 0; }) &&
         std::all_of(fam_z.begin(), fam_z.end(), [&](Mask t) { return (t & ~zz) == 0; });
}

bool Rectangle::contains(Mask s) const {
  return std::find(fam_y.begin(), fam_y.end(), s & y) != fam_y.end() &&
         std::find(fam_z.begin(), fam_z.end(), s & z()) != fam_z.end();
}

std::set<Mask> Rectangle::generated() const {
  std::set<Mask> out;
  for (Mask s : fam_y)
    for (Mask t : fam_z) out.insert(s | t);
  return out;
}

CoverVerdict verify_rectangle_cover(const std::vector<Rectangle>& rects, const std::set<Mask>& f_ones) {
  CoverVerdict v;
  std::set<Mask> uni;
  v.balanced_all = true;
  for (const auto& r : rects) {
    v.balanced_all = v.balanced_all && r.balanced() && r.well_formed();
    for (Mask s : r.generated()) uni.insert(s);
  }
  std::vector<Mask> diff;
  std::set_symmetric_difference(uni.begin(), uni.end(), f_ones.begin(), f_ones.end(), std::back_inserter(diff));
  v.covered = diff.empty();
  if (!diff.empty()) v.witness = diff.front();
  return v;
}

std::set<Mask> f_G_ones(const Graph& g) {
  if (g.n() > 24) throw EnumerationTooLarge("f_G support enumeration limited to 24 vertices");
  std::set<Mask> out;
  for (Mask a = 0; a <= full_mask(g.n()); ++a)
    if (g.induced_edge_count(a) != 1) out.insert(a);
  return out;
}

DecompositionVerdict verify_pair_decomposition(const algebra::SparsePoly& p, const std::vector<MonotonePair>& pairs,
                                               const algebra::VarPartition& part) {
  auto fail = [](std::string clause, std::size_t i) { return DecompositionVerdict{false, std::move(clause), i}; };
  const auto universe = part.universe();
  const std::size_t blocks = part.size();

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& pr = pairs[i];
    auto inside = [](const std::set<algebra::VarId>& vars, const std::set<algebra::VarId>& allowed) {
      return std::includes(allowed.begin(), allowed.end(), vars.begin(), vars.end());
    };
    if (!inside(pr.g.variables(), pr.y) || !inside(pr.h.variables(), pr.z)) return fail("variables", i);
    if (!pr.g.is_monotone() || !pr.h.is_monotone()) return fail("monotonicity", i);

    // Y and Z split the universe, and every block lies inside one of them.
    std::set<algebra::VarId> both;
    std::set_union(pr.y.begin(), pr.y.end(), pr.z.begin(), pr.z.end(), std::inserter(both, both.end()));
    if (both != universe || both.size() != pr.y.size() + pr.z.size()) return fail("refinement", i);
    std::size_t y_blocks = 0;
    for (const auto& blk : part.blocks()) {
      const bool any_y = std::any_of(blk.begin(), blk.end(), [&](auto v) { return pr.y.count(v) > 0; });
      const bool all_y = std::all_of(blk.begin(), blk.end(), [&](auto v) { return pr.y.count(v) > 0; });
      if (any_y != all_y) return fail("refinement", i);
      y_blocks += all_y;
    }
    if (!in_third_range(y_blocks, blocks) || !in_third_range(blocks - y_blocks, blocks)) return fail("balance", i);
  }

  algebra::SparsePoly sum;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto prod = pairs[i].g * pairs[i].h;
    for (const auto& [m, c] : prod.terms())
      if (p.terms().count(m) == 0) return fail("support containment", i);
    sum += prod;
  }
  if (!algebra::poly_equal(sum, p)) return fail("sum", 0);
  return {true, "", 0};
}

MassEstimate estimate_rectangle_mass(const Graph& g, std::size_t m, const Rectangle& r, std::size_t trials,
                                     std::uint64_t seed) {
  struct Hits {
    std::uint64_t hits = 0;
    Hits& operator+=(const Hits& o) {
      hits += o.hits;
      return *this;
    }
  };
  const auto total = par::sharded_trials<Hits>(seed, 0x5200, trials, [&](Rng& rng, std::size_t count, Hits& h) {
    for (std::size_t s = 0; s < count; ++s) {
      const auto a = sample_hard_input(g, sample_matching(g, m, rng), rng);
      Mask supp = 0;
      for (std::size_t v = 0; v < a.size(); ++v)
        if (a[v]) supp |= Mask{1} << v;
      h.hits += r.contains(supp);
    }
  });
  MassEstimate est;
  est.hits = total.hits;
  est.trials = trials;
  est.ci = stats::wilson(total.hits, trials);
  return est;
}

}  // namespace monoforge::graph
