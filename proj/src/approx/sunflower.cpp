#include "monoforge/approx/sunflower.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

#include "monoforge/errors.hpp"

namespace monoforge::approx {

namespace {

Mask intersection_of(const std::vector<Mask>& sets) {
  Mask k = ~Mask{0};
  for (Mask s : sets) k &= s;
  return sets.empty() ? 0 : k;
}

std::size_t size_of(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

}  // namespace

SunflowerCert is_sunflower(const std::vector<Mask>& members, const Dist& d, const Rational& eps,
                           const ProbOptions& opt) {
  SunflowerCert c;
  c.members = members;
  c.eps = eps;
  if (members.size() < 2) return c;
  c.core = intersection_of(members);
  std::vector<Mask> petals;
  for (Mask s : members) petals.push_back(s & ~c.core);
  c.prob = probability(
      d,
      [&petals](Mask x) {
        for (Mask p : petals)
          if ((p & ~x) == 0) return true;
        return false;
      },
      opt.mode, opt.trials, opt.seed, 0x6200);
  const Rational threshold = 1 - eps;
  c.accepted = c.prob.exact ? c.prob.value > threshold : c.prob.mc.ci.lo > threshold.get_d();
  return c;
}

bool is_classical_sunflower(const std::vector<Mask>& petals) {
  if (petals.empty()) return false;
  const Mask core = intersection_of(petals);
  for (std::size_t i = 0; i < petals.size(); ++i)
    for (std::size_t j = i + 1; j < petals.size(); ++j)
      if ((petals[i] & petals[j]) != core) return false;
  return true;
}

namespace {

std::optional<ClassicalSunflower> search(const std::vector<Mask>& fam, std::size_t r, std::size_t& budget) {
  if (fam.size() < r || budget == 0) return std::nullopt;
  --budget;
  std::vector<Mask> disjoint;
  Mask used = 0;
  for (Mask s : fam)
    if ((s & used) == 0) {
      disjoint.push_back(s);
      used |= s;
      if (disjoint.size() == r) return ClassicalSunflower{disjoint, 0};
    }
  // Branch on elements of the disjoint family's union, most popular first.
  std::vector<std::pair<std::size_t, std::size_t>> popularity;
  for (Mask u = used; u; u &= u - 1) {
    const auto x = static_cast<std::size_t>(std::countr_zero(u));
    std::size_t cnt = 0;
    for (Mask s : fam) cnt += (s >> x) & 1U;
    popularity.emplace_back(cnt, x);
  }
  std::sort(popularity.begin(), popularity.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  for (const auto& [cnt, x] : popularity) {
    if (cnt < r) break;
    const Mask bit = Mask{1} << x;
    std::vector<Mask> sub;
    for (Mask s : fam)
      if (s & bit) sub.push_back(s & ~bit);
    if (auto found = search(sub, r, budget)) {
      for (auto& p : found->petals) p |= bit;
      found->core |= bit;
      return found;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<ClassicalSunflower> find_sunflower_brute(const std::vector<Mask>& fam, std::size_t r) {
  if (fam.size() > 24) throw EnumerationTooLarge("exhaustive sunflower search limited to 24 sets");
  if (r == 0 || fam.size() < r) return std::nullopt;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    std::vector<Mask> pick;
    for (auto i : idx) pick.push_back(fam[i]);
    if (is_classical_sunflower(pick)) return ClassicalSunflower{pick, intersection_of(pick)};
    std::size_t p = r;
    while (p > 0 && idx[p - 1] == fam.size() - r + p - 1) --p;
    if (p == 0) return std::nullopt;
    ++idx[p - 1];
    for (std::size_t q = p; q < r; ++q) idx[q] = idx[q - 1] + 1;
  }
}

std::optional<ClassicalSunflower> find_classical_sunflower(const std::vector<Mask>& fam_in, std::size_t r) {
  std::vector<Mask> fam = fam_in;
  std::sort(fam.begin(), fam.end());
  fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  if (r == 0) return std::nullopt;
  if (r == 1) {
    if (fam.empty()) return std::nullopt;
    return ClassicalSunflower{{fam.front()}, fam.front()};
  }
  std::size_t budget = 200000;
  if (auto found = search(fam, r, budget)) {
    found->core = intersection_of(found->petals);
    return found;
  }
  if (fam.size() <= 12) return find_sunflower_brute(fam, r);
  return std::nullopt;
}

namespace {

std::optional<std::size_t> oversized_slice(const SetFamily& f, std::uint64_t r, std::size_t w) {
  for (std::size_t ell = 0; ell <= 2 * w; ++ell)
    if (f.slice_size(ell) > saturating_pow(r, ell)) return ell;
  return std::nullopt;
}

}  // namespace

PluckResult pluck(const SetFamily& fam, const Dist& d0, const Rational& eps, std::uint64_t r, std::size_t w,
                  const PluckOptions& opt) {
  if (fam.width() > 2 * w)
    throw PreconditionViolated("family width " + std::to_string(fam.width()) + " exceeds 2w = " + std::to_string(2 * w));
  PluckResult res;
  res.family = fam;
  res.total_measured_error = 0;
  for (std::size_t iter = 0;; ++iter) {
    const auto ell = oversized_slice(res.family, r, w);
    if (!ell) break;
    if (iter >= opt.max_iterations) throw SunflowerNotFound(*ell);
    const auto slice = res.family.slice(*ell);

    std::optional<SunflowerCert> chosen;
    std::string tier;
    // Tier 1: cores formed by pairwise intersections, with every slice member
    // containing the core as a petal.
    std::set<Mask> cores;
    for (std::size_t i = 0; i < slice.size(); ++i)
      for (std::size_t j = i + 1; j < slice.size(); ++j) cores.insert(slice[i] & slice[j]);
    std::vector<Mask> ordered(cores.begin(), cores.end());
    std::sort(ordered.begin(), ordered.end(), [](Mask a, Mask b) {
      return size_of(a) != size_of(b) ? size_of(a) > size_of(b) : a < b;
    });
    std::set<std::vector<Mask>> tried;
    for (Mask k : ordered) {
      std::vector<Mask> members;
      for (Mask s : slice)
        if ((k & ~s) == 0) members.push_back(s);
      if (members.size() < 2 || !tried.insert(members).second) continue;
      auto cert = is_sunflower(members, d0, eps, opt.prob);
      if (cert.accepted) {
        chosen = std::move(cert);
        tier = "core-scan";
        break;
      }
    }
    // Tier 2: classical sunflowers, most petals first.
    if (!chosen) {
      for (std::size_t p = std::min(slice.size(), opt.classical_max_petals); p >= 2 && !chosen; --p)
        if (auto cs = find_classical_sunflower(slice, p)) {
          auto cert = is_sunflower(cs->petals, d0, eps, opt.prob);
          if (cert.accepted) {
            chosen = std::move(cert);
            tier = "classical";
          }
        }
    }
    if (!chosen) throw SunflowerNotFound(*ell);

    const Mask k = chosen->core;
    const SetFamily before = res.family;
    res.family.retain([k](Mask s) { return (k & ~s) != 0; });
    res.family.insert(k);

    PluckStep step;
    step.slice = *ell;
    step.core = k;
    step.members = chosen->members.size();
    step.tier = tier;
    step.eps_est = chosen->prob.exact ? Rational(1 - chosen->prob.value).get_d() : 1.0 - chosen->prob.mc.ci.lo;
    if (opt.measure_error) {
      // The new DNF differs from the old one exactly where K ⊆ x and the old DNF is 0.
      auto rose = [&before, k](Mask x) { return (k & ~x) == 0 && !before.eval(x); };
      const auto p = probability(d0, rose, opt.prob.mode, opt.prob.trials, opt.prob.seed, 0x6300 + iter);
      step.measured_exact = p.exact;
      step.measured_error = p.value;
      step.measured_error_mc = p.point();
      if (p.exact)
        res.total_measured_error += p.value;
      else
        res.measured_exact = false;
    } else {
      res.measured_exact = false;
    }
    res.ledger.push_back(std::move(step));
  }
  if (!res.family.r_small(r) || res.family.width() > 2 * w) throw std::logic_error("pluck postcondition violated");
  return res;
}

}  // namespace monoforge::approx
