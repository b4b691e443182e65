#include "monoforge/approx/set_family.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "monoforge/errors.hpp"

namespace monoforge::approx {

namespace {
bool by_size(Mask a, Mask b) {
  const int pa = std::popcount(a), pb = std::popcount(b);
  return pa != pb ? pa < pb : a < b;
}
}  // namespace

SetFamily::SetFamily(std::size_t n, std::vector<Mask> sets) : n_(n), sets_(std::move(sets)) {
  if (n > 64) throw std::invalid_argument("ground set larger than 64");
  const Mask allowed = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  for (Mask s : sets_)
    if (s & ~allowed) throw std::invalid_argument("set element outside the ground set");
  normalize();
}

void SetFamily::normalize() {
  std::sort(sets_.begin(), sets_.end(), by_size);
  sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
}

void SetFamily::insert(Mask s) {
  auto it = std::lower_bound(sets_.begin(), sets_.end(), s, by_size);
  if (it == sets_.end() || *it != s) sets_.insert(it, s);
}

void SetFamily::insert_all(const SetFamily& o) {
  sets_.insert(sets_.end(), o.sets_.begin(), o.sets_.end());
  normalize();
}

void SetFamily::absorb() {
  // Sets are ordered by size, so any subset of a member appears before it.
  std::vector<Mask> kept;
  for (Mask s : sets_) {
    bool absorbed = false;
    for (Mask k : kept)
      if ((k & ~s) == 0) {
        absorbed = true;
        break;
      }
    if (!absorbed) kept.push_back(s);
  }
  sets_ = std::move(kept);
}

std::size_t SetFamily::width() const noexcept {
  return sets_.empty() ? 0 : static_cast<std::size_t>(std::popcount(sets_.back()));
}

std::vector<Mask> SetFamily::slice(std::size_t ell) const {
  std::vector<Mask> out;
  for (Mask s : sets_)
    if (static_cast<std::size_t>(std::popcount(s)) == ell) out.push_back(s);
  return out;
}

std::size_t SetFamily::slice_size(std::size_t ell) const {
  std::size_t c = 0;
  for (Mask s : sets_) c += static_cast<std::size_t>(std::popcount(s)) == ell;
  return c;
}

std::uint64_t saturating_pow(std::uint64_t r, std::size_t ell) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < ell; ++i) {
    if (r != 0 && p > UINT64_MAX / r) return UINT64_MAX;
    p *= r;
  }
  return p;
}

bool SetFamily::r_small(std::uint64_t r) const {
  for (std::size_t ell = 0; ell <= width(); ++ell)
    if (slice_size(ell) > saturating_pow(r, ell)) return false;
  return true;
}

bool SetFamily::eval(Mask x) const noexcept {
  for (Mask s : sets_)
    if ((s & ~x) == 0) return true;
  return false;
}

bool dnf_eval(const SetFamily& fam, const std::vector<std::uint8_t>& x) {
  if (x.size() != fam.n()) throw std::invalid_argument("input length differs from the ground set");
  Mask m = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) m |= Mask{1} << i;
  return fam.eval(m);
}

std::vector<std::size_t> mask_elements(Mask m) {
  std::vector<std::size_t> out;
  while (m) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

Mask mask_of(const std::vector<std::size_t>& elems) {
  Mask m = 0;
  for (auto e : elems) {
    if (e >= 64) throw std::invalid_argument("element exceeds 63");
    m |= Mask{1} << e;
  }
  return m;
}

nlohmann::ordered_json family_to_json(const SetFamily& f) {
  nlohmann::ordered_json j;
  j["n"] = f.n();
  j["sets"] = nlohmann::ordered_json::array();
  for (Mask s : f.sets()) j["sets"].push_back(mask_elements(s));
  return j;
}

SetFamily family_from_json(const nlohmann::ordered_json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Mask> sets;
    for (const auto& s : j.at("sets")) {
      Mask m = 0;
      for (const auto& e : s) {
        const auto v = e.get<long long>();
        if (v < 0 || static_cast<std::size_t>(v) >= n) throw ParseError("set element out of range");
        m |= Mask{1} << v;
      }
      sets.push_back(m);
    }
    return SetFamily(n, std::move(sets));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("set family: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("set family: ") + e.what());
  }
}

}  // namespace monoforge::approx
