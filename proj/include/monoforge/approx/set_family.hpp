#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

namespace monoforge::approx {

using Mask = std::uint64_t;

/// Family of subsets of {0..n-1} (n ≤ 64), each stored as a bit mask. Kept
/// deduplicated and ordered by (size, mask).
class SetFamily {
 public:
  SetFamily() = default;
  explicit SetFamily(std::size_t n, std::vector<Mask> sets = {});

  std::size_t n() const noexcept { return n_; }
  const std::vector<Mask>& sets() const noexcept { return sets_; }
  std::size_t size() const noexcept { return sets_.size(); }
  bool empty() const noexcept { return sets_.empty(); }

  void insert(Mask s);
  void insert_all(const SetFamily& o);
  /// Keeps sets for which keep(s) is true.
  template <class Pred>
  void retain(Pred&& keep) {
    std::vector<Mask> out;
    for (Mask s : sets_)
      if (keep(s)) out.push_back(s);
    sets_ = std::move(out);
  }

  /// Drops every set that strictly contains another member (same DNF).
  void absorb();

  std::size_t width() const noexcept;
  /// Sets of size exactly ℓ.
  std::vector<Mask> slice(std::size_t ell) const;
  std::size_t slice_size(std::size_t ell) const;
  /// |{S : |S| = ℓ}| ≤ r^ℓ for every ℓ.
  bool r_small(std::uint64_t r) const;
  /// OR over members of AND over their elements; ⌈∅⌉ is true.
  bool eval(Mask x) const noexcept;

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  void normalize();
  std::size_t n_ = 0;
  std::vector<Mask> sets_;
};

bool dnf_eval(const SetFamily& fam, const std::vector<std::uint8_t>& x);

/// r^ℓ saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t r, std::size_t ell);

std::vector<std::size_t> mask_elements(Mask m);
Mask mask_of(const std::vector<std::size_t>& elems);

/// {"n": n, "sets": [[i, ...], ...]} with 0-based elements.
nlohmann::ordered_json family_to_json(const SetFamily& f);
SetFamily family_from_json(const nlohmann::ordered_json& j);

}  // namespace monoforge::approx
