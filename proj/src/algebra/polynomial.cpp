#include "monoforge/algebra/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

#include "monoforge/errors.hpp"

namespace monoforge::algebra {

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!factors_.empty() && factors_.back().first == v)
      factors_.back().second += e;
    else
      factors_.emplace_back(v, e);
  }
}

Monomial Monomial::variable(VarId v, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(v, exponent);
  return m;
}

std::uint32_t Monomial::degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint32_t Monomial::exponent_of(VarId v) const noexcept {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v, 0});
  return it != factors_.end() && it->first == v ? it->second : 0;
}

bool Monomial::is_multilinear() const noexcept {
  return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.second == 1; });
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->first < b->first) {
      out.factors_.push_back(*a++);
    } else if (b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.factors_.insert(out.factors_.end(), a, factors_.end());
  out.factors_.insert(out.factors_.end(), b, other.factors_.end());
  return out;
}

Monomial Monomial::pow(std::uint32_t e) const {
  if (e == 0) return {};
  Monomial out = *this;
  for (auto& f : out.factors_) f.second *= e;
  return out;
}

SparsePoly SparsePoly::constant(const Rational& c) {
  SparsePoly p;
  p.add_term(Monomial{}, c);
  return p;
}

SparsePoly SparsePoly::variable(VarId v) {
  SparsePoly p;
  p.terms_.emplace(Monomial::variable(v), Rational(1));
  return p;
}

void SparsePoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rational SparsePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t SparsePoly::degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool SparsePoly::is_monotone() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return sgn(t.second) > 0; });
}

std::set<VarId> SparsePoly::variables() const {
  std::set<VarId> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) vars.insert(f.first);
  return vars;
}

Rational SparsePoly::evaluate(const Assignment& at) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (const auto& [v, e] : m.factors()) {
      auto it = at.find(v);
      if (it == at.end()) throw MissingVariable(v);
      term *= pow(it->second, e);
    }
    sum += term;
  }
  return sum;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

SparsePoly SparsePoly::multiply(const SparsePoly& a, const SparsePoly& b, std::size_t term_cap) {
  SparsePoly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term(ma * mb, ca * cb);
      if (term_cap > 0 && out.terms_.size() > term_cap) throw TermBudgetExceeded(term_cap);
    }
  }
  return out;
}

bool poly_equal(const SparsePoly& p, const SparsePoly& q) { return p.terms() == q.terms(); }

VarPartition::VarPartition(std::vector<std::set<VarId>> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    for (VarId v : blocks_[i])
      if (!owner_.emplace(v, i).second)
        throw std::invalid_argument("variable " + std::to_string(v) + " appears in two blocks");
}

std::size_t VarPartition::block_of(VarId v) const {
  auto it = owner_.find(v);
  return it == owner_.end() ? blocks_.size() : it->second;
}

std::set<VarId> VarPartition::universe() const {
  std::set<VarId> all;
  for (const auto& [v, i] : owner_) all.insert(v);
  return all;
}

bool is_set_multilinear(const SparsePoly& p, const VarPartition& part) {
  std::vector<int> hits(part.size());
  for (const auto& [m, c] : p.terms()) {
    std::fill(hits.begin(), hits.end(), 0);
    for (const auto& [v, e] : m.factors()) {
      const std::size_t b = part.block_of(v);
      if (e != 1 || b == part.size() || ++hits[b] > 1) return false;
    }
    if (std::find(hits.begin(), hits.end(), 0) != hits.end()) return false;
  }
  return true;
}

}  // namespace monoforge::algebra
