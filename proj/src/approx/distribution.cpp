#include "monoforge/approx/distribution.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "monoforge/errors.hpp"
#include "monoforge/parallel.hpp"

namespace monoforge::approx {

namespace {

Mask low_bits(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

void check_n(std::size_t n) {
  if (n > 64) throw std::invalid_argument("distributions are limited to 64 coordinates");
}

Integer binomial(std::size_t n, std::size_t k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace

const std::vector<Mask>& Dist::points() const {
  if (!exact_) throw std::invalid_argument("distribution '" + name_ + "' has no exact support");
  return points_;
}
const std::vector<Integer>& Dist::weights() const {
  if (!exact_) throw std::invalid_argument("distribution '" + name_ + "' has no exact support");
  return weights_;
}
const Integer& Dist::denominator() const {
  if (!exact_) throw std::invalid_argument("distribution '" + name_ + "' has no exact support");
  return denom_;
}

Rational Dist::probability_of(Mask x) const {
  const auto& pts = points();
  auto it = std::lower_bound(pts.begin(), pts.end(), x);
  if (it == pts.end() || *it != x) return 0;
  return make_rational(weights_[static_cast<std::size_t>(it - pts.begin())], denom_);
}

void Dist::set_exact(std::vector<std::pair<Mask, Integer>> pts, Integer denom) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  points_.clear();
  weights_.clear();
  for (auto& [m, w] : pts) {
    if (w == 0) continue;
    if (!points_.empty() && points_.back() == m)
      weights_.back() += w;
    else
      points_.push_back(m), weights_.push_back(std::move(w));
  }
  denom_ = std::move(denom);
  exact_ = true;
  cumulative_.reset();
}

void Dist::build_cumulative() {
  auto cum = std::make_shared<std::vector<Integer>>();
  Integer acc = 0;
  for (const auto& w : weights_) {
    acc += w;
    cum->push_back(acc);
  }
  cumulative_ = std::move(cum);
}

Mask Dist::sample(Rng& rng) const {
  if (sampler_) return sampler_(rng);
  if (!exact_) throw std::logic_error("distribution has neither sampler nor support");
  const Integer x = rank::uniform_below_big(rng, denom_);
  const auto& cum = *cumulative_;
  return points_[static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), x) - cum.begin())];
}

Dist Dist::explicit_points(std::size_t n, const std::vector<Mask>& points, const std::vector<Rational>& weights,
                           std::string name) {
  check_n(n);
  if (points.size() != weights.size() || points.empty())
    throw std::invalid_argument("explicit distribution needs one weight per point");
  Integer denom = 1;
  Rational total = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weights[i] < 0) throw std::invalid_argument("negative weight");
    if (points[i] & ~low_bits(n)) throw std::invalid_argument("point outside {0,1}^n");
    total += weights[i];
    mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), weights[i].get_den_mpz_t());
  }
  if (total != 1) throw std::invalid_argument("weights must sum to 1, got " + to_fraction_string(total));
  std::vector<std::pair<Mask, Integer>> pts;
  for (std::size_t i = 0; i < points.size(); ++i)
    pts.emplace_back(points[i], Integer(weights[i].get_num() * (denom / weights[i].get_den())));
  Dist d;
  d.n_ = n;
  d.name_ = std::move(name);
  d.set_exact(std::move(pts), denom);
  d.build_cumulative();
  return d;
}

Dist Dist::uniform(std::size_t n) {
  check_n(n);
  Dist d;
  d.n_ = n;
  d.name_ = "uniform";
  const Mask lim = low_bits(n);
  d.sampler_ = [lim](Rng& rng) { return static_cast<Mask>(rng()) & lim; };
  if ((std::size_t{1} << std::min<std::size_t>(n, 63)) <= kExactCap) {
    std::vector<std::pair<Mask, Integer>> pts;
    for (Mask x = 0; x <= lim; ++x) pts.emplace_back(x, Integer(1));
    d.set_exact(std::move(pts), Integer(static_cast<unsigned long>(lim) + 1));
  }
  return d;
}

Dist Dist::uniform_weight(std::size_t n, std::size_t weight) {
  check_n(n);
  if (weight > n) throw WeightExceedsLength(weight, n);
  Dist d;
  d.n_ = n;
  d.name_ = "uniform-weight-" + std::to_string(weight);
  d.sampler_ = [n, weight](Rng& rng) {
    Mask x = 0;
    for (auto i : random_subset(rng, static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(weight)))
      x |= Mask{1} << i;
    return x;
  };
  const Integer count = binomial(n, weight);
  if (count <= static_cast<unsigned long>(kExactCap)) {
    std::vector<std::pair<Mask, Integer>> pts;
    if (weight == 0) {
      pts.emplace_back(0, Integer(1));
    } else {
      // Gosper's hack walks all weight-W masks in increasing order.
      Mask x = low_bits(weight);
      const Mask lim = low_bits(n);
      while (true) {
        pts.emplace_back(x, Integer(1));
        const Mask c = x & (~x + 1), r = x + c;
        if (r == 0 || (r & ~lim)) break;
        x = (((r ^ x) >> 2) / c) | r;
        if (x & ~lim) break;
      }
    }
    d.set_exact(std::move(pts), count);
  }
  return d;
}

Dist Dist::point_mass(std::size_t n, Mask x) {
  return explicit_points(n, {x}, {Rational(1)}, "point-mass");
}

Dist Dist::d0_f2(const linalg::BitMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  check_n(cols);
  std::vector<linalg::BitVector> colv;
  for (std::size_t j = 0; j < cols; ++j) colv.push_back(m.column(j));
  auto witness = [colv, rows, cols](const linalg::BitVector& u) {
    Mask a = 0;
    for (std::size_t j = 0; j < cols; ++j)
      if (!colv[j].dot(u)) a |= Mask{1} << j;
    return a;
  };
  Dist d;
  d.n_ = cols;
  d.name_ = "d0-f2";
  d.sampler_ = [witness, rows](Rng& rng) {
    linalg::BitVector u(rows);
    for (std::size_t i = 0; i < rows; ++i) u.set(i, rng() & 1);
    return witness(u);
  };
  if (rows <= 20) {
    std::map<Mask, Integer> agg;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << rows); ++idx)
      agg[witness(linalg::BitVector::from_mask(idx, rows))] += 1;
    d.set_exact({agg.begin(), agg.end()}, Integer(1) << static_cast<unsigned>(rows));
  }
  return d;
}

Dist Dist::d0_real(const rank::RealMatrix01& m) {
  check_n(m.m());
  const auto cols = m.cols;
  auto witness = [cols](const std::vector<int>& u) {
    Mask a = 0;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      long long dot = 0;
      for (auto i : cols[j]) dot += u[i];
      if (dot == 0) a |= Mask{1} << j;
    }
    return a;
  };
  Dist d;
  d.n_ = m.m();
  d.name_ = "d0-real";
  const std::size_t n = m.n;
  d.sampler_ = [witness, n](Rng& rng) {
    std::vector<int> u(n);
    for (auto& v : u) v = static_cast<int>(uniform_below(rng, 3)) - 1;
    return witness(u);
  };
  if (n <= 12) {
    std::map<Mask, Integer> agg;
    std::vector<int> u(n, -1);
    Integer total = 0;
    while (true) {
      agg[witness(u)] += 1;
      total += 1;
      std::size_t q = 0;
      while (q < n && u[q] == 1) u[q++] = -1;
      if (q == n) break;
      ++u[q];
    }
    d.set_exact({agg.begin(), agg.end()}, total);
  }
  return d;
}

Dist Dist::mixture(const Dist& a, const Dist& b, const Rational& wa) {
  if (a.n_ != b.n_) throw std::invalid_argument("mixture components differ in length");
  if (wa < 0 || wa > 1) throw std::invalid_argument("mixture weight outside [0,1]");
  Dist d;
  d.n_ = a.n_;
  d.name_ = "mix(" + a.name_ + "," + b.name_ + ")";
  const Integer p = wa.get_num(), q = wa.get_den();
  d.sampler_ = [a, b, p, q](Rng& rng) { return rank::uniform_below_big(rng, q) < p ? a.sample(rng) : b.sample(rng); };
  if (a.exact_ && b.exact_) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.denom_.get_mpz_t(), b.denom_.get_mpz_t());
    const Integer fa = p * (l / a.denom_), fb = (q - p) * (l / b.denom_);
    std::vector<std::pair<Mask, Integer>> pts;
    for (std::size_t i = 0; i < a.points_.size(); ++i) pts.emplace_back(a.points_[i], Integer(a.weights_[i] * fa));
    for (std::size_t i = 0; i < b.points_.size(); ++i) pts.emplace_back(b.points_[i], Integer(b.weights_[i] * fb));
    d.set_exact(std::move(pts), Integer(q * l));
  }
  return d;
}

Dist Dist::conditioned(const std::function<bool(Mask)>& keep, std::string name) const {
  Dist d;
  d.n_ = n_;
  d.name_ = std::move(name);
  const Dist parent = *this;
  d.sampler_ = [parent, keep](Rng& rng) {
    for (int tries = 0; tries < 1000000; ++tries) {
      const Mask x = parent.sample(rng);
      if (keep(x)) return x;
    }
    throw PreconditionViolated("conditioning event has negligible probability");
  };
  if (exact_) {
    std::vector<std::pair<Mask, Integer>> pts;
    Integer total = 0;
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (keep(points_[i])) {
        pts.emplace_back(points_[i], weights_[i]);
        total += weights_[i];
      }
    if (total == 0) throw PreconditionViolated("conditioning on a probability-zero event");
    d.set_exact(std::move(pts), total);
  }
  return d;
}

Rational prob_exact(const Dist& d, const std::function<bool(Mask)>& pred) {
  const auto& pts = d.points();
  const auto& w = d.weights();
  Integer total = 0;
  const auto count = static_cast<long long>(pts.size());
#pragma omp parallel
  {
    Integer local = 0;
#pragma omp for schedule(static)
    for (long long i = 0; i < count; ++i)
      if (pred(pts[static_cast<std::size_t>(i)])) local += w[static_cast<std::size_t>(i)];
    // Integer addition is exact, so the merge order does not matter.
#pragma omp critical(monoforge_prob_exact)
    total += local;
  }
  return make_rational(total, d.denominator());
}

Rational prob_exact_serial(const Dist& d, const std::function<bool(Mask)>& pred) {
  const auto& pts = d.points();
  const auto& w = d.weights();
  Integer total = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pred(pts[i])) total += w[i];
  return make_rational(total, d.denominator());
}

namespace {
struct Hits {
  std::size_t hits = 0;
  Hits& operator+=(const Hits& o) {
    hits += o.hits;
    return *this;
  }
};
}  // namespace

McEstimate prob_mc(const Dist& d, const std::function<bool(Mask)>& pred, std::size_t trials, std::uint64_t seed,
                   std::uint64_t stream) {
  const Hits h = par::sharded_trials<Hits>(seed, stream, trials, [&](Rng& rng, std::size_t count, Hits& t) {
    for (std::size_t r = 0; r < count; ++r) t.hits += pred(d.sample(rng));
  });
  McEstimate e;
  e.hits = h.hits;
  e.trials = trials;
  e.ci = stats::wilson(h.hits, trials);
  return e;
}

double Probability::lower() const { return exact ? value.get_d() : mc.ci.lo; }
double Probability::upper() const { return exact ? value.get_d() : mc.ci.hi; }
double Probability::point() const { return value.get_d(); }

Probability probability(const Dist& d, const std::function<bool(Mask)>& pred, ProbMode mode, std::size_t trials,
                        std::uint64_t seed, std::uint64_t stream) {
  Probability p;
  const bool exact = mode == ProbMode::Exact || (mode == ProbMode::Auto && d.exact_capable());
  if (exact) {
    p.exact = true;
    p.value = prob_exact(d, pred);
  } else {
    if (trials == 0) throw std::invalid_argument("Monte Carlo needs at least one trial");
    p.mc = prob_mc(d, pred, trials, seed, stream);
    p.value = make_rational(Integer(static_cast<unsigned long>(p.mc.hits)), Integer(static_cast<unsigned long>(trials)));
  }
  return p;
}

}  // namespace monoforge::approx
