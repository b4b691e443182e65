#include "monoforge/rank/distributions.hpp"

#include <bit>
#include <cmath>
#include <ostream>

#include "monoforge/errors.hpp"

namespace monoforge::rank {

std::string field_name(FieldTag f) { return f == FieldTag::F2 ? "F2" : "Q"; }
std::string log_base_name(LogBase b) { return b == LogBase::Two ? "log2" : "ln"; }

std::size_t ceil_log(std::size_t n, LogBase base) {
  if (n <= 1) return 0;
  if (base == LogBase::Two) return static_cast<std::size_t>(std::bit_width(n - 1));
  return static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n)) - 1e-12));
}

DistParams f2_params(std::size_t n, std::size_t m, std::size_t d, std::size_t t, std::optional<std::size_t> weight) {
  if (d == 0) throw std::invalid_argument("code distance must be positive");
  DistParams p;
  p.field = FieldTag::F2;
  p.n = n;
  p.m = m;
  p.d = d;
  p.t = t;
  p.weight = weight.value_or(n * ((m + d - 1) / d));
  p.weight_overridden = weight.has_value();
  return p;
}

DistParams real_params(std::size_t n, std::size_t m, std::size_t s, std::size_t k, std::optional<std::size_t> weight,
                       LogBase base) {
  DistParams p;
  p.field = FieldTag::Real;
  p.n = n;
  p.m = m;
  p.k = k ? k : default_k(m);
  p.s = s ? s : default_s(p.k);
  p.base = base;
  p.weight = weight.value_or(10 * n * ceil_log(n, base));
  p.weight_overridden = weight.has_value();
  return p;
}

namespace {

void check_length(std::size_t cols, const Bits& x) {
  if (x.size() != cols)
    throw std::invalid_argument("input has length " + std::to_string(x.size()) + ", expected " + std::to_string(cols));
}

std::vector<std::size_t> support(const Bits& x) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) s.push_back(i);
  return s;
}

}  // namespace

bool f_M_eval(const linalg::BitMatrix& m, const Bits& x) {
  check_length(m.cols(), x);
  if (m.rows() == 0) return true;
  return m.select_columns(support(x)).rank() == m.rows();
}

bool f_M_eval(const linalg::QMatrix& m, const Bits& x) {
  check_length(m.cols(), x);
  if (m.rows() == 0) return true;
  return linalg::rank(m.select_columns(support(x))) == m.rows();
}

bool f_M_eval(const RealMatrix01& m, const Bits& x) {
  check_length(m.m(), x);
  return full_row_rank(m, support(x));
}

Bits sample_D1(const DistParams& p, Rng& rng) {
  if (p.weight > p.m) throw WeightExceedsLength(p.weight, p.m);
  Bits a(p.m, 0);
  for (auto i : random_subset(rng, static_cast<std::uint32_t>(p.m), static_cast<std::uint32_t>(p.weight))) a[i] = 1;
  return a;
}

bool D0Sample::witness_zero() const {
  for (int v : u)
    if (v) return false;
  return true;
}

D0Sample sample_D0(const linalg::BitMatrix& m, Rng& rng) {
  D0Sample out;
  linalg::BitVector u(m.rows());
  out.u.resize(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out.u[i] = static_cast<int>(rng() & 1);
    u.set(i, out.u[i]);
  }
  const auto prod = m.combine_rows(u);  // uᵀM
  out.a.resize(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out.a[j] = !prod.get(j);
  return out;
}

D0Sample sample_D0(const RealMatrix01& m, Rng& rng) {
  D0Sample out;
  out.u.resize(m.n);
  for (auto& v : out.u) v = static_cast<int>(uniform_below(rng, 3)) - 1;
  out.a.resize(m.m());
  for (std::size_t j = 0; j < m.m(); ++j) {
    long long dot = 0;
    for (auto i : m.cols[j]) dot += out.u[i];
    out.a[j] = dot == 0;
  }
  return out;
}

std::string encode_witness(const std::vector<int>& u, FieldTag field) {
  std::string s;
  s.reserve(u.size());
  for (int v : u) s.push_back(field == FieldTag::F2 ? static_cast<char>('0' + v) : (v < 0 ? '-' : v > 0 ? '+' : '0'));
  return s;
}

void write_sample_csv_header(std::ostream& out) { out << "sample_id,weight,f_M,witness_u\n"; }

void write_sample_csv_row(std::ostream& out, std::size_t id, const Bits& a, bool f, const std::string& witness) {
  std::size_t w = 0;
  for (auto b : a) w += b;
  out << id << ',' << w << ',' << (f ? 1 : 0) << ',' << witness << '\n';
}

std::vector<SpreadRow> spreadness_exact(std::size_t m, std::size_t weight, std::size_t kmax) {
  if (weight > m) throw std::invalid_argument("weight exceeds length");
  if (kmax > weight) throw std::invalid_argument("kmax exceeds weight");
  std::vector<SpreadRow> rows;
  Rational prob = 1, bound = 1;
  const Rational ratio = make_rational(Integer(static_cast<unsigned long>(weight)), Integer(static_cast<unsigned long>(m)));
  for (std::size_t k = 0; k <= kmax; ++k) {
    rows.push_back({k, prob, bound, prob <= bound});
    if (k < kmax) {
      prob *= make_rational(Integer(static_cast<unsigned long>(weight - k)), Integer(static_cast<unsigned long>(m - k)));
      bound *= ratio;
    }
  }
  return rows;
}

D0IndependenceReport d0_f2_independence(const linalg::BitMatrix& m, std::size_t t) {
  const std::size_t n = m.rows(), cols = m.cols();
  if (n > 24) throw EnumerationTooLarge("witness space 2^" + std::to_string(n) + " exceeds 2^24");
  const std::size_t samples = std::size_t{1} << n;
  // Column j of the sample table is the indicator of ⟨M[j], u⟩ = 0 over all u.
  std::vector<linalg::BitVector> table(cols, linalg::BitVector(samples));
  std::vector<std::uint64_t> colmask(cols, 0);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (m.get(i, j)) colmask[j] |= std::uint64_t{1} << i;
  for (std::size_t u = 0; u < samples; ++u)
    for (std::size_t j = 0; j < cols; ++j)
      if (!(std::popcount(colmask[j] & u) & 1)) table[j].set(u);

  D0IndependenceReport rep;
  rep.uniformity = codes::t_wise_uniform(table, samples, t);

  const std::size_t max_size = std::min(t + 1, cols);
  std::vector<std::size_t> set;
  std::size_t budget = std::size_t{1} << 16;
  // Depth-first over subsets in lexicographic order, carrying the running AND.
  auto visit = [&](auto&& self, std::size_t start, const linalg::BitVector& acc) -> void {
    if (!rep.kernel_identity || budget == 0) return;
    if (!set.empty()) {
      --budget;
      ++rep.sets_checked;
      const std::size_t r = m.select_columns(set).rank();
      if (acc.popcount() != (std::size_t{1} << (n - r))) {
        rep.kernel_identity = false;
        rep.kernel_failure = set;
        return;
      }
    }
    if (set.size() == max_size) return;
    for (std::size_t j = start; j < cols; ++j) {
      linalg::BitVector next = acc;
      auto& w = next.words();
      const auto& cw = table[j].words();
      for (std::size_t q = 0; q < w.size(); ++q) w[q] &= cw[q];
      set.push_back(j);
      self(self, j + 1, next);
      set.pop_back();
      if (!rep.kernel_identity || budget == 0) return;
    }
  };
  linalg::BitVector all(samples);
  for (std::size_t u = 0; u < samples; ++u) all.set(u);
  visit(visit, 0, all);
  return rep;
}

Rational D0SoundnessReport::acceptance() const {
  return make_rational(Integer(static_cast<unsigned long>(accepted)), Integer(static_cast<unsigned long>(points)));
}

namespace {

std::uint64_t pow3(std::size_t n) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= 3;
  return p;
}

// Decodes witness index idx as base-3 digits minus one and reports whether f_M accepts.
bool accepts_witness(const RealMatrix01& m, std::uint64_t idx, std::vector<int>& u, std::vector<std::size_t>& sel) {
  for (auto& v : u) {
    v = static_cast<int>(idx % 3) - 1;
    idx /= 3;
  }
  sel.clear();
  for (std::size_t j = 0; j < m.m(); ++j) {
    long long dot = 0;
    for (auto i : m.cols[j]) dot += u[i];
    if (dot == 0) sel.push_back(j);
  }
  return full_row_rank(m, sel);
}

void check_soundness_size(const RealMatrix01& m) {
  if (m.n > 12) throw EnumerationTooLarge("witness space 3^" + std::to_string(m.n) + " exceeds 3^12");
}

// Index of the zero witness in the base-3 encoding.
std::uint64_t zero_index(std::size_t n) { return (pow3(n) - 1) / 2; }

}  // namespace

D0SoundnessReport d0_real_soundness(const RealMatrix01& m) {
  check_soundness_size(m);
  D0SoundnessReport rep;
  rep.points = pow3(m.n);
  const std::uint64_t zero = zero_index(m.n);
  std::uint64_t accepted = 0, accepted_nonzero = 0;
  bool zero_accepted = false;
  const auto total = static_cast<long long>(rep.points);
#pragma omp parallel reduction(+ : accepted, accepted_nonzero)
  {
    std::vector<int> u(m.n);
    std::vector<std::size_t> sel;
#pragma omp for schedule(dynamic, 64)
    for (long long idx = 0; idx < total; ++idx) {
      if (!accepts_witness(m, static_cast<std::uint64_t>(idx), u, sel)) continue;
      ++accepted;
      if (static_cast<std::uint64_t>(idx) != zero) ++accepted_nonzero;
    }
  }
  rep.accepted = accepted;
  rep.accepted_nonzero = accepted_nonzero;
  {
    std::vector<int> u(m.n);
    std::vector<std::size_t> sel;
    zero_accepted = accepts_witness(m, zero, u, sel);
  }
  rep.full_rank = zero_accepted;
  return rep;
}

D0SoundnessReport d0_real_soundness_serial(const RealMatrix01& m) {
  check_soundness_size(m);
  D0SoundnessReport rep;
  rep.points = pow3(m.n);
  const std::uint64_t zero = zero_index(m.n);
  std::vector<int> u(m.n);
  std::vector<std::size_t> sel;
  for (std::uint64_t idx = 0; idx < rep.points; ++idx) {
    if (!accepts_witness(m, idx, u, sel)) continue;
    ++rep.accepted;
    if (idx == zero)
      rep.full_rank = true;
    else
      ++rep.accepted_nonzero;
  }
  return rep;
}

WeightDeficit weight_deficit(const RealMatrix01& m) {
  WeightDeficit w;
  for (const auto& c : m.cols)
    if (2 * c.size() < m.s) ++w.light_columns;
  w.fraction = m.m() ? static_cast<double>(w.light_columns) / static_cast<double>(m.m()) : 0.0;
  const double n = static_cast<double>(m.n);
  w.union_bound = n > 1 ? std::pow(n, 1.0 - 0.2 * static_cast<double>(m.s)) : 1.0;
  w.meaningful = w.union_bound < 1.0;
  return w;
}

}  // namespace monoforge::rank
