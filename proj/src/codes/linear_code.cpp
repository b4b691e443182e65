#include "monoforge/codes/linear_code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "monoforge/errors.hpp"
#include "monoforge/random.hpp"

namespace monoforge::codes {

LinearCodeF2::LinearCodeF2(BitMatrix gen) : gen_(std::move(gen)) {
  if (gen_.rank() != gen_.rows()) throw std::invalid_argument("generator rows are linearly dependent");
}

LinearCodeF2 LinearCodeF2::from_spanning_rows(const BitMatrix& rows) {
  return LinearCodeF2(BitMatrix::from_rows(linalg::row_echelon_basis(rows), rows.cols()));
}

BitMatrix LinearCodeF2::parity_check() const {
  return BitMatrix::from_rows(linalg::f2_rank_kernel(gen_).kernel, gen_.cols());
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Enumeration: return "enumeration";
    case Method::SyndromeSearch: return "syndrome-search";
    case Method::InformationSet: return "information-set";
  }
  return "?";
}

namespace {

using Words = std::vector<std::uint64_t>;

std::size_t weight(const Words& w) {
  std::size_t c = 0;
  for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

void xor_into(Words& acc, const Words& row) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= row[i];
}

void guard_dimension(std::size_t dim, const char* what) {
  if (dim > kEnumerationLog2Cap)
    throw EnumerationTooLarge(std::string(what) + " has 2^" + std::to_string(dim) + " words; cap is 2^" +
                              std::to_string(kEnumerationLog2Cap));
}

}  // namespace

std::size_t min_weight_enumerate_serial(const BitMatrix& rows) {
  const std::size_t r = rows.rows(), s = rows.cols();
  guard_dimension(r, "span");
  std::size_t best = s + 1;
  Words cur((s + 63) / 64, 0);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << r); ++i) {
    xor_into(cur, rows.row(static_cast<std::size_t>(std::countr_zero(i))).words());
    const std::size_t w = weight(cur);
    if (w > 0) best = std::min(best, w);
  }
  return best;
}

std::size_t min_weight_enumerate(const BitMatrix& rows) {
  const std::size_t r = rows.rows(), s = rows.cols();
  guard_dimension(r, "span");
  if (r == 0) return s + 1;
  // High `p` message bits select a shard; the low bits run a Gray code.
  const std::size_t p = std::min<std::size_t>(r, 6);
  const std::size_t low = r - p;
  const auto shards = static_cast<long long>(std::uint64_t{1} << p);
  std::size_t best = s + 1;
#pragma omp parallel for schedule(dynamic, 1) reduction(min : best)
  for (long long sh = 0; sh < shards; ++sh) {
    Words cur((s + 63) / 64, 0);
    for (std::size_t b = 0; b < p; ++b)
      if ((static_cast<std::uint64_t>(sh) >> b) & 1U) xor_into(cur, rows.row(low + b).words());
    std::size_t local = s + 1;
    if (const auto w = weight(cur); w > 0) local = w;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << low); ++i) {
      xor_into(cur, rows.row(static_cast<std::size_t>(std::countr_zero(i))).words());
      const std::size_t w = weight(cur);
      if (w > 0 && w < local) local = w;
    }
    best = std::min(best, local);
  }
  return best;
}

std::size_t min_dependent_columns(const BitMatrix& h) {
  const std::size_t rows = h.rows(), cols = h.cols();
  guard_dimension(rows, "syndrome space");
  std::vector<std::uint32_t> syn(cols, 0);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i)
      if (h.get(i, j)) syn[j] |= std::uint32_t{1} << i;
  if (std::find(syn.begin(), syn.end(), 0U) != syn.end()) return 1;
  {
    std::unordered_set<std::uint32_t> seen;
    for (auto x : syn)
      if (!seen.insert(x).second) return 2;
  }
  std::size_t best = cols + 1;
  const std::size_t space = std::size_t{1} << rows;
  std::vector<std::uint8_t> dist(space);
  std::vector<std::uint32_t> frontier, next;
  for (std::size_t j = 0; j < cols && best > 3; ++j) {
    // Fewest other columns summing to column j; a dependency of size 1 + that.
    std::fill(dist.begin(), dist.end(), 0xFF);
    dist[0] = 0;
    frontier.assign(1, 0);
    for (std::size_t depth = 0; !frontier.empty() && depth + 2 < best; ++depth) {
      next.clear();
      for (auto v : frontier)
        for (std::size_t c = 0; c < cols; ++c) {
          if (c == j) continue;
          const auto u = v ^ syn[c];
          if (dist[u] != 0xFF) continue;
          dist[u] = static_cast<std::uint8_t>(depth + 1);
          next.push_back(u);
        }
      if (dist[syn[j]] != 0xFF) break;
      frontier.swap(next);
    }
    if (dist[syn[j]] != 0xFF) best = std::min<std::size_t>(best, 1 + dist[syn[j]]);
  }
  return best;
}

std::size_t min_weight_information_set(const BitMatrix& gen, std::size_t rounds, std::uint64_t seed) {
  const std::size_t r = gen.rows(), s = gen.cols();
  Rng rng = make_rng(seed, 0x1500);
  std::size_t best = s + 1;
  for (std::size_t round = 0; round < rounds; ++round) {
    auto perm = random_tuple(rng, static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s));
    std::vector<BitVector> m;
    for (std::size_t i = 0; i < r; ++i) m.push_back(gen.row(i));
    std::size_t rank = 0;
    for (std::size_t k = 0; k < s && rank < r; ++k) {
      const std::size_t col = perm[k];
      std::size_t piv = rank;
      while (piv < r && !m[piv].get(col)) ++piv;
      if (piv == r) continue;
      std::swap(m[rank], m[piv]);
      for (std::size_t i = 0; i < r; ++i)
        if (i != rank && m[i].get(col)) m[i] ^= m[rank];
      ++rank;
    }
    for (std::size_t i = 0; i < rank; ++i) {
      best = std::min(best, m[i].popcount());
      for (std::size_t k = i + 1; k < rank; ++k) best = std::min(best, (m[i] ^ m[k]).popcount());
    }
  }
  return best;
}

std::vector<BitVector> enumerate_codewords(const BitMatrix& gen) {
  guard_dimension(gen.rows(), "code");
  std::vector<BitVector> out;
  const std::uint64_t total = std::uint64_t{1} << gen.rows();
  out.reserve(total);
  BitVector cur(gen.cols());
  out.push_back(cur);
  for (std::uint64_t i = 1; i < total; ++i) {
    cur ^= gen.row(static_cast<std::size_t>(std::countr_zero(i)));
    out.push_back(cur);
  }
  return out;
}

CodeStats code_stats(const LinearCodeF2& c, const StatsOptions& opt) {
  const std::size_t r = c.dimension(), s = c.length();
  CodeStats st;
  const BitMatrix h = c.parity_check();

  auto side = [&](const BitMatrix& gen_side, const BitMatrix& check_side, std::size_t& value, Method& method,
                  bool& exact, const char* label) {
    if (gen_side.rows() <= kEnumerationLog2Cap) {
      value = min_weight_enumerate(gen_side);
      method = Method::Enumeration;
    } else if (check_side.rows() <= kEnumerationLog2Cap) {
      value = min_dependent_columns(check_side);
      method = Method::SyndromeSearch;
    } else if (opt.allow_sampling) {
      value = min_weight_information_set(gen_side, opt.sampling_rounds, opt.seed);
      method = Method::InformationSet;
      exact = false;
    } else {
      throw EnumerationTooLarge(std::string(label) + " is beyond both exact routes");
    }
  };
  side(c.generator(), h, st.distance, st.distance_method, st.distance_exact, "distance");
  side(h, c.generator(), st.dual_distance, st.dual_method, st.dual_exact, "dual distance");
  if (r == 0) st.distance = s + 1;
  st.delta = 1 - make_rational(static_cast<long>(std::min(st.distance, s)), static_cast<long>(s == 0 ? 1 : s));
  return st;
}

UniformityResult t_wise_uniform(const std::vector<BitVector>& columns, std::size_t samples, std::size_t t) {
  UniformityResult res;
  const std::size_t s = columns.size();
  const std::size_t nw = (samples + 63) / 64;
  Words all(nw, ~std::uint64_t{0});
  if (samples % 64) all.back() = (std::uint64_t{1} << (samples % 64)) - 1;
  std::vector<std::size_t> chosen;

  std::function<bool(std::size_t, const std::vector<Words>&)> dfs = [&](std::size_t start,
                                                                        const std::vector<Words>& classes) {
    const std::size_t depth = chosen.size() + 1;
    for (std::size_t j = start; j < s; ++j) {
      const auto& col = columns[j].words();
      std::vector<Words> next;
      next.reserve(classes.size() * 2);
      for (const auto& cl : classes) {
        Words zero(nw), one(nw);
        for (std::size_t w = 0; w < nw; ++w) {
          one[w] = cl[w] & col[w];
          zero[w] = cl[w] & ~col[w];
        }
        next.push_back(std::move(zero));
        next.push_back(std::move(one));
      }
      chosen.push_back(j);
      for (std::size_t idx = 0; idx < next.size(); ++idx) {
        const std::uint64_t count = weight(next[idx]);
        const bool divisible = samples % (std::size_t{1} << depth) == 0;
        const std::uint64_t expected = samples >> depth;
        if (!divisible || count != expected) {
          res.uniform = false;
          res.failing_set = chosen;
          res.failing_pattern = 0;
          for (std::size_t p = 0; p < depth; ++p)
            if ((idx >> (depth - 1 - p)) & 1U) res.failing_pattern |= std::uint64_t{1} << p;
          res.observed = count;
          res.expected = expected;
          return false;
        }
      }
      if (depth < t && !dfs(j + 1, next)) return false;
      chosen.pop_back();
    }
    return true;
  };
  if (t > 0) dfs(0, {all});
  return res;
}

UniformityResult check_t_wise_independence(const LinearCodeF2& c, std::size_t t) {
  const auto words = enumerate_codewords(c.generator());
  std::vector<BitVector> columns(c.length(), BitVector(words.size()));
  for (std::size_t k = 0; k < words.size(); ++k)
    for (std::size_t j = 0; j < c.length(); ++j)
      if (words[k].get(j)) columns[j].set(k);
  return t_wise_uniform(columns, words.size(), t);
}

BoundValue thm43_bound(double n, double m, double d, double t, double b) {
  BoundValue v;
  v.applicable = 2 * n < d;
  v.value = std::pow(d / (n * std::sqrt(t)), std::sqrt(t) / (b * std::log2(m)));
  return v;
}

}  // namespace monoforge::codes
