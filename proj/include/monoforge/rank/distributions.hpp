#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "monoforge/algebra/rational.hpp"
#include "monoforge/codes/linear_code.hpp"
#include "monoforge/linalg/bitmatrix.hpp"
#include "monoforge/linalg/qmatrix.hpp"
#include "monoforge/random.hpp"
#include "monoforge/rank/real_matrix.hpp"

namespace monoforge::rank {

using Bits = std::vector<std::uint8_t>;

enum class FieldTag { F2, Real };
enum class LogBase { Two, Natural };

std::string field_name(FieldTag f);
std::string log_base_name(LogBase b);
/// ⌈log n⌉ in the chosen base (0 for n ≤ 1).
std::size_t ceil_log(std::size_t n, LogBase base);

struct DistParams {
  FieldTag field = FieldTag::F2;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t weight = 0;  // Hamming weight of the "yes" distribution
  bool weight_overridden = false;
  std::size_t d = 0, t = 0;  // code parameters (𝔽₂)
  std::size_t s = 0, k = 0;  // sparsity parameters (real)
  LogBase base = LogBase::Two;
};

/// Weight n·⌈m/d⌉.
DistParams f2_params(std::size_t n, std::size_t m, std::size_t d, std::size_t t,
                     std::optional<std::size_t> weight = std::nullopt);
/// Weight 10·n·⌈log n⌉; k and s as recorded on the matrix (or defaults when 0).
DistParams real_params(std::size_t n, std::size_t m, std::size_t s, std::size_t k,
                       std::optional<std::size_t> weight = std::nullopt, LogBase base = LogBase::Two);

/// [rank(M[S]) = rows], S = supp(x). Throws invalid_argument if |x| ≠ cols.
bool f_M_eval(const linalg::BitMatrix& m, const Bits& x);
bool f_M_eval(const linalg::QMatrix& m, const Bits& x);
bool f_M_eval(const RealMatrix01& m, const Bits& x);

/// Uniform over strings of weight exactly params.weight. WeightExceedsLength if weight > m.
Bits sample_D1(const DistParams& params, Rng& rng);

struct D0Sample {
  Bits a;
  std::vector<int> u;  // witness: {0,1} over 𝔽₂, {-1,0,1} over ℚ
  bool witness_zero() const;
};

/// a_j = [⟨column j, u⟩ = 0] for u uniform in 𝔽₂ⁿ.
D0Sample sample_D0(const linalg::BitMatrix& m, Rng& rng);
/// Same with u uniform in {-1,0,1}ⁿ and the inner product over ℚ.
D0Sample sample_D0(const RealMatrix01& m, Rng& rng);

/// 'u' encoding for sample dumps: 𝔽₂ as 0/1, real as '-', '0', '+'.
std::string encode_witness(const std::vector<int>& u, FieldTag field);
void write_sample_csv_header(std::ostream& out);
void write_sample_csv_row(std::ostream& out, std::size_t id, const Bits& a, bool f, const std::string& witness);

struct SpreadRow {
  std::size_t k = 0;
  Rational probability;  // Pr[a fixed k-set is all selected]
  Rational bound;        // (W/m)^k
  bool holds = false;
};

/// Exact hypergeometric table for k = 0..kmax. invalid_argument unless W ≤ m and kmax ≤ W.
std::vector<SpreadRow> spreadness_exact(std::size_t m, std::size_t weight, std::size_t kmax);

struct D0IndependenceReport {
  codes::UniformityResult uniformity;
  bool kernel_identity = true;  // #{u : a_S = 1} = 2^{n - rank(M[S])} for every checked S
  std::size_t sets_checked = 0;
  std::vector<std::size_t> kernel_failure;  // first S where the identity breaks
};

/// Enumerates all u ∈ 𝔽₂ⁿ (n ≤ 24) and checks that every ≤ t coordinates of a
/// are uniform and independent, plus the kernel-count identity for |S| ≤ t+1
/// while the number of sets stays under 2^16.
D0IndependenceReport d0_f2_independence(const linalg::BitMatrix& m, std::size_t t);

struct D0SoundnessReport {
  std::uint64_t points = 0;            // 3ⁿ
  std::uint64_t accepted = 0;          // witnesses with f_M(a) = 1
  std::uint64_t accepted_nonzero = 0;  // must be 0
  bool full_rank = false;              // f_M(all ones)
  bool sound() const noexcept { return accepted_nonzero == 0; }
  Rational acceptance() const;         // accepted / 3ⁿ
};

/// Exhaustive sweep of u ∈ {-1,0,1}ⁿ (n ≤ 12).
D0SoundnessReport d0_real_soundness(const RealMatrix01& m);
D0SoundnessReport d0_real_soundness_serial(const RealMatrix01& m);

struct WeightDeficit {
  std::size_t light_columns = 0;  // weight < s/2
  double fraction = 0;
  double union_bound = 0;  // n / n^{0.2 s}
  bool meaningful = false; // union bound < 1
};
WeightDeficit weight_deficit(const RealMatrix01& m);

}  // namespace monoforge::rank
