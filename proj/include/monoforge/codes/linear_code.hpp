#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monoforge/algebra/rational.hpp"
#include "monoforge/linalg/bitmatrix.hpp"

namespace monoforge::codes {

using linalg::BitMatrix;
using linalg::BitVector;

inline constexpr unsigned kEnumerationLog2Cap = 24;

/// Binary linear code given by a full-row-rank generator.
class LinearCodeF2 {
 public:
  /// Throws std::invalid_argument unless gen has full row rank.
  explicit LinearCodeF2(BitMatrix gen);
  /// Keeps a row basis of the span of the given rows.
  static LinearCodeF2 from_spanning_rows(const BitMatrix& rows);

  const BitMatrix& generator() const noexcept { return gen_; }
  std::size_t dimension() const noexcept { return gen_.rows(); }
  std::size_t length() const noexcept { return gen_.cols(); }
  /// Generator of the dual code (a kernel basis of the generator).
  BitMatrix parity_check() const;

 private:
  BitMatrix gen_;
};

enum class Method { Enumeration, SyndromeSearch, InformationSet };
std::string method_name(Method m);

struct CodeStats {
  std::size_t distance = 0;
  std::size_t dual_distance = 0;
  Rational delta;  // 1 − distance/length
  Method distance_method = Method::Enumeration;
  Method dual_method = Method::Enumeration;
  /// False when a value is an information-set estimate, which can only
  /// overestimate the true minimum weight.
  bool distance_exact = true;
  bool dual_exact = true;

  bool well_behaved(std::size_t d, std::size_t t) const noexcept { return distance > d && dual_distance > t; }
};

struct StatsOptions {
  bool allow_sampling = false;  // information-set fallback when exact routes are too large
  std::size_t sampling_rounds = 2000;
  std::uint64_t seed = 0;
};

/// Exact distance and dual distance. For each side, enumeration is used when
/// the code has at most 2^24 words, otherwise the minimum dependent column
/// set of the other side's generator is found by syndrome search (at most
/// 2^24 syndromes). Throws EnumerationTooLarge when neither route fits and
/// sampling is not allowed. The dual of a code with dimension == length is
/// empty; its distance is reported as length + 1.
CodeStats code_stats(const LinearCodeF2& c, const StatsOptions& opt = {});

/// Minimum weight of a nonzero word in the row span by Gray-code enumeration.
/// Returns length + 1 for a zero-dimensional span. Rows must be independent
/// for the count to be exact; dependent rows only repeat words.
std::size_t min_weight_enumerate(const BitMatrix& rows);
std::size_t min_weight_enumerate_serial(const BitMatrix& rows);

/// Size of the smallest linearly dependent set of columns of h (the minimum
/// weight of a nonzero x with h·x = 0), or cols + 1 if the columns are
/// independent. Uses BFS over the 2^rows syndrome space.
std::size_t min_dependent_columns(const BitMatrix& h);

/// Upper bound on the minimum weight via randomized systematic forms.
std::size_t min_weight_information_set(const BitMatrix& gen, std::size_t rounds, std::uint64_t seed);

/// Every word of the row span, in Gray-code order of the message. 2^rows words.
std::vector<BitVector> enumerate_codewords(const BitMatrix& gen);

struct UniformityResult {
  bool uniform = true;
  std::vector<std::size_t> failing_set;  // coordinates I where some pattern is off
  std::uint64_t failing_pattern = 0;     // bit k is the value on failing_set[k]
  std::uint64_t observed = 0, expected = 0;
};

/// Given the sample matrix column by column (column j lists coordinate j over
/// all N samples as an N-bit vector), checks that for every I with |I| <= t
/// and every pattern b, exactly N / 2^|I| samples match b on I.
UniformityResult t_wise_uniform(const std::vector<BitVector>& columns, std::size_t samples, std::size_t t);

/// Exhaustive check over all 2^dim codewords that every <= t coordinates are
/// uniform. Throws EnumerationTooLarge beyond 2^24 words.
UniformityResult check_t_wise_independence(const LinearCodeF2& c, std::size_t t);

struct BoundValue {
  double value = 0;
  bool applicable = true;  // 2n < d
};

/// (d/(n·√t))^{√t/(b·log2 m)} with the leading constant set to 1.
BoundValue thm43_bound(double n, double m, double d, double t, double b = 10);

}  // namespace monoforge::codes
