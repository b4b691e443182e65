#include <algorithm>
#include <cmath>

#include "monoforge/parallel.hpp"
#include "monoforge/stats.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace monoforge::par {

void set_threads(int n) {
#ifdef _OPENMP
  if (n >= 1) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace monoforge::par

namespace monoforge::stats {

Interval wilson(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Interval hoeffding(std::size_t successes, std::size_t trials, double delta) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double half = std::sqrt(std::log(2.0 / delta) / (2.0 * n));
  return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

}  // namespace monoforge::stats
