#pragma once

#include <cstddef>

namespace monoforge::stats {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion. z = 1.96 is ~95%.
Interval wilson(std::size_t successes, std::size_t trials, double z = 1.96);

/// Two-sided Hoeffding interval around successes/trials at failure
/// probability delta, clipped to [0, 1].
Interval hoeffding(std::size_t successes, std::size_t trials, double delta = 0.05);

}  // namespace monoforge::stats
