#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

#include "monoforge/random.hpp"

namespace monoforge::par {

/// Sets the OpenMP team size used by every parallel kernel. Values < 1 are
/// ignored. Thread count never changes results, only speed.
void set_threads(int n);
int max_threads();

inline constexpr std::size_t kDefaultShards = 64;

/// Splits `trials` Monte Carlo draws over a fixed number of shards. Shard i
/// draws from stream `stream_base + i` of `seed` and tallies into its own
/// accumulator; accumulators are merged with `+=` in shard order. The result
/// is therefore identical for any thread count.
///
/// Body: void(Rng&, std::size_t count, Tally&).
template <class Tally, class Body>
Tally sharded_trials(std::uint64_t seed, std::uint64_t stream_base, std::size_t trials, Body&& body,
                     std::size_t shards = kDefaultShards) {
  if (shards == 0) shards = 1;
  std::vector<Tally> partial(shards);
  std::vector<std::exception_ptr> failure(shards);
  const auto n_shards = static_cast<long long>(shards);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long s = 0; s < n_shards; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    const std::size_t count = trials / shards + (idx < trials % shards ? 1 : 0);
    Rng rng = make_rng(seed, stream_base + idx);
    try {
      body(rng, count, partial[idx]);
    } catch (...) {
      failure[idx] = std::current_exception();
    }
  }
  // Rethrow the lowest-numbered shard's error so failures are reproducible too.
  for (const auto& f : failure)
    if (f) std::rethrow_exception(f);
  Tally total{};
  for (const auto& p : partial) total += p;
  return total;
}

/// Serial reference for sharded_trials: same shards, same streams, same merge.
template <class Tally, class Body>
Tally sharded_trials_serial(std::uint64_t seed, std::uint64_t stream_base, std::size_t trials,
                            Body&& body, std::size_t shards = kDefaultShards) {
  if (shards == 0) shards = 1;
  Tally total{};
  for (std::size_t idx = 0; idx < shards; ++idx) {
    const std::size_t count = trials / shards + (idx < trials % shards ? 1 : 0);
    Rng rng = make_rng(seed, stream_base + idx);
    Tally t{};
    body(rng, count, t);
    total += t;
  }
  return total;
}

}  // namespace monoforge::par
