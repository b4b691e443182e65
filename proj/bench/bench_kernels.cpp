// Serial reference vs OpenMP kernel, pairwise. Run with OMP_NUM_THREADS set
// to compare scaling; both variants return identical results by construction.

#include <benchmark/benchmark.h>

#include "monoforge/approx/approximate.hpp"
#include "monoforge/approx/distribution.hpp"
#include "monoforge/codes/linear_code.hpp"
#include "monoforge/codes/reed_solomon.hpp"
#include "monoforge/graph/graph.hpp"
#include "monoforge/graph/hard_input.hpp"
#include "monoforge/graph/polys.hpp"
#include "monoforge/rank/distributions.hpp"
#include "monoforge/rank/real_matrix.hpp"
#include "monoforge/rank/well_behaved.hpp"

using namespace monoforge;

namespace {

const graph::Graph& big_graph() {
  static const auto g = graph::disjoint_union(graph::petersen_graph(), graph::petersen_graph());
  return g;
}

const linalg::BitMatrix& rs_binary() {
  static const auto m = [] {
    const linalg::GF2eCtx ctx(5);
    const codes::RSCode rs(ctx, 4, 31);
    return codes::binary_expand_code(rs, linalg::FieldBasis(ctx)).generator();
  }();
  return m;
}

const rank::RealMatrix01& sparse_matrix() {
  static const auto m = [] {
    rank::SparseParams p;
    p.n = 8;
    p.m = 64;
    p.s_override = 4;
    return rank::sample_sparse_matrix(p, 1);
  }();
  return m;
}

rank::WellBehavedOptions wb_options() {
  rank::WellBehavedOptions o;
  o.weight = 32;
  o.t_max = 3;
  o.trials = 4000;
  o.seed = 1;
  return o;
}

void selector_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(graph::selector_coefficients_serial(big_graph()));
}
void selector_parallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(graph::selector_coefficients(big_graph()));
}

void min_weight_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(codes::min_weight_enumerate_serial(rs_binary()));
}
void min_weight_parallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(codes::min_weight_enumerate(rs_binary()));
}

void hard_input_serial(benchmark::State& s) {
  const auto g = graph::dodecahedron_graph();
  for (auto _ : s) benchmark::DoNotOptimize(graph::hard_input_experiment_serial(g, 2, 20000, 1));
}
void hard_input_parallel(benchmark::State& s) {
  const auto g = graph::dodecahedron_graph();
  for (auto _ : s) benchmark::DoNotOptimize(graph::hard_input_experiment(g, 2, 20000, 1));
}

void prob_serial(benchmark::State& s) {
  const auto d = approx::Dist::uniform(18);
  const auto pred = [](approx::Mask x) { return __builtin_popcountll(x) % 3 == 0; };
  for (auto _ : s) benchmark::DoNotOptimize(approx::prob_exact_serial(d, pred));
}
void prob_parallel(benchmark::State& s) {
  const auto d = approx::Dist::uniform(18);
  const auto pred = [](approx::Mask x) { return __builtin_popcountll(x) % 3 == 0; };
  for (auto _ : s) benchmark::DoNotOptimize(approx::prob_exact(d, pred));
}

void soundness_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(rank::d0_real_soundness_serial(sparse_matrix()));
}
void soundness_parallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(rank::d0_real_soundness(sparse_matrix()));
}

void well_behaved_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(rank::check_well_behaved_serial(sparse_matrix(), wb_options()));
}
void well_behaved_parallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(rank::check_well_behaved(sparse_matrix(), wb_options()));
}

void spread_serial(benchmark::State& s) {
  const auto d = approx::Dist::uniform_weight(16, 8);
  for (auto _ : s) benchmark::DoNotOptimize(approx::spread_check_serial(d, 4, make_rational(2, 1)));
}
void spread_parallel(benchmark::State& s) {
  const auto d = approx::Dist::uniform_weight(16, 8);
  for (auto _ : s) benchmark::DoNotOptimize(approx::spread_check(d, 4, make_rational(2, 1), approx::ProbMode::Exact));
}

}  // namespace

BENCHMARK(selector_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(selector_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(min_weight_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(min_weight_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(hard_input_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(hard_input_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(prob_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(prob_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(soundness_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(soundness_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(well_behaved_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(well_behaved_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(spread_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(spread_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
