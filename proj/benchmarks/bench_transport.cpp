#include <benchmark/benchmark.h>

#include "kantorovich/approx.hpp"
#include "kantorovich/laws.hpp"
#include "kantorovich/random.hpp"
#include "kantorovich/transport.hpp"

using namespace kantorovich;

namespace {

struct Instance {
  DiscreteMeasure p;
  DiscreteMeasure q;
};

// Two measures with full support and a shared denominator on a planar roster.
Instance make_instance(std::size_t points, std::uint64_t den, std::uint64_t seed) {
  Rng rng(seed);
  const auto x = random_euclidean(rng, points, 2, Norm::L2, static_cast<std::int64_t>(points)).to_metric_space();
  std::vector<Index> support(points);
  for (Index i = 0; i < points; ++i) support[i] = i;
  auto pick = [&] {
    return DiscreteMeasure::from_rational(x, support, random_composition(rng, den, points), den);
  };
  auto p = pick();
  return {p, pick()};
}

void run(benchmark::State& state, Solver solver, std::uint64_t den) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = make_instance(n, den, 42 + n);
  TransportOptions opts;
  opts.solver = solver;
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein(inst.p, inst.q, opts).cost);
}

void BM_Flow(benchmark::State& state) { run(state, Solver::Flow, 64); }
void BM_Assignment(benchmark::State& state) { run(state, Solver::Assignment, 64); }
void BM_FlowFloat(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(7 + n);
  const auto x = random_euclidean(rng, n, 2, Norm::L2, static_cast<std::int64_t>(n)).to_metric_space();
  const auto p = random_float_measure(rng, x, n), q = random_float_measure(rng, x, n);
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein(p, q).cost);
}

void BM_Brute(benchmark::State& state) {
  const auto den = static_cast<std::uint64_t>(state.range(0));
  const auto inst = make_instance(4, den, 11);
  for (auto _ : state) benchmark::DoNotOptimize(w1_bruteforce(inst.p, inst.q));
}

void BM_LawSuite(benchmark::State& state) {
  LawConfig c;
  c.trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_law_suite(c).size());
}

void BM_ConvergenceStudy(benchmark::State& state) {
  const auto x = line({0, 1, 2, 4}).to_metric_space();
  const auto p = DiscreteMeasure::from_rational(x, {0, 1, 3}, {1, 2, 1}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(convergence_study(p, {8, 16, 32, 64, 128}, 50, 1).size());
}

}  // namespace

BENCHMARK(BM_Flow)->RangeMultiplier(2)->Range(4, 64);
BENCHMARK(BM_Assignment)->RangeMultiplier(2)->Range(4, 64);
BENCHMARK(BM_FlowFloat)->RangeMultiplier(2)->Range(4, 64);
BENCHMARK(BM_Brute)->DenseRange(4, 8, 2);
BENCHMARK(BM_LawSuite)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvergenceStudy)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
