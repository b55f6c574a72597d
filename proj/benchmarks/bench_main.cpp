#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "schauder/evolution.hpp"
#include "schauder/experiments.hpp"
#include "schauder/geometry.hpp"
#include "schauder/halfsphere.hpp"
#include "schauder/holder.hpp"
#include "schauder/oracle.hpp"

using namespace schauder;

namespace {

SpectralField random_field(const BasisPtr& basis, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto f = SpectralField::zero(basis);
  for (auto& c : f.coeffs) c = g(rng);
  return f;
}

void BM_EnumerateModes(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_modes(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateModes)->Arg(8)->Arg(16)->Arg(32);

void BM_BasisEvaluate(benchmark::State& state) {
  const auto b = enumerate_modes(static_cast<int>(state.range(0)));
  const Vec3 p{0.3, -0.4, std::sqrt(1 - 0.25)};
  for (auto _ : state) benchmark::DoNotOptimize(b->evaluate(p));
}
BENCHMARK(BM_BasisEvaluate)->Arg(8)->Arg(16)->Arg(32);

void BM_Evolve(benchmark::State& state) {
  const auto b = enumerate_modes(static_cast<int>(state.range(0)));
  const auto u0 = random_field(b, 1);
  std::vector<double> t(101);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = 0.01 * double(k);
  const auto forcing = ForcingSignal::constant(random_field(b, 2));
  const EvolutionOperator op{OperatorKind::HalfDeltaDeltaPlus2};
  for (auto _ : state) benchmark::DoNotOptimize(evolve(u0, &forcing, op, t));
}
BENCHMARK(BM_Evolve)->Arg(8)->Arg(16);

void BM_SpatialSeminorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = GridFunction::sample(SpaceTimeGrid({Axis::span(0, 1, n)}, {0.0}),
                                      [](auto x, double) { return std::sqrt(std::abs(x[0])); });
  for (auto _ : state) benchmark::DoNotOptimize(spatial_seminorm(u, 0.5));
}
BENCHMARK(BM_SpatialSeminorm)->Arg(256)->Arg(1024);

void BM_ParabolicSeminorm(benchmark::State& state) {
  std::vector<double> ts(21);
  for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = 0.01 * double(k);
  const SpaceTimeGrid g({Axis::span(-1, 1, 21), Axis::span(-1, 1, 21)}, ts);
  const auto u = GridFunction::sample(g, [](auto x, double t) { return std::sin(x[0] + 2 * x[1]) * std::exp(-t); });
  for (auto _ : state) benchmark::DoNotOptimize(parabolic_seminorm(u, {0.5, 4}));
}
BENCHMARK(BM_ParabolicSeminorm);

void BM_BuildCovering(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        build_covering({{-1.0, 0.0}, {1.0, 1.0}}, {{-2.0, 0.0}, {2.0, 2.0}}, 1.0, 100.0, BoundaryMode::HalfSpace));
}
BENCHMARK(BM_BuildCovering);

void BM_ProbeInstance(benchmark::State& state) {
  const ProbeConfig cfg;
  const auto b = enumerate_modes(cfg.l_max);
  const auto [u0, forcing] = probe_random_instance(b, cfg, 0);
  for (auto _ : state) benchmark::DoNotOptimize(probe_instance(u0, forcing, 1.0, cfg));
}
BENCHMARK(BM_ProbeInstance)->Unit(benchmark::kMillisecond);

void BM_IntervalOracle(benchmark::State& state) {
  OracleConfig cfg;
  cfg.points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(interval_cross_check(cfg));
}
BENCHMARK(BM_IntervalOracle)->Arg(101)->Arg(401)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
