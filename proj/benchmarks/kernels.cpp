#include <benchmark/benchmark.h>

#include <numbers>

#include "nsrand/fft.hpp"
#include "nsrand/friedrichs_solver.hpp"
#include "nsrand/initial_data.hpp"
#include "nsrand/operators.hpp"
#include "nsrand/randomization.hpp"

namespace {

using namespace nsrand;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SpectralField data(int dim, int n) {
  return rough_data(make_grid(dim, n, kTwoPi), 0.25, default_tilt(dim), 0.25, 1);
}

void BM_InverseTransform(benchmark::State& state) {
  const SpectralField f = data(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(to_physical(f));
}
BENCHMARK(BM_InverseTransform)->Args({2, 64})->Args({2, 256})->Args({3, 32})->Args({3, 64});

void BM_Leray(benchmark::State& state) {
  SpectralField f = data(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    leray_project_in_place(f);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_Leray)->Args({2, 256})->Args({3, 64});

void BM_Randomize(benchmark::State& state) {
  const SpectralField f = data(2, static_cast<int>(state.range(0)));
  const RingPartition partition(f.grid());
  const CoefficientDraw draw =
      sample_coefficients(RandomModel::standard(Family::gaussian, 3), partition.max_ring(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(randomize(f, draw, partition));
}
BENCHMARK(BM_Randomize)->Arg(64)->Arg(256);

void BM_NonlinearRhs(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const Grid grid = make_grid(dim, n, kTwoPi);
  const double cutoff = grid.dealias_radius();
  const SpectralField g = friedrichs_cutoff(data(dim, n), cutoff);
  SpectralField w = g;
  w *= 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(nonlinear_rhs(w, g, cutoff));
}
BENCHMARK(BM_NonlinearRhs)->Args({2, 64})->Args({2, 128})->Args({3, 32});

void BM_Step(benchmark::State& state) {
  SolverConfig config;
  config.points = static_cast<int>(state.range(0));
  config.cutoff = config.grid().dealias_radius();
  config.integrator = state.range(1) == 0 ? Integrator::ifrk4 : Integrator::ifeuler;
  const FluctuationProblem problem(config, data(2, config.points));
  const FluctuationState start{SpectralField::vector(config.grid()), 0.0, 0.0};
  const FluctuationState warm = problem.step(start, 0.0, config.dt);
  for (auto _ : state) benchmark::DoNotOptimize(problem.step(warm, config.dt, config.dt));
}
BENCHMARK(BM_Step)->Args({64, 0})->Args({64, 1})->Args({128, 0});

}  // namespace

BENCHMARK_MAIN();
