#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "nsrand/diagnostics.hpp"
#include "nsrand/error.hpp"
#include "nsrand/friedrichs_solver.hpp"
#include "nsrand/heat_flow.hpp"
#include "nsrand/initial_data.hpp"
#include "nsrand/norms.hpp"
#include "nsrand/operators.hpp"
#include "oracles.hpp"

using namespace nsrand;
using nsrand::testing::coefficient_norm;
using nsrand::testing::convolution_nonlinearity;
using nsrand::testing::max_abs_diff;
using nsrand::testing::random_band_limited;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SolverConfig small_config(double cutoff = 10.0) {
  SolverConfig config;
  config.dim = 2;
  config.points = 32;
  config.length = kTwoPi;
  config.cutoff = cutoff;
  config.horizon = 0.25;
  config.dt = 5e-3;
  config.snapshot_every = 5;
  return config;
}

SpectralField exact_taylor_green(const Grid& grid, double t) {
  SpectralField f = taylor_green(grid);
  f *= std::exp(-2.0 * t);
  return f;
}

}  // namespace

TEST(NonlinearRhs, ZeroAndTaylorGreen) {
  const Grid grid = make_grid(2, 64, kTwoPi);
  const SpectralField zero = SpectralField::vector(grid);
  EXPECT_EQ(coefficient_norm(nonlinear_rhs(zero, zero, 21.0)), 0.0);
  const SpectralField tg = taylor_green(grid);
  EXPECT_LT(coefficient_norm(nonlinear_rhs(zero, tg, 21.0)), 1e-11);
}

TEST(NonlinearRhs, MatchesDirectConvolution) {
  const Grid grid = make_grid(2, 16, 3.0);
  const double cutoff = 0.9 * grid.dealias_radius();
  const SpectralField w = random_band_limited(grid, cutoff, 0.3, 1);
  // g is not band-limited; only J g enters the products.
  const SpectralField g = nsrand::testing::random_divergence_free(grid, 2);
  SpectralField v = friedrichs_cutoff(g, cutoff);
  v += w;
  const SpectralField oracle = convolution_nonlinearity(v, v, cutoff);
  const SpectralField fast = nonlinear_rhs(w, g, cutoff);
  EXPECT_LT(max_abs_diff(fast, oracle), 1e-12 * coefficient_norm(oracle));
  EXPECT_LT(relative_divergence(fast), 1e-12);
  EXPECT_EQ(max_outside_ball(fast, cutoff), 0.0);
}

TEST(NonlinearRhs, BilinearExpansion) {
  const Grid grid = make_grid(2, 32, kTwoPi);
  const double cutoff = 9.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SpectralField w = random_band_limited(grid, cutoff, 1e-2, seed);
    const SpectralField g = random_band_limited(grid, cutoff, 1e-2, seed + 100);
    const SpectralField cross = bilinear_term(w, g, cutoff) + bilinear_term(g, w, cutoff);
    const SpectralField expanded = bilinear_term(w + g, w + g, cutoff) - bilinear_term(w, w, cutoff) -
                                   bilinear_term(g, g, cutoff);
    EXPECT_LT(max_abs_diff(cross, expanded), 1e-10 * coefficient_norm(cross));
    const SpectralField four_terms =
        bilinear_term(w, w, cutoff) + cross + bilinear_term(g, g, cutoff);
    EXPECT_LT(max_abs_diff(nonlinear_rhs(w, g, cutoff), four_terms), 1e-10 * coefficient_norm(four_terms));
    const SpectralField oracle = convolution_nonlinearity(w, g, cutoff);
    EXPECT_LT(max_abs_diff(bilinear_term(w, g, cutoff), oracle), 1e-12 * coefficient_norm(oracle));
  }
}

TEST(NonlinearRhs, RejectsSupportOutsideBall) {
  const Grid grid = make_grid(2, 32, kTwoPi);
  const SpectralField w = random_band_limited(grid, 8.0, 1.0, 3);
  EXPECT_THROW(nonlinear_rhs(w, SpectralField::vector(grid), 5.0), InvalidArgument);
}

TEST(Step, HeatOnlyIsExactMultiplier) {
  SolverConfig config = small_config();
  config.nonlinear = false;
  const Grid grid = config.grid();
  const SpectralField f = random_band_limited(grid, 12.0, 1.0, 4);
  const FluctuationProblem problem(config, f);
  const SpectralField w0 = random_band_limited(grid, config.cutoff, 1.0, 5);
  for (Integrator integrator : {Integrator::ifrk4, Integrator::ifeuler}) {
    config.integrator = integrator;
    const FluctuationState next = FluctuationProblem(config, f).step({w0, 0.0, 0.0}, 0.1, 0.03);
    EXPECT_LT(max_abs_diff(next.w, heat_semigroup(w0, 0.03)), 1e-13 * coefficient_norm(w0));
  }
  EXPECT_THROW(problem.step({w0, 0.0, 0.0}, -1.0, 0.01), InvalidArgument);
}

TEST(Step, ZeroStaysZeroAndNaNFails) {
  const SolverConfig config = small_config();
  const Grid grid = config.grid();
  const SpectralField zero = SpectralField::vector(grid);
  const FluctuationProblem problem(config, zero);
  const FluctuationState next = problem.step({zero, 0.0, 0.0}, 0.0, 0.01);
  EXPECT_EQ(coefficient_norm(next.w), 0.0);

  SpectralField bad = random_band_limited(grid, config.cutoff, 1.0, 6);
  bad(0, grid.index_of({1, 0, 0})) = std::numeric_limits<double>::quiet_NaN();
  try {
    problem.step({bad, 0.0, 0.0}, 0.125, 0.01);
    FAIL() << "expected StepFailure";
  } catch (const StepFailure& e) {
    EXPECT_EQ(e.time(), 0.125);
  }
}

TEST(Solve, ZeroDataGivesZeroTrajectory) {
  const SolverConfig config = small_config();
  const Trajectory traj = solve(config, SpectralField::vector(config.grid()));
  for (const auto& w : traj.w_states) EXPECT_EQ(coefficient_norm(w), 0.0);
  EXPECT_EQ(traj.times.front(), 0.0);
  EXPECT_EQ(traj.times.back(), config.horizon);
}

TEST(Solve, TaylorGreenFluctuationVanishes) {
  SolverConfig config;
  config.points = 64;
  config.cutoff = 21.0;
  config.horizon = 1.0;
  config.dt = 2e-3;
  const SpectralField f = taylor_green(config.grid());
  const Trajectory traj = solve(config, f);
  double sup = 0.0;
  for (const auto& w : traj.w_states) sup = std::max(sup, l2_norm(w));
  EXPECT_LE(sup, 1e-6 * l2_norm(f));

  const Reconstruction rec = reconstruct_u(traj, f, config);
  EXPECT_EQ(rec.u.front(), f);
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    if (std::abs(rec.times[i] - 0.5) < 1e-12) {
      EXPECT_LT(max_abs_diff(rec.u[i], exact_taylor_green(config.grid(), 0.5)), 1e-5);
    }
  }
  // Against exact snapshots at the same cadence, the residual is no worse than 10x.
  std::vector<SpectralField> exact;
  for (double t : rec.times) exact.push_back(exact_taylor_green(config.grid(), t));
  ResidualOptions options;
  options.cutoff = config.cutoff;
  const ResidualSeries reference = nse_residual(exact, rec.times, options);
  for (std::size_t i = 0; i < rec.residual.size(); ++i) {
    EXPECT_LE(rec.residual[i], 10.0 * reference.residual[i] + 1e-8);
  }
}

TEST(Solve, InvariantsOnRoughData) {
  SolverConfig config = small_config();
  config.horizon = 0.5;
  config.dt = 2e-3;
  const SpectralField f = rough_data(config.grid(), 0.25, default_tilt(2), 0.25, 3);
  const Trajectory traj = solve(config, f);
  EXPECT_EQ(traj.max_support_leak, 0.0);
  EXPECT_LE(traj.max_relative_divergence, 1e-10);
  EXPECT_LE(traj.max_budget_violation, 1e-8);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    EXPECT_EQ(friedrichs_cutoff(traj.w_states[i], config.cutoff), traj.w_states[i]);
    EXPECT_LE(std::pow(l2_norm(traj.w_states[i]), 2) + traj.dissipation[i], traj.forcing[i] + 1e-8);
    EXPECT_EQ(max_outside_ball(traj.g_states[i], config.cutoff), 0.0);
  }
}

TEST(Solve, SelfConvergenceInCutoff) {
  SolverConfig config = small_config();
  config.points = 64;
  config.horizon = 0.2;
  config.dt = 2e-3;
  config.snapshot_every = 10;
  const SpectralField f = heat_semigroup(rough_data(config.grid(), 0.25, default_tilt(2), 1.0, 8), 0.02);
  auto run = [&](double n) {
    SolverConfig c = config;
    c.cutoff = n;
    return solve(c, f);
  };
  const Trajectory reference = run(21.0);
  double previous = INFINITY;
  for (double n : {6.0, 10.0, 14.0}) {
    const Trajectory traj = run(n);
    ASSERT_EQ(traj.times, reference.times);
    double sup = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      sup = std::max(sup, l2_norm(traj.w_states[i] - reference.w_states[i]));
    }
    EXPECT_LT(sup, previous) << "n = " << n;
    previous = sup;
  }
}

TEST(Solve, TimeNodes) {
  SolverConfig config = small_config();
  config.horizon = 0.1;
  config.dt = 0.01;
  const FluctuationProblem problem(config, SpectralField::vector(config.grid()));
  const auto nodes = problem.time_nodes(0.0);
  EXPECT_EQ(nodes[0], 0.0);
  EXPECT_DOUBLE_EQ(nodes[1], 1e-5);
  EXPECT_DOUBLE_EQ(nodes[2], 1.2e-5);
  std::size_t first_uniform = 0;
  while (nodes[first_uniform] < 0.01 * (1 - 1e-12)) ++first_uniform;
  EXPECT_EQ(nodes[first_uniform], 0.01);
  for (std::size_t i = first_uniform; i < nodes.size(); ++i) {
    EXPECT_EQ(nodes[i], static_cast<double>(i - first_uniform + 1) * 0.01);
  }
  EXPECT_EQ(nodes.back(), 0.1);
  const auto resumed = problem.time_nodes(0.05);
  EXPECT_EQ(resumed.front(), 0.05);
  EXPECT_EQ(resumed[1], 6 * 0.01);

  config.substep_near_zero = false;
  const auto plain = FluctuationProblem(config, SpectralField::vector(config.grid())).time_nodes(0.0);
  EXPECT_EQ(plain.size(), 11u);
}

TEST(SolverConfig, Validation) {
  SolverConfig config = small_config();
  config.cutoff = config.grid().dealias_radius() * 1.01;
  EXPECT_THROW(config.validate(), ConfigError);
  config = small_config();
  config.dt = 0.0;
  EXPECT_THROW(config.validate(), ConfigError);
  config = small_config();
  config.dt = 0.2;
  const SpectralField strong = 50.0 * random_band_limited(config.grid(), 10.0, 1.0, 9);
  EXPECT_THROW(solve(config, strong), ConfigError);
  SpectralField with_mean = random_band_limited(config.grid(), 10.0, 1.0, 9);
  with_mean(0, config.grid().index_of({0, 0, 0})) = 1.0;
  EXPECT_THROW(FluctuationProblem(small_config(), with_mean), InvalidArgument);
  EXPECT_THROW(FluctuationProblem(small_config(), nsrand::testing::random_fourier(config.grid(), 2, 1)),
               InvalidArgument);
  EXPECT_EQ(integrator_from_string(to_string(Integrator::ifeuler)), Integrator::ifeuler);
  EXPECT_THROW(integrator_from_string("rk45"), InvalidArgument);
}
