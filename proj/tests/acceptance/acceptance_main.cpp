// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments select
// criteria by number, e.g. `nsrand_acceptance 3 7`.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nsrand/checkpoint.hpp"
#include "nsrand/config.hpp"
#include "nsrand/diagnostics.hpp"
#include "nsrand/experiments.hpp"
#include "nsrand/fft.hpp"
#include "nsrand/friedrichs_solver.hpp"
#include "nsrand/heat_flow.hpp"
#include "nsrand/initial_data.hpp"
#include "nsrand/norms.hpp"
#include "nsrand/operators.hpp"
#include "nsrand/randomization.hpp"
#include "nsrand/stochastic_estimates.hpp"
#include "nsrand/time_quadrature.hpp"
#include "oracles.hpp"

using namespace nsrand;
using nsrand::testing::coefficient_norm;
using nsrand::testing::max_abs_diff;
namespace fs = std::filesystem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "ok    " : "FAIL  ") + what);
  }
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double relative(double num, double den) { return den == 0.0 ? num : num / den; }

// Criterion 1 -----------------------------------------------------------------

Outcome operator_identities() {
  Outcome out;
  const Grid grid = make_grid(2, 64, kTwoPi);
  const RingPartition partition(grid);
  const double n = 0.5 * grid.dealias_radius();
  double leray = 0.0, grad = 0.0, rings = 0.0, div_commute = 0.0;
  bool cutoff_bitwise = true;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SpectralField f = nsrand::testing::random_fourier(grid, 2, 1000 + seed);
    const double fnorm = coefficient_norm(f);
    const SpectralField pf = leray_project(f);
    leray = std::max(leray, relative(max_abs_diff(leray_project(pf), pf), fnorm));

    const SpectralField phi = nsrand::testing::random_fourier(grid, 1, 5000 + seed);
    const SpectralField gphi = gradient(phi);
    grad = std::max(grad, relative(coefficient_norm(leray_project(gphi)), coefficient_norm(gphi)));

    // Sum of ring projections, accumulated by scattering each ring's coefficients.
    SpectralField sum = SpectralField::vector(grid);
    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(partition.max_ring()));
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      const int r = partition.ring(idx);
      if (r >= 1) members[static_cast<std::size_t>(r - 1)].push_back(idx);
    }
    for (int r = 1; r <= partition.max_ring(); ++r) {
      if (members[static_cast<std::size_t>(r - 1)].empty()) continue;
      sum += ring_project(f, partition, r);
    }
    rings = std::max(rings, max_abs_diff(sum, f));

    const SpectralField jf = friedrichs_cutoff(f, n);
    cutoff_bitwise = cutoff_bitwise && friedrichs_cutoff(jf, n) == jf;
    div_commute = std::max(div_commute,
                           relative(max_abs_diff(divergence(jf), friedrichs_cutoff(divergence(f), n)), fnorm));
  }
  out.check(leray < 1e-13, fmt("Leray idempotence max rel err %.3g < 1e-13", leray));
  out.check(grad < 1e-13, fmt("Leray on gradients max rel norm %.3g < 1e-13", grad));
  out.check(rings < 1e-14, fmt("ring reconstruction max err %.3g < 1e-14", rings));
  out.check(cutoff_bitwise, "J_n idempotent bitwise");
  out.check(div_commute < 1e-14, fmt("div J_n = J_n div max rel err %.3g < 1e-14", div_commute));
  return out;
}

// Criterion 2 -----------------------------------------------------------------

Outcome randomization_invariants() {
  Outcome out;
  const Grid grid = make_grid(2, 64, kTwoPi);
  const RingPartition partition(grid);
  const double s = 0.25;
  const SpectralField f = rough_data(grid, s, default_tilt(2), 0.25, 7);
  const double base = hminus_s_norm(f, s);

  const RandomModel rademacher = RandomModel::standard(Family::rademacher, 21);
  double preserve = 0.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const SpectralField fw = randomize(f, sample_coefficients(rademacher, partition.max_ring(), i), partition);
    preserve = std::max(preserve, std::abs(hminus_s_norm(fw, s) - base) / base);
  }
  out.check(preserve <= 1e-12, fmt("Rademacher H^-s preservation max rel err %.3g <= 1e-12", preserve));

  const RandomModel gaussian = RandomModel::standard(Family::gaussian, 22);
  double mean = 0.0;
  const std::size_t M = 2000;
  for (std::uint64_t i = 0; i < M; ++i) {
    const SpectralField fw = randomize(f, sample_coefficients(gaussian, partition.max_ring(), i), partition);
    mean += std::pow(hminus_s_norm(fw, s), 2);
  }
  mean /= static_cast<double>(M);
  const double second = std::abs(mean / (base * base) - 1.0);
  out.check(second < 0.05, fmt("Gaussian E||f^w||^2 / ||f||^2 - 1 = %.4f (|.| < 0.05, M = 2000)", mean / (base * base) - 1.0));

  const auto gammas = linspace(-10.0, 10.0, 200);
  for (Family family : {Family::rademacher, Family::gaussian, Family::uniform}) {
    const SubgaussianReport report = verify_subgaussian(RandomModel::standard(family, 0), gammas);
    out.check(report.margin <= 1e-9, fmt("%s sub-Gaussian margin %.3g <= 0 (c = %.4g, 200 gammas)",
                                         std::string(to_string(family)).c_str(), report.margin, report.c));
  }
  return out;
}

// Criterion 3 -----------------------------------------------------------------

// Slope of (1/2) log int_{R^d} |xi|^{2k} e^{-2t|xi|^2} (1+|xi|^2)^{s-tilt} dxi over `times`.
double continuum_slope(int d, double s, double tilt, int k, std::span<const double> times) {
  std::vector<double> x, y;
  for (double t : times) {
    auto integrand = [&](double r) {
      return std::pow(r, 2 * k + d - 1) * std::exp(-2.0 * t * r * r) * std::pow(1.0 + r * r, s - tilt);
    };
    const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, std::numeric_limits<double>::infinity(), 20, 1e-12);
    x.push_back(std::log(t));
    y.push_back(0.5 * std::log(value));
  }
  return least_squares(x, y).slope;
}

Outcome heat_decay() {
  Outcome out;
  struct Case {
    int d;
    double s;
  };
  const std::vector<Case> cases{{2, 0.1}, {2, 0.25}, {2, 0.4}, {3, 0.1}, {3, 0.2}};
  for (const Case& c : cases) {
    const auto start = std::chrono::steady_clock::now();
    const Grid grid = make_grid(c.d, 128, kTwoPi);
    const RingPartition partition(grid);
    const double tilt = default_tilt(c.d);
    SpectralField fw = rough_data(grid, c.s, tilt, 0.25, 3);
    fw = randomize(fw, sample_coefficients(RandomModel::standard(Family::rademacher, 31), partition.max_ring(), 0),
                   partition);
    const auto times = geometric_grid(small_time_window_start(grid), 1.0, 32);
    for (int k : {0, 1}) {
      const DecayReport report = check_linear_estimates(fw, c.s, k, times);
      std::vector<double> window;
      for (double t : times) {
        if (t >= report.window_start * (1 - 1e-12) && t <= report.window_end * (1 + 1e-12)) window.push_back(t);
      }
      const double oracle = continuum_slope(c.d, c.s, tilt, k, window);
      const double target = -(c.s + k) / 2.0;
      out.check(std::abs(report.fitted_slope - target) <= 0.1,
                fmt("d=%d N=128 s=%.2f k=%d slope %.4f vs %.3f +- 0.1 (oracle %.4f, window [%.3g, %.3g])", c.d,
                    c.s, k, report.fitted_slope, target, oracle, report.window_start, report.window_end));
      out.check(std::abs(report.fitted_slope - oracle) <= 0.1,
                fmt("d=%d s=%.2f k=%d slope within 0.1 of quadrature oracle (diff %.4f)", c.d, c.s, k,
                    report.fitted_slope - oracle));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.check(c.d == 3 || secs < 60.0, fmt("d=%d s=%.2f case runtime %.1f s", c.d, c.s, secs));
  }
  return out;
}

// Criterion 4 -----------------------------------------------------------------

Outcome gaussian_tails() {
  Outcome out;
  const Grid grid = make_grid(2, 64, kTwoPi);
  const SpectralField f = rough_data(grid, 0.25, default_tilt(2), 0.25, 0);
  NormSpec spec;
  spec.gamma = 0.0;
  spec.sigma = 0.0;
  spec.p = spec.q = spec.r = 4.0;
  spec.s = 0.25;
  spec.horizon = 1.0;
  double c2[2] = {0.0, 0.0};
  for (int run = 0; run < 2; ++run) {
    const auto start = std::chrono::steady_clock::now();
    const TailFitResult fit =
        monte_carlo_tails(f, RandomModel::standard(Family::gaussian, 100 + static_cast<std::uint64_t>(run)), spec,
                          1000);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c2[run] = fit.C2;
    out.check(fit.fit_valid && fit.r_squared >= 0.95 && fit.C2 > 0.0,
              fmt("seed %d: r^2 = %.4f, C2 = %.4g, C1 = %.4g, %zu fit points", 100 + run, fit.r_squared, fit.C2,
                  fit.C1, fit.fit_points));
    out.check(secs < 300.0, fmt("seed %d runtime %.1f s < 300 s", 100 + run, secs));
  }
  out.check(std::abs(c2[1] / c2[0] - 1.0) <= 0.25, fmt("fresh-seed C2 ratio %.4f within 25%%", c2[1] / c2[0]));
  return out;
}

// Criterion 5 -----------------------------------------------------------------

Outcome taylor_green_null() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  SolverConfig config;
  config.points = 64;
  config.cutoff = config.grid().dealias_radius();
  config.horizon = 1.0;
  const SpectralField f = taylor_green(config.grid());
  const Trajectory traj = FluctuationProblem(config, f).solve();
  double sup = 0.0;
  for (const auto& w : traj.w_states) sup = std::max(sup, l2_norm(w));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.check(sup <= 1e-6 * l2_norm(f), fmt("sup ||w||/||f|| = %.3g <= 1e-6 (%zu steps)", sup / l2_norm(f), traj.steps));
  out.check(secs < 30.0, fmt("runtime %.1f s < 30 s", secs));
  return out;
}

// Criterion 6 -----------------------------------------------------------------

Outcome energy_boundedness() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  SolverConfig config;
  config.points = 64;
  config.horizon = 1.0;
  config.s = 0.25;
  const Grid grid = config.grid();
  const RingPartition partition(grid);
  const double unit = grid.wavenumber_unit();
  const std::vector<double> cutoffs{64.0 / 6.0 * unit, 64.0 / 4.0 * unit, 64.0 / 3.0 * unit};
  const SpectralField f = rough_data(grid, 0.25, default_tilt(2), 0.25, 0);
  const RandomModel model = RandomModel::standard(Family::rademacher, 0);
  double worst_violation = -std::numeric_limits<double>::infinity();
  double worst_spread = 0.0;
  int energy_fail = 0, spread_fail = 0;
  for (std::uint64_t draw = 0; draw < 20; ++draw) {
    const SpectralField fw = randomize(f, sample_coefficients(model, partition.max_ring(), draw), partition);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double n : cutoffs) {
      config.cutoff = n;
      const Trajectory traj = FluctuationProblem(config, fw).solve();
      worst_violation = std::max(worst_violation, traj.max_budget_violation);
      if (traj.max_budget_violation > 1e-8) ++energy_fail;
      const double sup = energy(traj).sup_total;
      lo = std::min(lo, sup);
      hi = std::max(hi, sup);
    }
    const double spread = (hi - lo) / hi;
    worst_spread = std::max(worst_spread, spread);
    if (!(spread < 0.2)) ++spread_fail;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.check(energy_fail == 0, fmt("energy inequality per step: worst LHS - RHS = %.3g <= 1e-8 (%d of 60 runs fail)",
                                  worst_violation, energy_fail));
  out.check(spread_fail == 0, fmt("sup_t E(w_n) spread across n in {N/6, N/4, N/3}: worst %.4f < 0.2 (%d of 20 draws fail)",
                                  worst_spread, spread_fail));
  out.check(secs < 600.0, fmt("runtime %.1f s < 600 s", secs));
  return out;
}

// Criterion 7 -----------------------------------------------------------------

Trajectory run_smooth(Integrator integrator, double dt, const SpectralField& f, int snapshot_every) {
  SolverConfig config;
  config.points = 32;
  config.cutoff = 10.0;
  config.horizon = 0.5;
  config.dt = dt;
  config.integrator = integrator;
  config.substep_near_zero = false;
  config.snapshot_every = snapshot_every;
  return FluctuationProblem(config, f).solve();
}

// max over the snapshot times of `a` of ||a - b|| at the matching time of `b`.
double trajectory_distance(const Trajectory& a, const Trajectory& b) {
  double worst = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    while (j < b.times.size() && b.times[j] < a.times[i] - 1e-12) ++j;
    if (j == b.times.size() || std::abs(b.times[j] - a.times[i]) > 1e-12) continue;
    worst = std::max(worst, l2_norm(a.w_states[i] - b.w_states[j]));
  }
  return worst;
}

Outcome convergence_order() {
  Outcome out;
  const Grid grid = make_grid(2, 32, kTwoPi);
  const SpectralField f = nsrand::testing::random_band_limited(grid, 4.0, 2.0, 17);
  const double dt = 0.05;
  const Trajectory ref = run_smooth(Integrator::ifrk4, dt / 8.0, f, 1);
  const Trajectory coarse = run_smooth(Integrator::ifrk4, dt, f, 1);
  const Trajectory fine = run_smooth(Integrator::ifrk4, dt / 2.0, f, 1);
  const double e1 = l2_norm(coarse.w_states.back() - ref.w_states.back());
  const double e2 = l2_norm(fine.w_states.back() - ref.w_states.back());
  const double ratio = e1 / e2;
  out.check(ratio >= 11.2 && ratio <= 20.8,
            fmt("IFRK4 terminal error ratio %.3f in [11.2, 20.8] (errors %.3g, %.3g; ||w(T)|| = %.3g)", ratio, e1, e2,
                l2_norm(ref.w_states.back())));

  const double h = 0.005;
  const Trajectory rk = run_smooth(Integrator::ifrk4, h, f, 1);
  const Trajectory eu = run_smooth(Integrator::ifeuler, h, f, 1);
  const Trajectory eu_half = run_smooth(Integrator::ifeuler, h / 2.0, f, 1);
  const double gap = trajectory_distance(eu, rk);
  const double band = 2.0 * trajectory_distance(eu, eu_half);
  out.check(gap <= 1.5 * band, fmt("sup_t ||IFRK4 - IFEuler|| = %.3g within Euler band 1.5 x %.3g (dt = %.3g)", gap,
                                   band, h));
  return out;
}

// Criterion 8 -----------------------------------------------------------------

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome reproducibility() {
  Outcome out;
  const fs::path root = fs::temp_directory_path() / "nsrand_acceptance_repro";
  fs::remove_all(root);
  const std::string base = R"({"d": 2, "N": 32, "L": 6.283185307179586, "T": 1.0, "s": 0.25, "master_seed": 77,
                               "sample_index": 3, "dt": 0.002, "M": 200, "per_decade": 16, "gamma": 0.0})";
  for (Experiment experiment : {Experiment::randomize, Experiment::tails, Experiment::solve}) {
    std::string series, summary;
    bool same = true;
    int status = 0;
    for (int threads : {1, 2, 8}) {
      ExperimentConfig config = parse_config(base);
      config.experiment = experiment;
      config.threads = static_cast<std::size_t>(threads);
      config.output_dir = (root / (std::string(to_string(experiment)) + std::to_string(threads))).string();
      status |= run_experiment(config).exit_code;
      const std::string a = slurp(fs::path(config.output_dir) / "series.csv");
      const std::string b = slurp(fs::path(config.output_dir) / "summary.json");
      if (threads == 1) {
        series = a;
        summary = b;
      } else {
        same = same && a == series && b == summary && !a.empty() && !b.empty();
      }
    }
    out.check(same && status == 0, fmt("%s: series.csv and summary.json byte-identical for 1, 2, 8 workers",
                                       std::string(to_string(experiment)).c_str()));
  }

  ExperimentConfig full = parse_config(base);
  full.experiment = Experiment::solve;
  full.checkpoint_at = 0.5;
  full.output_dir = (root / "full").string();
  const int s1 = run_experiment(full).exit_code;
  ExperimentConfig resumed = full;
  resumed.checkpoint_at = 0.0;
  resumed.resume_from = (root / "full" / "checkpoint_at.nsrw").string();
  resumed.output_dir = (root / "resumed").string();
  const int s2 = run_experiment(resumed).exit_code;
  const Checkpoint a = load_checkpoint(root / "full" / "checkpoint.nsrw");
  const Checkpoint b = load_checkpoint(root / "resumed" / "checkpoint.nsrw");
  const double diff = max_abs_diff(a.field, b.field);
  const double scale = coefficient_norm(a.field);
  out.check(s1 == 0 && s2 == 0 && a.time == b.time && diff <= 1e-12 * scale,
            fmt("resume at t = 0.5: terminal max diff %.3g <= 1e-12 x %.3g (T = %g)", diff, scale, b.time));
  fs::remove_all(root);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "operator identities", operator_identities},
      {2, "randomization invariants", randomization_invariants},
      {3, "heat-flow decay slopes", heat_decay},
      {4, "Gaussian tails", gaussian_tails},
      {5, "Taylor-Green null test", taylor_green_null},
      {6, "energy boundedness", energy_boundedness},
      {7, "convergence order", convergence_order},
      {8, "reproducibility", reproducibility},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  std::vector<std::string> lines;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& note : outcome.notes) std::printf("  [%d] %s\n", c.id, note.c_str());
    const std::string line = fmt("%s criterion %d (%s) %.1f s", outcome.pass ? "PASS" : "FAIL", c.id, c.name, secs);
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    lines.push_back(line);
    if (!outcome.pass) ++failed;
  }
  std::printf("\nsummary\n");
  for (const auto& line : lines) std::printf("%s\n", line.c_str());
  return failed == 0 ? 0 : 1;
}
