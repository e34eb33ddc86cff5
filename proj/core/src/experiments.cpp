#include "nsrand/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>

#include <json.hpp>

#include "nsrand/checkpoint.hpp"
#include "nsrand/diagnostics.hpp"
#include "nsrand/error.hpp"
#include "nsrand/friedrichs_solver.hpp"
#include "nsrand/heat_flow.hpp"
#include "nsrand/initial_data.hpp"
#include "nsrand/norms.hpp"
#include "nsrand/operators.hpp"
#include "nsrand/parallel.hpp"
#include "nsrand/randomization.hpp"
#include "nsrand/stochastic_estimates.hpp"
#include "nsrand/time_quadrature.hpp"

namespace nsrand {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void row(std::vector<double> values) { rows_.push_back(std::move(values)); }
  bool empty() const { return rows_.empty(); }

  void write(const fs::path& path, char sep) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? std::string(1, sep) : "") << columns_[i];
    out << '\n';
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? std::string(1, sep) : "") << format_number(r[i]);
      out << '\n';
    }
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

struct Outputs {
  Table series{std::vector<std::string>{}};
  json summary = json::object();
  std::vector<std::pair<std::string, Table>> plots;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& message) {
    if (!ok) failures.push_back(message);
  }
};

std::vector<double> heat_time_grid(const ExperimentConfig& config, const Grid& grid) {
  const double start = std::min(small_time_window_start(grid) / 10.0, config.horizon / 10.0);
  return geometric_grid(start, config.horizon, config.per_decade);
}

void run_randomize(const ExperimentConfig& config, Outputs& out) {
  const SpectralField f = base_data(config);
  const Grid& grid = f.grid();
  const RingPartition partition(grid);
  const RandomModel model = config.random_model();
  const auto draw = sample_coefficients(model, partition.max_ring(), config.sample_index);
  const SpectralField fw = randomize(f, draw, partition);

  std::vector<double> ring_f(static_cast<std::size_t>(partition.max_ring()), 0.0);
  std::vector<double> ring_fw(ring_f.size(), 0.0);
  for (std::size_t c = 0; c < f.components(); ++c) {
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      const auto n = static_cast<std::size_t>(partition.ring(idx) - 1);
      ring_f[n] += std::norm(f(c, idx));
      ring_fw[n] += std::norm(fw(c, idx));
    }
  }
  out.series = Table({"ring", "occupancy", "multiplier", "energy_f", "energy_f_omega"});
  for (std::size_t n = 0; n < ring_f.size(); ++n) {
    out.series.row({static_cast<double>(n + 1), static_cast<double>(partition.occupancy()[n]), draw.values[n],
                    ring_f[n], ring_fw[n]});
  }

  const double norm_f = hminus_s_norm(f, config.s);
  const double norm_fw = hminus_s_norm(fw, config.s);
  const auto gammas = linspace(-10.0, 10.0, 200);
  const SubgaussianReport sub = verify_subgaussian(model, gammas);
  out.summary["hminus_s_norm_f"] = number(norm_f);
  out.summary["hminus_s_norm_f_omega"] = number(norm_fw);
  out.summary["l2_norm_f_omega"] = number(l2_norm(fw));
  out.summary["relative_divergence_f_omega"] = number(relative_divergence(fw));
  out.summary["subgaussian_c"] = number(sub.c);
  out.summary["subgaussian_margin"] = number(sub.margin);
  out.summary["max_ring"] = partition.max_ring();

  out.check(sub.margin <= 0.0, "sub-Gaussian moment condition violated (margin " + format_number(sub.margin) + ")");
  out.check(relative_divergence(fw) <= 1e-10, "randomized field is not divergence-free");
  if (config.family == Family::rademacher) {
    out.check(std::abs(norm_fw - norm_f) <= 1e-12 * std::max(norm_f, 1e-300),
              "Rademacher randomization changed the H^{-s} norm");
  }

  Table sub_table({"gamma", "log_mgf", "bound"});
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    sub_table.row({gammas[i], sub.log_mgf[i], sub.c * gammas[i] * gammas[i]});
  }
  out.plots.emplace_back("subgaussian", std::move(sub_table));
}

void run_heatflow(const ExperimentConfig& config, Outputs& out, bool assert_slopes) {
  const SpectralField fw = realised_data(config);
  const Grid& grid = fw.grid();
  const auto times = heat_time_grid(config, grid);

  std::vector<std::string> columns{"time"};
  std::vector<DecayReport> reports;
  for (int k : config.heat_orders) {
    reports.push_back(check_linear_estimates(fw, config.s, k, times, NormKind::l2));
    columns.push_back("l2_k" + std::to_string(k));
    columns.push_back("l2_ratio_k" + std::to_string(k));
  }
  out.series = Table(columns);
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row{times[i]};
    for (const auto& r : reports) {
      row.push_back(r.values[i]);
      row.push_back(r.ratios[i]);
    }
    out.series.row(std::move(row));
  }

  json heat = json::object();
  for (const auto& r : reports) {
    const double expected = -(config.s + r.k) / 2.0;
    double sup_ratio = 0.0;
    for (double v : r.ratios) sup_ratio = std::max(sup_ratio, v);
    json entry;
    entry["fitted_slope"] = number(r.fitted_slope);
    entry["expected_slope"] = number(expected);
    entry["window_start"] = number(r.window_start);
    entry["window_end"] = number(r.window_end);
    entry["window_points"] = r.window_points;
    entry["sup_bound_ratio"] = number(sup_ratio);
    heat["k" + std::to_string(r.k)] = entry;
    if (assert_slopes && config.data == DataKind::rough) {
      out.check(std::abs(r.fitted_slope - expected) <= 0.1,
                "k = " + std::to_string(r.k) + " decay slope " + format_number(r.fitted_slope) + " differs from " +
                    format_number(expected) + " by more than 0.1");
    }
    out.check(std::isfinite(sup_ratio), "non-finite heat-flow bound ratio");
  }
  out.summary["heat"] = heat;
  out.summary["data_norm"] = number(hminus_s_norm(fw, config.s));

  const CondgReport condg = condg_check(fw, config.s, times);
  out.summary["condg"] = {{"l2_sup", number(condg.l2_sup)},
                          {"linf_sup_k0", number(condg.linf_sup[0])},
                          {"linf_sup_k1", number(condg.linf_sup[1])},
                          {"linf_printed_sup_k0", number(condg.linf_printed_sup[0])},
                          {"linf_printed_sup_k1", number(condg.linf_printed_sup[1])}};
}

void run_tails(const ExperimentConfig& config, Outputs& out) {
  const SpectralField f = base_data(config);
  MonteCarloOptions options;
  options.workers = config.threads;
  options.per_decade = config.per_decade;
  const TailFitResult fit = monte_carlo_tails(f, config.random_model(), config.norm_spec(), config.monte_carlo_M, {},
                                              options);
  out.series = Table({"lambda", "empirical_prob", "fitted_prob"});
  for (std::size_t i = 0; i < fit.lambda_grid.size(); ++i) {
    const double lam = fit.lambda_grid[i];
    const double model = fit.fit_valid && fit.data_norm > 0.0
                             ? fit.C1 * std::exp(-fit.C2 * lam * lam / (fit.data_norm * fit.data_norm))
                             : 0.0;
    out.series.row({lam, fit.empirical_prob[i], model});
  }
  out.summary["C1"] = number(fit.C1);
  out.summary["C2"] = number(fit.C2);
  out.summary["r_squared"] = number(fit.r_squared);
  out.summary["fit_points"] = fit.fit_points;
  out.summary["fit_valid"] = fit.fit_valid;
  out.summary["data_norm"] = number(fit.data_norm);
  out.summary["M"] = fit.M;
  out.check(fit.fit_valid, "tail fit is not valid");
  if (fit.fit_valid) {
    out.check(fit.C2 > 0.0, "fitted C2 is not positive");
    out.check(fit.r_squared >= 0.95, "tail fit r^2 " + format_number(fit.r_squared) + " below 0.95");
  }
  Table samples({"sample_index", "norm"});
  for (std::size_t i = 0; i < fit.samples.size(); ++i) samples.row({static_cast<double>(i), fit.samples[i]});
  out.plots.emplace_back("samples", std::move(samples));
}

struct SolveSummary {
  double sup_total = 0.0;
};

SolveSummary run_solve(const ExperimentConfig& config, Outputs& out, const fs::path& dir) {
  const SpectralField fw = realised_data(config);
  const SolverConfig solver = config.solver_config();
  const FluctuationProblem problem(solver, fw);

  Trajectory traj;
  if (!config.resume_from.empty()) {
    const Checkpoint cp = load_checkpoint(config.resume_from);
    if (!(cp.field.grid() == fw.grid())) throw InvalidArgument("checkpoint grid does not match the config");
    if (cp.cutoff != solver.cutoff) throw InvalidArgument("checkpoint cutoff does not match the config");
    traj = problem.solve_from(cp.field, cp.time);
  } else {
    traj = problem.solve();
  }

  const EnergySeries e = energy(traj);
  const DwdtSeries dw = dwdt_norm(traj, solver);
  const Reconstruction rec = reconstruct_u(traj, fw, solver);

  out.series = Table({"time", "w_l2", "kinetic", "dissipation_cum", "total", "dwdt_hminus1", "relative_divergence"});
  double w_sup = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double w = std::sqrt(e.kinetic[i]);
    w_sup = std::max(w_sup, w);
    out.series.row({traj.times[i], w, e.kinetic[i], e.dissipation_cum[i], e.total[i], dw.hminus1[i],
                    relative_divergence(traj.w_states[i])});
  }
  const double f_norm = l2_norm(fw);
  double residual_max = 0.0;
  for (double r : rec.residual) residual_max = std::max(residual_max, r);

  out.summary["w_sup"] = number(w_sup);
  out.summary["w_sup_relative"] = number(f_norm > 0.0 ? w_sup / f_norm : 0.0);
  out.summary["data_l2_norm"] = number(f_norm);
  out.summary["energy_sup"] = number(e.sup_total);
  out.summary["max_budget_violation"] = number(traj.max_budget_violation);
  out.summary["max_relative_divergence"] = number(traj.max_relative_divergence);
  out.summary["max_support_leak"] = number(traj.max_support_leak);
  out.summary["dwdt_time_norm"] = number(dw.time_norm);
  out.summary["dwdt_time_exponent"] = number(dw.time_exponent);
  out.summary["residual_max"] = number(residual_max);
  out.summary["steps"] = traj.steps;
  out.summary["cutoff"] = number(solver.cutoff);
  out.summary["stability_bound"] = number(problem.stability_bound());
  out.summary["integrator"] = std::string(to_string(solver.integrator));
  if (config.gamma < 0.0) {
    out.summary["lambda"] = number(condtg_check(fw, config.gamma, config.horizon, config.s, config.per_decade).lambda);
  }

  out.check(traj.max_budget_violation <= 1e-8,
            "energy inequality violated by " + format_number(traj.max_budget_violation));
  out.check(traj.max_relative_divergence <= 1e-10, "fluctuation lost the divergence-free property");
  out.check(traj.max_support_leak == 0.0, "fluctuation left the cutoff ball");
  if (config.data == DataKind::taylor_green) {
    out.check(w_sup <= 1e-6 * f_norm, "Taylor-Green fluctuation " + format_number(w_sup) + " exceeds 1e-6 ||f||");
  }

  const fs::path final_cp = dir / "checkpoint.nsrw";
  save_checkpoint(traj.w_states.back(), traj.times.back(), solver.cutoff, final_cp);
  if (config.checkpoint_at > 0.0) {
    bool written = false;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      if (std::abs(traj.times[i] - config.checkpoint_at) <= 1e-12 * config.horizon) {
        save_checkpoint(traj.w_states[i], traj.times[i], solver.cutoff, dir / "checkpoint_at.nsrw");
        written = true;
        break;
      }
    }
    out.check(written, "checkpoint_at " + format_number(config.checkpoint_at) + " is not a snapshot time");
  }

  if (!config.cutoff_sweep.empty()) {
    std::vector<double> cutoffs = config.cutoff_sweep;
    std::vector<double> sups(cutoffs.size(), 0.0);
    parallel_for(cutoffs.size(), resolve_workers(config.threads), [&](std::size_t i) {
      SolverConfig c = solver;
      c.cutoff = cutoffs[i];
      sups[i] = energy(FluctuationProblem(c, fw).solve()).sup_total;
    });
    const auto [lo, hi] = std::minmax_element(sups.begin(), sups.end());
    const double spread = *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
    json sweep = json::array();
    for (std::size_t i = 0; i < cutoffs.size(); ++i) sweep.push_back({{"n", cutoffs[i]}, {"energy_sup", number(sups[i])}});
    out.summary["cutoff_sweep"] = sweep;
    out.summary["cutoff_sweep_spread"] = number(spread);
    out.check(spread < 0.2, "energy sup varies by " + format_number(spread) + " across cutoffs");
  }

  Table residual({"time", "residual_hminus1"});
  for (std::size_t i = 0; i < rec.residual.size(); ++i) residual.row({rec.residual_times[i], rec.residual[i]});
  out.plots.emplace_back("residual", std::move(residual));
  return {e.sup_total};
}

void run_report(const ExperimentConfig& config, Outputs& out) {
  Outputs heat;
  run_heatflow(config, heat, false);
  out.series = std::move(heat.series);
  out.summary = std::move(heat.summary);
  out.failures = std::move(heat.failures);
  const SpectralField fw = realised_data(config);
  out.summary["hminus_s_norm_f_omega"] = number(hminus_s_norm(fw, config.s));
  out.summary["l2_norm_f_omega"] = number(l2_norm(fw));
  if (config.gamma < 0.0) {
    const CondtgReport lam = condtg_check(fw, config.gamma, config.horizon, config.s, config.per_decade);
    json terms = json::object();
    for (const auto& t : lam.terms) terms[t.name] = number(t.value);
    out.summary["lambda"] = number(lam.lambda);
    out.summary["lambda_terms"] = terms;
  }
  out.summary["space_time_norm"] =
      number(space_time_norm(fw, config.norm_spec(), default_time_grid(config.horizon, config.per_decade)));
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_echo(const ExperimentConfig& config) {
  json j = json::parse(serialize_config(config));
  j.erase("threads");
  j.erase("output_dir");
  return j;
}

}  // namespace

SpectralField base_data(const ExperimentConfig& config) {
  const Grid grid = Grid::make(config.dim, config.points, config.length);
  switch (config.data) {
    case DataKind::rough:
      return rough_data(grid, config.s, config.tilt.value_or(default_tilt(config.dim)), config.amplitude,
                        config.data_seed);
    case DataKind::taylor_green: {
      SpectralField f = taylor_green(grid);
      f *= config.amplitude;
      return f;
    }
    case DataKind::single_mode: {
      Mode m{1, 0, 0};
      if (!config.mode.empty()) {
        m = {0, 0, 0};
        for (std::size_t a = 0; a < config.mode.size(); ++a) m[a] = config.mode[a];
      }
      // Direction orthogonal to the frequency keeps the mode divergence-free.
      std::array<double, 3> dir{0.0, 0.0, 0.0};
      if (m[1] == 0 && m[0] != 0) {
        dir[1] = 1.0;
      } else {
        const double norm = std::hypot(static_cast<double>(m[0]), static_cast<double>(m[1]));
        dir[0] = -m[1] / norm;
        dir[1] = m[0] / norm;
      }
      return single_mode(grid, m, dir, config.amplitude);
    }
  }
  throw InvalidArgument("unknown data kind");
}

SpectralField realised_data(const ExperimentConfig& config) {
  SpectralField f = base_data(config);
  if (config.data != DataKind::rough) return f;
  const RingPartition partition(f.grid());
  const auto draw = sample_coefficients(config.random_model(), partition.max_ring(), config.sample_index);
  return randomize(f, draw, partition);
}

RunResult run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const auto started = std::chrono::steady_clock::now();
  const fs::path dir = config.output_dir;
  fs::create_directories(dir);

  Outputs out;
  try {
    switch (config.experiment) {
      case Experiment::randomize: run_randomize(config, out); break;
      case Experiment::heatflow: run_heatflow(config, out, true); break;
      case Experiment::tails: run_tails(config, out); break;
      case Experiment::solve: run_solve(config, out, dir); break;
      case Experiment::report: run_report(config, out); break;
    }
  } catch (const Error& e) {
    out.failures.push_back(std::string("error: ") + e.what());
  }

  out.summary["experiment"] = std::string(to_string(config.experiment));
  out.summary["master_seed"] = config.master_seed;
  out.summary["config"] = config_echo(config);
  out.summary["failures"] = out.failures;

  if (!out.series.empty()) out.series.write(dir / "series.csv", ',');
  {
    std::ofstream summary(dir / "summary.json", std::ios::binary | std::ios::trunc);
    summary << out.summary.dump(2) << '\n';
  }
  if (config.plotdata && !out.plots.empty()) {
    fs::create_directories(dir / "plotdata");
    for (const auto& [name, table] : out.plots) table.write(dir / "plotdata" / (name + ".tsv"), '\t');
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  json meta{{"timestamp", utc_timestamp()},
            {"elapsed_seconds", elapsed},
            {"workers", resolve_workers(config.threads)}};
  std::ofstream(dir / "meta.json", std::ios::binary | std::ios::trunc) << meta.dump(2) << '\n';

  RunResult result;
  result.failures = out.failures;
  result.exit_code = out.failures.empty() ? 0 : 1;
  result.output_dir = dir;
  return result;
}

}  // namespace nsrand
