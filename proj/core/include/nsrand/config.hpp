#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nsrand/friedrichs_solver.hpp"
#include "nsrand/randomization.hpp"
#include "nsrand/stochastic_estimates.hpp"

namespace nsrand {

enum class Experiment { randomize, heatflow, tails, solve, report };
enum class DataKind { rough, taylor_green, single_mode };

std::string_view to_string(Experiment experiment);
Experiment experiment_from_string(std::string_view name);
std::string_view to_string(DataKind kind);
DataKind data_kind_from_string(std::string_view name);

/// Everything one run needs. JSON keys in parentheses where they differ from the member name.
struct ExperimentConfig {
  Experiment experiment = Experiment::report;
  // grid and data (d, N, L, T, s are required)
  int dim = 2;                   // (d)
  int points = 64;               // (N)
  double length = 0.0;           // (L)
  double horizon = 1.0;          // (T)
  double s = 0.25;
  DataKind data = DataKind::rough;
  double amplitude = 0.25;
  std::optional<double> tilt;    ///< default d/2 + 0.05
  std::vector<int> mode;         ///< single_mode frequency, d entries; empty: unit along axis 0
  std::uint64_t data_seed = 0;
  // randomization
  Family family = Family::rademacher;
  std::uint64_t master_seed = 0;
  std::uint64_t sample_index = 0;
  // space-time norm
  double gamma = -0.1;
  double sigma = 0.0;
  double p = 4.0;
  double q = 4.0;
  double r = 4.0;
  std::size_t monte_carlo_M = 1000;  // (M)
  int per_decade = 64;
  // heat flow
  std::vector<int> heat_orders{0, 1};  // (k)
  // solver
  std::optional<double> cutoff;  ///< (n); default N/4 (2pi/L)
  std::vector<double> cutoff_sweep;  ///< extra cutoffs for the uniformity check
  double dt = 1e-3;
  Integrator integrator = Integrator::ifrk4;
  bool substep_near_zero = true;
  int snapshot_cadence = 10;
  bool nonlinear = true;
  double checkpoint_at = 0.0;  ///< write checkpoint.nsrw at this time (0: only the final state)
  std::string resume_from;     ///< checkpoint to continue from
  // output
  std::string output_dir = "out";
  bool plotdata = true;
  std::size_t threads = 0;

  SolverConfig solver_config() const;
  NormSpec norm_spec() const;
  RandomModel random_model() const;
  double resolved_cutoff() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses JSON text. Unknown keys, missing required keys (d, N, L, T, s), wrong
/// types and constraint violations throw ConfigError naming the field.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Every field, so that parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);
/// Range and admissibility checks; throws ConfigError.
void validate_config(const ExperimentConfig& config);

}  // namespace nsrand
