#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nsrand/config.hpp"
#include "nsrand/spectral_field.hpp"

namespace nsrand {

/// Deterministic base field f selected by config.data.
SpectralField base_data(const ExperimentConfig& config);
/// f^omega for config.sample_index; rough data is randomized, the others are used as is.
SpectralField realised_data(const ExperimentConfig& config);

struct RunResult {
  int exit_code = 0;  ///< 0 iff every assertion passed
  std::vector<std::string> failures;
  std::filesystem::path output_dir;
};

/// Runs config.experiment and writes into config.output_dir:
///   series.csv     first column time (ring for randomize, lambda for tails), then named metrics
///   summary.json   fitted constants, the config, and a "failures" array
///   meta.json      wall-clock timestamp, elapsed time and worker count
///   plotdata/*.tsv when config.plotdata
/// series.csv and summary.json depend only on the config and seed, not on the worker count.
RunResult run_experiment(const ExperimentConfig& config);

}  // namespace nsrand
