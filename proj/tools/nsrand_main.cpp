// nsrand: command-line driver for the randomized-data Navier-Stokes experiments.
//
//   nsrand {randomize|heatflow|tails|solve|report} --config <file>
//          [--seed S] [--out DIR] [--M N] [--threads T] [--print-config]
//
// Flags override fields of the config file, which override built-in defaults.
// NSRAND_THREADS caps the number of worker threads.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nsrand/config.hpp"
#include "nsrand/error.hpp"
#include "nsrand/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Randomized rough-data Navier-Stokes lab"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> threads;
  bool print_config = false;

  const std::pair<const char*, const char*> verbs[] = {
      {"randomize", "draw one randomization and check its invariants"},
      {"heatflow", "heat-semigroup decay of the randomized data"},
      {"tails", "Monte Carlo tail fit of the space-time norm"},
      {"solve", "integrate the truncated fluctuation system"},
      {"report", "norms, decay slopes and lambda for one draw"},
  };
  for (const auto& [name, help] : verbs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config,-c", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--M", samples, "Monte Carlo sample count");
    sub->add_option("--threads", threads, "worker threads (0: hardware concurrency)");
    sub->add_flag("--print-config", print_config, "print the resolved config and exit");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string verb = app.get_subcommands().front()->get_name();

  try {
    nsrand::ExperimentConfig config = nsrand::load_config(config_path);
    config.experiment = nsrand::experiment_from_string(verb);
    if (seed) config.master_seed = *seed;
    if (out_dir) config.output_dir = *out_dir;
    if (samples) config.monte_carlo_M = *samples;
    if (threads) config.threads = *threads;
    nsrand::validate_config(config);

    if (print_config) {
      std::cout << nsrand::serialize_config(config) << '\n';
      return 0;
    }
    const nsrand::RunResult result = nsrand::run_experiment(config);
    for (const auto& failure : result.failures) std::cerr << "FAIL: " << failure << '\n';
    std::cout << verb << ": " << (result.exit_code == 0 ? "ok" : "failed") << " -> "
              << result.output_dir.string() << '\n';
    return result.exit_code;
  } catch (const nsrand::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const nsrand::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
