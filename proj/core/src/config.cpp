#include "nsrand/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nsrand/error.hpp"

namespace nsrand {

using nlohmann::json;

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "experiment", "d",          "N",           "L",          "T",          "s",
      "data",       "amplitude",  "tilt",        "mode",       "data_seed",  "family",
      "master_seed", "sample_index", "gamma",    "sigma",      "p",          "q",
      "r",          "M",          "per_decade",  "k",          "n",          "cutoff_sweep",
      "dt",         "integrator", "substep_near_zero", "snapshot_cadence", "nonlinear", "checkpoint_at",
      "resume_from", "output_dir", "plotdata",   "threads"};
  return keys;
}

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(key, std::string("wrong type (") + e.what() + ")");
  }
}

double get_number(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(key, "must be a number");
  return v.get<double>();
}

template <typename T>
T get_integer(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(key, "must be an integer");
  if constexpr (std::is_unsigned_v<T>) {
    if (v.is_number_unsigned() || v.get<std::int64_t>() >= 0) return v.get<T>();
    throw ConfigError(key, "must be non-negative");
  } else {
    return v.get<T>();
  }
}

bool get_bool(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_boolean()) throw ConfigError(key, "must be true or false");
  return v.get<bool>();
}

std::string get_string(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(key, "must be a string");
  return v.get<std::string>();
}

std::optional<double> get_optional_number(const json& j, const std::string& key) {
  if (j.at(key).is_null()) return std::nullopt;
  return get_number(j, key);
}

template <typename Fn>
auto named(const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(key, e.what());
  }
}

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string_view to_string(Experiment experiment) {
  switch (experiment) {
    case Experiment::randomize: return "randomize";
    case Experiment::heatflow: return "heatflow";
    case Experiment::tails: return "tails";
    case Experiment::solve: return "solve";
    case Experiment::report: return "report";
  }
  return "report";
}

Experiment experiment_from_string(std::string_view name) {
  for (Experiment e : {Experiment::randomize, Experiment::heatflow, Experiment::tails, Experiment::solve,
                       Experiment::report}) {
    if (name == to_string(e)) return e;
  }
  throw InvalidArgument("unknown experiment '" + std::string(name) + "'");
}

std::string_view to_string(DataKind kind) {
  switch (kind) {
    case DataKind::rough: return "rough";
    case DataKind::taylor_green: return "taylor_green";
    case DataKind::single_mode: return "single_mode";
  }
  return "rough";
}

DataKind data_kind_from_string(std::string_view name) {
  for (DataKind k : {DataKind::rough, DataKind::taylor_green, DataKind::single_mode}) {
    if (name == to_string(k)) return k;
  }
  throw InvalidArgument("unknown data kind '" + std::string(name) + "'");
}

double ExperimentConfig::resolved_cutoff() const {
  if (cutoff) return *cutoff;
  return points / 4.0 * (2.0 * std::numbers::pi / length);
}

SolverConfig ExperimentConfig::solver_config() const {
  SolverConfig c;
  c.dim = dim;
  c.points = points;
  c.length = length;
  c.cutoff = resolved_cutoff();
  c.horizon = horizon;
  c.dt = dt;
  c.s = s;
  c.gamma = gamma;
  c.integrator = integrator;
  c.substep_near_zero = substep_near_zero;
  c.snapshot_every = snapshot_cadence;
  c.nonlinear = nonlinear;
  return c;
}

NormSpec ExperimentConfig::norm_spec() const {
  NormSpec spec;
  spec.gamma = gamma;
  spec.sigma = sigma;
  spec.p = p;
  spec.q = q;
  spec.r = r;
  spec.s = s;
  spec.horizon = horizon;
  return spec;
}

RandomModel ExperimentConfig::random_model() const { return RandomModel::standard(family, master_seed); }

void validate_config(const ExperimentConfig& c) {
  if (c.dim != 2 && c.dim != 3) throw ConfigError("d", "must be 2 or 3");
  if (c.points < 8 || c.points % 2 != 0) throw ConfigError("N", "must be even and >= 8");
  if (!(c.length > 0.0) || !std::isfinite(c.length)) throw ConfigError("L", "must be positive");
  if (!(c.horizon > 0.0) || !std::isfinite(c.horizon)) throw ConfigError("T", "must be positive");
  if (c.dim == 2 && !(c.s > 0.0 && c.s < 1.0)) {
    throw ConfigError("s", "must satisfy 0 < s < 1 for d = 2 (heat-flow estimates need s < 1)");
  }
  if (c.dim == 3 && !(c.s > 0.0 && c.s < 0.25)) {
    throw ConfigError("s", "must satisfy 0 < s < 1/4 for d = 3");
  }
  if (!(c.amplitude >= 0.0)) throw ConfigError("amplitude", "must be non-negative");
  if (c.data == DataKind::taylor_green && c.dim != 2) throw ConfigError("data", "taylor_green requires d = 2");
  if (!c.mode.empty() && c.mode.size() != static_cast<std::size_t>(c.dim)) {
    throw ConfigError("mode", "must have d entries");
  }
  if (!(c.q >= 2.0)) throw ConfigError("q", "must be >= 2 (need r >= p >= q >= 2)");
  if (!(c.p >= c.q)) throw ConfigError("p", "must be >= q (need r >= p >= q >= 2)");
  if (!(c.r >= c.p)) throw ConfigError("r", "must be >= p (need r >= p >= q >= 2)");
  if (!(c.sigma >= 0.0)) throw ConfigError("sigma", "must be non-negative");
  if (!((c.sigma + c.s - 2.0 * c.gamma) * c.q < 2.0)) {
    throw ConfigError("gamma", "inadmissible exponents: need (sigma + s - 2 gamma) q < 2");
  }
  if (!(c.q * c.gamma > -1.0)) throw ConfigError("gamma", "q gamma must exceed -1");
  if (c.monte_carlo_M < 1) throw ConfigError("M", "must be >= 1");
  if (c.per_decade < 4) throw ConfigError("per_decade", "must be >= 4");
  for (int k : c.heat_orders) {
    if (k < 0 || k > 2) throw ConfigError("k", "orders must be 0, 1 or 2");
  }
  if (!(c.checkpoint_at >= 0.0 && c.checkpoint_at < c.horizon)) {
    throw ConfigError("checkpoint_at", "must lie in [0, T)");
  }
  if (c.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
  c.solver_config().validate();
  for (double n : c.cutoff_sweep) {
    SolverConfig sweep = c.solver_config();
    sweep.cutoff = n;
    sweep.validate();
  }
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  for (const auto& item : j.items()) {
    if (!known_keys().contains(item.key())) throw ConfigError(item.key(), "unknown key");
  }
  for (const char* key : {"d", "N", "L", "T", "s"}) {
    if (!j.contains(key)) throw ConfigError(key, "missing required field");
  }

  ExperimentConfig c;
  c.dim = get_integer<int>(j, "d");
  c.points = get_integer<int>(j, "N");
  c.length = get_number(j, "L");
  c.horizon = get_number(j, "T");
  c.s = get_number(j, "s");
  if (j.contains("experiment")) {
    c.experiment = named("experiment", [&] { return experiment_from_string(get_string(j, "experiment")); });
  }
  if (j.contains("data")) c.data = named("data", [&] { return data_kind_from_string(get_string(j, "data")); });
  if (j.contains("amplitude")) c.amplitude = get_number(j, "amplitude");
  if (j.contains("tilt")) c.tilt = get_optional_number(j, "tilt");
  if (j.contains("mode")) c.mode = get_as<std::vector<int>>(j, "mode");
  if (j.contains("data_seed")) c.data_seed = get_integer<std::uint64_t>(j, "data_seed");
  if (j.contains("family")) c.family = named("family", [&] { return family_from_string(get_string(j, "family")); });
  if (j.contains("master_seed")) c.master_seed = get_integer<std::uint64_t>(j, "master_seed");
  if (j.contains("sample_index")) c.sample_index = get_integer<std::uint64_t>(j, "sample_index");
  if (j.contains("gamma")) c.gamma = get_number(j, "gamma");
  if (j.contains("sigma")) c.sigma = get_number(j, "sigma");
  if (j.contains("p")) c.p = get_number(j, "p");
  if (j.contains("q")) c.q = get_number(j, "q");
  if (j.contains("r")) c.r = get_number(j, "r");
  if (j.contains("M")) c.monte_carlo_M = get_integer<std::size_t>(j, "M");
  if (j.contains("per_decade")) c.per_decade = get_integer<int>(j, "per_decade");
  if (j.contains("k")) c.heat_orders = get_as<std::vector<int>>(j, "k");
  if (j.contains("n")) c.cutoff = get_optional_number(j, "n");
  if (j.contains("cutoff_sweep")) c.cutoff_sweep = get_as<std::vector<double>>(j, "cutoff_sweep");
  if (j.contains("dt")) c.dt = get_number(j, "dt");
  if (j.contains("integrator")) {
    c.integrator = named("integrator", [&] { return integrator_from_string(get_string(j, "integrator")); });
  }
  if (j.contains("substep_near_zero")) c.substep_near_zero = get_bool(j, "substep_near_zero");
  if (j.contains("snapshot_cadence")) c.snapshot_cadence = get_integer<int>(j, "snapshot_cadence");
  if (j.contains("nonlinear")) c.nonlinear = get_bool(j, "nonlinear");
  if (j.contains("checkpoint_at")) c.checkpoint_at = get_number(j, "checkpoint_at");
  if (j.contains("resume_from")) c.resume_from = get_string(j, "resume_from");
  if (j.contains("output_dir")) c.output_dir = get_string(j, "output_dir");
  if (j.contains("plotdata")) c.plotdata = get_bool(j, "plotdata");
  if (j.contains("threads")) c.threads = get_integer<std::size_t>(j, "threads");
  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  json j;
  j["experiment"] = std::string(to_string(c.experiment));
  j["d"] = c.dim;
  j["N"] = c.points;
  j["L"] = c.length;
  j["T"] = c.horizon;
  j["s"] = c.s;
  j["data"] = std::string(to_string(c.data));
  j["amplitude"] = c.amplitude;
  j["tilt"] = optional_to_json(c.tilt);
  j["mode"] = c.mode;
  j["data_seed"] = c.data_seed;
  j["family"] = std::string(to_string(c.family));
  j["master_seed"] = c.master_seed;
  j["sample_index"] = c.sample_index;
  j["gamma"] = c.gamma;
  j["sigma"] = c.sigma;
  j["p"] = c.p;
  j["q"] = c.q;
  j["r"] = c.r;
  j["M"] = c.monte_carlo_M;
  j["per_decade"] = c.per_decade;
  j["k"] = c.heat_orders;
  j["n"] = optional_to_json(c.cutoff);
  j["cutoff_sweep"] = c.cutoff_sweep;
  j["dt"] = c.dt;
  j["integrator"] = std::string(to_string(c.integrator));
  j["substep_near_zero"] = c.substep_near_zero;
  j["snapshot_cadence"] = c.snapshot_cadence;
  j["nonlinear"] = c.nonlinear;
  j["checkpoint_at"] = c.checkpoint_at;
  j["resume_from"] = c.resume_from;
  j["output_dir"] = c.output_dir;
  j["plotdata"] = c.plotdata;
  j["threads"] = c.threads;
  return j.dump(2);
}

}  // namespace nsrand
