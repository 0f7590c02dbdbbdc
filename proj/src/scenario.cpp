#include "scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace paramils {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("bad value for " + key + ": '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("bad value for " + key + ": '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("bad value for " + key + ": '" + value + "'");
  }
}

SurrogateModel::Params parse_surrogate(const std::string& value,
                                       bool& seed_fixed) {
  SurrogateModel::Params params;
  seed_fixed = false;
  if (value == "auto" || value == "default") return params;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw ValidationError("bad surrogate field '" + item +
                            "' (want key=value)");
    const std::string k = trim(item.substr(0, eq));
    const std::string v = trim(item.substr(eq + 1));
    if (k == "seed") {
      params.seed = parse_u64("surrogate.seed", v);
      seed_fixed = true;
    } else if (k == "base") {
      params.base = parse_double("surrogate.base", v);
    } else if (k == "effect_sigma") {
      params.effect_sigma = parse_double("surrogate.effect_sigma", v);
    } else if (k == "hardness_sigma") {
      params.hardness_sigma = parse_double("surrogate.hardness_sigma", v);
    } else if (k == "noise_sigma") {
      params.noise_sigma = parse_double("surrogate.noise_sigma", v);
    } else {
      throw ValidationError("unknown surrogate field '" + k + "'");
    }
  }
  return params;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::basicils:
      return "basicils";
    case Strategy::focusedils:
      return "focusedils";
    case Strategy::random_search:
      return "random";
    case Strategy::simplels:
      return "simplels";
  }
  return "?";
}

void Scenario::set(const std::string& key, const std::string& value) {
  if (key == "space") {
    space_path = value;
  } else if (key == "train_instances") {
    train_instances_path = value;
  } else if (key == "test_instances") {
    test_instances_path = value;
  } else if (key == "wrapper") {
    wrapper_command = value;
  } else if (key == "surrogate") {
    surrogate = parse_surrogate(value, surrogate_seed_fixed);
  } else if (key == "cutoff_time") {
    cutoff_time = parse_double(key, value);
  } else if (key == "penalty") {
    penalty = parse_double(key, value);
  } else if (key == "budget_target_s") {
    budget_target_s = parse_double(key, value);
  } else if (key == "budget_wall_s") {
    budget_wall_s = parse_double(key, value);
  } else if (key == "max_iterations") {
    max_iterations = parse_long(key, value);
  } else if (key == "seed") {
    seed = parse_u64(key, value);
  } else if (key == "strategy") {
    if (value == "basicils")
      strategy = Strategy::basicils;
    else if (value == "focusedils")
      strategy = Strategy::focusedils;
    else if (value == "random")
      strategy = Strategy::random_search;
    else if (value == "simplels")
      strategy = Strategy::simplels;
    else
      throw ValidationError("unknown strategy '" + value + "'");
  } else if (key == "capping") {
    if (value == "none")
      capping = CappingMode::none;
    else if (value == "tp")
      capping = CappingMode::trajectory_preserving;
    else if (value == "aggressive")
      capping = CappingMode::aggressive;
    else
      throw ValidationError("unknown capping mode '" + value + "'");
  } else if (key == "bm") {
    if (value == "inf" || value == "infinity")
      bound_multiplier = std::numeric_limits<double>::infinity();
    else
      bound_multiplier = parse_double(key, value);
  } else if (key == "n") {
    fixed_n = static_cast<int>(parse_long(key, value));
  } else if (key == "r") {
    initial_random = static_cast<int>(parse_long(key, value));
  } else if (key == "s") {
    perturbation_steps = static_cast<int>(parse_long(key, value));
  } else if (key == "p_restart") {
    restart_probability = parse_double(key, value);
  } else {
    throw ValidationError("unknown scenario key '" + key + "'");
  }
}

void Scenario::validate() const {
  if (space_path.empty()) throw ValidationError("missing required key: space");
  if (train_instances_path.empty())
    throw ValidationError("missing required key: train_instances");
  if (cutoff_time <= 0.0)
    throw ValidationError("cutoff_time must be positive");
  if (penalty < 1.0) throw ValidationError("penalty must be >= 1");
  const bool has_wrapper = !wrapper_command.empty();
  const bool has_surrogate = surrogate.has_value();
  if (has_wrapper == has_surrogate)
    throw ValidationError(
        "scenario needs exactly one of 'wrapper' and 'surrogate'");
  if (!std::isfinite(budget_target_s) && !std::isfinite(budget_wall_s) &&
      max_iterations == std::numeric_limits<long>::max())
    throw ValidationError(
        "missing budget: set budget_target_s, budget_wall_s or "
        "max_iterations");
  if (budget_target_s < 0.0 || budget_wall_s < 0.0)
    throw ValidationError("budgets must be nonnegative");
  if (max_iterations < 0)
    throw ValidationError("max_iterations must be nonnegative");
  if (fixed_n < 1) throw ValidationError("n must be >= 1");
  if (initial_random < 0) throw ValidationError("r must be >= 0");
  if (perturbation_steps < 1) throw ValidationError("s must be >= 1");
  if (restart_probability < 0.0 || restart_probability > 1.0)
    throw ValidationError("p_restart must be in [0, 1]");
  if (bound_multiplier < 1.0)
    throw ValidationError("bm must be >= 1 (or inf)");
  if (surrogate) {
    if (surrogate->base <= 0.0)
      throw ValidationError("surrogate.base must be positive");
    if (surrogate->effect_sigma < 0.0 || surrogate->hardness_sigma < 0.0 ||
        surrogate->noise_sigma < 0.0)
      throw ValidationError("surrogate sigmas must be nonnegative");
  }
  for (const std::string* path :
       {&space_path, &train_instances_path, &test_instances_path}) {
    if (path->empty()) continue;
    if (!std::filesystem::exists(*path))
      throw ValidationError("referenced file does not exist: " + *path);
  }
}

std::string Scenario::serialize() const {
  std::ostringstream out;
  out << "space = " << space_path << "\n";
  out << "train_instances = " << train_instances_path << "\n";
  if (!test_instances_path.empty())
    out << "test_instances = " << test_instances_path << "\n";
  if (!wrapper_command.empty()) out << "wrapper = " << wrapper_command << "\n";
  if (surrogate) {
    out << "surrogate = ";
    if (surrogate_seed_fixed) out << "seed=" << surrogate->seed << ",";
    out << "base=" << format_double(surrogate->base)
        << ",effect_sigma=" << format_double(surrogate->effect_sigma)
        << ",hardness_sigma=" << format_double(surrogate->hardness_sigma)
        << ",noise_sigma=" << format_double(surrogate->noise_sigma) << "\n";
  }
  out << "cutoff_time = " << format_double(cutoff_time) << "\n";
  out << "penalty = " << format_double(penalty) << "\n";
  if (std::isfinite(budget_target_s))
    out << "budget_target_s = " << format_double(budget_target_s) << "\n";
  if (std::isfinite(budget_wall_s))
    out << "budget_wall_s = " << format_double(budget_wall_s) << "\n";
  if (max_iterations != std::numeric_limits<long>::max())
    out << "max_iterations = " << max_iterations << "\n";
  if (seed) out << "seed = " << *seed << "\n";
  out << "strategy = " << strategy_name(strategy) << "\n";
  out << "n = " << fixed_n << "\n";
  out << "capping = " << capping_mode_name(capping) << "\n";
  if (std::isfinite(bound_multiplier))
    out << "bm = " << format_double(bound_multiplier) << "\n";
  else
    out << "bm = inf\n";
  out << "r = " << initial_random << "\n";
  out << "s = " << perturbation_steps << "\n";
  out << "p_restart = " << format_double(restart_probability) << "\n";
  return out.str();
}

Scenario Scenario::parse(const std::string& text,
                         const std::string& base_dir) {
  Scenario scenario;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(line_no, 1, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, 1, "empty key");
    try {
      scenario.set(key, value);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, 1, e.what());
    }
  }
  // Resolve file paths against the scenario's directory.
  for (std::string* path :
       {&scenario.space_path, &scenario.train_instances_path,
        &scenario.test_instances_path}) {
    if (path->empty()) continue;
    std::filesystem::path p(*path);
    if (p.is_relative()) *path = (std::filesystem::path(base_dir) / p).string();
  }
  return scenario;
}

Scenario Scenario::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string dir =
      std::filesystem::path(path).parent_path().string();
  return parse(buf.str(), dir.empty() ? "." : dir);
}

std::string Scenario::describe() const {
  std::ostringstream out;
  out << "strategy " << strategy_name(strategy);
  if (strategy != Strategy::focusedils) out << "(" << fixed_n << ")";
  out << ", capping " << capping_mode_name(capping);
  if (capping == CappingMode::aggressive) out << " bm=" << bound_multiplier;
  out << ", cutoff " << cutoff_time << "s, penalty " << penalty;
  if (std::isfinite(budget_target_s))
    out << ", target budget " << budget_target_s << "s";
  if (std::isfinite(budget_wall_s))
    out << ", wall budget " << budget_wall_s << "s";
  if (max_iterations != std::numeric_limits<long>::max())
    out << ", max " << max_iterations << " iterations";
  out << ", backend "
      << (wrapper_command.empty() ? "surrogate" : wrapper_command);
  return out.str();
}

RngStreams derive_rngs(std::uint64_t master_seed) {
  RngStreams streams;
  std::uint64_t state = master_seed;
  streams.search.seed(splitmix64(state));
  streams.blocking.seed(splitmix64(state));
  streams.target_seeds.seed(splitmix64(state));
  streams.surrogate_seed = splitmix64(state);
  return streams;
}

}  // namespace paramils
