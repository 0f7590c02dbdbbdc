// Scenario definition: ties together the space file, instance lists, backend
// choice, objective settings, budgets and seeds. Flat `key = value` file
// format, one key per line.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "execution.hpp"
#include "objective.hpp"
#include "rng.hpp"

namespace paramils {

enum class Strategy { basicils, focusedils, random_search, simplels };

const char* strategy_name(Strategy strategy);

struct Scenario {
  // Files, resolved against the scenario file's directory.
  std::string space_path;
  std::string train_instances_path;
  std::string test_instances_path;  // optional

  // Backend: exactly one of the two.
  std::string wrapper_command;
  std::optional<SurrogateModel::Params> surrogate;
  bool surrogate_seed_fixed = false;  // seed= given explicitly

  double cutoff_time = 0.0;  // kappa_max, seconds
  double penalty = 10.0;

  // Budgets; at least one limit must be finite.
  double budget_target_s = std::numeric_limits<double>::infinity();
  double budget_wall_s = std::numeric_limits<double>::infinity();
  long max_iterations = std::numeric_limits<long>::max();

  std::optional<std::uint64_t> seed;  // master seed; generated when absent

  Strategy strategy = Strategy::focusedils;
  int fixed_n = 100;  // N for basicils / random / simplels
  CappingMode capping = CappingMode::none;
  double bound_multiplier = 2.0;

  int initial_random = 10;            // r
  int perturbation_steps = 3;         // s
  double restart_probability = 0.01;  // p_restart

  /// Applies one `key = value` assignment. Unknown keys and malformed
  /// values throw ValidationError.
  void set(const std::string& key, const std::string& value);

  /// Checks cross-field constraints and referenced file existence.
  void validate() const;

  /// Round-trips through load(): load(save(s)) == s.
  std::string serialize() const;

  bool operator==(const Scenario& other) const = default;

  static Scenario parse(const std::string& text,
                        const std::string& base_dir = ".");
  static Scenario load(const std::string& path);

  /// Human-readable one-paragraph summary (used by `validate`).
  std::string describe() const;
};

/// Independent deterministic streams derived from one master seed.
struct RngStreams {
  Rng search;
  Rng blocking;
  Rng target_seeds;
  std::uint64_t surrogate_seed = 0;
};

RngStreams derive_rngs(std::uint64_t master_seed);

}  // namespace paramils
