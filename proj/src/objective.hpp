// Bounded configuration evaluation with adaptive capping.
//
// Evaluator::objective(config, n, bound) computes the penalized average
// runtime over the first n entries of the shared (instance, seed) list,
// terminating early once the lower bound (partial penalized sum / n) exceeds
// `bound`. Early-terminated evaluations return a penalty-encoded value that
// orders capped configurations by the number of instances still unsolved.
// The evaluator also owns the incumbent and keeps the invariant that the
// incumbent has at least as many runs as any evaluated configuration.
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>

#include "execution.hpp"
#include "trajectory.hpp"

namespace paramils {

inline constexpr double kInfiniteBound =
    std::numeric_limits<double>::infinity();

enum class CappingMode { none, trajectory_preserving, aggressive };

const char* capping_mode_name(CappingMode mode);

struct CostEstimate {
  /// PAR value, or penalty encoding max_objective + unsolved count when
  /// the evaluation was cut off at the bound.
  double value = 0.0;
  int n_runs = 0;
  bool capped = false;
  int unsolved_at_bound = 0;
  /// Penalized runtime sum backing the estimate (tiebreak for capped pairs).
  double penalized_sum = 0.0;
};

struct EvalSettings {
  double cutoff_max = 0.0;  // kappa_max
  double penalty = 10.0;    // PAR-p factor
  CappingMode capping = CappingMode::none;
  double bound_multiplier = 2.0;  // bm; infinity degrades aggressive to TP
};

/// Mean of penalized costs: runtime for successes, penalty * cutoff_max for
/// unsuccessful runs, regardless of the cutoff the run used.
double par(std::span<const RunRecord> records, double penalty,
           double cutoff_max);

class Evaluator {
 public:
  Evaluator(const ConfigurationSpace& space, Backend& backend,
            InstanceSeedList& list, EvalSettings settings);

  /// Bounded evaluation on the first n list entries. bound <= 0 is rejected;
  /// bound = infinity disables capping for this call (aggressive mode may
  /// still tighten it against the incumbent).
  CostEstimate objective(const Configuration& config, int n,
                         double bound = kInfiniteBound);

  /// Largest achievable PAR value; capped estimates encode above it.
  double max_objective() const {
    return settings_.penalty * settings_.cutoff_max;
  }

  const EvalSettings& settings() const { return settings_; }
  int run_count(const Configuration& config) const {
    return cache_.count(config.identity());
  }

  bool has_incumbent() const { return incumbent_.has_value(); }
  const Configuration& incumbent() const { return *incumbent_; }
  int incumbent_runs() const {
    return incumbent_ ? cache_.count(incumbent_->identity()) : 0;
  }
  /// PAR of the incumbent over all its runs; NaN before any run.
  double incumbent_estimate() const;

  /// Installs the starting configuration as incumbent (run count may be 0).
  void reset_incumbent(const Configuration& config);

  RunCache& cache() { return cache_; }
  const RunCache& cache() const { return cache_; }
  Backend& backend() { return backend_; }
  InstanceSeedList& list() { return list_; }

  double consumed_target_seconds() const { return backend_.consumed_seconds(); }
  /// Deterministic for simulated backends: equals consumed target time.
  double wall_seconds() const;

  std::uint64_t objective_calls() const { return calls_; }

  void set_trajectory(TrajectoryLog* log) { trajectory_ = log; }
  void set_iteration(long iteration) { iteration_ = iteration; }
  /// Appends an iteration-boundary row for the current incumbent.
  void log_boundary();

  /// When enabled, every objective() return checks that no configuration has
  /// more runs than the incumbent, and throws std::logic_error otherwise.
  void enable_invariant_check(bool on) { invariant_check_ = on; }

  /// Called whenever the incumbent identity changes.
  std::function<void(const Configuration&)> on_incumbent_change;

 private:
  double penalized_cost(const RunRecord& record) const;
  double penalized_prefix_sum(const std::string& identity, int n) const;
  double cached_mean(const std::string& identity, int n) const;
  void check_invariant() const;
  void log_incumbent_row();

  const ConfigurationSpace& space_;
  Backend& backend_;
  InstanceSeedList& list_;
  EvalSettings settings_;
  RunCache cache_;
  std::optional<Configuration> incumbent_;
  TrajectoryLog* trajectory_ = nullptr;
  long iteration_ = 0;
  std::uint64_t calls_ = 0;
  bool invariant_check_ = false;
  std::chrono::steady_clock::time_point created_ =
      std::chrono::steady_clock::now();
};

/// Candidate-favoring order on estimates: smaller value wins, penalized-sum
/// breaks value ties, remaining ties go to the left argument.
bool estimate_leq(const CostEstimate& lhs, const CostEstimate& rhs);

}  // namespace paramils
