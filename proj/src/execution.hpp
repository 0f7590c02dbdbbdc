// Target execution: subprocess wrapper backend, deterministic synthetic
// surrogate backend, per-configuration run cache with censored-run reuse.
#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "blocking.hpp"
#include "space.hpp"

namespace paramils {

enum class RunStatus { success, timeout, crashed };

const char* run_status_name(RunStatus status);

struct RunOutcome {
  RunStatus status = RunStatus::crashed;
  /// Runtime in seconds for success; the captime used otherwise.
  double cost = 0.0;

  bool successful() const { return status == RunStatus::success; }
};

/// One cached run: slot i of a configuration's run sequence refers to the
/// i-th (instance, seed) pair of the run's InstanceSeedList.
struct RunRecord {
  int instance_index = 0;  // 1-based position in the list
  std::uint32_t seed = 0;
  double captime = 0.0;  // cutoff the record is valid for (last requested)
  RunOutcome outcome;
};

/// Time/iteration limits for one configurator run. Target/wall budgets are
/// enforced by the backend before each fresh execution; iteration limits by
/// the search driver.
struct Budget {
  double target_seconds = std::numeric_limits<double>::infinity();
  double wall_seconds = std::numeric_limits<double>::infinity();
  long max_iterations = std::numeric_limits<long>::max();

  void arm() { wall_start_ = std::chrono::steady_clock::now(); }
  double wall_elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         wall_start_)
        .count();
  }
  /// Throws BudgetExhausted when a time budget is spent.
  void check_time(double consumed_target_seconds) const;

 private:
  std::chrono::steady_clock::time_point wall_start_ =
      std::chrono::steady_clock::now();
};

class Backend {
 public:
  virtual ~Backend() = default;

  /// Executes one run. Throws BudgetExhausted before starting a run when the
  /// budget is spent; throws BackendError on configuration-independent
  /// failures (those are never charged to the configuration).
  RunOutcome run(const ConfigurationSpace& space, const Configuration& config,
                 const Instance& instance, std::uint32_t seed, double captime);

  /// Total target time consumed so far: min(runtime, captime) per run.
  /// Simulated for the surrogate backend, reported time for subprocesses.
  double consumed_seconds() const { return consumed_; }

  /// Simulated backends report deterministic time; wall-clock columns in
  /// logs use consumed time instead of real time for them.
  virtual bool simulated() const = 0;

  void set_budget(const Budget* budget) { budget_ = budget; }
  long executed_runs() const { return executed_runs_; }

 protected:
  virtual RunOutcome execute(const ConfigurationSpace& space,
                             const Configuration& config,
                             const Instance& instance, std::uint32_t seed,
                             double captime) = 0;

 private:
  double consumed_ = 0.0;
  long executed_runs_ = 0;
  const Budget* budget_ = nullptr;
};

/// Multiplicative synthetic runtime model:
///   runtime = base * prod(active value effects) * hardness(instance) * noise
/// with lognormal noise derived from (config, instance, seed). Pure function
/// of its inputs, so whole configurator runs are bit-reproducible.
class SurrogateModel {
 public:
  struct Params {
    std::uint64_t seed = 1;
    double base = 1.0;
    double effect_sigma = 0.5;    // spread of per-value lognormal effects
    double hardness_sigma = 0.5;  // spread of per-instance multipliers
    double noise_sigma = 0.2;     // per-run lognormal noise scale
  };

  SurrogateModel(const ConfigurationSpace& space, const Params& params);

  /// Explicit-table constructor for tests and calibrated experiments:
  /// effects[p][v] multiplies the runtime when parameter p is active with
  /// value v; hardness applies per instance name (default 1).
  SurrogateModel(std::uint64_t noise_seed, double base,
                 std::vector<std::vector<double>> effects,
                 std::unordered_map<std::string, double> hardness,
                 double noise_sigma);

  /// Runtime before noise; the exact expectation oracle for noise-free
  /// models and the geometric median otherwise.
  double deterministic_runtime(const ConfigurationSpace& space,
                               const Configuration& config,
                               const Instance& instance) const;

  /// Full runtime including the per-run noise factor.
  double true_runtime(const ConfigurationSpace& space,
                      const Configuration& config, const Instance& instance,
                      std::uint32_t seed) const;

  double hardness(const std::string& instance_name) const;

 private:
  std::uint64_t seed_;
  double base_;
  double noise_sigma_;
  double hardness_sigma_ = 0.0;
  bool derived_hardness_ = false;
  std::vector<std::vector<double>> effects_;  // [param][value]
  std::unordered_map<std::string, double> hardness_;
};

class SurrogateBackend : public Backend {
 public:
  explicit SurrogateBackend(SurrogateModel model) : model_(std::move(model)) {}

  bool simulated() const override { return true; }
  const SurrogateModel& model() const { return model_; }

 protected:
  RunOutcome execute(const ConfigurationSpace& space,
                     const Configuration& config, const Instance& instance,
                     std::uint32_t seed, double captime) override;

 private:
  SurrogateModel model_;
};

/// Runs `<command...> <instance> <seed> <captime> -<param> <value> ...`
/// (active parameters, sorted by name) and parses a single line
/// `RESULT: (SUCCESS|TIMEOUT|CRASHED) <seconds>` from stdout. The process
/// group is killed captime + grace seconds after spawn.
class WrapperBackend : public Backend {
 public:
  explicit WrapperBackend(const std::string& command,
                          double grace_seconds = 1.0);

  bool simulated() const override { return false; }
  double last_wall_seconds() const { return last_wall_; }

 protected:
  RunOutcome execute(const ConfigurationSpace& space,
                     const Configuration& config, const Instance& instance,
                     std::uint32_t seed, double captime) override;

 private:
  std::vector<std::string> argv_prefix_;
  double grace_;
  double last_wall_ = 0.0;
};

class RunCache {
 public:
  /// Number of cached runs N for a configuration identity.
  int count(const std::string& identity) const;
  const std::vector<RunRecord>& runs(const std::string& identity) const;

  /// 1-based read access; slot must exist.
  const RunRecord& at(const std::string& identity, int slot) const;

  /// Stores at 1-based slot; slot must be <= count + 1.
  void store(const std::string& identity, int slot, RunRecord record);

  /// Largest run count over all configurations (incumbent invariant checks).
  int max_count() const { return max_count_; }

  std::size_t configurations() const { return runs_.size(); }

 private:
  std::unordered_map<std::string, std::vector<RunRecord>> runs_;
  int max_count_ = 0;
  static const std::vector<RunRecord> empty_;
};

/// Fetch-or-execute for run slot `slot` of `config` at cutoff `captime`.
/// A cached record is reused iff it is still conclusive at the new cutoff:
/// unsuccessful at a cutoff >= captime, or successful at a cutoff <= captime.
/// Otherwise a fresh run replaces the slot. Either way the stored record is
/// rewritten with the requested captime.
const RunRecord& get_or_run(RunCache& cache, Backend& backend,
                            const ConfigurationSpace& space,
                            const Configuration& config, int slot,
                            double captime, InstanceSeedList& list);

}  // namespace paramils
