// Workflow orchestration: loads scenario artifacts, executes k independent
// configurator runs with derived seeds, writes trajectory logs and reports,
// evaluates configurations on the test set, and compares two result
// directories with the paired signed-rank test.
#pragma once

#include <filesystem>
#include <memory>
#include <optional>

#include "evaluation.hpp"
#include "scenario.hpp"
#include "search.hpp"

namespace paramils {

struct Artifacts {
  ConfigurationSpace space;
  std::vector<Instance> train;
  std::vector<Instance> test;  // may be empty
};

Artifacts load_artifacts(const Scenario& scenario);

/// Backend factory; surrogate seed defaults to the stream derived from the
/// master seed unless the scenario pins one.
std::unique_ptr<Backend> make_backend(const Scenario& scenario,
                                      const ConfigurationSpace& space,
                                      std::uint64_t derived_surrogate_seed);

struct SingleRunResult {
  Configuration incumbent;
  double train_estimate = std::numeric_limits<double>::quiet_NaN();
  int incumbent_runs = 0;
  double consumed_target_s = 0.0;
  SearchStats stats;
  TrajectoryLog trajectory;
  std::uint64_t run_seed = 0;
};

/// One configurator run, fully determined by (scenario, run_seed).
SingleRunResult run_single(
    const Scenario& scenario, const Artifacts& artifacts,
    std::uint64_t run_seed,
    const std::function<void(const Configuration&)>& on_candidate = {});

struct ConfigureResult {
  std::vector<SingleRunResult> runs;
  std::vector<double> test_pars;  // empty without a test set
  int best_run = 0;               // 0-based index into runs
  std::uint64_t master_seed = 0;
};

/// Runs `k` independent configurations with seeds master+1 .. master+k,
/// evaluates each final incumbent on the test set (when present), picks the
/// best run by training estimate and, when out_dir is nonempty, writes
///   traj_run<i>.csv, report.json, best_config.txt
/// Refuses to overwrite existing outputs unless force is set.
ConfigureResult configure(const Scenario& scenario, int k,
                          const std::string& out_dir, bool force);

/// Evaluates the configuration in `config_file` ("name=value" lines) on the
/// test set at the full cutoff; writes eval.csv and eval.json when out_dir
/// is nonempty.
EvaluationReport evaluate_config_file(const Scenario& scenario,
                                      const std::string& config_file,
                                      const std::string& out_dir, bool force);

struct CompareResult {
  double p_value = 1.0;
  int pairs = 0;
  double mean_a = 0.0;
  double mean_b = 0.0;
};

/// Pairs per-run test PARs from two configure output directories by run
/// index and applies the paired signed-rank test.
CompareResult compare_dirs(const std::string& dir_a, const std::string& dir_b);

}  // namespace paramils
