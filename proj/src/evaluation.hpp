// Offline assessment: held-out test performance at the full cutoff,
// best-of-k selection by training estimate, and the two-sided paired
// Wilcoxon signed-rank test used to compare configurator runs.
#pragma once

#include <string>
#include <vector>

#include "execution.hpp"
#include "objective.hpp"

namespace paramils {

struct InstanceCost {
  std::string instance;
  double cost = 0.0;  // penalized cost contribution
  RunStatus status = RunStatus::crashed;
};

struct EvaluationReport {
  std::string config_identity;
  std::string config_text;  // "name=value" lines
  double train_estimate = std::numeric_limits<double>::quiet_NaN();
  double test_par = std::numeric_limits<double>::quiet_NaN();
  std::vector<InstanceCost> per_instance;
  int timeout_count = 0;  // unsuccessful runs (timeouts and crashes)
  double cutoff_max = 0.0;
  double penalty = 10.0;
};

/// One run per (instance, seed) at the full cutoff; PAR-p aggregate.
/// Seeds: pinned seed when the instance carries one, else seeds[i].
EvaluationReport test_performance(const ConfigurationSpace& space,
                                  const Configuration& config,
                                  const std::vector<Instance>& test_set,
                                  const std::vector<std::uint32_t>& seeds,
                                  double cutoff_max, double penalty,
                                  Backend& backend);

/// Index (0-based) of the smallest training estimate; ties keep the lowest
/// index. NaN estimates (runs that never completed an evaluation) lose to
/// any real value.
int select_best_of_k(const std::vector<double>& train_estimates);

/// Two-sided paired Wilcoxon signed-rank p-value. Zero differences are
/// dropped, tied magnitudes mid-ranked; exact (tie-aware) distribution up to
/// 25 informative pairs, normal approximation with tie correction beyond.
/// Requires a.size() == b.size() >= 5; returns 1.0 when all pairs tie.
double paired_wilcoxon(const std::vector<double>& a,
                       const std::vector<double>& b);

/// CSV rows `instance,cost,status`.
std::string report_csv(const EvaluationReport& report);
/// JSON summary (train/test PAR, timeout count, configuration).
std::string report_json(const EvaluationReport& report);

}  // namespace paramils
