#include "objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace paramils {

const char* capping_mode_name(CappingMode mode) {
  switch (mode) {
    case CappingMode::none:
      return "none";
    case CappingMode::trajectory_preserving:
      return "tp";
    case CappingMode::aggressive:
      return "aggressive";
  }
  return "?";
}

double par(std::span<const RunRecord> records, double penalty,
           double cutoff_max) {
  if (records.empty()) throw ValidationError("PAR of an empty run sequence");
  double sum = 0.0;
  for (const auto& r : records)
    sum += r.outcome.successful() ? r.outcome.cost : penalty * cutoff_max;
  return sum / static_cast<double>(records.size());
}

Evaluator::Evaluator(const ConfigurationSpace& space, Backend& backend,
                     InstanceSeedList& list, EvalSettings settings)
    : space_(space), backend_(backend), list_(list), settings_(settings) {
  if (settings_.cutoff_max <= 0.0)
    throw ValidationError("cutoff_max must be positive");
  if (settings_.penalty < 1.0)
    throw ValidationError("penalty factor must be >= 1");
  if (settings_.bound_multiplier < 1.0)
    throw ValidationError("bound multiplier must be >= 1");
}

double Evaluator::penalized_cost(const RunRecord& record) const {
  return record.outcome.successful() ? record.outcome.cost : max_objective();
}

double Evaluator::penalized_prefix_sum(const std::string& identity,
                                       int n) const {
  const auto& runs = cache_.runs(identity);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += penalized_cost(runs[static_cast<size_t>(i)]);
  return sum;
}

double Evaluator::cached_mean(const std::string& identity, int n) const {
  return penalized_prefix_sum(identity, n) / static_cast<double>(n);
}

double Evaluator::incumbent_estimate() const {
  const int n = incumbent_runs();
  if (n == 0) return std::nan("");
  return cached_mean(incumbent_->identity(), n);
}

double Evaluator::wall_seconds() const {
  if (backend_.simulated()) return backend_.consumed_seconds();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       created_)
      .count();
}

void Evaluator::reset_incumbent(const Configuration& config) {
  incumbent_ = config;
  log_incumbent_row();
}

void Evaluator::log_incumbent_row() {
  if (!trajectory_ || !incumbent_) return;
  TrajectoryEntry entry;
  entry.wall_s = wall_seconds();
  entry.target_s = consumed_target_seconds();
  entry.iteration = iteration_;
  entry.incumbent_id = incumbent_->identity();
  entry.n_runs = incumbent_runs();
  const double est = incumbent_estimate();
  entry.train_estimate = std::isnan(est) ? 0.0 : est;
  trajectory_->append(std::move(entry));
}

void Evaluator::log_boundary() { log_incumbent_row(); }

void Evaluator::check_invariant() const {
  if (!invariant_check_ || !incumbent_) return;
  if (cache_.count(incumbent_->identity()) != cache_.max_count())
    throw std::logic_error(
        "incumbent invariant violated: a configuration has more runs than "
        "the incumbent");
}

CostEstimate Evaluator::objective(const Configuration& config, int n,
                                  double bound) {
  ++calls_;
  if (n < 1) throw ValidationError("objective needs n >= 1");
  if (!(bound > 0.0)) throw ValidationError("bound must be positive");
  if (!incumbent_) incumbent_ = config;

  const std::string& id = config.identity();
  const bool is_incumbent = (id == incumbent_->identity());

  // Keep the incumbent ahead of every other configuration.
  if (!is_incumbent && cache_.count(incumbent_->identity()) < n)
    objective(*incumbent_, n, kInfiniteBound);

  if (settings_.capping == CappingMode::aggressive && !is_incumbent &&
      cache_.count(incumbent_->identity()) >= n) {
    bound = std::min(bound, settings_.bound_multiplier *
                                cached_mean(incumbent_->identity(), n));
  }

  const bool bounded = std::isfinite(bound);
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    double captime = settings_.cutoff_max;
    if (bounded) {
      captime = std::min(settings_.cutoff_max,
                         static_cast<double>(n) * bound - sum);
      if (captime <= 0.0) {
        CostEstimate estimate;
        estimate.value = max_objective() + static_cast<double>(n + 1 - i);
        estimate.n_runs = n;
        estimate.capped = true;
        estimate.unsolved_at_bound = n + 1 - i;
        estimate.penalized_sum = sum;
        check_invariant();
        return estimate;
      }
    }
    const RunRecord& record =
        get_or_run(cache_, backend_, space_, config, i, captime, list_);
    sum += penalized_cost(record);
    if (bounded && sum / static_cast<double>(n) > bound) {
      CostEstimate estimate;
      estimate.value = max_objective() + static_cast<double>(n + 1 - i);
      estimate.n_runs = n;
      estimate.capped = true;
      estimate.unsolved_at_bound = n + 1 - i;
      estimate.penalized_sum = sum;
      check_invariant();
      return estimate;
    }
  }

  // Incumbent hand-over: at equal run counts the configuration with the
  // smaller total penalized runtime becomes the incumbent.
  if (!is_incumbent && n == cache_.count(incumbent_->identity())) {
    const double own = penalized_prefix_sum(id, cache_.count(id));
    const double inc = penalized_prefix_sum(incumbent_->identity(),
                                            cache_.count(incumbent_->identity()));
    if (own < inc) {
      incumbent_ = config;
      log_incumbent_row();
      if (on_incumbent_change) on_incumbent_change(config);
    }
  }

  CostEstimate estimate;
  estimate.value = sum / static_cast<double>(n);
  estimate.n_runs = n;
  estimate.penalized_sum = sum;
  check_invariant();
  return estimate;
}

bool estimate_leq(const CostEstimate& lhs, const CostEstimate& rhs) {
  if (lhs.value != rhs.value) return lhs.value < rhs.value;
  return lhs.penalized_sum <= rhs.penalized_sum;
}

}  // namespace paramils
