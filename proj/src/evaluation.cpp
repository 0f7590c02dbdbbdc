#include "evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace paramils {

EvaluationReport test_performance(const ConfigurationSpace& space,
                                  const Configuration& config,
                                  const std::vector<Instance>& test_set,
                                  const std::vector<std::uint32_t>& seeds,
                                  double cutoff_max, double penalty,
                                  Backend& backend) {
  if (test_set.empty()) throw ValidationError("test set is empty");
  if (seeds.size() != test_set.size())
    throw ValidationError("need one seed per test instance");

  EvaluationReport report;
  report.config_identity = config.identity();
  report.config_text = space.configuration_text(config);
  report.cutoff_max = cutoff_max;
  report.penalty = penalty;

  double sum = 0.0;
  for (std::size_t i = 0; i < test_set.size(); ++i) {
    const Instance& inst = test_set[i];
    const std::uint32_t seed =
        inst.pinned_seed ? *inst.pinned_seed : seeds[i];
    const RunOutcome outcome =
        backend.run(space, config, inst, seed, cutoff_max);
    const double cost =
        outcome.successful() ? outcome.cost : penalty * cutoff_max;
    if (!outcome.successful()) ++report.timeout_count;
    report.per_instance.push_back({inst.name, cost, outcome.status});
    sum += cost;
  }
  report.test_par = sum / static_cast<double>(test_set.size());
  return report;
}

int select_best_of_k(const std::vector<double>& train_estimates) {
  if (train_estimates.empty())
    throw ValidationError("best-of-k selection over zero runs");
  int best = 0;
  for (int i = 1; i < static_cast<int>(train_estimates.size()); ++i) {
    const double cur = train_estimates[static_cast<size_t>(i)];
    const double ref = train_estimates[static_cast<size_t>(best)];
    if (std::isnan(cur)) continue;
    if (std::isnan(ref) || cur < ref) best = i;
  }
  return best;
}

namespace {

// Exact two-sided p-value for the signed-rank statistic, conditional on the
// observed (doubled, tie-adjusted) ranks: enumerate the null distribution of
// W+ over all sign assignments with a subset-sum table.
double exact_two_sided(const std::vector<long>& doubled_ranks, long w2) {
  long total = 0;
  for (long r : doubled_ranks) total += r;
  std::vector<double> counts(static_cast<size_t>(total) + 1, 0.0);
  counts[0] = 1.0;
  long reached = 0;
  for (long r : doubled_ranks) {
    reached += r;
    for (long s = reached; s >= r; --s)
      counts[static_cast<size_t>(s)] += counts[static_cast<size_t>(s - r)];
  }
  const long lo = std::min(w2, total - w2);
  const long hi = std::max(w2, total - w2);
  double extreme = 0.0;
  for (long s = 0; s <= lo; ++s) extreme += counts[static_cast<size_t>(s)];
  for (long s = hi; s <= total; ++s) extreme += counts[static_cast<size_t>(s)];
  const double all = std::ldexp(1.0, static_cast<int>(doubled_ranks.size()));
  return std::min(1.0, extreme / all);
}

double normal_two_sided(const std::vector<long>& doubled_ranks, long w2) {
  const double n = static_cast<double>(doubled_ranks.size());
  const double w = static_cast<double>(w2) / 2.0;
  const double mean = n * (n + 1.0) / 4.0;
  // Tie correction: subtract sum(t^3 - t)/48 over groups of tied magnitudes.
  double tie_term = 0.0;
  {
    std::vector<long> sorted = doubled_ranks;
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < sorted.size()) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i);
      tie_term += t * t * t - t;
      i = j;
    }
  }
  const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
  if (var <= 0.0) return 1.0;
  double z = std::fabs(w - mean);
  z = std::max(0.0, z - 0.5) / std::sqrt(var);  // continuity correction
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace

double paired_wilcoxon(const std::vector<double>& a,
                       const std::vector<double>& b) {
  if (a.size() != b.size())
    throw ValidationError("paired test needs equal-length samples");
  if (a.size() < 5)
    throw ValidationError("paired test needs at least 5 pairs");

  struct Diff {
    double magnitude;
    bool positive;
  };
  std::vector<Diff> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back({std::fabs(d), d > 0.0});
  }
  if (diffs.empty()) return 1.0;

  std::sort(diffs.begin(), diffs.end(), [](const Diff& x, const Diff& y) {
    return x.magnitude < y.magnitude;
  });

  // Mid-ranks, doubled so ties stay integral.
  const std::size_t n = diffs.size();
  std::vector<long> doubled_ranks(n);
  long w2_plus = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && diffs[j].magnitude == diffs[i].magnitude) ++j;
    const long doubled = static_cast<long>(i + 1 + j);  // 2 * mean rank
    for (std::size_t k = i; k < j; ++k) {
      doubled_ranks[k] = doubled;
      if (diffs[k].positive) w2_plus += doubled;
    }
    i = j;
  }

  if (n <= 25) return exact_two_sided(doubled_ranks, w2_plus);
  return normal_two_sided(doubled_ranks, w2_plus);
}

std::string report_csv(const EvaluationReport& report) {
  std::string out = "instance,cost,status\n";
  char buf[64];
  for (const auto& row : report.per_instance) {
    std::snprintf(buf, sizeof(buf), "%.10g", row.cost);
    out += row.instance;
    out += ',';
    out += buf;
    out += ',';
    out += run_status_name(row.status);
    out += '\n';
  }
  return out;
}

std::string report_json(const EvaluationReport& report) {
  nlohmann::json j;
  j["config"] = report.config_identity;
  j["assignment"] = report.config_text;
  if (!std::isnan(report.train_estimate))
    j["train_par"] = report.train_estimate;
  else
    j["train_par"] = nullptr;
  if (!std::isnan(report.test_par))
    j["test_par"] = report.test_par;
  else
    j["test_par"] = nullptr;
  j["timeouts"] = report.timeout_count;
  j["runs"] = report.per_instance.size();
  j["cutoff_time"] = report.cutoff_max;
  j["penalty"] = report.penalty;
  return j.dump(2) + "\n";
}

}  // namespace paramils
