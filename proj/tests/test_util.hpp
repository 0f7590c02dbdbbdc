// Shared helpers for the test suites.
#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "execution.hpp"
#include "objective.hpp"

namespace testutil {

using namespace paramils;

inline std::vector<Instance> instances(int n, const std::string& prefix = "i") {
  std::vector<Instance> out;
  for (int i = 1; i <= n; ++i) out.push_back({prefix + std::to_string(i), {}});
  return out;
}

/// Synthetic backend with an arbitrary joint cost function; used to build
/// landscapes with interactions (local minima) that the separable surrogate
/// cannot express.
class TableBackend : public Backend {
 public:
  using CostFn = std::function<double(const Configuration&, const Instance&,
                                      std::uint32_t)>;
  explicit TableBackend(CostFn fn) : fn_(std::move(fn)) {}
  bool simulated() const override { return true; }

 protected:
  RunOutcome execute(const ConfigurationSpace&, const Configuration& config,
                     const Instance& instance, std::uint32_t seed,
                     double captime) override {
    const double t = fn_(config, instance, seed);
    if (t <= captime) return {RunStatus::success, t};
    return {RunStatus::timeout, captime};
  }

 private:
  CostFn fn_;
};

/// Space + backend + list + evaluator bundle with correct member order.
struct Harness {
  ConfigurationSpace space;
  std::vector<Instance> train;
  std::unique_ptr<Backend> backend;
  InstanceSeedList list;
  Budget budget;
  Evaluator eval;

  Harness(ConfigurationSpace sp, std::vector<Instance> insts,
          std::unique_ptr<Backend> be, EvalSettings settings,
          std::uint64_t list_seed = 7)
      : space(std::move(sp)),
        train(std::move(insts)),
        backend(std::move(be)),
        list(train, Rng(list_seed)),
        eval(space, *backend, list, settings) {
    backend->set_budget(&budget);
    budget.arm();
  }
};

/// All distinct canonical feasible configurations of a space (brute force).
inline std::vector<Configuration> enumerate_configs(
    const ConfigurationSpace& space) {
  std::vector<Configuration> out;
  std::vector<std::string> seen;
  std::vector<int> values(space.parameter_count(), 0);
  while (true) {
    if (auto config = space.try_canonicalize(values)) {
      bool duplicate = false;
      for (const auto& id : seen)
        if (id == config->identity()) {
          duplicate = true;
          break;
        }
      if (!duplicate) {
        seen.push_back(config->identity());
        out.push_back(std::move(*config));
      }
    }
    // Odometer increment.
    std::size_t p = 0;
    for (; p < values.size(); ++p) {
      if (++values[p] <
          static_cast<int>(space.parameter(static_cast<int>(p)).domain.size()))
        break;
      values[p] = 0;
    }
    if (p == values.size()) break;
  }
  return out;
}

/// Independent PAR oracle: runs the surrogate model directly against the
/// first n (instance, seed) pairs, bypassing Evaluator and RunCache.
inline double oracle_par(const SurrogateModel& model,
                         const ConfigurationSpace& space,
                         InstanceSeedList& list, const Configuration& config,
                         int n, double penalty, double cutoff) {
  list.extend(n);
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double t = model.true_runtime(space, config, list.instance_at(i),
                                        list.seed_at(i));
    sum += (t <= cutoff) ? t : penalty * cutoff;
  }
  return sum / static_cast<double>(n);
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("paramils_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const auto p = path / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
  std::string sub(const std::string& name) const {
    return (path / name).string();
  }
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace testutil
