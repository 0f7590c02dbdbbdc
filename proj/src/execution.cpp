#include "execution.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <thread>

#include "errors.hpp"

namespace paramils {

const char* run_status_name(RunStatus status) {
  switch (status) {
    case RunStatus::success:
      return "SUCCESS";
    case RunStatus::timeout:
      return "TIMEOUT";
    case RunStatus::crashed:
      return "CRASHED";
  }
  return "?";
}

void Budget::check_time(double consumed_target_seconds) const {
  if (consumed_target_seconds >= target_seconds)
    throw BudgetExhausted("target time");
  if (wall_elapsed() >= wall_seconds) throw BudgetExhausted("wall time");
}

RunOutcome Backend::run(const ConfigurationSpace& space,
                        const Configuration& config, const Instance& instance,
                        std::uint32_t seed, double captime) {
  if (captime <= 0.0) throw ValidationError("captime must be positive");
  if (budget_) budget_->check_time(consumed_);
  RunOutcome outcome = execute(space, config, instance, seed, captime);
  consumed_ += std::min(outcome.cost, captime);
  ++executed_runs_;
  return outcome;
}

// ---------------------------------------------------------------------------
// Surrogate backend

SurrogateModel::SurrogateModel(const ConfigurationSpace& space,
                               const Params& params)
    : seed_(params.seed),
      base_(params.base),
      noise_sigma_(params.noise_sigma),
      hardness_sigma_(params.hardness_sigma),
      derived_hardness_(true) {
  effects_.resize(space.parameter_count());
  for (std::size_t p = 0; p < space.parameter_count(); ++p) {
    const Parameter& param = space.parameter(static_cast<int>(p));
    effects_[p].resize(param.domain.size());
    for (std::size_t v = 0; v < param.domain.size(); ++v) {
      if (params.effect_sigma <= 0.0) {
        effects_[p][v] = 1.0;
        continue;
      }
      std::uint64_t h = hash_mix(seed_, 0x45ff45ull);
      h = hash_mix(h, fnv1a64(param.name));
      h = hash_mix(h, fnv1a64(param.domain[v]));
      Rng rng(h);
      effects_[p][v] = std::exp(params.effect_sigma * standard_normal(rng));
    }
  }
}

SurrogateModel::SurrogateModel(std::uint64_t noise_seed, double base,
                               std::vector<std::vector<double>> effects,
                               std::unordered_map<std::string, double> hardness,
                               double noise_sigma)
    : seed_(noise_seed),
      base_(base),
      noise_sigma_(noise_sigma),
      effects_(std::move(effects)),
      hardness_(std::move(hardness)) {}

double SurrogateModel::hardness(const std::string& instance_name) const {
  if (auto it = hardness_.find(instance_name); it != hardness_.end())
    return it->second;
  if (!derived_hardness_ || hardness_sigma_ <= 0.0) return 1.0;
  std::uint64_t h = hash_mix(seed_, 0xbadd1ull);
  h = hash_mix(h, fnv1a64(instance_name));
  Rng rng(h);
  return std::exp(hardness_sigma_ * standard_normal(rng));
}

double SurrogateModel::deterministic_runtime(const ConfigurationSpace& space,
                                             const Configuration& config,
                                             const Instance& instance) const {
  std::vector<bool> active = space.active_mask(config.values());
  double runtime = base_;
  for (std::size_t p = 0; p < space.parameter_count() && p < effects_.size();
       ++p) {
    if (!active[p]) continue;
    const auto& row = effects_[p];
    const int v = config.value(static_cast<int>(p));
    if (static_cast<std::size_t>(v) < row.size())
      runtime *= row[static_cast<size_t>(v)];
  }
  return runtime * hardness(instance.name);
}

double SurrogateModel::true_runtime(const ConfigurationSpace& space,
                                    const Configuration& config,
                                    const Instance& instance,
                                    std::uint32_t seed) const {
  double runtime = deterministic_runtime(space, config, instance);
  if (noise_sigma_ > 0.0) {
    std::uint64_t h = hash_mix(seed_, fnv1a64(config.identity()));
    h = hash_mix(h, fnv1a64(instance.name));
    h = hash_mix(h, seed);
    Rng rng(h);
    runtime *= std::exp(noise_sigma_ * standard_normal(rng));
  }
  return runtime;
}

RunOutcome SurrogateBackend::execute(const ConfigurationSpace& space,
                                     const Configuration& config,
                                     const Instance& instance,
                                     std::uint32_t seed, double captime) {
  const double runtime = model_.true_runtime(space, config, instance, seed);
  if (runtime <= captime) return {RunStatus::success, runtime};
  return {RunStatus::timeout, captime};
}

// ---------------------------------------------------------------------------
// Subprocess backend

namespace {

std::vector<std::string> split_command(const std::string& command) {
  std::vector<std::string> tokens;
  std::istringstream in(command);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

std::string format_seconds(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

}  // namespace

WrapperBackend::WrapperBackend(const std::string& command,
                               double grace_seconds)
    : argv_prefix_(split_command(command)), grace_(grace_seconds) {
  if (argv_prefix_.empty())
    throw ValidationError("wrapper command is empty");
}

RunOutcome WrapperBackend::execute(const ConfigurationSpace& space,
                                   const Configuration& config,
                                   const Instance& instance,
                                   std::uint32_t seed, double captime) {
  std::vector<std::string> argv = argv_prefix_;
  argv.push_back(instance.name);
  argv.push_back(std::to_string(seed));
  argv.push_back(format_seconds(captime));

  // Active parameters only, sorted by name.
  std::vector<bool> active = space.active_mask(config.values());
  std::vector<int> order;
  for (std::size_t p = 0; p < space.parameter_count(); ++p)
    if (active[p]) order.push_back(static_cast<int>(p));
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return space.parameter(a).name < space.parameter(b).name;
  });
  for (int p : order) {
    const Parameter& param = space.parameter(p);
    argv.push_back("-" + param.name);
    argv.push_back(param.domain[static_cast<size_t>(config.value(p))]);
  }

  std::vector<char*> c_argv;
  c_argv.reserve(argv.size() + 1);
  for (auto& a : argv) c_argv.push_back(a.data());
  c_argv.push_back(nullptr);

  FILE* out = std::tmpfile();
  if (!out) throw BackendError("cannot create temporary output file");
  const int out_fd = fileno(out);

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = fork();
  if (pid < 0) {
    std::fclose(out);
    throw BackendError(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    // Child: own process group so the whole tree can be killed on timeout.
    setpgid(0, 0);
    dup2(out_fd, STDOUT_FILENO);
    execvp(c_argv[0], c_argv.data());
    // Marker line lets the parent distinguish spawn failure from a crash.
    dprintf(STDERR_FILENO, "exec failed: %s: %s\n", c_argv[0],
            std::strerror(errno));
    dprintf(STDOUT_FILENO, "PARAMILS-EXEC-FAILED\n");
    _exit(127);
  }

  const double deadline = captime + grace_;
  bool killed = false;
  int wstatus = 0;
  while (true) {
    const pid_t r = waitpid(pid, &wstatus, WNOHANG);
    if (r == pid) break;
    if (r < 0) {
      std::fclose(out);
      throw BackendError(std::string("waitpid failed: ") +
                         std::strerror(errno));
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed > deadline && !killed) {
      kill(-pid, SIGKILL);
      killed = true;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  last_wall_ =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  std::string output;
  {
    std::fflush(out);
    std::rewind(out);
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), out)) > 0)
      output.append(buf, got);
    std::fclose(out);
  }

  if (output.find("PARAMILS-EXEC-FAILED") != std::string::npos)
    throw BackendError("cannot execute wrapper: " + argv_prefix_[0]);

  if (killed) return {RunStatus::timeout, captime};

  // Find the single RESULT line. Exit code is ignored when one is present.
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string tag, status_str;
    double reported = 0.0;
    if ((fields >> tag >> status_str >> reported) && tag == "RESULT:") {
      if (status_str == "SUCCESS") {
        if (!(reported >= 0.0) || reported > captime)
          return {RunStatus::timeout, captime};  // over the cap by its own report
        return {RunStatus::success, reported};
      }
      if (status_str == "TIMEOUT") return {RunStatus::timeout, captime};
      if (status_str == "CRASHED") return {RunStatus::crashed, captime};
      break;  // unknown status keyword -> crashed
    }
  }
  return {RunStatus::crashed, captime};
}

// ---------------------------------------------------------------------------
// Run cache

const std::vector<RunRecord> RunCache::empty_;

int RunCache::count(const std::string& identity) const {
  auto it = runs_.find(identity);
  return it == runs_.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<RunRecord>& RunCache::runs(
    const std::string& identity) const {
  auto it = runs_.find(identity);
  return it == runs_.end() ? empty_ : it->second;
}

const RunRecord& RunCache::at(const std::string& identity, int slot) const {
  return runs(identity)[static_cast<size_t>(slot - 1)];
}

void RunCache::store(const std::string& identity, int slot, RunRecord record) {
  auto& seq = runs_[identity];
  if (slot < 1 || slot > static_cast<int>(seq.size()) + 1)
    throw ValidationError("run slots must be filled in order");
  if (slot == static_cast<int>(seq.size()) + 1) {
    seq.push_back(record);
    max_count_ = std::max(max_count_, static_cast<int>(seq.size()));
  } else {
    seq[static_cast<size_t>(slot - 1)] = record;
  }
}

const RunRecord& get_or_run(RunCache& cache, Backend& backend,
                            const ConfigurationSpace& space,
                            const Configuration& config, int slot,
                            double captime, InstanceSeedList& list) {
  list.extend(slot);
  const std::string& id = config.identity();
  const int have = cache.count(id);
  if (slot <= have) {
    const RunRecord& old = cache.at(id, slot);
    const bool reusable = old.outcome.successful()
                              ? old.captime <= captime
                              : old.captime >= captime;
    if (reusable) {
      RunRecord updated = old;
      updated.captime = captime;
      if (!updated.outcome.successful())
        updated.outcome.cost = captime;  // cost of censored runs = cutoff
      cache.store(id, slot, updated);
      return cache.at(id, slot);
    }
  }
  RunRecord fresh;
  fresh.instance_index = slot;
  fresh.seed = list.seed_at(slot);
  fresh.captime = captime;
  fresh.outcome =
      backend.run(space, config, list.instance_at(slot), fresh.seed, captime);
  cache.store(id, slot, fresh);
  return cache.at(id, slot);
}

}  // namespace paramils
