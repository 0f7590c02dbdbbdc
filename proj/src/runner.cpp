#include "runner.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace paramils {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path.string());
  out << content;
}

void refuse_existing(const std::vector<fs::path>& paths, bool force) {
  if (force) return;
  for (const auto& p : paths) {
    if (fs::exists(p))
      throw ValidationError("output exists (use --force to overwrite): " +
                            p.string());
  }
}

std::uint64_t fresh_master_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

Artifacts load_artifacts(const Scenario& scenario) {
  scenario.validate();
  Artifacts artifacts{
      ConfigurationSpace::parse(read_file(scenario.space_path)),
      load_instance_file(scenario.train_instances_path),
      {}};
  if (!scenario.test_instances_path.empty()) {
    artifacts.test = load_instance_file(scenario.test_instances_path);
    require_disjoint(artifacts.train, artifacts.test);
  }
  return artifacts;
}

std::unique_ptr<Backend> make_backend(const Scenario& scenario,
                                      const ConfigurationSpace& space,
                                      std::uint64_t derived_surrogate_seed) {
  if (scenario.surrogate) {
    SurrogateModel::Params params = *scenario.surrogate;
    if (!scenario.surrogate_seed_fixed) params.seed = derived_surrogate_seed;
    return std::make_unique<SurrogateBackend>(SurrogateModel(space, params));
  }
  return std::make_unique<WrapperBackend>(scenario.wrapper_command);
}

SingleRunResult run_single(
    const Scenario& scenario, const Artifacts& artifacts,
    std::uint64_t run_seed,
    const std::function<void(const Configuration&)>& on_candidate) {
  RngStreams streams = derive_rngs(run_seed);
  auto backend =
      make_backend(scenario, artifacts.space, streams.surrogate_seed);

  Budget budget;
  budget.target_seconds = scenario.budget_target_s;
  budget.wall_seconds = scenario.budget_wall_s;
  budget.max_iterations = scenario.max_iterations;
  budget.arm();
  backend->set_budget(&budget);

  InstanceSeedList list(artifacts.train, streams.blocking);

  EvalSettings settings;
  settings.cutoff_max = scenario.cutoff_time;
  settings.penalty = scenario.penalty;
  settings.capping = scenario.capping;
  settings.bound_multiplier = scenario.bound_multiplier;

  Evaluator evaluator(artifacts.space, *backend, list, settings);

  SingleRunResult result;
  result.run_seed = run_seed;
  result.trajectory.set_seed(run_seed);
  evaluator.set_trajectory(&result.trajectory);

  SearchContext ctx{artifacts.space, evaluator, streams.search,
                    scenario.max_iterations, on_candidate, {}};

  const Configuration start = artifacts.space.default_configuration();
  SearchParams params;
  params.initial_random = scenario.initial_random;
  params.perturbation_steps = scenario.perturbation_steps;
  params.restart_probability = scenario.restart_probability;

  ComparisonContext cmp;
  cmp.evaluator = &evaluator;
  cmp.fixed_n = scenario.fixed_n;
  BetterPredicate fixed = [&cmp](const Configuration& a,
                                 const Configuration& b) {
    return better_n(cmp, a, b);
  };
  BetterPredicate focused = [&cmp](const Configuration& a,
                                   const Configuration& b) {
    return better_foc(cmp, a, b);
  };

  switch (scenario.strategy) {
    case Strategy::basicils:
      result.incumbent = run_paramils(ctx, start, params, fixed);
      break;
    case Strategy::focusedils:
      result.incumbent = run_paramils(ctx, start, params, focused);
      break;
    case Strategy::random_search:
      result.incumbent = run_random_search(ctx, start, fixed);
      break;
    case Strategy::simplels:
      result.incumbent = run_simple_ls(ctx, start, params, fixed);
      break;
  }

  result.train_estimate = evaluator.incumbent_estimate();
  result.incumbent_runs = evaluator.incumbent_runs();
  result.consumed_target_s = evaluator.consumed_target_seconds();
  result.stats = ctx.stats;
  return result;
}

ConfigureResult configure(const Scenario& scenario, int k,
                          const std::string& out_dir, bool force) {
  if (k < 1) throw ValidationError("need at least one run");
  Artifacts artifacts = load_artifacts(scenario);

  ConfigureResult result;
  result.master_seed = scenario.seed ? *scenario.seed : fresh_master_seed();

  fs::path out;
  std::vector<fs::path> outputs;
  if (!out_dir.empty()) {
    out = out_dir;
    for (int i = 1; i <= k; ++i)
      outputs.push_back(out / ("traj_run" + std::to_string(i) + ".csv"));
    outputs.push_back(out / "report.json");
    outputs.push_back(out / "best_config.txt");
    refuse_existing(outputs, force);
    fs::create_directories(out);
  }

  // Test runs use one fixed seed list shared by all runs.
  std::vector<std::uint32_t> test_seeds;
  if (!artifacts.test.empty()) {
    RngStreams master_streams = derive_rngs(result.master_seed);
    for (std::size_t i = 0; i < artifacts.test.size(); ++i)
      test_seeds.push_back(uniform_u32(master_streams.target_seeds));
  }

  for (int i = 1; i <= k; ++i) {
    result.runs.push_back(
        run_single(scenario, artifacts, result.master_seed + i));
    if (!artifacts.test.empty()) {
      RngStreams streams = derive_rngs(result.master_seed);
      auto backend =
          make_backend(scenario, artifacts.space, streams.surrogate_seed);
      EvaluationReport report = test_performance(
          artifacts.space, result.runs.back().incumbent, artifacts.test,
          test_seeds, scenario.cutoff_time, scenario.penalty, *backend);
      result.test_pars.push_back(report.test_par);
    }
  }

  std::vector<double> train;
  for (const auto& run : result.runs) train.push_back(run.train_estimate);
  result.best_run = select_best_of_k(train);

  if (!out_dir.empty()) {
    for (int i = 1; i <= k; ++i) {
      std::ostringstream csv;
      result.runs[static_cast<size_t>(i - 1)].trajectory.write_csv(csv);
      write_file(out / ("traj_run" + std::to_string(i) + ".csv"), csv.str());
    }

    nlohmann::json j;
    j["master_seed"] = result.master_seed;
    j["runs"] = nlohmann::json::array();
    for (int i = 0; i < k; ++i) {
      const auto& run = result.runs[static_cast<size_t>(i)];
      nlohmann::json r;
      r["run"] = i + 1;
      r["seed"] = run.run_seed;
      r["incumbent"] = run.incumbent.identity();
      if (std::isnan(run.train_estimate))
        r["train_par"] = nullptr;
      else
        r["train_par"] = run.train_estimate;
      r["incumbent_runs"] = run.incumbent_runs;
      r["consumed_target_s"] = run.consumed_target_s;
      r["ils_iterations"] = run.stats.ils_iterations;
      r["restarts"] = run.stats.restarts;
      r["stop_reason"] = run.stats.stop_reason;
      if (!result.test_pars.empty())
        r["test_par"] = result.test_pars[static_cast<size_t>(i)];
      j["runs"].push_back(std::move(r));
    }
    j["best_run"] = result.best_run + 1;
    j["best_config"] =
        result.runs[static_cast<size_t>(result.best_run)].incumbent.identity();
    write_file(out / "report.json", j.dump(2) + "\n");

    write_file(out / "best_config.txt",
               artifacts.space.configuration_text(
                   result.runs[static_cast<size_t>(result.best_run)].incumbent));
  }
  return result;
}

EvaluationReport evaluate_config_file(const Scenario& scenario,
                                      const std::string& config_file,
                                      const std::string& out_dir, bool force) {
  Artifacts artifacts = load_artifacts(scenario);
  if (artifacts.test.empty())
    throw ValidationError("scenario has no test_instances to evaluate on");

  // Config file: one "name=value" per line, comments allowed.
  std::vector<std::pair<std::string, std::string>> pairs;
  {
    std::istringstream in(read_file(config_file));
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos)
        line.resize(hash);
      std::size_t b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError(line_no, 1, "expected 'name=value'");
      std::size_t e = line.find_last_not_of(" \t\r");
      std::string name = line.substr(b, eq - b);
      std::string value = line.substr(eq + 1, e - eq);
      while (!name.empty() && (name.back() == ' ' || name.back() == '\t'))
        name.pop_back();
      while (!value.empty() && (value.front() == ' ' || value.front() == '\t'))
        value.erase(value.begin());
      pairs.emplace_back(std::move(name), std::move(value));
    }
  }
  const Configuration config = artifacts.space.from_assignment(pairs);

  const std::uint64_t master = scenario.seed ? *scenario.seed : 0;
  RngStreams streams = derive_rngs(master);
  std::vector<std::uint32_t> seeds;
  for (std::size_t i = 0; i < artifacts.test.size(); ++i)
    seeds.push_back(uniform_u32(streams.target_seeds));

  auto backend =
      make_backend(scenario, artifacts.space, streams.surrogate_seed);
  EvaluationReport report =
      test_performance(artifacts.space, config, artifacts.test, seeds,
                       scenario.cutoff_time, scenario.penalty, *backend);

  if (!out_dir.empty()) {
    fs::path out(out_dir);
    refuse_existing({out / "eval.csv", out / "eval.json"}, force);
    fs::create_directories(out);
    write_file(out / "eval.csv", report_csv(report));
    write_file(out / "eval.json", report_json(report));
  }
  return report;
}

CompareResult compare_dirs(const std::string& dir_a,
                           const std::string& dir_b) {
  auto load_pars = [](const std::string& dir) {
    const fs::path path = fs::path(dir) / "report.json";
    if (!fs::exists(path))
      throw ValidationError("no report.json in " + dir);
    nlohmann::json j = nlohmann::json::parse(read_file(path.string()));
    std::vector<double> pars;
    for (const auto& run : j.at("runs")) {
      if (!run.contains("test_par"))
        throw ValidationError(dir + ": runs carry no test_par (scenario had "
                                    "no test_instances)");
      pars.push_back(run.at("test_par").get<double>());
    }
    return pars;
  };
  const std::vector<double> a = load_pars(dir_a);
  const std::vector<double> b = load_pars(dir_b);
  if (a.size() != b.size())
    throw ValidationError("run counts differ: " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()));

  CompareResult result;
  result.pairs = static_cast<int>(a.size());
  result.p_value = paired_wilcoxon(a, b);
  for (double v : a) result.mean_a += v;
  for (double v : b) result.mean_b += v;
  result.mean_a /= static_cast<double>(a.size());
  result.mean_b /= static_cast<double>(b.size());
  return result;
}

}  // namespace paramils
