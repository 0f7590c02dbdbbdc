// paramils command-line tool. Links only the C API.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "paramils/paramils.h"

namespace {

struct ScenarioDeleter {
  void operator()(pils_scenario* s) const { pils_scenario_free(s); }
};
using ScenarioPtr = std::unique_ptr<pils_scenario, ScenarioDeleter>;

int fail(int code) {
  std::fprintf(stderr, "error: %s\n", pils_last_error());
  return code;
}

// Loads the scenario and applies --seed / --set overrides.
int load_scenario(const std::string& path,
                  const std::vector<std::string>& sets,
                  const std::string& seed, ScenarioPtr& out) {
  pils_scenario* raw = nullptr;
  if (int rc = pils_scenario_load(path.c_str(), &raw); rc != PILS_OK)
    return rc;
  out.reset(raw);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set wants KEY=VALUE, got '%s'\n",
                   kv.c_str());
      return PILS_E_VALIDATION;
    }
    if (int rc = pils_scenario_set(out.get(), kv.substr(0, eq).c_str(),
                                   kv.substr(eq + 1).c_str());
        rc != PILS_OK)
      return rc;
  }
  if (!seed.empty()) {
    if (int rc = pils_scenario_set(out.get(), "seed", seed.c_str());
        rc != PILS_OK)
      return rc;
  }
  return pils_scenario_validate(out.get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paramils: automatic algorithm configuration"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pils_version());

  std::string scenario_path, out_dir, seed, config_file;
  std::vector<std::string> sets;
  bool force = false;
  int runs = 1;

  auto add_common = [&](CLI::App* cmd, bool with_out) {
    cmd->add_option("scenario", scenario_path, "Scenario file")->required();
    cmd->add_option("--set", sets, "Override a scenario key (KEY=VALUE)")
        ->take_all();
    cmd->add_option("--seed", seed, "Master seed override");
    if (with_out) {
      cmd->add_option("--out", out_dir, "Output directory")->required();
      cmd->add_flag("--force", force, "Overwrite existing outputs");
    }
  };

  CLI::App* cmd_configure =
      app.add_subcommand("configure", "Search for a good configuration");
  add_common(cmd_configure, true);
  cmd_configure->add_option("--runs", runs,
                            "Independent configurator runs (seeds derived "
                            "from the master seed)")
      ->check(CLI::PositiveNumber);

  CLI::App* cmd_evaluate = app.add_subcommand(
      "evaluate", "Evaluate a configuration on the test instances");
  add_common(cmd_evaluate, true);
  cmd_evaluate->add_option("config", config_file, "Configuration file "
                           "(name=value lines)")
      ->required();

  std::string dir_a, dir_b;
  CLI::App* cmd_compare = app.add_subcommand(
      "compare", "Paired statistical comparison of two configure outputs");
  cmd_compare->add_option("dir_a", dir_a, "First result directory")
      ->required();
  cmd_compare->add_option("dir_b", dir_b, "Second result directory")
      ->required();

  CLI::App* cmd_validate =
      app.add_subcommand("validate", "Check a scenario file");
  add_common(cmd_validate, false);

  CLI11_PARSE(app, argc, argv);

  if (cmd_validate->parsed()) {
    ScenarioPtr scenario;
    if (int rc = load_scenario(scenario_path, sets, seed, scenario);
        rc != PILS_OK)
      return fail(rc);
    std::printf("scenario OK: %s\n", pils_scenario_describe(scenario.get()));
    return 0;
  }

  if (cmd_configure->parsed()) {
    ScenarioPtr scenario;
    if (int rc = load_scenario(scenario_path, sets, seed, scenario);
        rc != PILS_OK)
      return fail(rc);
    pils_result* result = nullptr;
    if (int rc = pils_configure(scenario.get(), runs, out_dir.c_str(),
                                force ? 1 : 0, &result);
        rc != PILS_OK)
      return fail(rc);
    const int n = pils_result_runs(result);
    for (int i = 1; i <= n; ++i) {
      const double train = pils_result_train_estimate(result, i);
      const double test = pils_result_test_par(result, i);
      std::printf("run %d: train %s", i,
                  std::isnan(train) ? "-" : std::to_string(train).c_str());
      if (!std::isnan(test)) std::printf(", test %g", test);
      std::printf(", consumed %.2fs\n", pils_result_consumed_s(result, i));
    }
    std::printf("best run: %d\n", pils_result_best_run(result));
    std::printf("best configuration: %s\n", pils_result_best_config(result));
    std::printf("outputs written to %s\n", out_dir.c_str());
    pils_result_free(result);
    return 0;
  }

  if (cmd_evaluate->parsed()) {
    ScenarioPtr scenario;
    if (int rc = load_scenario(scenario_path, sets, seed, scenario);
        rc != PILS_OK)
      return fail(rc);
    pils_report* report = nullptr;
    if (int rc = pils_evaluate(scenario.get(), config_file.c_str(),
                               out_dir.c_str(), force ? 1 : 0, &report);
        rc != PILS_OK)
      return fail(rc);
    std::printf("test PAR: %g over %d runs (%d timeouts)\n",
                pils_report_test_par(report), pils_report_runs(report),
                pils_report_timeouts(report));
    std::printf("outputs written to %s\n", out_dir.c_str());
    pils_report_free(report);
    return 0;
  }

  if (cmd_compare->parsed()) {
    double p = 1.0, mean_a = 0.0, mean_b = 0.0;
    int pairs = 0;
    if (int rc = pils_compare(dir_a.c_str(), dir_b.c_str(), &p, &pairs,
                              &mean_a, &mean_b);
        rc != PILS_OK)
      return fail(rc);
    std::printf("pairs: %d\n", pairs);
    std::printf("mean test PAR: A %g vs B %g\n", mean_a, mean_b);
    std::printf("two-sided paired Wilcoxon p = %g\n", p);
    if (p < 0.05)
      std::printf("significant at 0.05: %s is better\n",
                  mean_a < mean_b ? "A" : "B");
    else
      std::printf("no significant difference at 0.05\n");
    return 0;
  }

  return 0;
}
