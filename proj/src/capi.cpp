// extern "C" surface of the library; translates exceptions into status codes
// and thread-local error messages.
#include "paramils/paramils.h"

#include <cmath>
#include <cstring>
#include <string>

#include "errors.hpp"
#include "runner.hpp"

using namespace paramils;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return PILS_OK;
  } catch (const ParseError& e) {
    set_error(e.what());
    return PILS_E_VALIDATION;
  } catch (const ValidationError& e) {
    set_error(e.what());
    return PILS_E_VALIDATION;
  } catch (const BackendError& e) {
    set_error(e.what());
    return PILS_E_RUNTIME;
  } catch (const std::exception& e) {
    set_error(e.what());
    return PILS_E_RUNTIME;
  }
}

}  // namespace

struct pils_scenario_s {
  Scenario scenario;
  mutable std::string describe_buf;
};

struct pils_result_s {
  ConfigureResult result;
  std::string best_config;
};

struct pils_report_s {
  EvaluationReport report;
};

extern "C" {

const char* pils_version(void) { return "0.1.0"; }

const char* pils_last_error(void) { return g_last_error.c_str(); }

int pils_scenario_load(const char* path, pils_scenario** out) {
  if (!path || !out) {
    set_error("NULL argument");
    return PILS_E_VALIDATION;
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<pils_scenario_s>();
    handle->scenario = Scenario::load(path);
    handle->scenario.validate();
    *out = handle.release();
  });
}

int pils_scenario_set(pils_scenario* scenario, const char* key,
                      const char* value) {
  if (!scenario || !key || !value) {
    set_error("NULL argument");
    return PILS_E_VALIDATION;
  }
  return guarded([&] { scenario->scenario.set(key, value); });
}

int pils_scenario_validate(const pils_scenario* scenario) {
  if (!scenario) {
    set_error("NULL argument");
    return PILS_E_VALIDATION;
  }
  return guarded([&] { scenario->scenario.validate(); });
}

const char* pils_scenario_describe(const pils_scenario* scenario) {
  if (!scenario) return "";
  scenario->describe_buf = scenario->scenario.describe();
  return scenario->describe_buf.c_str();
}

void pils_scenario_free(pils_scenario* scenario) { delete scenario; }

int pils_configure(const pils_scenario* scenario, int runs,
                   const char* out_dir, int force, pils_result** out) {
  if (!scenario || !out) {
    set_error("NULL argument");
    return PILS_E_VALIDATION;
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<pils_result_s>();
    handle->result = configure(scenario->scenario, runs,
                               out_dir ? out_dir : "", force != 0);
    handle->best_config =
        handle->result.runs[static_cast<size_t>(handle->result.best_run)]
            .incumbent.identity();
    *out = handle.release();
  });
}

int pils_result_runs(const pils_result* result) {
  return result ? static_cast<int>(result->result.runs.size()) : 0;
}

int pils_result_best_run(const pils_result* result) {
  return result ? result->result.best_run + 1 : 0;
}

const char* pils_result_best_config(const pils_result* result) {
  return result ? result->best_config.c_str() : "";
}

double pils_result_train_estimate(const pils_result* result, int run) {
  if (!result || run < 1 ||
      run > static_cast<int>(result->result.runs.size()))
    return std::nan("");
  return result->result.runs[static_cast<size_t>(run - 1)].train_estimate;
}

double pils_result_test_par(const pils_result* result, int run) {
  if (!result || run < 1 ||
      run > static_cast<int>(result->result.test_pars.size()))
    return std::nan("");
  return result->result.test_pars[static_cast<size_t>(run - 1)];
}

double pils_result_consumed_s(const pils_result* result, int run) {
  if (!result || run < 1 ||
      run > static_cast<int>(result->result.runs.size()))
    return std::nan("");
  return result->result.runs[static_cast<size_t>(run - 1)].consumed_target_s;
}

void pils_result_free(pils_result* result) { delete result; }

int pils_evaluate(const pils_scenario* scenario, const char* config_file,
                  const char* out_dir, int force, pils_report** out) {
  if (!scenario || !config_file || !out) {
    set_error("NULL argument");
    return PILS_E_VALIDATION;
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<pils_report_s>();
    handle->report = evaluate_config_file(
        scenario->scenario, config_file, out_dir ? out_dir : "", force != 0);
    *out = handle.release();
  });
}

double pils_report_test_par(const pils_report* report) {
  return report ? report->report.test_par : std::nan("");
}

int pils_report_timeouts(const pils_report* report) {
  return report ? report->report.timeout_count : 0;
}

int pils_report_runs(const pils_report* report) {
  return report ? static_cast<int>(report->report.per_instance.size()) : 0;
}

void pils_report_free(pils_report* report) { delete report; }

int pils_compare(const char* dir_a, const char* dir_b, double* p_value,
                 int* pairs, double* mean_a, double* mean_b) {
  if (!dir_a || !dir_b) {
    set_error("NULL argument");
    return PILS_E_VALIDATION;
  }
  return guarded([&] {
    CompareResult r = compare_dirs(dir_a, dir_b);
    if (p_value) *p_value = r.p_value;
    if (pairs) *pairs = r.pairs;
    if (mean_a) *mean_a = r.mean_a;
    if (mean_b) *mean_b = r.mean_b;
  });
}

}  // extern "C"
