/*
 * paramils — automatic algorithm configuration library.
 *
 * C interface to the configurator: load a scenario, override keys, run
 * independent configuration runs, evaluate configurations on a held-out
 * test set, and compare two result directories with a paired statistical
 * test.
 *
 * All functions return PILS_OK (0) on success, PILS_E_VALIDATION (1) for
 * invalid inputs, or PILS_E_RUNTIME (2) for execution failures; on error
 * pils_last_error() holds a message for the calling thread. Handles are
 * opaque and must be released with the matching *_free function.
 */
#ifndef PARAMILS_PARAMILS_H_
#define PARAMILS_PARAMILS_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define PILS_OK 0
#define PILS_E_VALIDATION 1
#define PILS_E_RUNTIME 2

typedef struct pils_scenario_s pils_scenario;
typedef struct pils_result_s pils_result;
typedef struct pils_report_s pils_report;

/* Library version string, e.g. "0.1.0". */
const char* pils_version(void);

/* Last error message of the calling thread; never NULL. */
const char* pils_last_error(void);

/* ---- scenarios ---------------------------------------------------------- */

/* Loads and validates a scenario file. */
int pils_scenario_load(const char* path, pils_scenario** out);

/* Overrides one scenario key ("strategy", "n", "seed", ...). The change is
 * validated immediately against the key's own constraints; cross-field
 * validation happens on use. */
int pils_scenario_set(pils_scenario* scenario, const char* key,
                      const char* value);

/* Re-runs full validation (cross-field constraints, file existence). */
int pils_scenario_validate(const pils_scenario* scenario);

/* One-line summary (strategy, budgets, backend). Owned by the handle. */
const char* pils_scenario_describe(const pils_scenario* scenario);

void pils_scenario_free(pils_scenario* scenario);

/* ---- configuration runs ------------------------------------------------- */

/* Executes `runs` independent configurator runs with seeds derived from the
 * scenario master seed. When out_dir is non-NULL and nonempty, writes
 * traj_run<i>.csv, report.json and best_config.txt there; existing outputs
 * are refused unless force != 0. Budget exhaustion is normal completion. */
int pils_configure(const pils_scenario* scenario, int runs,
                   const char* out_dir, int force, pils_result** out);

int pils_result_runs(const pils_result* result);
/* 1-based index of the run with the best training estimate. */
int pils_result_best_run(const pils_result* result);
/* Canonical "name=value,..." identity of the best incumbent. Owned by the
 * result handle. */
const char* pils_result_best_config(const pils_result* result);
/* Final training estimate of run (1-based); NaN when the run never finished
 * an evaluation. */
double pils_result_train_estimate(const pils_result* result, int run);
/* Test PAR of run (1-based); NaN without a test set. */
double pils_result_test_par(const pils_result* result, int run);
/* Consumed target-algorithm time of run (1-based), in seconds. */
double pils_result_consumed_s(const pils_result* result, int run);
void pils_result_free(pils_result* result);

/* ---- evaluation ---------------------------------------------------------- */

/* Evaluates the configuration in config_file ("name=value" lines) on the
 * scenario's test instances at the full cutoff. Writes eval.csv/eval.json
 * into out_dir when given. */
int pils_evaluate(const pils_scenario* scenario, const char* config_file,
                  const char* out_dir, int force, pils_report** out);

double pils_report_test_par(const pils_report* report);
int pils_report_timeouts(const pils_report* report);
int pils_report_runs(const pils_report* report);
void pils_report_free(pils_report* report);

/* ---- run comparison ------------------------------------------------------ */

/* Pairs per-run test PARs from two configure output directories by run index
 * and computes the two-sided paired Wilcoxon signed-rank p-value. */
int pils_compare(const char* dir_a, const char* dir_b, double* p_value,
                 int* pairs, double* mean_a, double* mean_b);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PARAMILS_PARAMILS_H_ */
