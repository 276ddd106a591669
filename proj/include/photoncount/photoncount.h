/* C interface of the photoncount shared library.
 *
 * A run handle is created from a subcommand name and a JSON config,
 * executed (optionally writing CSV/JSON files into a directory), and
 * queried for its JSON summary. All strings returned by the library are
 * owned by the handle and stay valid until pcs_run_free.
 */
#ifndef PHOTONCOUNT_H
#define PHOTONCOUNT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  PCS_OK = 0,
  PCS_ERR_INTERNAL = 1,
  PCS_ERR_CONFIG = 2,   /* invalid config or parameters */
  PCS_ERR_NUMERIC = 3,  /* a numerical tolerance could not be met */
  PCS_ERR_STAT = 4      /* a statistical acceptance check failed */
} pcs_status;

typedef struct pcs_run pcs_run;

const char* pcs_version(void);

/* command: tables | evolve | trajectories | g2 | derive-check.
 * Never returns NULL; check pcs_run_status for parse/validation errors. */
pcs_run* pcs_run_new(const char* command, const char* config_json);

/* Overrides the config seed. Call before pcs_run_execute. */
void pcs_run_set_seed(pcs_run* run, uint64_t seed);

/* Runs the command. out_dir may be NULL to keep results in memory only;
 * otherwise summary.json and any CSV files are written there. */
pcs_status pcs_run_execute(pcs_run* run, const char* out_dir);

pcs_status pcs_run_status(const pcs_run* run);

/* Human-readable error message, or "" when there is none. */
const char* pcs_run_error(const pcs_run* run);

/* JSON summary of the last execute, or "" before execution. */
const char* pcs_run_summary(const pcs_run* run);

void pcs_run_free(pcs_run* run);

/* Standalone config validation: returns PCS_OK or PCS_ERR_CONFIG and,
 * when errbuf is non-NULL, copies the message into it. */
pcs_status pcs_config_validate(const char* config_json, char* errbuf,
                               unsigned long errbuf_len);

#ifdef __cplusplus
}
#endif

#endif /* PHOTONCOUNT_H */
