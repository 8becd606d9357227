/*
 * Copyright 2026 The pqp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libpqp: simulated two-gate photonic processor, process
 * tomography of the (anti)commutator channel and coincidence-dip scans.
 *
 * All functions return a pqp_status. On failure a human-readable message
 * is available from pqp_last_error() until the next call on the same
 * thread. Handles are opaque and owned by the caller; release them with
 * the matching *_destroy function. Handles may be used from several
 * threads as long as no two threads touch the same handle at once.
 */

#ifndef PQP_PQP_H
#define PQP_PQP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PQP_BUILDING_LIBRARY)
#    define PQP_API __declspec(dllexport)
#  else
#    define PQP_API __declspec(dllimport)
#  endif
#else
#  define PQP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pqp_status {
  PQP_OK = 0,
  PQP_ERR_INVALID_ARGUMENT = 1, /* bad physical input or NULL handle */
  PQP_ERR_CONFIG = 2,           /* configuration schema or value violation */
  PQP_ERR_IO = 3,
  PQP_ERR_RUN_EXISTS = 4, /* output directory holds a previous run */
  PQP_ERR_BUFFER_TOO_SMALL = 5,
  PQP_ERR_INTERNAL = 6
} pqp_status;

typedef struct pqp_config pqp_config;
typedef struct pqp_report pqp_report;
typedef struct pqp_dip pqp_dip;

typedef struct pqp_report_values {
  double F; /* NaN when undefined (null commutator) */
  double sigma_F;
  double K;
  double sigma_K;
  double K_th;
  int null_commutator;
  int mle_iterations;
} pqp_report_values;

typedef struct pqp_dip_values {
  double visibility;
  double sigma_V;
  double alpha0_deg;
  double minimum_deg;
  double rms_residual;
  double amplitude;
  double offset;
  double v1; /* overlaps actually used, after an optional noise fit */
  double v2;
  size_t points;
} pqp_dip_values;

PQP_API const char* pqp_version(void);
PQP_API const char* pqp_last_error(void);
PQP_API const char* pqp_status_string(pqp_status status);

/* --- configuration ------------------------------------------------------ */

PQP_API pqp_status pqp_config_create(pqp_config** out);
PQP_API void pqp_config_destroy(pqp_config* cfg);

/* Strict JSON; fields present override the current values. */
PQP_API pqp_status pqp_config_load_file(pqp_config* cfg, const char* path);
PQP_API pqp_status pqp_config_load_string(pqp_config* cfg, const char* json_text);

/* Single field override, value as text: ("v1", "0.9"), ("alpha", "0:90:5"),
 * ("force", "true"). Hyphenated flag spellings are accepted. */
PQP_API pqp_status pqp_config_set(pqp_config* cfg, const char* key, const char* value);

/* Writes the results-relevant part of the configuration as JSON. If buf is
 * too small, *required receives the needed size including the terminator. */
PQP_API pqp_status pqp_config_to_json(const pqp_config* cfg, char* buf, size_t buf_len,
                                      size_t* required);

/* --- commands (write their files into the configured output directory) --- */

/* kind: "commutator" or "anticommutator"; program: "psi-" or "phi-". */
PQP_API pqp_status pqp_cmd_suite(const pqp_config* cfg, const char* kind);
PQP_API pqp_status pqp_cmd_tomo(const pqp_config* cfg, const char* kind);
PQP_API pqp_status pqp_cmd_dip(const pqp_config* cfg, const char* program);
PQP_API pqp_status pqp_cmd_calibrate(const pqp_config* cfg, const char* kind);

/* --- in-memory results -------------------------------------------------- */

PQP_API pqp_status pqp_tomo_run(const pqp_config* cfg, const char* kind, pqp_report** out);
PQP_API void pqp_report_destroy(pqp_report* report);
PQP_API pqp_status pqp_report_get(const pqp_report* report, pqp_report_values* out);
/* Reconstructed Choi matrix (Tr = 2 K^2), row-major real and imaginary parts. */
PQP_API pqp_status pqp_report_chi(const pqp_report* report, double re[16], double im[16]);

PQP_API pqp_status pqp_dip_run(const pqp_config* cfg, const char* program, pqp_dip** out);
PQP_API void pqp_dip_destroy(pqp_dip* dip);
PQP_API pqp_status pqp_dip_get(const pqp_dip* dip, pqp_dip_values* out);
/* Copies up to n points; any of the arrays may be NULL. */
PQP_API pqp_status pqp_dip_points(const pqp_dip* dip, double* alphas, double* counts,
                                  double* fitted, size_t n);

#ifdef __cplusplus
}
#endif

#endif /* PQP_PQP_H */
