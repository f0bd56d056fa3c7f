/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef KSPILL_H
#define KSPILL_H

/*
 * C interface of libkspill.
 *
 * Every fallible call returns a kspill_status. On failure the message is
 * available from kspill_last_error() on the same thread until the next call.
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_free function (passing NULL is allowed).
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(KSPILL_BUILDING_LIBRARY)
#    define KSPILL_API __declspec(dllexport)
#  else
#    define KSPILL_API __declspec(dllimport)
#  endif
#else
#  define KSPILL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kspill_status {
  KSPILL_OK = 0,
  KSPILL_ERR_IO = 1,
  KSPILL_ERR_SCHEMA = 2,
  KSPILL_ERR_DUPLICATE = 3,
  KSPILL_ERR_UNMAPPED = 4,
  KSPILL_ERR_INVALID_ARGUMENT = 5,
  KSPILL_ERR_UNFIT = 6,
  KSPILL_ERR_DEGENERATE = 7,
  KSPILL_ERR_INFEASIBLE = 8,
  KSPILL_ERR_INTERNAL = 9
} kspill_status;

KSPILL_API const char* kspill_version(void);
KSPILL_API const char* kspill_status_string(kspill_status status);
KSPILL_API const char* kspill_last_error(void);

/* ---- geo ---------------------------------------------------------------- */

KSPILL_API kspill_status kspill_geodesic_km(double lat_a, double lon_a,
                                            double lat_b, double lon_b,
                                            double* km_out);

/* ---- normalization ------------------------------------------------------ */

/* city_out receives a NUL-terminated string of at most city_cap - 1 bytes;
 * country_out receives the two-letter code plus NUL. */
KSPILL_API kspill_status kspill_normalize_address(const char* raw_city,
                                                  const char* raw_country,
                                                  char* city_out, size_t city_cap,
                                                  char country_out[3]);

/* ---- gravity ------------------------------------------------------------ */

typedef struct kspill_observation {
  double c_ij;
  double m_i;
  double m_j;
  double d_km;
} kspill_observation;

/* Arrays are indexed intercept, ln M_i, ln M_j, ln d. The ln d slots refer
 * to gamma (positive when flows decay with distance). */
typedef struct kspill_fit {
  double ln_k;
  double alpha;
  double beta;
  double gamma;
  double std_errors[4];
  double t_stats[4];
  double p_values[4];
  double r_squared;
  size_t n_obs;
  int significant_gamma;
} kspill_fit;

KSPILL_API kspill_status kspill_fit_loglog_ols(const kspill_observation* obs,
                                               size_t n, double significance,
                                               kspill_fit* out);

/* ---- run configuration -------------------------------------------------- */

typedef struct kspill_config kspill_config;

KSPILL_API kspill_status kspill_config_load(const char* path, kspill_config** out);
KSPILL_API void kspill_config_free(kspill_config* config);
/* "include", "exclude" or "both" */
KSPILL_API kspill_status kspill_config_set_self_policy(kspill_config* config,
                                                       const char* policy);
/* comma-separated subset of national,continental,intercontinental */
KSPILL_API kspill_status kspill_config_set_scales(kspill_config* config,
                                                  const char* scales);
KSPILL_API kspill_status kspill_config_set_output_dir(kspill_config* config,
                                                      const char* dir);
KSPILL_API const char* kspill_config_output_dir(const kspill_config* config);

/* ---- corpus ------------------------------------------------------------- */

typedef struct kspill_corpus kspill_corpus;

typedef struct kspill_corpus_stats {
  size_t publications;
  size_t cited_with_citations;
  size_t assigned;
  size_t citations;
  size_t unique_citing;
  size_t warnings;
} kspill_corpus_stats;

/* Loads the inputs named by the config and computes territory assignments. */
KSPILL_API kspill_status kspill_corpus_load(const kspill_config* config,
                                            kspill_corpus** out);
KSPILL_API kspill_status kspill_corpus_stats_get(const kspill_corpus* corpus,
                                                 kspill_corpus_stats* out);
KSPILL_API void kspill_corpus_free(kspill_corpus* corpus);

/* ---- commands ----------------------------------------------------------- */

typedef struct kspill_report kspill_report;

/* validate reports input problems through the report's exit code; run and
 * synth also return an error status when inputs are unusable. In every case
 * a non-NULL *out must be released with kspill_report_free. */
KSPILL_API kspill_status kspill_validate(const kspill_config* config,
                                         kspill_report** out);
KSPILL_API kspill_status kspill_run(const kspill_config* config, kspill_report** out);
/* out_dir may be NULL: $KSPILL_OUTPUT_DIR, else synth_out beside the config. */
KSPILL_API kspill_status kspill_synth(const char* synth_config_path,
                                      const char* out_dir, kspill_report** out);

KSPILL_API int kspill_report_exit_code(const kspill_report* report);
KSPILL_API const char* kspill_report_text(const kspill_report* report);
KSPILL_API void kspill_report_free(kspill_report* report);

#ifdef __cplusplus
}
#endif

#endif /* KSPILL_H */
