/* C interface to the strongrate library. All handles are opaque; every call
   returns an sr_status and leaves a message for sr_last_error() on failure. */
#ifndef STRONGRATE_H
#define STRONGRATE_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(STRONGRATE_BUILDING_LIBRARY)
#    define SR_API __declspec(dllexport)
#  else
#    define SR_API __declspec(dllimport)
#  endif
#else
#  define SR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sr_status {
  SR_OK = 0,
  SR_ERR_INVALID_ARGUMENT = 1,
  SR_ERR_DOMAIN = 2,
  SR_ERR_QUADRATURE = 3,
  SR_ERR_OUT_OF_RANGE = 4,
  SR_ERR_GRID = 5,
  SR_ERR_ABORT_THRESHOLD = 6,
  SR_ERR_IO = 7,
  SR_ERR_INTERNAL = 99
} sr_status;

typedef struct sr_drift sr_drift;
typedef struct sr_transform sr_transform;
typedef struct sr_report sr_report;

SR_API const char* sr_version(void);

/* Message of the most recent failure on the calling thread ("" if none). */
SR_API const char* sr_last_error(void);

/* h_s(x) and mu_s(x) by direct quadrature with default settings. */
SR_API sr_status sr_eval_h(double s, double x, double* out);
SR_API sr_status sr_eval_mu_s(double s, double x, double* out);

/* kind: "mu-s", "indicator", "hat", "zero" or "constant=<c>"; s is used by mu-s. */
SR_API sr_status sr_drift_create(const char* kind, double s, sr_drift** out);
SR_API void sr_drift_destroy(sr_drift* drift);
SR_API sr_status sr_drift_eval(const sr_drift* drift, double x, double* out);
SR_API sr_status sr_drift_sup_norm(const sr_drift* drift, double* out);
/* *finite is set to 0 and *out to +inf for drifts without an L1 norm. */
SR_API sr_status sr_drift_l1_norm(const sr_drift* drift, double* out, int* finite);

/* step <= 0 selects the default 1e-4. */
SR_API sr_status sr_transform_create(const sr_drift* drift, double x_max, double step, sr_transform** out);
SR_API void sr_transform_destroy(sr_transform* transform);
SR_API sr_status sr_transform_G(const sr_transform* t, double x, double* out);
SR_API sr_status sr_transform_Gprime(const sr_transform* t, double x, double* out);
SR_API sr_status sr_transform_Ginv(const sr_transform* t, double y, double* out);
SR_API sr_status sr_transform_b(const sr_transform* t, double y, double* out);
SR_API sr_status sr_transform_bounds(const sr_transform* t, double* c1, double* c2);

/* Fully resolved configuration for verb after defaults and the keys of
   config_json (may be NULL). The returned string is freed with sr_string_free. */
SR_API sr_status sr_config_resolve(const char* verb, const char* config_json, char** out_json);
SR_API void sr_string_free(char* str);

/* Runs verb ("rate", "couple", "kappa", "occupation", "transform-check",
   "sobolev") with the given flat JSON configuration. */
SR_API sr_status sr_run(const char* verb, const char* config_json, sr_report** out);
SR_API void sr_report_destroy(sr_report* report);
/* Borrowed strings, valid until sr_report_destroy. */
SR_API const char* sr_report_json(const sr_report* report);
SR_API const char* sr_report_csv(const sr_report* report);
SR_API const char* sr_report_summary(const sr_report* report);
SR_API double sr_report_wall_seconds(const sr_report* report);
/* format: "csv", "json" or "both"; writes <base>.csv / <base>.json / <base>.timing.json. */
SR_API sr_status sr_report_write(const sr_report* report, const char* base, const char* format);

#ifdef __cplusplus
}
#endif

#endif
