/* Copyright 2026 The cglab Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CGLAB_CGLAB_H_
#define CGLAB_CGLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CGLAB_BUILDING_LIBRARY)
#define CGLAB_API __declspec(dllexport)
#else
#define CGLAB_API __declspec(dllimport)
#endif
#else
#define CGLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cglab_status {
  CGLAB_OK = 0,
  CGLAB_ERR_INVALID_ARGUMENT = 1, /* malformed input, bad config, null pointer */
  CGLAB_ERR_DOMAIN = 2,           /* parameter outside the domain of an operation */
  CGLAB_ERR_IO = 3,
  CGLAB_ERR_INTERNAL = 4
} cglab_status;

typedef enum cglab_verdict {
  CGLAB_VERDICT_PASS = 0,
  CGLAB_VERDICT_FAIL = 1,
  CGLAB_VERDICT_INCONCLUSIVE = 2,
  CGLAB_VERDICT_EXCLUDED = 3
} cglab_verdict;

/* Opaque measured metric space. */
typedef struct cglab_space cglab_space;

CGLAB_API const char* cglab_version(void);

/* Message of the last failed call on this thread; never NULL. */
CGLAB_API const char* cglab_last_error(void);

/* Releases strings returned through char** out parameters. */
CGLAB_API void cglab_string_free(char* s);

/* generator_json: {"kind": "cone", "params": {"rho": 0.5, "radius": 4}} */
CGLAB_API cglab_status cglab_space_generate(const char* generator_json, size_t n_points,
                                            uint64_t seed, cglab_space** out);
CGLAB_API cglab_status cglab_space_from_json(const char* space_json, cglab_space** out);
CGLAB_API cglab_status cglab_space_load(const char* path, cglab_space** out);
CGLAB_API cglab_status cglab_space_to_json(const cglab_space* space, char** out);
CGLAB_API cglab_status cglab_space_save(const cglab_space* space, const char* path);
CGLAB_API void cglab_space_free(cglab_space* space);

CGLAB_API cglab_status cglab_space_size(const cglab_space* space, size_t* out);
CGLAB_API cglab_status cglab_space_distance(const cglab_space* space, size_t i, size_t j,
                                            double* out);

/* Runs one of: inspect, check-curvature, check-bg, check-excess,
 * scan-critical, verify-all. config_json may be NULL. report and csv
 * receive newly allocated strings (csv may be empty); either may be NULL
 * when not wanted. A failing verdict is not an error status. */
CGLAB_API cglab_status cglab_run_pipeline(const cglab_space* space, const char* pipeline,
                                          const char* config_json, char** report, char** csv,
                                          cglab_verdict* verdict);

/* config_json: {"n": 2, "kappa": 1, "eps": ..., "C": ..., "Cbar": ...} */
CGLAB_API cglab_status cglab_thresholds(const char* config_json, char** report,
                                        cglab_verdict* verdict);

CGLAB_API cglab_status cglab_jacobi_s(double kappa, double r, double* out);
CGLAB_API cglab_status cglab_comparison_angle(double kappa, double a, double b, double c,
                                              double* out);
CGLAB_API cglab_status cglab_phi(int n, double kappa, double r, double l, int closed_form,
                                 double* out);
CGLAB_API cglab_status cglab_ag_bound(double h, double s, int n, double* out);
/* has_cbar = 0 selects the threshold form. */
CGLAB_API cglab_status cglab_gamma_threshold(double eps, double C, int n, int has_cbar,
                                             double cbar, double* out);
CGLAB_API cglab_status cglab_contradiction_margin(int n, double kappa, double eps, double R,
                                                  double* out);

#ifdef __cplusplus
}
#endif

#endif /* CGLAB_CGLAB_H_ */
