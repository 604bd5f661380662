// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef NULLSHAPER_H
#define NULLSHAPER_H

#include <stddef.h>
#include <stdint.h>

#ifndef NS_EXPORT
#define NS_EXPORT __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ns_status {
  NS_OK = 0,
  NS_ERR_INVALID_ARGUMENT = 1,
  NS_ERR_VALIDATION = 2,
  NS_ERR_CONVERGENCE = 3,
  NS_ERR_NO_INTERSECTION = 4,
  NS_ERR_NOT_VISIBLE = 5,
  NS_ERR_DEGENERATE = 6,
  NS_ERR_UNSUPPORTED = 7,
  NS_ERR_IO = 8,
  NS_ERR_INTERNAL = 9
} ns_status;

typedef enum ns_cut_kind { NS_CUT_FIXED_PHI = 0, NS_CUT_FIXED_THETA = 1 } ns_cut_kind;

typedef enum ns_sweep_metric {
  NS_METRIC_MITIGATION = 0,
  NS_METRIC_CAPACITY = 1
} ns_sweep_metric;

typedef enum ns_polish_method {
  NS_POLISH_NONE = 0,
  NS_POLISH_COMPASS = 1,
  NS_POLISH_DIRECTION_SET = 2
} ns_polish_method;

typedef struct ns_scenario ns_scenario;
typedef struct ns_weights ns_weights;
typedef struct ns_design ns_design;
typedef struct ns_sweep ns_sweep;

NS_EXPORT const char *ns_version(void);

// Message of the last failed call on this thread; "" when none.
NS_EXPORT const char *ns_last_error(void);

NS_EXPORT const char *ns_status_name(ns_status status);

// 0 restores the default (NULLSHAPER_THREADS or hardware concurrency).
NS_EXPORT ns_status ns_set_threads(size_t count);
NS_EXPORT size_t ns_threads(void);

// Strings handed out by the library are released here.
NS_EXPORT void ns_string_free(char *s);

// Scenario

NS_EXPORT ns_status ns_scenario_load(const char *path, ns_scenario **out);
NS_EXPORT ns_status ns_scenario_parse(const char *json, ns_scenario **out);
NS_EXPORT void ns_scenario_free(ns_scenario *sc);

NS_EXPORT ns_status ns_scenario_seed(const ns_scenario *sc, uint64_t *seed);
NS_EXPORT ns_status ns_scenario_set_seed(ns_scenario *sc, uint64_t seed);
NS_EXPORT ns_status ns_scenario_set_kappa(ns_scenario *sc, double kappa);
NS_EXPORT ns_status ns_scenario_set_samples(ns_scenario *sc, size_t L);
// Applies the design spread to every interferer, degrees.
NS_EXPORT ns_status ns_scenario_set_sigma_s_deg(ns_scenario *sc, double sigma_s);
NS_EXPORT ns_status ns_scenario_set_polish(ns_scenario *sc, ns_polish_method method);

NS_EXPORT ns_status ns_scenario_array_shape(const ns_scenario *sc, size_t *rows,
                                            size_t *cols);
NS_EXPORT ns_status ns_scenario_counts(const ns_scenario *sc, size_t *users,
                                       size_t *interferers);
// Array-frame direction in degrees (theta off-nadir, phi from north).
NS_EXPORT ns_status ns_scenario_user_deg(const ns_scenario *sc, size_t k,
                                         double *theta, double *phi);
NS_EXPORT ns_status ns_scenario_interferer_deg(const ns_scenario *sc, size_t j,
                                               double *theta, double *phi);
NS_EXPORT ns_status ns_scenario_sigma_s_deg(const ns_scenario *sc, size_t j,
                                            double *sigma_s);
// Fails with NS_ERR_VALIDATION when the scenario has no satellite.
NS_EXPORT ns_status ns_scenario_satellite(const ns_scenario *sc, double *lon_deg,
                                          double *lat_deg, double *alt_m);

// Weights

// Uniform unit-norm weights for the scenario's array.
NS_EXPORT ns_status ns_weights_uniform(const ns_scenario *sc, ns_weights **out);
// Interleaved re/im pairs, `count` complex values; must satisfy |w|^2 <= 1.
NS_EXPORT ns_status ns_weights_from_interleaved(const double *re_im, size_t count,
                                                ns_weights **out);
NS_EXPORT void ns_weights_free(ns_weights *w);
NS_EXPORT ns_status ns_weights_size(const ns_weights *w, size_t *count);
NS_EXPORT ns_status ns_weights_get(const ns_weights *w, size_t i, double *re,
                                   double *im);
// m,n,re,im,amp,phase_rad with a header row.
NS_EXPORT ns_status ns_weights_csv(const ns_scenario *sc, const ns_weights *w,
                                   char **out);

NS_EXPORT ns_status ns_gain(const ns_scenario *sc, const ns_weights *w,
                            double theta_deg, double phi_deg, double *gain);
// Effectiveness of `w` against the scenario's design objective, dB.
NS_EXPORT ns_status ns_mitigation_db(const ns_scenario *sc, const ns_weights *w,
                                     double *psi_db);

// Design

NS_EXPORT ns_status ns_design_run(const ns_scenario *sc, ns_design **out);
NS_EXPORT void ns_design_free(ns_design *d);
NS_EXPORT ns_status ns_design_psi_db(const ns_design *d, double *psi_db);
NS_EXPORT ns_status ns_design_evaluations(const ns_design *d, size_t *count);
// Copy of the designed weights; free with ns_weights_free.
NS_EXPORT ns_status ns_design_weights(const ns_design *d, ns_weights **out);
// iteration,best_psi_db,evaluations with a header row.
NS_EXPORT ns_status ns_design_trace_csv(const ns_design *d, char **out);

// Pattern cuts. Both output arrays hold `samples` values.

NS_EXPORT ns_status ns_pattern_cut(const ns_scenario *sc, const ns_weights *w,
                                   ns_cut_kind kind, double fixed_deg,
                                   size_t samples, double *angle_deg,
                                   double *gain_db);
NS_EXPORT ns_status ns_null_width_deg(const double *angle_deg,
                                      const double *gain_db, size_t samples,
                                      double center_deg, double depth_db,
                                      double *width_deg);

// Monte-Carlo sweeps over sigma_i (degrees).

NS_EXPORT ns_status ns_sweep_run(const ns_scenario *sc, const ns_weights *w,
                                 ns_sweep_metric metric, const double *sigma_i_deg,
                                 size_t points, size_t trials, uint64_t seed,
                                 ns_sweep **out);
NS_EXPORT void ns_sweep_free(ns_sweep *s);
NS_EXPORT ns_status ns_sweep_rows(const ns_sweep *s, size_t *rows);
NS_EXPORT ns_status ns_sweep_row(const ns_sweep *s, size_t i, double *sigma_i_deg,
                                 double *mean, double *std, size_t *trials);
NS_EXPORT ns_status ns_sweep_csv(const ns_sweep *s, char **out);
// *found is 0 when the challenger never rises above the incumbent.
NS_EXPORT ns_status ns_sweep_crossover_deg(const ns_sweep *challenger,
                                           const ns_sweep *incumbent, int *found,
                                           double *sigma_i_deg);

// Geodesy (WGS84)

// Ground distance between the footprints of the ray (azimuth, elevation)
// leaving the satellite and the ray deviated by (d_azimuth, d_elevation).
NS_EXPORT ns_status ns_ground_deviation_m(double sat_lon_deg, double sat_lat_deg,
                                          double sat_alt_m, double azimuth_deg,
                                          double elevation_deg,
                                          double d_azimuth_deg,
                                          double d_elevation_deg,
                                          double *distance_m);

NS_EXPORT ns_status ns_geodetic_to_ecef(double lon_deg, double lat_deg,
                                        double alt_m, double *x, double *y,
                                        double *z);
NS_EXPORT ns_status ns_ecef_to_geodetic(double x, double y, double z,
                                        double *lon_deg, double *lat_deg,
                                        double *alt_m);

#ifdef __cplusplus
}
#endif

#endif // NULLSHAPER_H
