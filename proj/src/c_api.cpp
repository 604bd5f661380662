// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "nullshaper/nullshaper.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "nullshaper/error.hpp"
#include "nullshaper/geodesy.hpp"
#include "nullshaper/parallel.hpp"
#include "nullshaper/simulation.hpp"

using namespace nullshaper;
using geodesy::deg2rad;
using geodesy::rad2deg;

struct ns_scenario {
  simulation::Scenario sc;
};

struct ns_weights {
  array::WeightVector w;
};

struct ns_design {
  optimizer::OptimizationResult result;
};

struct ns_sweep {
  simulation::SweepResult result;
};

namespace {

thread_local std::string last_error;

ns_status status_of(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::InvalidArgument: return NS_ERR_INVALID_ARGUMENT;
  case ErrorKind::Validation: return NS_ERR_VALIDATION;
  case ErrorKind::Convergence: return NS_ERR_CONVERGENCE;
  case ErrorKind::NoIntersection: return NS_ERR_NO_INTERSECTION;
  case ErrorKind::NotVisible: return NS_ERR_NOT_VISIBLE;
  case ErrorKind::Degenerate: return NS_ERR_DEGENERATE;
  case ErrorKind::Unsupported: return NS_ERR_UNSUPPORTED;
  case ErrorKind::Io: return NS_ERR_IO;
  }
  return NS_ERR_INTERNAL;
}

ns_status fail(ns_status st, const std::string &msg) {
  last_error = msg;
  return st;
}

// Runs fn, translating exceptions into status codes.
template <class Fn> ns_status guarded(Fn &&fn) {
  try {
    last_error.clear();
    fn();
    return NS_OK;
  } catch (const Error &e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(NS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(NS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NS_ERR_INTERNAL, "unknown error");
  }
}

#define NS_REQUIRE(cond)                                                       \
  do {                                                                         \
    if (!(cond))                                                               \
      return fail(NS_ERR_INVALID_ARGUMENT, "null or invalid argument: " #cond); \
  } while (0)

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void check_weights(const ns_scenario *sc, const ns_weights *w) {
  if (w->w.size() != sc->sc.array.size())
    throw InvalidArgument("weight length " + std::to_string(w->w.size()) +
                          " does not match the array size " +
                          std::to_string(sc->sc.array.size()));
}

} // namespace

extern "C" {

const char *ns_version(void) { return NULLSHAPER_VERSION; }

const char *ns_last_error(void) { return last_error.c_str(); }

const char *ns_status_name(ns_status status) {
  switch (status) {
  case NS_OK: return "ok";
  case NS_ERR_INVALID_ARGUMENT: return "invalid argument";
  case NS_ERR_VALIDATION: return "validation error";
  case NS_ERR_CONVERGENCE: return "convergence failure";
  case NS_ERR_NO_INTERSECTION: return "no intersection";
  case NS_ERR_NOT_VISIBLE: return "not visible";
  case NS_ERR_DEGENERATE: return "degenerate distribution";
  case NS_ERR_UNSUPPORTED: return "unsupported";
  case NS_ERR_IO: return "i/o error";
  case NS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

ns_status ns_set_threads(size_t count) {
  return guarded([&] { set_thread_count(count); });
}

size_t ns_threads(void) { return thread_count(); }

void ns_string_free(char *s) { std::free(s); }

ns_status ns_scenario_load(const char *path, ns_scenario **out) {
  NS_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] { *out = new ns_scenario{simulation::load_scenario(path)}; });
}

ns_status ns_scenario_parse(const char *json, ns_scenario **out) {
  NS_REQUIRE(json && out);
  *out = nullptr;
  return guarded([&] { *out = new ns_scenario{simulation::parse_scenario(json)}; });
}

void ns_scenario_free(ns_scenario *sc) { delete sc; }

ns_status ns_scenario_seed(const ns_scenario *sc, uint64_t *seed) {
  NS_REQUIRE(sc && seed);
  *seed = sc->sc.seed;
  return NS_OK;
}

ns_status ns_scenario_set_seed(ns_scenario *sc, uint64_t seed) {
  NS_REQUIRE(sc);
  sc->sc.seed = seed;
  sc->sc.pso.seed = seed;
  return NS_OK;
}

ns_status ns_scenario_set_kappa(ns_scenario *sc, double kappa) {
  NS_REQUIRE(sc);
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    return fail(NS_ERR_VALIDATION, "kappa must be finite and non-negative");
  sc->sc.kappa = kappa;
  return NS_OK;
}

ns_status ns_scenario_set_samples(ns_scenario *sc, size_t L) {
  NS_REQUIRE(sc);
  if (L < 1)
    return fail(NS_ERR_VALIDATION, "L must be at least 1");
  sc->sc.L = L;
  return NS_OK;
}

ns_status ns_scenario_set_sigma_s_deg(ns_scenario *sc, double sigma_s) {
  NS_REQUIRE(sc);
  if (!(sigma_s >= 0.0) || !std::isfinite(sigma_s))
    return fail(NS_ERR_VALIDATION, "sigma_s must be finite and non-negative");
  sc->sc.set_sigma_s(deg2rad(sigma_s));
  return NS_OK;
}

ns_status ns_scenario_set_polish(ns_scenario *sc, ns_polish_method method) {
  NS_REQUIRE(sc);
  switch (method) {
  case NS_POLISH_NONE:
    sc->sc.pso.refinement.reset();
    return NS_OK;
  case NS_POLISH_COMPASS:
  case NS_POLISH_DIRECTION_SET: {
    auto p = sc->sc.pso.refinement.value_or(optimizer::LocalPolish{});
    p.method = method == NS_POLISH_COMPASS ? optimizer::PolishMethod::Compass
                                           : optimizer::PolishMethod::DirectionSet;
    sc->sc.pso.refinement = p;
    return NS_OK;
  }
  }
  return fail(NS_ERR_INVALID_ARGUMENT, "unknown polish method");
}

ns_status ns_scenario_array_shape(const ns_scenario *sc, size_t *rows,
                                  size_t *cols) {
  NS_REQUIRE(sc && rows && cols);
  *rows = sc->sc.array.rows;
  *cols = sc->sc.array.cols;
  return NS_OK;
}

ns_status ns_scenario_counts(const ns_scenario *sc, size_t *users,
                             size_t *interferers) {
  NS_REQUIRE(sc && users && interferers);
  *users = sc->sc.users.size();
  *interferers = sc->sc.interferers.size();
  return NS_OK;
}

ns_status ns_scenario_user_deg(const ns_scenario *sc, size_t k, double *theta,
                               double *phi) {
  NS_REQUIRE(sc && theta && phi);
  if (k >= sc->sc.users.size())
    return fail(NS_ERR_INVALID_ARGUMENT, "user index out of range");
  *theta = rad2deg(sc->sc.users[k].theta);
  *phi = rad2deg(sc->sc.users[k].phi);
  return NS_OK;
}

ns_status ns_scenario_interferer_deg(const ns_scenario *sc, size_t j,
                                     double *theta, double *phi) {
  NS_REQUIRE(sc && theta && phi);
  if (j >= sc->sc.interferers.size())
    return fail(NS_ERR_INVALID_ARGUMENT, "interferer index out of range");
  *theta = rad2deg(sc->sc.interferers[j].mean.theta);
  *phi = rad2deg(sc->sc.interferers[j].mean.phi);
  return NS_OK;
}

ns_status ns_scenario_sigma_s_deg(const ns_scenario *sc, size_t j,
                                  double *sigma_s) {
  NS_REQUIRE(sc && sigma_s);
  if (j >= sc->sc.interferers.size())
    return fail(NS_ERR_INVALID_ARGUMENT, "interferer index out of range");
  *sigma_s = rad2deg(sc->sc.interferers[j].sigma_s);
  return NS_OK;
}

ns_status ns_scenario_satellite(const ns_scenario *sc, double *lon_deg,
                                double *lat_deg, double *alt_m) {
  NS_REQUIRE(sc && lon_deg && lat_deg && alt_m);
  if (!sc->sc.satellite)
    return fail(NS_ERR_VALIDATION, "scenario has no satellite");
  *lon_deg = rad2deg(sc->sc.satellite->lon);
  *lat_deg = rad2deg(sc->sc.satellite->lat);
  *alt_m = sc->sc.satellite->alt;
  return NS_OK;
}

ns_status ns_weights_uniform(const ns_scenario *sc, ns_weights **out) {
  NS_REQUIRE(sc && out);
  *out = nullptr;
  return guarded([&] {
    *out = new ns_weights{array::WeightVector::uniform(sc->sc.array.size())};
  });
}

ns_status ns_weights_from_interleaved(const double *re_im, size_t count,
                                      ns_weights **out) {
  NS_REQUIRE(re_im && out && count > 0);
  *out = nullptr;
  return guarded([&] {
    std::vector<array::cplx> v(count);
    for (size_t i = 0; i < count; ++i)
      v[i] = {re_im[2 * i], re_im[2 * i + 1]};
    *out = new ns_weights{array::WeightVector(std::move(v))};
  });
}

void ns_weights_free(ns_weights *w) { delete w; }

ns_status ns_weights_size(const ns_weights *w, size_t *count) {
  NS_REQUIRE(w && count);
  *count = w->w.size();
  return NS_OK;
}

ns_status ns_weights_get(const ns_weights *w, size_t i, double *re, double *im) {
  NS_REQUIRE(w && re && im);
  if (i >= w->w.size())
    return fail(NS_ERR_INVALID_ARGUMENT, "weight index out of range");
  *re = w->w.values()[i].real();
  *im = w->w.values()[i].imag();
  return NS_OK;
}

ns_status ns_weights_csv(const ns_scenario *sc, const ns_weights *w, char **out) {
  NS_REQUIRE(sc && w && out);
  *out = nullptr;
  return guarded([&] {
    check_weights(sc, w);
    const auto &arr = sc->sc.array;
    std::string csv = "m,n,re,im,amp,phase_rad\n";
    char line[160];
    for (size_t m = 0; m < arr.rows; ++m)
      for (size_t n = 0; n < arr.cols; ++n) {
        const size_t i = arr.index(m, n);
        const auto v = w->w.values()[i];
        std::snprintf(line, sizeof line, "%zu,%zu,%.17g,%.17g,%.17g,%.17g\n", m,
                      n, v.real(), v.imag(), w->w.amplitude(i), w->w.phase(i));
        csv += line;
      }
    *out = dup_string(csv);
  });
}

ns_status ns_gain(const ns_scenario *sc, const ns_weights *w, double theta_deg,
                  double phi_deg, double *gain) {
  NS_REQUIRE(sc && w && gain);
  return guarded([&] {
    check_weights(sc, w);
    *gain = array::gain(sc->sc.array, w->w, {deg2rad(theta_deg), deg2rad(phi_deg)});
  });
}

ns_status ns_mitigation_db(const ns_scenario *sc, const ns_weights *w,
                           double *psi_db) {
  NS_REQUIRE(sc && w && psi_db);
  return guarded([&] {
    const auto obj = simulation::design_objective(sc->sc);
    *psi_db = optimizer::to_db(optimizer::mitigation_effectiveness(obj, w->w));
  });
}

ns_status ns_design_run(const ns_scenario *sc, ns_design **out) {
  NS_REQUIRE(sc && out);
  *out = nullptr;
  return guarded([&] {
    auto cfg = sc->sc.pso;
    cfg.seed = sc->sc.seed;
    *out = new ns_design{simulation::design_weights(sc->sc, cfg)};
  });
}

void ns_design_free(ns_design *d) { delete d; }

ns_status ns_design_psi_db(const ns_design *d, double *psi_db) {
  NS_REQUIRE(d && psi_db);
  *psi_db = d->result.psi_db;
  return NS_OK;
}

ns_status ns_design_evaluations(const ns_design *d, size_t *count) {
  NS_REQUIRE(d && count);
  *count = d->result.evaluations;
  return NS_OK;
}

ns_status ns_design_weights(const ns_design *d, ns_weights **out) {
  NS_REQUIRE(d && out);
  *out = nullptr;
  return guarded([&] { *out = new ns_weights{d->result.weights}; });
}

ns_status ns_design_trace_csv(const ns_design *d, char **out) {
  NS_REQUIRE(d && out);
  *out = nullptr;
  return guarded([&] { *out = dup_string(optimizer::trace_to_csv(d->result)); });
}

ns_status ns_pattern_cut(const ns_scenario *sc, const ns_weights *w,
                         ns_cut_kind kind, double fixed_deg, size_t samples,
                         double *angle_deg, double *gain_db) {
  NS_REQUIRE(sc && w && angle_deg && gain_db);
  if (kind != NS_CUT_FIXED_PHI && kind != NS_CUT_FIXED_THETA)
    return fail(NS_ERR_INVALID_ARGUMENT, "unknown cut kind");
  return guarded([&] {
    check_weights(sc, w);
    const array::CutSpec spec{kind == NS_CUT_FIXED_PHI ? array::CutKind::FixedPhi
                                                       : array::CutKind::FixedTheta,
                              deg2rad(fixed_deg)};
    const auto cut = array::pattern_cut(sc->sc.array, w->w, spec, samples);
    for (size_t i = 0; i < cut.size(); ++i) {
      angle_deg[i] = cut[i].angle_deg;
      gain_db[i] = cut[i].gain_db;
    }
  });
}

ns_status ns_null_width_deg(const double *angle_deg, const double *gain_db,
                            size_t samples, double center_deg, double depth_db,
                            double *width_deg) {
  NS_REQUIRE(angle_deg && gain_db && width_deg);
  return guarded([&] {
    std::vector<array::PatternSample> cut(samples);
    for (size_t i = 0; i < samples; ++i)
      cut[i] = {angle_deg[i], gain_db[i]};
    *width_deg = simulation::null_width_deg(cut, center_deg, depth_db);
  });
}

ns_status ns_sweep_run(const ns_scenario *sc, const ns_weights *w,
                       ns_sweep_metric metric, const double *sigma_i_deg,
                       size_t points, size_t trials, uint64_t seed,
                       ns_sweep **out) {
  NS_REQUIRE(sc && w && sigma_i_deg && out && points > 0);
  *out = nullptr;
  if (metric != NS_METRIC_MITIGATION && metric != NS_METRIC_CAPACITY)
    return fail(NS_ERR_INVALID_ARGUMENT, "unknown sweep metric");
  return guarded([&] {
    check_weights(sc, w);
    std::vector<double> grid(points);
    for (size_t i = 0; i < points; ++i)
      grid[i] = deg2rad(sigma_i_deg[i]);
    auto r = metric == NS_METRIC_MITIGATION
                 ? simulation::monte_carlo_sweep(sc->sc, w->w, grid, trials, seed)
                 : simulation::capacity_sweep(sc->sc, w->w, grid, trials, seed,
                                              sc->sc.link);
    *out = new ns_sweep{std::move(r)};
  });
}

void ns_sweep_free(ns_sweep *s) { delete s; }

ns_status ns_sweep_rows(const ns_sweep *s, size_t *rows) {
  NS_REQUIRE(s && rows);
  *rows = s->result.rows.size();
  return NS_OK;
}

ns_status ns_sweep_row(const ns_sweep *s, size_t i, double *sigma_i_deg,
                       double *mean, double *std, size_t *trials) {
  NS_REQUIRE(s && sigma_i_deg && mean && std && trials);
  if (i >= s->result.rows.size())
    return fail(NS_ERR_INVALID_ARGUMENT, "sweep row out of range");
  const auto &r = s->result.rows[i];
  *sigma_i_deg = r.sigma_i_deg;
  *mean = r.mean;
  *std = r.std;
  *trials = r.trials;
  return NS_OK;
}

ns_status ns_sweep_csv(const ns_sweep *s, char **out) {
  NS_REQUIRE(s && out);
  *out = nullptr;
  return guarded([&] { *out = dup_string(simulation::sweep_to_csv(s->result)); });
}

ns_status ns_sweep_crossover_deg(const ns_sweep *challenger,
                                 const ns_sweep *incumbent, int *found,
                                 double *sigma_i_deg) {
  NS_REQUIRE(challenger && incumbent && found && sigma_i_deg);
  const auto x = simulation::crossover_deg(challenger->result, incumbent->result);
  *found = x.has_value() ? 1 : 0;
  *sigma_i_deg = x.value_or(0.0);
  return NS_OK;
}

ns_status ns_ground_deviation_m(double sat_lon_deg, double sat_lat_deg,
                                double sat_alt_m, double azimuth_deg,
                                double elevation_deg, double d_azimuth_deg,
                                double d_elevation_deg, double *distance_m) {
  NS_REQUIRE(distance_m);
  return guarded([&] {
    const auto sat =
        geodesy::GeodeticPosition::from_degrees(sat_lon_deg, sat_lat_deg, sat_alt_m);
    const geodesy::AerPosition expected{deg2rad(azimuth_deg), deg2rad(elevation_deg),
                                        1.0};
    *distance_m = geodesy::angular_deviation_to_ground_distance(
        sat, expected, deg2rad(d_azimuth_deg), deg2rad(d_elevation_deg));
  });
}

ns_status ns_geodetic_to_ecef(double lon_deg, double lat_deg, double alt_m,
                              double *x, double *y, double *z) {
  NS_REQUIRE(x && y && z);
  return guarded([&] {
    const auto p = geodesy::geodetic_to_ecef(
        geodesy::GeodeticPosition::from_degrees(lon_deg, lat_deg, alt_m),
        geodesy::EllipsoidParams::wgs84());
    *x = p.x;
    *y = p.y;
    *z = p.z;
  });
}

ns_status ns_ecef_to_geodetic(double x, double y, double z, double *lon_deg,
                              double *lat_deg, double *alt_m) {
  NS_REQUIRE(lon_deg && lat_deg && alt_m);
  return guarded([&] {
    const auto g =
        geodesy::ecef_to_geodetic({x, y, z}, geodesy::EllipsoidParams::wgs84());
    *lon_deg = rad2deg(g.lon);
    *lat_deg = rad2deg(g.lat);
    *alt_m = g.alt;
  });
}

} // extern "C"
