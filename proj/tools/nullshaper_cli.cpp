// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

// Command-line driver. Talks to the library through the C API only.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nullshaper/nullshaper.h"
#include "svg_plot.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kRuntime = 3 };

// Carries an exit code out of the subcommand handlers.
struct Failure : std::runtime_error {
  int code;
  Failure(int c, const std::string &what) : std::runtime_error(what), code(c) {}
};

int exit_code(ns_status st) {
  switch (st) {
  case NS_OK: return kOk;
  case NS_ERR_INVALID_ARGUMENT:
  case NS_ERR_VALIDATION:
  case NS_ERR_NOT_VISIBLE:
  case NS_ERR_DEGENERATE:
  case NS_ERR_UNSUPPORTED:
    return kValidation;
  default:
    return kRuntime;
  }
}

void check(ns_status st, const char *what) {
  if (st == NS_OK)
    return;
  std::string msg = std::string(what) + ": " + ns_status_name(st);
  if (*ns_last_error())
    msg += std::string(" (") + ns_last_error() + ")";
  throw Failure(exit_code(st), msg);
}

struct ScenarioDel {
  void operator()(ns_scenario *p) const { ns_scenario_free(p); }
};
struct WeightsDel {
  void operator()(ns_weights *p) const { ns_weights_free(p); }
};
struct DesignDel {
  void operator()(ns_design *p) const { ns_design_free(p); }
};
struct SweepDel {
  void operator()(ns_sweep *p) const { ns_sweep_free(p); }
};
using ScenarioPtr = std::unique_ptr<ns_scenario, ScenarioDel>;
using WeightsPtr = std::unique_ptr<ns_weights, WeightsDel>;
using DesignPtr = std::unique_ptr<ns_design, DesignDel>;
using SweepPtr = std::unique_ptr<ns_sweep, SweepDel>;

std::string take(char *s) {
  std::string out(s ? s : "");
  ns_string_free(s);
  return out;
}

enum class Format { Csv, Svg, Both };

struct Options {
  std::string scenario;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<double> kappa;
  std::optional<std::size_t> L;
  std::vector<double> sigma_s;
  double sigma_i_max = 1.0;
  double sigma_i_step = 0.1;
  bool capacity = false;
  Format format = Format::Csv;
  std::optional<std::size_t> threads;
  std::string polish;

  // pattern
  bool uniform = false;
  double cut_phi = 0.0;
  std::optional<double> cut_theta;
  std::size_t samples = 3601;

  // geodesy
  std::vector<double> altitudes_km{400, 600, 800, 1000, 1200};
  double deviation_max = 1.0;
  double deviation_step = 0.1;
  double fixed_deg = 0.0;
  double azimuth_deg = 0.0;
  double elevation_deg = -60.0;
  std::optional<double> sat_lon;
  std::optional<double> sat_lat;
};

bool want_csv(const Options &o) { return o.format != Format::Svg; }
bool want_svg(const Options &o) { return o.format != Format::Csv; }

// Compact decimal used in file names and labels.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string header(std::uint64_t seed) {
  return std::string("# nullshaper ") + ns_version() + " seed=" + std::to_string(seed) +
         "\n";
}

void ensure_dir(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Failure(kRuntime, "cannot create output directory '" + dir + "'");
}

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f)
    throw Failure(kRuntime, "cannot write '" + path.string() + "'");
  f << text;
  if (!f)
    throw Failure(kRuntime, "failed writing '" + path.string() + "'");
}

std::vector<double> grid(double max, double step) {
  if (!(step > 0.0) || !(max >= 0.0) || !std::isfinite(max))
    throw Failure(kValidation, "grid needs a positive step and a finite max >= 0");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor(max / step + 0.5));
  for (std::size_t i = 0; i <= n; ++i)
    out.push_back(double(i) * step);
  return out;
}

ScenarioPtr load(const Options &o) {
  if (o.scenario.empty())
    throw Failure(kUsage, "--scenario is required");
  ns_scenario *raw = nullptr;
  check(ns_scenario_load(o.scenario.c_str(), &raw), "loading scenario");
  ScenarioPtr sc(raw);
  if (o.seed)
    check(ns_scenario_set_seed(sc.get(), *o.seed), "seed");
  if (o.kappa)
    check(ns_scenario_set_kappa(sc.get(), *o.kappa), "kappa");
  if (o.L)
    check(ns_scenario_set_samples(sc.get(), *o.L), "L");
  if (!o.polish.empty()) {
    const ns_polish_method m = o.polish == "none"      ? NS_POLISH_NONE
                               : o.polish == "compass" ? NS_POLISH_COMPASS
                                                       : NS_POLISH_DIRECTION_SET;
    check(ns_scenario_set_polish(sc.get(), m), "polish");
  }
  return sc;
}

std::uint64_t seed_of(const ns_scenario *sc) {
  std::uint64_t s = 0;
  check(ns_scenario_seed(sc, &s), "seed");
  return s;
}

struct DesignOutcome {
  DesignPtr design;
  WeightsPtr weights;
  double psi_db = 0.0;
  std::size_t evaluations = 0;
  double wall_s = 0.0;
};

DesignOutcome run_design(const ns_scenario *sc) {
  DesignOutcome d;
  const auto t0 = std::chrono::steady_clock::now();
  ns_design *raw = nullptr;
  check(ns_design_run(sc, &raw), "optimization");
  d.design.reset(raw);
  d.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ns_weights *w = nullptr;
  check(ns_design_weights(raw, &w), "weights");
  d.weights.reset(w);
  check(ns_design_psi_db(raw, &d.psi_db), "psi");
  check(ns_design_evaluations(raw, &d.evaluations), "evaluations");
  return d;
}

int cmd_pattern(const Options &o) {
  auto sc = load(o);
  if (o.sigma_s.size() > 1)
    throw Failure(kUsage, "pattern takes a single --sigma-s value");
  if (!o.sigma_s.empty())
    check(ns_scenario_set_sigma_s_deg(sc.get(), o.sigma_s.front()), "sigma_s");
  ensure_dir(o.out);

  WeightsPtr w;
  if (o.uniform) {
    ns_weights *raw = nullptr;
    check(ns_weights_uniform(sc.get(), &raw), "uniform weights");
    w.reset(raw);
  } else {
    w = std::move(run_design(sc.get()).weights);
  }

  const bool fixed_theta = o.cut_theta.has_value();
  const double fixed = fixed_theta ? *o.cut_theta : o.cut_phi;
  std::vector<double> angle(o.samples), gain(o.samples);
  check(ns_pattern_cut(sc.get(), w.get(),
                       fixed_theta ? NS_CUT_FIXED_THETA : NS_CUT_FIXED_PHI, fixed,
                       o.samples, angle.data(), gain.data()),
        "pattern cut");

  const std::string stem =
      std::string(fixed_theta ? "pattern_theta" : "pattern_phi") + fmt(fixed);
  if (want_csv(o)) {
    std::string csv = header(seed_of(sc.get()));
    csv += "angle_deg,gain_db\n";
    char line[96];
    for (std::size_t i = 0; i < angle.size(); ++i) {
      std::snprintf(line, sizeof line, "%.10g,%.12g\n", angle[i], gain[i]);
      csv += line;
    }
    write_file(fs::path(o.out) / (stem + ".csv"), csv);
  }
  if (want_svg(o)) {
    nstool::Chart c{"Radiation pattern cut",
                    fixed_theta ? "phi [deg]" : "theta [deg]", "gain [dB]",
                    {{o.uniform ? "uniform" : "designed", angle, gain}}};
    write_file(fs::path(o.out) / (stem + ".svg"), nstool::render_svg(c));
  }
  return kOk;
}

int cmd_optimize(const Options &o) {
  auto sc = load(o);
  if (o.sigma_s.size() > 1)
    throw Failure(kUsage, "optimize takes a single --sigma-s value");
  if (!o.sigma_s.empty())
    check(ns_scenario_set_sigma_s_deg(sc.get(), o.sigma_s.front()), "sigma_s");
  ensure_dir(o.out);

  auto d = run_design(sc.get());
  const std::string head = header(seed_of(sc.get()));
  char *raw = nullptr;
  check(ns_weights_csv(sc.get(), d.weights.get(), &raw), "weights csv");
  const std::string weights_csv = take(raw);
  check(ns_design_trace_csv(d.design.get(), &raw), "trace csv");
  const std::string trace_csv = take(raw);

  if (want_csv(o)) {
    write_file(fs::path(o.out) / "weights.csv", head + weights_csv);
    write_file(fs::path(o.out) / "trace.csv", head + trace_csv);
  }
  if (want_svg(o)) {
    nstool::Series s{"best", {}, {}};
    std::size_t pos = trace_csv.find('\n');
    while (pos != std::string::npos && pos + 1 < trace_csv.size()) {
      std::size_t it = 0, evals = 0;
      double psi = 0.0;
      if (std::sscanf(trace_csv.c_str() + pos + 1, "%zu,%lf,%zu", &it, &psi, &evals) == 3) {
        s.x.push_back(double(it));
        s.y.push_back(psi);
      }
      pos = trace_csv.find('\n', pos + 1);
    }
    nstool::Chart c{"Optimization trace", "iteration", "best psi [dB]", {s}};
    write_file(fs::path(o.out) / "trace.svg", nstool::render_svg(c));
  }
  std::printf("psi_db=%.6f evaluations=%zu wall_s=%.3f\n", d.psi_db, d.evaluations,
              d.wall_s);
  return kOk;
}

struct SweepSeries {
  double sigma_s;
  SweepPtr mitigation;
  SweepPtr capacity;
};

nstool::Series to_series(const std::string &label, const ns_sweep *s) {
  nstool::Series out{label, {}, {}};
  std::size_t rows = 0;
  check(ns_sweep_rows(s, &rows), "sweep rows");
  for (std::size_t i = 0; i < rows; ++i) {
    double x, mean, sd;
    std::size_t t;
    check(ns_sweep_row(s, i, &x, &mean, &sd, &t), "sweep row");
    out.x.push_back(x);
    out.y.push_back(mean);
  }
  return out;
}

std::string crossover_footer(const std::vector<SweepSeries> &all, std::size_t k,
                             bool capacity) {
  std::string out;
  for (std::size_t j = 0; j < all.size(); ++j) {
    if (j == k)
      continue;
    const ns_sweep *a = capacity ? all[k].capacity.get() : all[k].mitigation.get();
    const ns_sweep *b = capacity ? all[j].capacity.get() : all[j].mitigation.get();
    int found = 0;
    double x = 0.0;
    check(ns_sweep_crossover_deg(a, b, &found, &x), "crossover");
    out += "# crossover sigma_s=" + fmt(all[k].sigma_s) + " over sigma_s=" +
           fmt(all[j].sigma_s) + ": ";
    if (found) {
      char buf[48];
      std::snprintf(buf, sizeof buf, "sigma_i=%.6g", x);
      out += buf;
    } else {
      out += "none";
    }
    out += "\n";
  }
  return out;
}

int cmd_sweep(const Options &o) {
  auto sc = load(o);
  std::size_t users = 0, interferers = 0;
  check(ns_scenario_counts(sc.get(), &users, &interferers), "counts");
  if (interferers == 0)
    throw Failure(kValidation, "sweep needs at least one interferer");
  if (o.capacity && users != 1)
    throw Failure(kValidation, "--capacity needs exactly one user");
  std::vector<double> sigmas = o.sigma_s;
  if (sigmas.empty()) {
    double s = 0.0;
    check(ns_scenario_sigma_s_deg(sc.get(), 0, &s), "sigma_s");
    sigmas.push_back(s);
  }
  const auto sigma_i = grid(o.sigma_i_max, o.sigma_i_step);
  const std::size_t trials = o.trials.value_or(1000);
  const std::uint64_t seed = seed_of(sc.get());
  ensure_dir(o.out);

  std::vector<SweepSeries> all;
  for (double s : sigmas) {
    check(ns_scenario_set_sigma_s_deg(sc.get(), s), "sigma_s");
    auto d = run_design(sc.get());
    SweepSeries series{s, nullptr, nullptr};
    ns_sweep *raw = nullptr;
    check(ns_sweep_run(sc.get(), d.weights.get(), NS_METRIC_MITIGATION, sigma_i.data(),
                       sigma_i.size(), trials, seed, &raw),
          "mitigation sweep");
    series.mitigation.reset(raw);
    if (o.capacity) {
      check(ns_sweep_run(sc.get(), d.weights.get(), NS_METRIC_CAPACITY, sigma_i.data(),
                         sigma_i.size(), trials, seed, &raw),
            "capacity sweep");
      series.capacity.reset(raw);
    }
    std::printf("sigma_s=%s psi_db=%.6f evaluations=%zu wall_s=%.3f\n", fmt(s).c_str(),
                d.psi_db, d.evaluations, d.wall_s);
    all.push_back(std::move(series));
  }

  const std::string head = header(seed);
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (!want_csv(o))
      break;
    char *raw = nullptr;
    check(ns_sweep_csv(all[k].mitigation.get(), &raw), "sweep csv");
    write_file(fs::path(o.out) / ("sweep_sigmas_" + fmt(all[k].sigma_s) + ".csv"),
               head + take(raw) + crossover_footer(all, k, false));
    if (o.capacity) {
      check(ns_sweep_csv(all[k].capacity.get(), &raw), "capacity csv");
      write_file(fs::path(o.out) / ("capacity_" + fmt(all[k].sigma_s) + ".csv"),
                 head + take(raw) + crossover_footer(all, k, true));
    }
  }
  if (want_svg(o)) {
    nstool::Chart m{"Mitigation effectiveness", "sigma_i [deg]", "mean psi [dB]", {}};
    nstool::Chart c{"Capacity", "sigma_i [deg]", "capacity [bit/s/Hz]", {}};
    for (const auto &s : all) {
      m.series.push_back(to_series("sigma_s=" + fmt(s.sigma_s), s.mitigation.get()));
      if (o.capacity)
        c.series.push_back(to_series("sigma_s=" + fmt(s.sigma_s), s.capacity.get()));
    }
    write_file(fs::path(o.out) / "sweep_sigmas.svg", nstool::render_svg(m));
    if (o.capacity)
      write_file(fs::path(o.out) / "capacity.svg", nstool::render_svg(c));
  }
  return kOk;
}

int cmd_geodesy(const Options &o) {
  double lon = 138.53, lat = -22.024, alt = 800e3;
  std::uint64_t seed = 1;
  if (!o.scenario.empty()) {
    auto sc = load(o);
    check(ns_scenario_satellite(sc.get(), &lon, &lat, &alt), "satellite");
    seed = seed_of(sc.get());
  } else if (o.seed) {
    seed = *o.seed;
  }
  if (o.sat_lon)
    lon = *o.sat_lon;
  if (o.sat_lat)
    lat = *o.sat_lat;
  if (o.altitudes_km.empty())
    throw Failure(kUsage, "--altitudes-km needs at least one value");
  const auto devs = grid(o.deviation_max, o.deviation_step);
  ensure_dir(o.out);

  // Deviation in azimuth (theta) or elevation (phi); the other held fixed.
  for (int axis = 0; axis < 2; ++axis) {
    const char *name = axis == 0 ? "arc_dtheta" : "arc_dphi";
    std::string csv = header(seed);
    char line[160];
    std::snprintf(line, sizeof line,
                  "# satellite lon=%g lat=%g expected azimuth=%g elevation=%g %s=%g\n",
                  lon, lat, o.azimuth_deg, o.elevation_deg,
                  axis == 0 ? "dphi" : "dtheta", o.fixed_deg);
    csv += line;
    csv += "deviation_deg,altitude_km,zeta_km,status\n";
    nstool::Chart chart{axis == 0 ? "Ground distance vs azimuth deviation"
                                  : "Ground distance vs elevation deviation",
                        "deviation [deg]", "zeta [km]", {}};
    for (double h : o.altitudes_km) {
      nstool::Series s{fmt(h) + " km", {}, {}};
      for (double dv : devs) {
        const double da = axis == 0 ? dv : o.fixed_deg;
        const double de = axis == 0 ? o.fixed_deg : dv;
        double zeta = 0.0;
        const ns_status st = ns_ground_deviation_m(lon, lat, h * 1e3, o.azimuth_deg,
                                                   o.elevation_deg, da, de, &zeta);
        if (st == NS_ERR_NO_INTERSECTION) {
          std::snprintf(line, sizeof line, "%.6g,%.6g,nan,miss\n", dv, h);
        } else {
          check(st, "ground distance");
          std::snprintf(line, sizeof line, "%.6g,%.6g,%.12g,ok\n", dv, h, zeta / 1e3);
          s.x.push_back(dv);
          s.y.push_back(zeta / 1e3);
        }
        csv += line;
      }
      chart.series.push_back(std::move(s));
    }
    if (want_csv(o))
      write_file(fs::path(o.out) / (std::string(name) + ".csv"), csv);
    if (want_svg(o))
      write_file(fs::path(o.out) / (std::string(name) + ".svg"),
                 nstool::render_svg(chart));
  }
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Null-shaping beamforming experiments"};
  app.set_version_flag("--version", std::string(ns_version()));
  app.require_subcommand(1);

  Options o;
  std::string format = "csv";

  auto common = [&](CLI::App *sub) {
    sub->add_option("--scenario", o.scenario, "Scenario JSON file");
    sub->add_option("--out", o.out, "Output directory (created on demand)");
    sub->add_option("--seed", o.seed, "RNG seed override");
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "svg", "both"}));
    sub->add_option("--threads", o.threads, "Worker thread cap");
  };
  auto shaping = [&](CLI::App *sub) {
    sub->add_option("--kappa", o.kappa, "Standard deviations spanned by the grid")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--L", o.L, "Grid samples per axis")->check(CLI::PositiveNumber);
    sub->add_option("--sigma-s", o.sigma_s, "Design spread(s) in degrees")
        ->delimiter(',');
    sub->add_option("--polish", o.polish, "Local refinement after the swarm")
        ->check(CLI::IsMember({"none", "compass", "direction_set"}));
  };

  auto *pattern = app.add_subcommand("pattern", "Radiation pattern cut of a design");
  common(pattern);
  shaping(pattern);
  pattern->add_flag("--uniform", o.uniform, "Use uniform weights instead of a design");
  pattern->add_option("--cut-phi", o.cut_phi, "Azimuth of the theta cut, degrees");
  pattern->add_option("--cut-theta", o.cut_theta,
                      "Sweep phi at this theta instead, degrees");
  pattern->add_option("--samples", o.samples, "Samples along the cut")
      ->check(CLI::Range(std::size_t(2), std::size_t(10000000)));

  auto *optimize = app.add_subcommand("optimize", "Design weights for a scenario");
  common(optimize);
  shaping(optimize);

  auto *sweep = app.add_subcommand("sweep", "Monte-Carlo robustness sweep over sigma_i");
  common(sweep);
  shaping(sweep);
  sweep->add_option("--trials", o.trials, "Trials per sigma_i point")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--sigma-i-max", o.sigma_i_max, "Largest sigma_i, degrees");
  sweep->add_option("--sigma-i-step", o.sigma_i_step, "sigma_i step, degrees");
  sweep->add_flag("--capacity", o.capacity, "Also write single-user capacity");

  auto *geodesy = app.add_subcommand("geodesy", "Ground distance of angular deviations");
  common(geodesy);
  geodesy->add_option("--altitudes-km", o.altitudes_km, "Satellite altitudes")
      ->delimiter(',');
  geodesy->add_option("--deviation-max", o.deviation_max, "Largest deviation, degrees");
  geodesy->add_option("--deviation-step", o.deviation_step, "Deviation step, degrees");
  geodesy->add_option("--fixed-deg", o.fixed_deg,
                      "Deviation held on the other axis, degrees");
  geodesy->add_option("--azimuth-deg", o.azimuth_deg, "Expected ray azimuth");
  geodesy->add_option("--elevation-deg", o.elevation_deg, "Expected ray elevation");
  geodesy->add_option("--sat-lon", o.sat_lon, "Satellite longitude, degrees");
  geodesy->add_option("--sat-lat", o.sat_lat, "Satellite latitude, degrees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  o.format = format == "svg" ? Format::Svg : format == "both" ? Format::Both : Format::Csv;
  try {
    if (o.threads)
      check(ns_set_threads(*o.threads), "threads");
    if (pattern->parsed())
      return cmd_pattern(o);
    if (optimize->parsed())
      return cmd_optimize(o);
    if (sweep->parsed())
      return cmd_sweep(o);
    return cmd_geodesy(o);
  } catch (const Failure &f) {
    std::fprintf(stderr, "nullshaper: %s\n", f.what());
    return f.code;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "nullshaper: %s\n", e.what());
    return kRuntime;
  }
}
