// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "nullshaper/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "nullshaper/error.hpp"
#include "nullshaper/parallel.hpp"

namespace nullshaper::simulation {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t grid_index,
                          std::size_t trial) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32),
                    std::uint32_t(grid_index), std::uint32_t(trial),
                    std::uint32_t(std::uint64_t(trial) >> 32)};
  return std::mt19937_64(seq);
}

std::vector<Direction> draw_actual(const Scenario &sc, double sigma_i,
                                   std::mt19937_64 &rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Direction> out;
  out.reserve(sc.interferers.size());
  for (const auto &in : sc.interferers) {
    const double dt = normal(rng);
    const double dp = normal(rng);
    out.push_back({in.mean.theta + sigma_i * dt, in.mean.phi + sigma_i * dp});
  }
  return out;
}

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

// Shifted by the first value so that identical samples give exactly 0.
Moments moments(std::span<const double> v) {
  Moments m;
  const double shift = v.front();
  double mean = 0.0;
  for (double x : v)
    mean += x - shift;
  mean /= double(v.size());
  double ss = 0.0;
  for (double x : v)
    ss += (x - shift - mean) * (x - shift - mean);
  m.mean = shift + mean;
  m.std = std::sqrt(ss / double(v.size()));
  return m;
}

template <class TrialFn>
SweepResult run_sweep(const Scenario &sc, std::span<const double> sigma_i,
                      std::size_t trials, std::uint64_t seed, SweepMetric metric,
                      TrialFn &&trial_value) {
  if (trials < 1)
    throw InvalidArgument("sweep needs at least one trial per point");
  if (sc.interferers.empty())
    throw ValidationError("sweep needs at least one interferer");
  std::vector<double> grid(sigma_i.begin(), sigma_i.end());
  for (double s : grid)
    if (!(s >= 0.0) || !std::isfinite(s))
      throw InvalidArgument("sigma_i values must be finite and non-negative");
  std::stable_sort(grid.begin(), grid.end());

  SweepResult result;
  result.metric = metric;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<double> values(trials);
    parallel_for(trials, [&](std::size_t t) {
      auto rng = trial_rng(seed, g, t);
      values[t] = trial_value(draw_actual(sc, grid[g], rng));
    });

    SweepRow row{grid[g] * 180.0 / std::numbers::pi, 0.0, 0.0, trials};
    if (metric == SweepMetric::MitigationDb) {
      std::vector<double> db(trials);
      for (std::size_t t = 0; t < trials; ++t)
        db[t] = optimizer::to_db(values[t]);
      row.mean = optimizer::to_db(moments(values).mean);
      row.std = moments(db).std;
    } else {
      const auto m = moments(values);
      row.mean = m.mean;
      row.std = m.std;
    }
    result.rows.push_back(row);
  }
  return result;
}

} // namespace

LinkBudget LinkBudget::from_db(double user_snr_db, double interferer_to_user_db,
                               double noise_power) {
  LinkBudget lb;
  lb.noise_power = noise_power;
  lb.user_power = noise_power * std::pow(10.0, user_snr_db / 10.0);
  lb.interferer_power = lb.user_power * std::pow(10.0, interferer_to_user_db / 10.0);
  lb.validate();
  return lb;
}

void LinkBudget::validate() const {
  if (!(user_power > 0.0) || !(interferer_power >= 0.0) || !(noise_power > 0.0))
    throw ValidationError("link budget powers must be positive");
}

void Scenario::validate() const {
  try {
    array.validate();
  } catch (const InvalidArgument &e) {
    throw ValidationError(e.what());
  }
  if (users.empty())
    throw ValidationError("scenario needs at least one user");
  for (const auto &in : interferers)
    if (!(in.sigma_s >= 0.0) || !(in.sigma_i >= 0.0))
      throw ValidationError("interferer standard deviations must be >= 0");
  if (L < 1)
    throw ValidationError("shaping L must be at least 1");
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw ValidationError("shaping kappa must be non-negative");
  try {
    pso.validate();
  } catch (const InvalidArgument &e) {
    throw ValidationError(e.what());
  }
  link.validate();
}

void Scenario::set_sigma_s(double sigma_s) {
  for (auto &in : interferers)
    in.sigma_s = sigma_s;
}

Direction geodetic_to_direction(const GeodeticPosition &sat,
                                const GeodeticPosition &target,
                                const geodesy::EllipsoidParams &ell) {
  const auto s = geodesy::geodetic_to_ecef(sat, ell);
  const auto t = geodesy::geodetic_to_ecef(target, ell);
  const double los[3] = {t.x - s.x, t.y - s.y, t.z - s.z};
  const double range = std::sqrt(los[0] * los[0] + los[1] * los[1] + los[2] * los[2]);
  if (!(range > 0.0))
    throw InvalidArgument("target coincides with the satellite");

  // Up vector at the target: the satellite must lie above its horizon.
  const auto rt = geodesy::ned_to_ecef_rotation(target.lon, target.lat);
  const double up_dot = -(los[0] * rt[0][2] + los[1] * rt[1][2] + los[2] * rt[2][2]);
  if (!(up_dot > 0.0))
    throw NotVisible("target is below the horizon of the satellite");

  // Components along the satellite's local east, north and up axes.
  const auto r = geodesy::ned_to_ecef_rotation(sat.lon, sat.lat);
  double enu[3];
  for (int c = 0; c < 3; ++c)
    enu[c] = los[0] * r[0][c] + los[1] * r[1][c] + los[2] * r[2][c];

  const double theta = std::atan2(std::hypot(enu[0], enu[1]), -enu[2]);
  double phi = std::atan2(enu[0], enu[1]);
  if (phi < 0.0)
    phi += kTwoPi;
  if (phi >= kTwoPi)
    phi = 0.0;
  return {theta, phi};
}

optimizer::Objective design_objective(const Scenario &sc) {
  sc.validate();
  if (sc.interferers.empty())
    return optimizer::Objective::users_only(sc.array, sc.users);
  std::vector<uncertainty::NullSampleGrid> grids;
  grids.reserve(sc.interferers.size());
  for (const auto &in : sc.interferers)
    grids.push_back(uncertainty::build_grid({in.mean, in.sigma_s, in.sigma_s},
                                            sc.L, sc.kappa));
  return optimizer::Objective(sc.array, sc.users, std::move(grids));
}

optimizer::OptimizationResult design_weights(const Scenario &sc,
                                             const optimizer::PsoConfig &cfg) {
  return optimizer::optimize(design_objective(sc), cfg);
}

double realized_mitigation(const Scenario &sc, const WeightVector &w,
                           std::span<const Direction> actual) {
  std::vector<uncertainty::NullSampleGrid> points;
  points.reserve(actual.size());
  for (const auto &d : actual)
    points.push_back(uncertainty::NullSampleGrid::point(d));
  const optimizer::Objective obj(sc.array, sc.users, std::move(points));
  return optimizer::mitigation_effectiveness(obj, w);
}

double capacity(const Scenario &sc, const WeightVector &w,
                std::span<const Direction> actual, const LinkBudget &lb) {
  if (sc.users.size() != 1)
    throw Unsupported("capacity is defined for a single user");
  lb.validate();
  const double user = array::gain(sc.array, w, sc.users.front());
  double interference = 0.0;
  for (const auto &d : actual)
    interference += array::gain(sc.array, w, d) * lb.interferer_power;
  const double sinr = user * lb.user_power / (interference + lb.noise_power);
  return std::log2(1.0 + sinr);
}

SweepResult monte_carlo_sweep(const Scenario &sc, const WeightVector &w,
                              std::span<const double> sigma_i,
                              std::size_t trials, std::uint64_t seed) {
  return run_sweep(sc, sigma_i, trials, seed, SweepMetric::MitigationDb,
                   [&](const std::vector<Direction> &actual) {
                     return realized_mitigation(sc, w, actual);
                   });
}

SweepResult capacity_sweep(const Scenario &sc, const WeightVector &w,
                           std::span<const double> sigma_i, std::size_t trials,
                           std::uint64_t seed, const LinkBudget &lb) {
  if (sc.users.size() != 1)
    throw Unsupported("capacity is defined for a single user");
  return run_sweep(sc, sigma_i, trials, seed, SweepMetric::Capacity,
                   [&](const std::vector<Direction> &actual) {
                     return capacity(sc, w, actual, lb);
                   });
}

std::vector<double> sigma_grid(double max_rad, double step_rad) {
  if (!(step_rad > 0.0) || !(max_rad >= 0.0))
    throw InvalidArgument("sigma grid needs a positive step and max >= 0");
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor(max_rad / step_rad + 0.5));
  for (std::size_t i = 0; i <= count; ++i)
    out.push_back(double(i) * step_rad);
  return out;
}

double null_width_deg(std::span<const array::PatternSample> cut,
                      double center_deg, double depth_db) {
  if (cut.size() < 2)
    return 0.0;
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto &s : cut)
    peak = std::max(peak, s.gain_db);
  const double level = peak - depth_db;

  std::size_t c = 0;
  for (std::size_t i = 1; i < cut.size(); ++i)
    if (std::abs(cut[i].angle_deg - center_deg) <
        std::abs(cut[c].angle_deg - center_deg))
      c = i;
  if (cut[c].gain_db > level)
    return 0.0;

  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double g0 = cut[inside].gain_db, g1 = cut[outside].gain_db;
    const double f = g1 == g0 ? 0.0 : (level - g0) / (g1 - g0);
    return cut[inside].angle_deg + f * (cut[outside].angle_deg - cut[inside].angle_deg);
  };

  std::size_t lo = c;
  while (lo > 0 && cut[lo - 1].gain_db <= level)
    --lo;
  std::size_t hi = c;
  while (hi + 1 < cut.size() && cut[hi + 1].gain_db <= level)
    ++hi;
  const double left = lo > 0 ? crossing(lo, lo - 1) : cut[lo].angle_deg;
  const double right = hi + 1 < cut.size() ? crossing(hi, hi + 1) : cut[hi].angle_deg;
  return right - left;
}

std::optional<double> crossover_deg(const SweepResult &challenger,
                                    const SweepResult &incumbent) {
  const std::size_t n = std::min(challenger.rows.size(), incumbent.rows.size());
  for (std::size_t i = 1; i < n; ++i) {
    const double d0 = challenger.rows[i - 1].mean - incumbent.rows[i - 1].mean;
    const double d1 = challenger.rows[i].mean - incumbent.rows[i].mean;
    if (d0 <= 0.0 && d1 > 0.0) {
      const double x0 = challenger.rows[i - 1].sigma_i_deg;
      const double x1 = challenger.rows[i].sigma_i_deg;
      return x0 + (x1 - x0) * (-d0) / (d1 - d0);
    }
  }
  return std::nullopt;
}

std::string sweep_to_csv(const SweepResult &result) {
  std::string out = result.metric == SweepMetric::MitigationDb
                        ? "sigma_i_deg,psi_db_mean,psi_db_std,trials\n"
                        : "sigma_i_deg,capacity_mean,capacity_std,trials\n";
  char line[128];
  for (const auto &r : result.rows) {
    std::snprintf(line, sizeof line, "%.6g,%.12g,%.12g,%zu\n", r.sigma_i_deg,
                  r.mean, r.std, r.trials);
    out += line;
  }
  return out;
}

} // namespace nullshaper::simulation
