// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nullshaper/array.hpp"
#include "nullshaper/geodesy.hpp"
#include "nullshaper/optimizer.hpp"
#include "nullshaper/uncertainty.hpp"

namespace nullshaper::simulation {

using array::ArrayModel;
using array::Direction;
using array::WeightVector;
using geodesy::GeodeticPosition;

struct InterfererSpec {
  Direction mean;
  double sigma_s = 0.0; // spread assumed by the design [rad]
  double sigma_i = 0.0; // actual position spread [rad]
  std::optional<GeodeticPosition> nominal;
};

// Received powers per element, watts.
struct LinkBudget {
  double user_power = 10.0;
  double interferer_power = 1000.0;
  double noise_power = 1.0;

  static LinkBudget from_db(double user_snr_db, double interferer_to_user_db,
                            double noise_power = 1.0);
  void validate() const;
};

// Angles of users and interferers are resolved in the nadir-pointing array
// frame: theta is the off-nadir angle, phi the azimuth clockwise from north.
struct Scenario {
  std::optional<GeodeticPosition> satellite;
  ArrayModel array;
  std::vector<Direction> users;
  std::vector<std::optional<GeodeticPosition>> user_positions;
  std::vector<InterfererSpec> interferers;
  std::size_t L = 3;
  double kappa = 1.0;
  std::uint64_t seed = 1;
  optimizer::PsoConfig pso;
  LinkBudget link;

  // Throws ValidationError. An empty interferer list is accepted and means
  // the interferer term of the objective is disabled.
  void validate() const;
  void set_sigma_s(double sigma_s);
};

// Loads the JSON scenario schema. Geodetic users/interferers are converted
// to array-frame directions using the satellite position.
Scenario parse_scenario(const std::string &json_text);
Scenario load_scenario(const std::string &path);

// Line of sight from `sat` to `target` in the nadir-pointing array frame.
// Throws NotVisible when the target is below its own horizon as seen toward
// the satellite.
Direction geodetic_to_direction(
    const GeodeticPosition &sat, const GeodeticPosition &target,
    const geodesy::EllipsoidParams &ell = geodesy::EllipsoidParams::wgs84());

// Belief per interferer with (sigma_theta, sigma_phi) = (sigma_s, sigma_s),
// grids of the scenario's (L, kappa), then optimize().
optimizer::Objective design_objective(const Scenario &sc);
optimizer::OptimizationResult design_weights(const Scenario &sc,
                                             const optimizer::PsoConfig &cfg);

// Realized effectiveness with every interferer treated as a single point of
// unit weight at its actual direction.
double realized_mitigation(const Scenario &sc, const WeightVector &w,
                           std::span<const Direction> actual);

// log2(1 + SINR) for the single-user case. Throws Unsupported when K != 1.
double capacity(const Scenario &sc, const WeightVector &w,
                std::span<const Direction> actual, const LinkBudget &lb);

enum class SweepMetric { MitigationDb, Capacity };

struct SweepRow {
  double sigma_i_deg;
  double mean; // dB of the linear mean for MitigationDb, bits/s/Hz otherwise
  double std;  // of per-trial dB values, or of capacity
  std::size_t trials;
};

struct SweepResult {
  SweepMetric metric = SweepMetric::MitigationDb;
  std::vector<SweepRow> rows;
};

inline constexpr std::size_t kDefaultTrials = 1000;

// sigma_i grid in radians, sorted ascending in the output. Every trial
// draws its actual interferer directions from an RNG stream derived from
// (seed, grid index, trial index).
SweepResult monte_carlo_sweep(const Scenario &sc, const WeightVector &w,
                              std::span<const double> sigma_i,
                              std::size_t trials, std::uint64_t seed);

SweepResult capacity_sweep(const Scenario &sc, const WeightVector &w,
                           std::span<const double> sigma_i, std::size_t trials,
                           std::uint64_t seed, const LinkBudget &lb);

// 0, step, 2 step, ... up to max (inclusive within half a step), radians.
std::vector<double> sigma_grid(double max_rad, double step_rad);

// Width in degrees of the contiguous region around `center_deg` whose gain,
// relative to the cut's peak, lies at or below -depth_db. Edges are located
// by linear interpolation in dB. Zero when the center itself is shallower.
double null_width_deg(std::span<const array::PatternSample> cut,
                      double center_deg, double depth_db);

// First sigma_i at which `challenger` rises above `incumbent` after being
// at or below it, linearly interpolated between grid rows.
std::optional<double> crossover_deg(const SweepResult &challenger,
                                    const SweepResult &incumbent);

std::string sweep_to_csv(const SweepResult &result);

} // namespace nullshaper::simulation
