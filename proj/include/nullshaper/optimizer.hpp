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
#include "nullshaper/uncertainty.hpp"

namespace nullshaper::optimizer {

using array::ArrayModel;
using array::cplx;
using array::Direction;
using array::WeightVector;
using uncertainty::NullSampleGrid;

inline constexpr double kDefaultDenominatorFloor = 1e-18;

// Mitigation effectiveness: mean user gain over mean probability-weighted
// interferer gain. Steering factors of every user and grid direction are
// computed once at construction.
class Objective {
public:
  Objective(ArrayModel arr, std::vector<Direction> users,
            std::vector<NullSampleGrid> interferers,
            double denominator_floor = kDefaultDenominatorFloor);

  // Variant with the interferer term disabled: the denominator is fixed at
  // one and the objective reduces to the mean user gain.
  static Objective users_only(ArrayModel arr, std::vector<Direction> users);

  const ArrayModel &array() const { return arr_; }
  std::size_t user_count() const { return users_.size(); }
  std::size_t interferer_count() const { return grids_.size(); }
  bool interferers_disabled() const { return grids_.empty(); }
  double denominator_floor() const { return floor_; }

  double numerator(std::span<const cplx> w) const;
  double denominator(std::span<const cplx> w) const;
  double evaluate(std::span<const cplx> w) const;

private:
  ArrayModel arr_;
  array::SteeringSet users_;
  std::vector<array::SteeringSet> grids_;
  std::vector<std::vector<double>> grid_weights_;
  double floor_;
};

double mitigation_effectiveness(const Objective &obj, std::span<const cplx> w);

enum class PolishMethod { Compass, DirectionSet };

struct LocalPolish {
  PolishMethod method = PolishMethod::DirectionSet;
  std::size_t sweeps = 50;
  double initial_step = 0.05;
  double shrink = 0.5;
};

struct PsoConfig {
  std::size_t swarm_size = 2;
  std::size_t iterations = 300;
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  double velocity_clamp = 0.5;
  std::uint64_t seed = 1;
  std::optional<LocalPolish> refinement = LocalPolish{};

  // Swarm of ceil(8 sqrt(2 M N)) particles, remaining fields at their
  // defaults.
  static PsoConfig defaults(const ArrayModel &arr, std::uint64_t seed = 1);
  void validate() const;
};

struct TracePoint {
  std::size_t iteration;
  double best_psi;
  std::size_t evaluations;
};

struct OptimizationResult {
  WeightVector weights; // unit norm
  double psi = 0.0;
  double psi_db = 0.0;
  std::vector<TracePoint> trace;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
};

// Particle swarm search over the real and imaginary parts of w, each
// particle radially projected onto the unit sphere after every move. The
// configured refinement runs on the swarm's best point.
OptimizationResult optimize(const Objective &obj, const PsoConfig &cfg);

// Direction-set search with exact line searches over the real/imaginary
// parts, starting from the coordinate axes. Never returns a point worse
// than w0.
WeightVector local_polish(const Objective &obj, const WeightVector &w0,
                          const PsoConfig &cfg,
                          std::size_t *evaluations = nullptr);

double to_db(double linear);

// iteration,best_psi_db,evaluations with a header row.
std::string trace_to_csv(const OptimizationResult &result);

} // namespace nullshaper::optimizer
