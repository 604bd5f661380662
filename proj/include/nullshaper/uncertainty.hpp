// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nullshaper/array.hpp"

namespace nullshaper::uncertainty {

using array::Direction;

// Uncorrelated bivariate normal belief over an interferer's direction.
struct InterfererBelief {
  Direction mean;
  double sigma_theta = 0.0;
  double sigma_phi = 0.0;
};

// L x L sample directions around the belief mean together with their
// probability weights. Entries are ordered with theta outer, phi inner.
struct NullSampleGrid {
  std::vector<Direction> directions;
  std::vector<double> weights;
  std::size_t samples_per_axis = 1;
  double kappa = 0.0;

  std::size_t size() const { return directions.size(); }
  // Single direction with unit weight.
  static NullSampleGrid point(const Direction &d);
};

// Density of the belief at (theta, phi). Throws DegenerateDistribution
// when either standard deviation is not positive.
double pdf(const InterfererBelief &belief, double theta, double phi);

// Evenly spaced samples over [mu - kappa sigma, mu + kappa sigma] per axis,
// endpoints included. An axis with L == 1, kappa == 0 or sigma == 0
// collapses onto the mean. Weights are the raw density; a zero-sigma axis
// contributes a point mass split evenly over its L copies.
NullSampleGrid build_grid(const InterfererBelief &belief, std::size_t L,
                          double kappa);

NullSampleGrid normalize_weights(const NullSampleGrid &grid);

// sum_z p_z G(theta_z, phi_z)
double weighted_interferer_gain(const array::ArrayModel &arr,
                                std::span<const array::cplx> w,
                                const NullSampleGrid &grid);

// theta_deg,phi_deg,weight with a header row.
std::string grid_to_csv(const NullSampleGrid &grid);

} // namespace nullshaper::uncertainty
