// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "nullshaper/uncertainty.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "nullshaper/error.hpp"

namespace nullshaper::uncertainty {

namespace {

constexpr double kInvSqrtTwoPi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;

struct AxisSamples {
  std::vector<double> values;
  std::vector<double> weights;
};

AxisSamples axis_samples(double mu, double sigma, std::size_t L, double kappa) {
  AxisSamples s;
  s.values.resize(L, mu);
  s.weights.resize(L);
  const bool collapsed = L == 1 || kappa == 0.0 || sigma == 0.0;
  for (std::size_t i = 0; i < L; ++i) {
    // t in [-1, 1], mirrored exactly about the middle sample
    const double t =
        collapsed ? 0.0 : (2.0 * double(i) - double(L - 1)) / double(L - 1);
    const double offset = kappa * sigma * t;
    s.values[i] = mu + offset;
    if (sigma == 0.0) {
      s.weights[i] = 1.0 / double(L);
    } else {
      const double z = kappa * t;
      s.weights[i] = kInvSqrtTwoPi / sigma * std::exp(-0.5 * z * z);
    }
  }
  return s;
}

} // namespace

NullSampleGrid NullSampleGrid::point(const Direction &d) {
  return {{d}, {1.0}, 1, 0.0};
}

double pdf(const InterfererBelief &b, double theta, double phi) {
  if (!(b.sigma_theta > 0.0) || !(b.sigma_phi > 0.0))
    throw DegenerateDistribution("pdf needs positive standard deviations");
  const double zt = (theta - b.mean.theta) / b.sigma_theta;
  const double zp = (phi - b.mean.phi) / b.sigma_phi;
  return std::exp(-0.5 * (zt * zt + zp * zp)) /
         (2.0 * std::numbers::pi * b.sigma_theta * b.sigma_phi);
}

NullSampleGrid build_grid(const InterfererBelief &b, std::size_t L,
                          double kappa) {
  if (L < 1)
    throw InvalidArgument("build_grid: L must be at least 1");
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw InvalidArgument("build_grid: kappa must be non-negative");
  if (!(b.sigma_theta >= 0.0) || !(b.sigma_phi >= 0.0))
    throw InvalidArgument("build_grid: negative standard deviation");

  const auto th = axis_samples(b.mean.theta, b.sigma_theta, L, kappa);
  const auto ph = axis_samples(b.mean.phi, b.sigma_phi, L, kappa);

  NullSampleGrid g;
  g.samples_per_axis = L;
  g.kappa = kappa;
  g.directions.reserve(L * L);
  g.weights.reserve(L * L);
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = 0; j < L; ++j) {
      g.directions.push_back({th.values[i], ph.values[j]});
      g.weights.push_back(th.weights[i] * ph.weights[j]);
    }
  return g;
}

NullSampleGrid normalize_weights(const NullSampleGrid &grid) {
  double total = 0.0;
  for (double w : grid.weights)
    total += w;
  if (!(total > 0.0))
    throw InvalidArgument("normalize_weights: weights sum to zero");
  NullSampleGrid out = grid;
  for (double &w : out.weights)
    w /= total;
  return out;
}

double weighted_interferer_gain(const array::ArrayModel &arr,
                                std::span<const array::cplx> w,
                                const NullSampleGrid &grid) {
  if (grid.size() == 0)
    throw InvalidArgument("weighted_interferer_gain: empty grid");
  double g = 0.0;
  for (std::size_t z = 0; z < grid.size(); ++z)
    g += grid.weights[z] * array::gain(arr, w, grid.directions[z]);
  return g;
}

std::string grid_to_csv(const NullSampleGrid &grid) {
  std::string out = "theta_deg,phi_deg,weight\n";
  char line[128];
  for (std::size_t z = 0; z < grid.size(); ++z) {
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.17g\n",
                  grid.directions[z].theta * 180.0 / std::numbers::pi,
                  grid.directions[z].phi * 180.0 / std::numbers::pi,
                  grid.weights[z]);
    out += line;
  }
  return out;
}

} // namespace nullshaper::uncertainty
