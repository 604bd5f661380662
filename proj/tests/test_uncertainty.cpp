// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gen.hpp"
#include "nullshaper/error.hpp"
#include "nullshaper/geodesy.hpp"
#include "nullshaper/optimizer.hpp"
#include "nullshaper/uncertainty.hpp"

using namespace nullshaper;
using namespace nullshaper::uncertainty;
using array::ArrayModel;
using array::cplx;
using geodesy::deg2rad;
using geodesy::kPi;

namespace {

// Full matrix form: exp(-x^T S^-1 x / 2) / (2 pi sqrt(det S)).
double pdf_matrix(const InterfererBelief &b, double th, double ph) {
  const double S[2][2] = {{b.sigma_theta * b.sigma_theta, 0.0},
                          {0.0, b.sigma_phi * b.sigma_phi}};
  const double det = S[0][0] * S[1][1] - S[0][1] * S[1][0];
  const double inv[2][2] = {{S[1][1] / det, -S[0][1] / det},
                            {-S[1][0] / det, S[0][0] / det}};
  const double x[2] = {th - b.mean.theta, ph - b.mean.phi};
  double q = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      q += x[i] * inv[i][j] * x[j];
  return std::exp(-0.5 * q) / (2 * kPi * std::sqrt(det));
}

InterfererBelief random_belief(nstest::Gen &g) {
  return {{g.uniform(0, 0.8), g.uniform(0, 6)}, g.uniform(1e-3, 0.05), g.uniform(1e-3, 0.05)};
}

} // namespace

TEST_CASE("pdf") {
  InterfererBelief b{{0.2, 0.4}, 0.01, 0.03};
  CHECK(pdf(b, 0.2, 0.4) == doctest::Approx(1.0 / (2 * kPi * 0.01 * 0.03)).epsilon(1e-14));
  InterfererBelief unit{{0, 0}, 1, 1};
  CHECK(pdf(unit, 1, 0) == doctest::Approx(std::exp(-0.5) / (2 * kPi)).epsilon(1e-14));
  CHECK_THROWS_AS(pdf({{0, 0}, 0, 1}, 0, 0), DegenerateDistribution);

  nstest::Gen g(21);
  for (int i = 0; i < 1000; ++i) {
    auto r = random_belief(g);
    const double th = r.mean.theta + 3 * r.sigma_theta * g.normal();
    const double ph = r.mean.phi + 3 * r.sigma_phi * g.normal();
    const double want = pdf_matrix(r, th, ph);
    REQUIRE(std::abs(pdf(r, th, ph) - want) <= 1e-12 * want);
  }
}

TEST_CASE("build_grid") {
  SUBCASE("L = 3, kappa = 1 gives mean and one sigma either side") {
    InterfererBelief b{{0.3, 1.2}, deg2rad(1), deg2rad(0.5)};
    auto grid = build_grid(b, 3, 1);
    REQUIRE(grid.size() == 9);
    const double th[3] = {0.3 - deg2rad(1), 0.3, 0.3 + deg2rad(1)};
    const double ph[3] = {1.2 - deg2rad(0.5), 1.2, 1.2 + deg2rad(0.5)};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(grid.directions[3 * i + j].theta == th[i]);
        CHECK(grid.directions[3 * i + j].phi == ph[j]);
        CHECK(grid.weights[3 * i + j] == doctest::Approx(pdf(b, th[i], ph[j])).epsilon(1e-12));
      }
    // centre over corner: exp(0 - (-1))
    CHECK(grid.weights[4] / grid.weights[0] == doctest::Approx(2.7182818284590452).epsilon(1e-12));
    auto norm = normalize_weights(grid);
    CHECK(norm.weights[4] / norm.weights[8] == doctest::Approx(2.7182818284590452).epsilon(1e-12));
  }
  SUBCASE("kappa = 0 collapses") {
    InterfererBelief b{{0.3, 1.2}, 0.01, 0.01};
    auto grid = build_grid(b, 3, 0);
    REQUIRE(grid.size() == 9);
    for (auto &d : grid.directions) {
      CHECK(d.theta == 0.3);
      CHECK(d.phi == 1.2);
    }
    auto n = normalize_weights(grid);
    for (double w : n.weights)
      CHECK(w == doctest::Approx(1.0 / 9).epsilon(1e-14));
  }
  SUBCASE("L = 2, kappa = 2 corners") {
    InterfererBelief b{{0.3, 1.2}, deg2rad(0.5), deg2rad(0.5)};
    auto grid = build_grid(b, 2, 2);
    REQUIRE(grid.size() == 4);
    for (std::size_t z = 0; z < 4; ++z) {
      CHECK(std::abs(std::abs(grid.directions[z].theta - 0.3) - deg2rad(1)) < 1e-15);
      CHECK(std::abs(std::abs(grid.directions[z].phi - 1.2) - deg2rad(1)) < 1e-15);
      CHECK(grid.weights[z] == doctest::Approx(grid.weights[0]).epsilon(1e-12));
    }
  }
  SUBCASE("zero sigma is a point mass") {
    auto grid = build_grid({{0.1, 0.2}, 0, 0}, 3, 1);
    double total = 0;
    for (std::size_t z = 0; z < grid.size(); ++z) {
      CHECK(grid.directions[z].theta == 0.1);
      total += grid.weights[z];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(build_grid({{0.1, 0.2}, 0.01, 0.01}, 1, 3).size() == 1);
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(build_grid({{0, 0}, 0.1, 0.1}, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(build_grid({{0, 0}, 0.1, 0.1}, 3, -1), InvalidArgument);
    CHECK_THROWS_AS(build_grid({{0, 0}, -0.1, 0.1}, 3, 1), InvalidArgument);
  }
}

TEST_CASE("grid properties") {
  nstest::Gen g(22);
  for (int t = 0; t < 300; ++t) {
    auto b = random_belief(g);
    const std::size_t L = 1 + g.index(7);
    const double kappa = double(g.index(4));
    auto grid = build_grid(b, L, kappa);
    REQUIRE(grid.size() == L * L);
    // symmetric about the mean: entry z mirrors entry size-1-z
    for (std::size_t z = 0; z < grid.size(); ++z) {
      const auto &d = grid.directions[z];
      const auto &m = grid.directions[grid.size() - 1 - z];
      REQUIRE(std::abs((d.theta - b.mean.theta) + (m.theta - b.mean.theta)) < 1e-12);
      REQUIRE(std::abs((d.phi - b.mean.phi) + (m.phi - b.mean.phi)) < 1e-12);
      REQUIRE(std::abs(grid.weights[z] - grid.weights[grid.size() - 1 - z]) <=
              1e-12 * grid.weights[z]);
      REQUIRE(grid.weights[z] > 0.0);
    }
    // non-increasing in Mahalanobis distance
    auto maha = [&](const array::Direction &d) {
      const double a = (d.theta - b.mean.theta) / b.sigma_theta;
      const double c = (d.phi - b.mean.phi) / b.sigma_phi;
      return a * a + c * c;
    };
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = 0; j < grid.size(); ++j)
        if (maha(grid.directions[i]) < maha(grid.directions[j]) - 1e-9)
          REQUIRE(grid.weights[i] >= grid.weights[j]);
  }
}

TEST_CASE("normalize_weights") {
  auto grid = build_grid({{0.2, 0.3}, 0.02, 0.01}, 4, 2);
  auto n = normalize_weights(grid);
  double s = 0;
  for (double w : n.weights)
    s += w;
  CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
  auto again = normalize_weights(n);
  for (std::size_t z = 0; z < n.size(); ++z)
    CHECK(std::abs(again.weights[z] - n.weights[z]) < 1e-12);
  auto zero = grid;
  for (double &w : zero.weights)
    w = 0;
  CHECK_THROWS_AS(normalize_weights(zero), InvalidArgument);
}

TEST_CASE("weighted_interferer_gain") {
  auto arr = ArrayModel::half_wavelength(8, 8);
  nstest::Gen g(23);
  SUBCASE("collapsed grid equals point gain") {
    for (int i = 0; i < 100; ++i) {
      auto w = g.unit_cvec(64);
      array::Direction mu{g.uniform(0, 0.8), g.uniform(0, 6)};
      auto grid = normalize_weights(build_grid({mu, 0.01, 0.01}, 3, 0));
      REQUIRE(std::abs(weighted_interferer_gain(arr, w, grid) - array::gain(arr, w, mu)) < 1e-12);
    }
  }
  SUBCASE("zero weights") {
    auto grid = build_grid({{0.2, 0.3}, 0.02, 0.01}, 3, 1);
    CHECK(weighted_interferer_gain(arr, array::WeightVector::zeros(64), grid) == 0.0);
  }
  SUBCASE("term by term") {
    for (int i = 0; i < 100; ++i) {
      auto w = g.unit_cvec(64);
      auto grid = build_grid(random_belief(g), 1 + g.index(5), 1 + double(g.index(3)));
      double want = 0;
      for (std::size_t z = 0; z < grid.size(); ++z)
        want += grid.weights[z] * std::norm(array::array_factor(arr, w, grid.directions[z]));
      REQUIRE(std::abs(weighted_interferer_gain(arr, w, grid) - want) <= 1e-12 * want);
      // linear in the weight list
      auto twice = grid;
      for (double &p : twice.weights)
        p *= 2.5;
      REQUIRE(std::abs(weighted_interferer_gain(arr, w, twice) - 2.5 * want) <= 1e-12 * want);
    }
  }
  SUBCASE("empty grid") {
    CHECK_THROWS_AS(weighted_interferer_gain(arr, array::WeightVector::uniform(64), {}),
                    InvalidArgument);
  }
}

TEST_CASE("single interferer design ignores weight normalization") {
  auto arr = ArrayModel::half_wavelength(4, 4);
  auto grid = build_grid({{deg2rad(10), deg2rad(40)}, deg2rad(1), deg2rad(1)}, 3, 1);
  std::vector<array::Direction> users{{deg2rad(30), deg2rad(200)}};
  optimizer::Objective raw(arr, users, {grid});
  optimizer::Objective norm(arr, users, {normalize_weights(grid)});
  auto cfg = optimizer::PsoConfig::defaults(arr, 9);
  cfg.iterations = 60;
  cfg.refinement.reset();
  auto a = optimizer::optimize(raw, cfg);
  auto b = optimizer::optimize(norm, cfg);
  // same argmax; scores differ by the normalization constant only
  CHECK(raw.evaluate(b.weights) == doctest::Approx(a.psi).epsilon(1e-9));
  for (std::size_t i = 0; i < a.weights.size(); ++i)
    CHECK(std::abs(a.weights[i] - b.weights[i]) < 1e-9);
}

TEST_CASE("grid csv") {
  auto csv = grid_to_csv(build_grid({{0, 0}, 0.01, 0.01}, 2, 1));
  CHECK(csv.rfind("theta_deg,phi_deg,weight\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}
