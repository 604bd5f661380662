// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "nullshaper/array.hpp"
#include "nullshaper/error.hpp"
#include "nullshaper/geodesy.hpp"

using namespace nullshaper;
using namespace nullshaper::array;
using geodesy::deg2rad;
using geodesy::kPi;

namespace {

// Straight double sum over (m, n).
cplx double_sum(const ArrayModel &arr, std::span<const cplx> w, double th, double ph) {
  const double k = 2 * kPi / arr.wavelength;
  cplx acc = 0;
  for (std::size_t m = 0; m < arr.rows; ++m)
    for (std::size_t n = 0; n < arr.cols; ++n) {
      const double arg = k * (double(m) * arr.dx * std::sin(th) * std::cos(ph) +
                              double(n) * arr.dy * std::sin(th) * std::sin(ph));
      acc += w[m * arr.cols + n] * std::polar(1.0, -arg);
    }
  return acc;
}

ArrayModel random_array(nstest::Gen &g) {
  ArrayModel a;
  a.rows = 1 + g.index(8);
  a.cols = 1 + g.index(8);
  a.wavelength = 0.015;
  a.dx = a.wavelength * g.uniform(0.2, 1.0);
  a.dy = a.wavelength * g.uniform(0.2, 1.0);
  return a;
}

} // namespace

TEST_CASE("array model") {
  auto a = ArrayModel::half_wavelength(8, 8);
  CHECK(a.wavelength == doctest::Approx(299792458.0 / 20e9));
  CHECK(a.dx == doctest::Approx(a.wavelength / 2));
  CHECK(a.size() == 64);
  CHECK(a.index(2, 3) == 19);
  ArrayModel bad = a;
  bad.rows = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = a;
  bad.dx = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("weight vector") {
  CHECK_THROWS_AS(WeightVector({cplx(1, 0), cplx(0.1, 0)}), InvalidArgument);
  CHECK_THROWS_AS(WeightVector({cplx(NAN, 0)}), InvalidArgument);
  CHECK_NOTHROW(WeightVector({cplx(1.0 + 1e-10, 0)}));
  auto u = WeightVector::uniform(64);
  CHECK(u.squared_norm() == doctest::Approx(1.0).epsilon(1e-14));
  auto z = WeightVector::normalized({0, 0});
  CHECK(z.squared_norm() == 0.0);
  WeightVector p({std::polar(0.5, -0.5)});
  CHECK(p.phase(0) == doctest::Approx(2 * kPi - 0.5));
  CHECK(p.amplitude(0) == doctest::Approx(0.5));
}

TEST_CASE("array_factor") {
  SUBCASE("boresight, uniform weights") {
    auto a = ArrayModel::half_wavelength(8, 8);
    auto w = WeightVector::uniform(64);
    for (double ph : {0.0, 1.0, 4.0}) {
      auto f = array_factor(a, w, {0, ph});
      CHECK(f.real() == doctest::Approx(8.0).epsilon(1e-14));
      CHECK(std::abs(f.imag()) < 1e-12);
    }
    CHECK(gain(a, w, {0, 0}) == doctest::Approx(64.0).epsilon(1e-13));
  }
  SUBCASE("single element is flat") {
    auto a = ArrayModel::half_wavelength(1, 1);
    WeightVector w({cplx(0.3, -0.4)});
    nstest::Gen g(4);
    for (int i = 0; i < 50; ++i) {
      auto f = array_factor(a, w, {g.uniform(0, kPi / 2), g.uniform(0, 2 * kPi)});
      CHECK(f == cplx(0.3, -0.4));
    }
  }
  SUBCASE("first null of the 20-element line") {
    auto a = ArrayModel::half_wavelength(20, 1);
    auto w = WeightVector::uniform(20);
    const double th = std::asin(a.wavelength / (20 * a.dx));
    CHECK(std::abs(array_factor(a, w, {th, 0})) < 1e-9);
    CHECK(std::abs(geodesy::rad2deg(th) - 5.7391704772667863) < 1e-12);
  }
  SUBCASE("dimension mismatch") {
    auto a = ArrayModel::half_wavelength(4, 4);
    auto w = WeightVector::uniform(15);
    CHECK_THROWS_AS(array_factor(a, w, {0, 0}), InvalidArgument);
    CHECK_THROWS_AS(gain(a, w, {0, 0}), InvalidArgument);
  }
  SUBCASE("zero weights") {
    auto a = ArrayModel::half_wavelength(3, 5);
    auto w = WeightVector::zeros(15);
    CHECK(gain(a, w, {0.3, 0.2}) == 0.0);
  }
}

TEST_CASE("array_factor properties") {
  nstest::Gen g(5);
  SUBCASE("gain matches the double sum") {
    for (int i = 0; i < 1000; ++i) {
      auto a = random_array(g);
      auto w = g.unit_cvec(a.size());
      const double th = g.uniform(0, kPi / 2), ph = g.uniform(0, 2 * kPi);
      const double want = std::norm(double_sum(a, w, th, ph));
      REQUIRE(std::abs(gain(a, w, {th, ph}) - want) < 1e-12);
    }
  }
  SUBCASE("triangle bound") {
    for (int i = 0; i < 500; ++i) {
      auto a = random_array(g);
      auto w = g.unit_cvec(a.size());
      double l1 = 0;
      for (auto x : w)
        l1 += std::abs(x);
      REQUIRE(std::abs(array_factor(a, w, {g.uniform(0, kPi / 2), g.uniform(0, 2 * kPi)})) <=
              l1 + 1e-12);
    }
  }
  SUBCASE("linearity") {
    for (int i = 0; i < 500; ++i) {
      auto a = random_array(g);
      auto w1 = g.unit_cvec(a.size()), w2 = g.unit_cvec(a.size());
      const cplx al = g.cnormal(), be = g.cnormal();
      std::vector<cplx> mix(a.size());
      for (std::size_t k = 0; k < mix.size(); ++k)
        mix[k] = al * w1[k] + be * w2[k];
      Direction d{g.uniform(0, kPi / 2), g.uniform(0, 2 * kPi)};
      const cplx want = al * array_factor(a, w1, d) + be * array_factor(a, w2, d);
      REQUIRE(std::abs(array_factor(a, mix, d) - want) < 1e-12);
    }
  }
  SUBCASE("global phase") {
    for (int i = 0; i < 500; ++i) {
      auto a = random_array(g);
      auto w = g.unit_cvec(a.size());
      auto v = w;
      const cplx rot = std::polar(1.0, g.uniform(0, 2 * kPi));
      for (auto &x : v)
        x *= rot;
      Direction d{g.uniform(0, kPi / 2), g.uniform(0, 2 * kPi)};
      REQUIRE(std::abs(gain(a, w, d) - gain(a, v, d)) < 1e-12);
    }
  }
  SUBCASE("azimuth period") {
    for (int i = 0; i < 500; ++i) {
      auto a = random_array(g);
      auto w = g.unit_cvec(a.size());
      const double th = g.uniform(0, kPi / 2), ph = g.uniform(0, 2 * kPi);
      REQUIRE(std::abs(gain(a, w, {th, ph}) - gain(a, w, {th, ph + 2 * kPi})) < 1e-12);
    }
  }
  SUBCASE("steering-vector inner product") {
    for (int i = 0; i < 500; ++i) {
      auto a = random_array(g);
      auto w = g.unit_cvec(a.size());
      Direction d{g.uniform(0, kPi / 2), g.uniform(0, 2 * kPi)};
      auto s = steering_factors(a, d);
      cplx acc = 0;
      for (std::size_t k = 0; k < s.size(); ++k)
        acc += w[k] * s[k];
      REQUIRE(std::abs(acc - array_factor(a, w, d)) < 1e-12);
      SteeringSet set(a, std::vector<Direction>{d});
      REQUIRE(std::abs(set.gain(0, w) - gain(a, w, d)) < 1e-12);
    }
  }
}

TEST_CASE("array_output") {
  nstest::Gen g(6);
  auto s = g.cvec(7);
  std::vector<cplx> e0(7, 0.0);
  e0[0] = 1.0;
  CHECK(array_output(e0, s) == s[0]);
  auto w = g.unit_cvec(7);
  CHECK(std::abs(array_output(w, w) - 1.0) < 1e-14);
  auto v = g.cvec(7);
  cplx want = 0;
  for (std::size_t i = 0; i < 7; ++i)
    want += std::conj(v[i]) * s[i];
  CHECK(std::abs(array_output(v, s) - want) < 1e-12);
  CHECK_THROWS_AS(array_output(v, g.cvec(6)), InvalidArgument);
}

TEST_CASE("pattern_cut") {
  auto a = ArrayModel::half_wavelength(20, 1);
  auto w = WeightVector::uniform(20);
  auto cut = pattern_cut(a, w, {CutKind::FixedPhi, 0}, 3601);
  REQUIRE(cut.size() == 3601);
  CHECK(cut.front().angle_deg == -90.0);
  CHECK(cut.back().angle_deg == 90.0);

  std::size_t peak = 0;
  for (std::size_t i = 0; i < cut.size(); ++i) {
    CHECK(cut[i].gain_db >= kDefaultFloorDb);
    if (cut[i].gain_db > cut[peak].gain_db)
      peak = i;
  }
  CHECK(cut[peak].angle_deg == doctest::Approx(0.0));
  CHECK(cut[peak].gain_db == doctest::Approx(10 * std::log10(20.0)));

  // Local minima on the positive side against asin(k / 10); k = 10 sits at
  // the 90 degree edge.
  std::vector<double> minima;
  for (std::size_t i = 1800; i + 1 < cut.size(); ++i)
    if (cut[i].gain_db < cut[i - 1].gain_db && cut[i].gain_db <= cut[i + 1].gain_db)
      minima.push_back(cut[i].angle_deg);
  REQUIRE(minima.size() == 10);
  const double step = 180.0 / 3600 + 1e-9;
  for (int k = 1; k <= 10; ++k)
    CHECK(std::abs(minima[k - 1] - geodesy::rad2deg(std::asin(k / 10.0))) <= step);
  // first null from the closed form
  CHECK(std::abs(minima[0] - 5.7391704772667863) <= step);

  auto flat = pattern_cut(a, WeightVector::zeros(20), {CutKind::FixedTheta, deg2rad(10)}, 5, -80);
  for (auto &s : flat)
    CHECK(s.gain_db == -80.0);
  CHECK(flat.back().angle_deg == 360.0);
  CHECK_THROWS_AS(pattern_cut(a, w, {}, 1), InvalidArgument);
}
