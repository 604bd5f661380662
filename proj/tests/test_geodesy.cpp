// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "nullshaper/geodesy.hpp"

using namespace nullshaper;
using namespace nullshaper::geodesy;

namespace {

const EllipsoidParams kWgs = EllipsoidParams::wgs84();
const GeodeticPosition kSat = GeodeticPosition::from_degrees(138.53, -22.024, 800e3);

double norm3(double x, double y, double z) { return std::sqrt(x * x + y * y + z * z); }

} // namespace

TEST_CASE("wgs84 constants") {
  CHECK(kWgs.a == 6378137.0);
  CHECK(kWgs.e2 == doctest::Approx(6.69437999014e-3).epsilon(1e-15));
  CHECK(kWgs.b == doctest::Approx(6356752.3142).epsilon(1e-11));
  CHECK(kWgs.mean_radius == 6371008.8);
}

TEST_CASE("aer_to_ned") {
  SUBCASE("zero range") {
    auto v = aer_to_ned({0.3, -0.4, 0.0});
    CHECK(v.north == 0.0);
    CHECK(v.east == 0.0);
    CHECK(v.down == 0.0);
  }
  SUBCASE("elevation -90 points straight down") {
    auto v = aer_to_ned({0.7, -kPi / 2, 1000.0});
    CHECK(std::abs(v.north) < 1e-9);
    CHECK(std::abs(v.east) < 1e-9);
    CHECK(v.down == doctest::Approx(1000.0).epsilon(1e-15));
  }
  SUBCASE("component formulas") {
    const double th = 0.4, ph = -0.3, r = 5e5;
    auto v = aer_to_ned({th, ph, r});
    CHECK(v.north == doctest::Approx(r * std::cos(ph) * std::sin(th)));
    CHECK(v.east == doctest::Approx(r * std::cos(ph) * std::cos(th)));
    CHECK(v.down == doctest::Approx(-r * std::sin(ph)));
  }
  SUBCASE("length equals range") {
    nstest::Gen g(11);
    for (int i = 0; i < 1000; ++i) {
      AerPosition p{g.uniform(-kPi, kPi), g.uniform(-kPi / 2, kPi / 2),
                    g.uniform(0, 4e6)};
      auto v = aer_to_ned(p);
      CHECK(std::abs(norm3(v.north, v.east, v.down) - p.range) < 1e-9);
    }
  }
  SUBCASE("axis-aligned cases") {
    auto v = aer_to_ned({0, 0, 1000});
    CHECK(std::abs(v.north) < 1e-12);
    CHECK(v.east == 1000.0);
    CHECK(std::abs(v.down) < 1e-12);
    v = aer_to_ned({kPi / 2, 0, 1000});
    CHECK(v.north == 1000.0);
    CHECK(std::abs(v.east) < 1e-9);
  }
  SUBCASE("invalid input") {
    CHECK_THROWS_AS(aer_to_ned({NAN, 0, 1}), InvalidArgument);
    CHECK_THROWS_AS(aer_to_ned({0, 0, INFINITY}), InvalidArgument);
    CHECK_THROWS_AS(aer_to_ned({0, 0, -1}), InvalidArgument);
  }
}

TEST_CASE("prime vertical radius") {
  CHECK(prime_vertical_radius(0.0, kWgs) == doctest::Approx(6378137.0).epsilon(1e-15));
  // a^2 / b at the poles
  CHECK(prime_vertical_radius(kPi / 2, kWgs) ==
        doctest::Approx(kWgs.a * kWgs.a / kWgs.b).epsilon(1e-14));
  // oracle: a^2 / sqrt(a^2 cos^2 + b^2 sin^2)
  CHECK(std::abs(prime_vertical_radius(deg2rad(-22.024), kWgs) - 6381141.2203010158) < 1e-4);
}

TEST_CASE("geodetic_to_ecef") {
  SUBCASE("equator, prime meridian") {
    auto p = geodetic_to_ecef({0, 0, 0}, kWgs);
    CHECK(p.x == 6378137.0);
    CHECK(std::abs(p.y) < 1e-9);
    CHECK(std::abs(p.z) < 1e-9);
  }
  SUBCASE("north pole") {
    auto p = geodetic_to_ecef({0, kPi / 2, 0}, kWgs);
    CHECK(std::abs(p.x) < 1e-6);
    CHECK(std::abs(p.z - kWgs.b) < 1e-4);
  }
  SUBCASE("reduced-latitude oracle") {
    auto p = geodetic_to_ecef(kSat, kWgs);
    CHECK(std::abs(p.x - -4988190.1877794777) < 1e-6);
    CHECK(std::abs(p.y - 4408523.8635476954) < 1e-6);
    CHECK(std::abs(p.z - -2676872.6567685839) < 1e-6);
  }
  SUBCASE("below the ellipsoid is allowed") {
    auto p = geodetic_to_ecef({0, 0, -1000}, kWgs);
    CHECK(p.x == doctest::Approx(6377137.0));
  }
  SUBCASE("on the equator at 90 east") {
    auto p = geodetic_to_ecef({kPi / 2, 0, 1000}, kWgs);
    CHECK(std::abs(p.x) < 1e-9);
    CHECK(p.y == doctest::Approx(6378137.0 + 1000).epsilon(1e-15));
    CHECK(std::abs(p.z) < 1e-9);
  }
}

TEST_CASE("ecef_to_geodetic") {
  SUBCASE("round trip of the satellite position") {
    auto g = ecef_to_geodetic(geodetic_to_ecef(kSat, kWgs), kWgs);
    CHECK(std::abs(g.lon - kSat.lon) < 1e-12);
    CHECK(std::abs(g.lat - kSat.lat) < 1e-12);
    CHECK(std::abs(g.alt - kSat.alt) < 1e-6);
  }
  SUBCASE("random round trip") {
    nstest::Gen g(1);
    for (int i = 0; i < 10000; ++i) {
      GeodeticPosition p{g.uniform(-kPi, kPi), deg2rad(g.uniform(-85, 85)),
                         g.uniform(0, 2e6)};
      auto q = ecef_to_geodetic(geodetic_to_ecef(p, kWgs), kWgs);
      REQUIRE(std::abs(q.lat - p.lat) < 1e-9);
      REQUIRE(std::abs(std::remainder(q.lon - p.lon, 2 * kPi)) < 1e-9);
      REQUIRE(std::abs(q.alt - p.alt) < 1e-6);
    }
  }
  SUBCASE("longitude quadrants follow atan2(y, x)") {
    auto g = ecef_to_geodetic({-7e6, -1.0, 0.0}, kWgs);
    CHECK(g.lon < -kPi / 2);
    g = ecef_to_geodetic({-7e6, 1.0, 0.0}, kWgs);
    CHECK(g.lon > kPi / 2);
  }
  SUBCASE("origin has no defined latitude") {
    CHECK_THROWS(ecef_to_geodetic({0, 0, 0}, kWgs));
  }
}

TEST_CASE("rotation matrix") {
  SUBCASE("at (0, 0)") {
    auto r = ned_to_ecef_rotation(0, 0);
    const double want[3][3] = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(r[i][j] - want[i][j]) < 1e-15);
  }
  SUBCASE("columns match finite differences of geodetic_to_ecef") {
    auto r = ned_to_ecef_rotation(kSat.lon, kSat.lat);
    const double h = 1e-7;
    auto p0 = geodetic_to_ecef({kSat.lon - h, kSat.lat, 0}, kWgs);
    auto p1 = geodetic_to_ecef({kSat.lon + h, kSat.lat, 0}, kWgs);
    auto q0 = geodetic_to_ecef({kSat.lon, kSat.lat - h, 0}, kWgs);
    auto q1 = geodetic_to_ecef({kSat.lon, kSat.lat + h, 0}, kWgs);
    auto u0 = geodetic_to_ecef({kSat.lon, kSat.lat, 0}, kWgs);
    auto u1 = geodetic_to_ecef({kSat.lon, kSat.lat, 1.0}, kWgs);
    double e[3] = {p1.x - p0.x, p1.y - p0.y, p1.z - p0.z};
    double n[3] = {q1.x - q0.x, q1.y - q0.y, q1.z - q0.z};
    double u[3] = {u1.x - u0.x, u1.y - u0.y, u1.z - u0.z};
    const double ne = norm3(e[0], e[1], e[2]), nn = norm3(n[0], n[1], n[2]),
                 nu = norm3(u[0], u[1], u[2]);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(r[i][0] - e[i] / ne) < 1e-6);
      CHECK(std::abs(r[i][1] - n[i] / nn) < 1e-6);
      CHECK(std::abs(r[i][2] - u[i] / nu) < 1e-6);
    }
  }
  SUBCASE("orthonormal, right-handed") {
    nstest::Gen g(2);
    for (int t = 0; t < 2000; ++t) {
      auto r = ned_to_ecef_rotation(g.uniform(-kPi, kPi), g.uniform(-kPi / 2, kPi / 2));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double s = 0;
          for (int k = 0; k < 3; ++k)
            s += r[k][i] * r[k][j];
          REQUIRE(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-12);
        }
      const double det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                         r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                         r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
      REQUIRE(std::abs(det - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("aer_to_geodetic") {
  SUBCASE("nadir from an equatorial satellite lands on the surface") {
    GeodeticPosition sat{deg2rad(10), 0, 700e3};
    auto g = aer_to_geodetic({0, -kPi / 2, 700e3}, sat, kWgs);
    CHECK(std::abs(g.alt) < 1.0);
    CHECK(std::abs(g.lat) < 1e-9);
    CHECK(std::abs(g.lon - sat.lon) < 1e-9);
  }
  SUBCASE("zero range returns the observer") {
    auto g = aer_to_geodetic({0.2, 0.1, 0}, kSat, kWgs);
    CHECK(std::abs(g.lat - kSat.lat) < 1e-12);
    CHECK(std::abs(g.alt - kSat.alt) < 1e-6);
  }
  SUBCASE("ellipsoid-hit oracle, azimuth 30, elevation -60") {
    const double rho = ray_ground_range(kSat, deg2rad(30), deg2rad(-60), kWgs);
    CHECK(std::abs(rho - 944037.52828413258) < 1e-3);
    auto g = aer_to_geodetic({deg2rad(30), deg2rad(-60), rho}, kSat, kWgs);
    CHECK(std::abs(rad2deg(g.lon) - 140.76304294217408) < 1e-9);
    CHECK(std::abs(rad2deg(g.lat) - -18.31336481992649) < 1e-9);
    CHECK(std::abs(g.alt) < 1e-3);
  }
}

TEST_CASE("ray_ground_intersection") {
  SUBCASE("upward ray misses") {
    CHECK_THROWS_AS(ray_ground_intersection(kSat, 0, 0.1, kWgs), NoIntersection);
  }
  SUBCASE("grazing beyond the horizon misses") {
    CHECK_THROWS_AS(ray_ground_intersection(kSat, 0, deg2rad(-5), kWgs), NoIntersection);
  }
}

TEST_CASE("haversine_distance") {
  const double R = kWgs.mean_radius;
  CHECK(std::abs(haversine_distance({0, 0, 0}, {deg2rad(1), 0, 0}, R) - 111195.08023353291) < 1e-6);
  CHECK(std::abs(haversine_distance({0, 0, 0}, {kPi, 0, 0}, R) - kPi * R) < 1e-6);
  CHECK(haversine_distance(kSat, kSat, R) == 0.0);
  CHECK(haversine_distance({0, 0, 0}, {0, 0, 5e5}, R) == 0.0);

  nstest::Gen g(3);
  auto rnd = [&] {
    return GeodeticPosition{g.uniform(-kPi, kPi), g.uniform(-kPi / 2, kPi / 2), 0};
  };
  for (int i = 0; i < 2000; ++i) {
    auto a = rnd(), b = rnd(), c = rnd();
    const double ab = haversine_distance(a, b, R), ba = haversine_distance(b, a, R);
    REQUIRE(std::abs(ab - ba) < 1e-6);
    REQUIRE(ab <= kPi * R + 1e-6);
    REQUIRE(ab <= haversine_distance(a, c, R) + haversine_distance(c, b, R) + 1e-6);
  }
}

TEST_CASE("angular_deviation_to_ground_distance") {
  const AerPosition expected{0, deg2rad(-60), 0};
  SUBCASE("zero deviation") {
    CHECK(angular_deviation_to_ground_distance(kSat, expected, 0, 0) == 0.0);
  }
  SUBCASE("ellipsoid oracle across altitudes") {
    const double want[] = {2033.902990455999, 3067.7423070123736, 4113.3790574389154,
                           5171.2650137107106, 6241.8958760601542};
    const double alts[] = {400e3, 600e3, 800e3, 1000e3, 1200e3};
    for (int i = 0; i < 5; ++i) {
      GeodeticPosition s = kSat;
      s.alt = alts[i];
      const double z = angular_deviation_to_ground_distance(s, expected, deg2rad(0.5), 0);
      CHECK(std::abs(z - want[i]) < 1e-3);
    }
    CHECK(std::abs(angular_deviation_to_ground_distance(kSat, expected, 0, deg2rad(0.5)) -
                   10081.400852201234) < 1e-3);
  }
  SUBCASE("small-angle agreement") {
    // spherical range times the lateral angle
    const double z = angular_deviation_to_ground_distance(kSat, expected, deg2rad(0.5), 0);
    CHECK(std::abs(z / 4118.8732128142116 - 1.0) < 0.05);
    // nadir, elevation deviation: h tan(0.5 deg)
    const double zn = angular_deviation_to_ground_distance(
        kSat, {0, -kPi / 2, 0}, 0, deg2rad(0.5));
    CHECK(std::abs(zn / 6981.4942326070315 - 1.0) < 0.05);
  }
  SUBCASE("deviation past the horizon misses") {
    CHECK_THROWS_AS(angular_deviation_to_ground_distance(kSat, expected, 0, deg2rad(50)),
                    NoIntersection);
  }
  SUBCASE("monotone in deviation and altitude") {
    double prev = 0;
    for (int k = 1; k <= 20; ++k) {
      const double z = angular_deviation_to_ground_distance(kSat, expected, deg2rad(0.05 * k), 0);
      REQUIRE(z > prev);
      prev = z;
    }
    prev = 0;
    for (double h = 300e3; h <= 2000e3; h += 100e3) {
      GeodeticPosition s = kSat;
      s.alt = h;
      const double z = angular_deviation_to_ground_distance(s, expected, 0, deg2rad(0.3));
      REQUIRE(z > prev);
      prev = z;
    }
  }
}
