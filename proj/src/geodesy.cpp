// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "nullshaper/geodesy.hpp"

#include <cmath>
#include <string>

namespace nullshaper::geodesy {

namespace {

bool finite(const AerPosition &p) {
  return std::isfinite(p.azimuth) && std::isfinite(p.elevation) &&
         std::isfinite(p.range);
}

std::array<double, 3> rotate(const Matrix3 &r, const std::array<double, 3> &v) {
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i)
    out[i] = r[i][0] * v[0] + r[i][1] * v[1] + r[i][2] * v[2];
  return out;
}

std::array<double, 3> ray_direction(const GeodeticPosition &sat, double azimuth,
                                    double elevation) {
  const auto local = local_axes_vector(aer_to_ned({azimuth, elevation, 1.0}));
  return rotate(ned_to_ecef_rotation(sat.lon, sat.lat), local);
}

} // namespace

GeodeticPosition GeodeticPosition::from_degrees(double lon_deg, double lat_deg,
                                                double alt_m) {
  return {deg2rad(lon_deg), deg2rad(lat_deg), alt_m};
}

EllipsoidParams EllipsoidParams::wgs84() {
  constexpr double a = 6378137.0;
  constexpr double e2 = 6.69437999014e-3;
  // b is derived from (a, e2) so that the forward and inverse transforms
  // share one ellipsoid exactly; it rounds to 6356752.3142 m.
  return {a, a * std::sqrt(1.0 - e2), e2, 6371008.8};
}

NedVector aer_to_ned(const AerPosition &p) {
  if (!finite(p))
    throw InvalidArgument("aer_to_ned: non-finite AER coordinates");
  if (p.range < 0.0)
    throw InvalidArgument("aer_to_ned: negative range");
  const double horizontal = p.range * std::cos(p.elevation);
  return {horizontal * std::sin(p.azimuth), horizontal * std::cos(p.azimuth),
          -p.range * std::sin(p.elevation)};
}

double prime_vertical_radius(double lat, const EllipsoidParams &ell) {
  const double s = std::sin(lat);
  return ell.a / std::sqrt(1.0 - ell.e2 * s * s);
}

EcefPosition geodetic_to_ecef(const GeodeticPosition &p,
                              const EllipsoidParams &ell) {
  const double rn = prime_vertical_radius(p.lat, ell);
  const double cos_lat = std::cos(p.lat);
  const double polar_scale = (ell.b * ell.b) / (ell.a * ell.a);
  return {(rn + p.alt) * cos_lat * std::cos(p.lon),
          (rn + p.alt) * cos_lat * std::sin(p.lon),
          (polar_scale * rn + p.alt) * std::sin(p.lat)};
}

GeodeticPosition ecef_to_geodetic(const EcefPosition &p,
                                  const EllipsoidParams &ell) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
    throw InvalidArgument("ecef_to_geodetic: non-finite ECEF coordinates");
  const double rho = std::hypot(p.x, p.y);
  if (rho == 0.0 && p.z == 0.0)
    throw InvalidArgument("ecef_to_geodetic: point at the Earth's center");

  auto altitude = [&](double lat, double rn) {
    const double c = std::cos(lat);
    if (std::abs(c) > 1e-10)
      return rho / c - rn;
    // Near the poles the closed form above loses all precision.
    return rho * c + p.z * std::sin(lat) - ell.a * ell.a / rn;
  };

  GeodeticPosition out;
  out.lon = std::atan2(p.y, p.x);
  double lat = std::atan2(p.z, rho);
  double rn = prime_vertical_radius(lat, ell);
  out.alt = altitude(lat, rn);
  for (int i = 0; i < kMaxLatitudeIterations; ++i) {
    const double next = std::atan2(p.z + rn * ell.e2 * std::sin(lat), rho);
    const double step = std::abs(next - lat);
    lat = next;
    rn = prime_vertical_radius(lat, ell);
    out.lat = lat;
    out.alt = altitude(lat, rn);
    if (step < kLatitudeTolerance)
      return out;
  }
  throw ConvergenceError("ecef_to_geodetic: latitude did not converge in " +
                             std::to_string(kMaxLatitudeIterations) +
                             " iterations",
                         out);
}

Matrix3 ned_to_ecef_rotation(double lon, double lat) {
  const double sl = std::sin(lon), cl = std::cos(lon);
  const double sp = std::sin(lat), cp = std::cos(lat);
  return {{{-sl, -sp * cl, cp * cl}, {cl, -sp * sl, cp * sl}, {0.0, cp, sp}}};
}

std::array<double, 3> local_axes_vector(const NedVector &v) {
  return {v.north, v.east, -v.down};
}

EcefPosition aer_to_ecef(const AerPosition &target, const GeodeticPosition &sat,
                         const EllipsoidParams &ell) {
  const auto origin = geodetic_to_ecef(sat, ell);
  const auto offset = rotate(ned_to_ecef_rotation(sat.lon, sat.lat),
                             local_axes_vector(aer_to_ned(target)));
  return {origin.x + offset[0], origin.y + offset[1], origin.z + offset[2]};
}

GeodeticPosition aer_to_geodetic(const AerPosition &target,
                                 const GeodeticPosition &sat,
                                 const EllipsoidParams &ell) {
  return ecef_to_geodetic(aer_to_ecef(target, sat, ell), ell);
}

double haversine_distance(const GeodeticPosition &p1,
                          const GeodeticPosition &p2, double radius) {
  const double s_lat = std::sin((p2.lat - p1.lat) / 2.0);
  const double s_lon = std::sin((p2.lon - p1.lon) / 2.0);
  double eta = s_lat * s_lat + std::cos(p1.lat) * std::cos(p2.lat) * s_lon * s_lon;
  eta = std::min(std::max(eta, 0.0), 1.0);
  return radius * 2.0 * std::atan2(std::sqrt(eta), std::sqrt(1.0 - eta));
}

double ray_ground_range(const GeodeticPosition &sat, double azimuth,
                        double elevation, const EllipsoidParams &ell) {
  const auto s = geodetic_to_ecef(sat, ell);
  const auto d = ray_direction(sat, azimuth, elevation);
  const double ia2 = 1.0 / (ell.a * ell.a);
  const double ib2 = 1.0 / (ell.b * ell.b);

  const double qa = (d[0] * d[0] + d[1] * d[1]) * ia2 + d[2] * d[2] * ib2;
  const double qb = 2.0 * ((s.x * d[0] + s.y * d[1]) * ia2 + s.z * d[2] * ib2);
  const double qc = (s.x * s.x + s.y * s.y) * ia2 + s.z * s.z * ib2 - 1.0;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0)
    throw NoIntersection("ray misses the ellipsoid");

  const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
  double t1 = q / qa;
  double t2 = q != 0.0 ? qc / q : t1;
  if (t1 > t2)
    std::swap(t1, t2);
  if (t1 > 0.0)
    return t1;
  if (t2 > 0.0)
    return t2; // origin below the surface
  throw NoIntersection("ellipsoid lies behind the ray origin");
}

GeodeticPosition ray_ground_intersection(const GeodeticPosition &sat,
                                         double azimuth, double elevation,
                                         const EllipsoidParams &ell) {
  const double range = ray_ground_range(sat, azimuth, elevation, ell);
  return aer_to_geodetic({azimuth, elevation, range}, sat, ell);
}

double angular_deviation_to_ground_distance(const GeodeticPosition &sat,
                                            const AerPosition &expected,
                                            double d_azimuth,
                                            double d_elevation,
                                            const EllipsoidParams &ell) {
  const auto nominal =
      ray_ground_intersection(sat, expected.azimuth, expected.elevation, ell);
  const auto actual =
      ray_ground_intersection(sat, expected.azimuth + d_azimuth,
                              expected.elevation + d_elevation, ell);
  return haversine_distance(nominal, actual, ell.mean_radius);
}

} // namespace nullshaper::geodesy
