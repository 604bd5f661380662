// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <numbers>

#include "nullshaper/error.hpp"

namespace nullshaper::geodesy {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Longitude and latitude in radians, altitude in meters above the ellipsoid.
struct GeodeticPosition {
  double lon = 0.0;
  double lat = 0.0;
  double alt = 0.0;

  static GeodeticPosition from_degrees(double lon_deg, double lat_deg,
                                       double alt_m);
};

// Azimuth and elevation in radians, range in meters, as seen from an
// observer. Azimuth zero points along the local meridian; negative elevation
// looks below the local horizon.
struct AerPosition {
  double azimuth = 0.0;
  double elevation = 0.0;
  double range = 0.0;
};

struct NedVector {
  double north = 0.0;
  double east = 0.0;
  double down = 0.0;
};

struct EcefPosition {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct EllipsoidParams {
  double a;           // semi-major axis [m]
  double b;           // semi-minor axis [m]
  double e2;          // first eccentricity squared
  double mean_radius; // used by the great-circle distance [m]

  static EllipsoidParams wgs84();
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

// Thrown when the latitude refinement does not settle; carries the last
// iterate so callers can decide whether it is usable.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string &what, GeodeticPosition last)
      : Error(ErrorKind::Convergence, what), last_(last) {}
  const GeodeticPosition &last_iterate() const noexcept { return last_; }

private:
  GeodeticPosition last_;
};

inline constexpr double kLatitudeTolerance = 1e-12;
inline constexpr int kMaxLatitudeIterations = 15;

NedVector aer_to_ned(const AerPosition &p);

double prime_vertical_radius(double lat, const EllipsoidParams &ell);

EcefPosition geodetic_to_ecef(const GeodeticPosition &p,
                              const EllipsoidParams &ell);

// Iterative inverse of geodetic_to_ecef. Throws ConvergenceError after
// kMaxLatitudeIterations without |dlat| < kLatitudeTolerance.
GeodeticPosition ecef_to_geodetic(const EcefPosition &p,
                                  const EllipsoidParams &ell);

// Columns are the local east, north and up unit vectors at (lon, lat)
// expressed in ECEF.
Matrix3 ned_to_ecef_rotation(double lon, double lat);

// Local offset handed to ned_to_ecef_rotation for an AER-derived vector.
// The NED components follow the azimuth convention of aer_to_ned (north
// carries the sine term), so the rotation's east/north/up columns receive
// (north, east, -down).
std::array<double, 3> local_axes_vector(const NedVector &v);

EcefPosition aer_to_ecef(const AerPosition &target, const GeodeticPosition &sat,
                         const EllipsoidParams &ell);

GeodeticPosition aer_to_geodetic(const AerPosition &target,
                                 const GeodeticPosition &sat,
                                 const EllipsoidParams &ell);

// Great-circle distance on a sphere of the given radius; altitudes ignored.
double haversine_distance(const GeodeticPosition &p1,
                          const GeodeticPosition &p2, double radius);

// First intersection of the ray leaving `sat` along (azimuth, elevation)
// with the ellipsoid surface. Throws NoIntersection when the ray misses.
GeodeticPosition ray_ground_intersection(const GeodeticPosition &sat,
                                         double azimuth, double elevation,
                                         const EllipsoidParams &ell);

// Slant range from `sat` to the first ellipsoid intersection along the ray.
double ray_ground_range(const GeodeticPosition &sat, double azimuth,
                        double elevation, const EllipsoidParams &ell);

// Surface distance between the footprints of the expected ray and the ray
// deviated by (d_azimuth, d_elevation). The expected position's range is
// ignored; both ranges are solved from the ellipsoid intersection.
double angular_deviation_to_ground_distance(
    const GeodeticPosition &sat, const AerPosition &expected,
    double d_azimuth, double d_elevation,
    const EllipsoidParams &ell = EllipsoidParams::wgs84());

} // namespace nullshaper::geodesy
