// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nullshaper::array {

using cplx = std::complex<double>;

enum class ElementPattern { Omni };

// Uniform planar array. Element (m, n) sits at (m * dx, n * dy) in the array
// plane; m runs over `rows`, n over `cols`. Weight vectors are stored with
// n varying fastest: index = m * cols + n.
struct ArrayModel {
  std::size_t rows = 1;
  std::size_t cols = 1;
  double dx = 0.0;
  double dy = 0.0;
  double wavelength = 0.0;
  ElementPattern element = ElementPattern::Omni;

  static constexpr double kDefaultFrequencyHz = 20e9;

  // Half-wavelength spacing at the given carrier frequency.
  static ArrayModel half_wavelength(std::size_t rows, std::size_t cols,
                                    double frequency_hz = kDefaultFrequencyHz);

  std::size_t size() const { return rows * cols; }
  std::size_t index(std::size_t m, std::size_t n) const { return m * cols + n; }
  double wavenumber() const;
  void validate() const;
};

// Polar angle theta from boresight and azimuth phi, radians. The evaluation
// routines accept any real theta: (-theta, phi) is the same direction as
// (theta, phi + pi).
struct Direction {
  double theta = 0.0;
  double phi = 0.0;

  // Folds into theta in [0, pi], phi in [0, 2 pi).
  Direction canonical() const;
};

// Complex weights that satisfy the unit power budget (squared norm at most
// 1 + 1e-9) and contain only finite entries.
class WeightVector {
public:
  static constexpr double kNormTolerance = 1e-9;

  WeightVector() = default;
  explicit WeightVector(std::vector<cplx> w);

  static WeightVector uniform(std::size_t count);
  static WeightVector zeros(std::size_t count);
  // Scales to unit norm; a zero vector stays zero.
  static WeightVector normalized(std::vector<cplx> w);

  std::size_t size() const { return w_.size(); }
  const cplx &operator[](std::size_t i) const { return w_[i]; }
  std::span<const cplx> values() const { return w_; }
  operator std::span<const cplx>() const { return w_; }
  double squared_norm() const;

  double amplitude(std::size_t i) const { return std::abs(w_[i]); }
  // Phase in [0, 2 pi).
  double phase(std::size_t i) const;

private:
  std::vector<cplx> w_;
};

using SignalSnapshot = std::vector<cplx>;

// Per-element factors e^{-i k (m dx sin(theta) cos(phi) + n dy sin(theta) sin(phi))}.
std::vector<cplx> steering_factors(const ArrayModel &arr, const Direction &d);

cplx array_factor(const ArrayModel &arr, std::span<const cplx> w,
                  const Direction &d);

double element_gain(const ArrayModel &arr, const Direction &d);

double gain(const ArrayModel &arr, std::span<const cplx> w, const Direction &d);

// y = w^H s
cplx array_output(std::span<const cplx> w, std::span<const cplx> s);

// Steering factors of a fixed direction set, computed once and reused for
// every weight vector evaluated against those directions.
class SteeringSet {
public:
  SteeringSet() = default;
  SteeringSet(const ArrayModel &arr, std::span<const Direction> dirs);

  std::size_t size() const { return count_; }
  std::size_t elements() const { return elements_; }
  cplx factor(std::size_t dir, std::span<const cplx> w) const;
  double gain(std::size_t dir, std::span<const cplx> w) const;

private:
  std::size_t count_ = 0;
  std::size_t elements_ = 0;
  std::vector<double> re_;
  std::vector<double> im_;
  std::vector<double> element_gain_;
};

enum class CutKind { FixedPhi, FixedTheta };

struct CutSpec {
  CutKind kind = CutKind::FixedPhi;
  double fixed = 0.0; // radians
};

struct PatternSample {
  double angle_deg;
  double gain_db;
};

inline constexpr double kDefaultFloorDb = -100.0;

// FixedPhi sweeps signed theta over [-90, 90] degrees; FixedTheta sweeps phi
// over [0, 360] degrees. Gains below the floor are clamped to it.
std::vector<PatternSample> pattern_cut(const ArrayModel &arr,
                                       std::span<const cplx> w,
                                       const CutSpec &cut, std::size_t samples,
                                       double floor_db = kDefaultFloorDb);

} // namespace nullshaper::array
