// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "nullshaper/array.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nullshaper/error.hpp"

namespace nullshaper::array {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSpeedOfLight = 299792458.0;

void check_length(const ArrayModel &arr, std::size_t n, const char *what) {
  if (n != arr.size())
    throw InvalidArgument(std::string(what) + ": expected " +
                          std::to_string(arr.size()) + " entries, got " +
                          std::to_string(n));
}

double wrap_two_pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0)
    a += kTwoPi;
  return a >= kTwoPi ? 0.0 : a;
}

} // namespace

ArrayModel ArrayModel::half_wavelength(std::size_t rows, std::size_t cols,
                                       double frequency_hz) {
  const double lambda = kSpeedOfLight / frequency_hz;
  ArrayModel arr{rows, cols, lambda / 2.0, lambda / 2.0, lambda,
                 ElementPattern::Omni};
  arr.validate();
  return arr;
}

double ArrayModel::wavenumber() const { return kTwoPi / wavelength; }

void ArrayModel::validate() const {
  if (rows < 1 || cols < 1)
    throw InvalidArgument("array needs at least one row and one column");
  if (!(dx > 0.0) || !(dy > 0.0) || !(wavelength > 0.0) ||
      !std::isfinite(dx) || !std::isfinite(dy) || !std::isfinite(wavelength))
    throw InvalidArgument("array spacing and wavelength must be positive");
}

Direction Direction::canonical() const {
  double t = std::fmod(theta, kTwoPi);
  double p = phi;
  if (t < 0.0) {
    t = -t;
    p += std::numbers::pi;
  }
  if (t > std::numbers::pi) {
    t = kTwoPi - t;
    p += std::numbers::pi;
  }
  return {t, wrap_two_pi(p)};
}

WeightVector::WeightVector(std::vector<cplx> w) : w_(std::move(w)) {
  for (const auto &v : w_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidArgument("weight vector has non-finite entries");
  if (squared_norm() > 1.0 + kNormTolerance)
    throw InvalidArgument("weight vector exceeds the unit power budget");
}

WeightVector WeightVector::uniform(std::size_t count) {
  if (count == 0)
    throw InvalidArgument("uniform weights need at least one element");
  return WeightVector(
      std::vector<cplx>(count, cplx(1.0 / std::sqrt(double(count)), 0.0)));
}

WeightVector WeightVector::zeros(std::size_t count) {
  return WeightVector(std::vector<cplx>(count, cplx(0.0, 0.0)));
}

WeightVector WeightVector::normalized(std::vector<cplx> w) {
  double s = 0.0;
  for (const auto &v : w)
    s += std::norm(v);
  if (s > 0.0 && std::isfinite(s)) {
    const double inv = 1.0 / std::sqrt(s);
    for (auto &v : w)
      v *= inv;
  }
  return WeightVector(std::move(w));
}

double WeightVector::squared_norm() const {
  double s = 0.0;
  for (const auto &v : w_)
    s += std::norm(v);
  return s;
}

double WeightVector::phase(std::size_t i) const {
  return wrap_two_pi(std::arg(w_[i]));
}

std::vector<cplx> steering_factors(const ArrayModel &arr, const Direction &d) {
  const double k = arr.wavenumber();
  const double u = std::sin(d.theta) * std::cos(d.phi);
  const double v = std::sin(d.theta) * std::sin(d.phi);
  std::vector<cplx> out(arr.size());
  for (std::size_t m = 0; m < arr.rows; ++m)
    for (std::size_t n = 0; n < arr.cols; ++n) {
      const double path = k * (double(m) * arr.dx * u + double(n) * arr.dy * v);
      out[arr.index(m, n)] = cplx(std::cos(path), -std::sin(path));
    }
  return out;
}

cplx array_factor(const ArrayModel &arr, std::span<const cplx> w,
                  const Direction &d) {
  check_length(arr, w.size(), "array_factor");
  const auto f = steering_factors(arr, d);
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    re += w[i].real() * f[i].real() - w[i].imag() * f[i].imag();
    im += w[i].real() * f[i].imag() + w[i].imag() * f[i].real();
  }
  return {re, im};
}

double element_gain(const ArrayModel &arr, const Direction &) {
  switch (arr.element) {
  case ElementPattern::Omni:
    return 1.0;
  }
  return 1.0;
}

double gain(const ArrayModel &arr, std::span<const cplx> w, const Direction &d) {
  return element_gain(arr, d) * std::norm(array_factor(arr, w, d));
}

cplx array_output(std::span<const cplx> w, std::span<const cplx> s) {
  if (w.size() != s.size())
    throw InvalidArgument("array_output: weight and snapshot lengths differ");
  cplx y(0.0, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i)
    y += std::conj(w[i]) * s[i];
  return y;
}

SteeringSet::SteeringSet(const ArrayModel &arr, std::span<const Direction> dirs)
    : count_(dirs.size()), elements_(arr.size()) {
  arr.validate();
  re_.reserve(count_ * elements_);
  im_.reserve(count_ * elements_);
  element_gain_.reserve(count_);
  for (const auto &d : dirs) {
    for (const auto &f : steering_factors(arr, d)) {
      re_.push_back(f.real());
      im_.push_back(f.imag());
    }
    element_gain_.push_back(element_gain(arr, d));
  }
}

cplx SteeringSet::factor(std::size_t dir, std::span<const cplx> w) const {
  if (w.size() != elements_)
    throw InvalidArgument("SteeringSet: weight length mismatch");
  const double *fr = re_.data() + dir * elements_;
  const double *fi = im_.data() + dir * elements_;
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < elements_; ++i) {
    const double wr = w[i].real(), wi = w[i].imag();
    re += wr * fr[i] - wi * fi[i];
    im += wr * fi[i] + wi * fr[i];
  }
  return {re, im};
}

double SteeringSet::gain(std::size_t dir, std::span<const cplx> w) const {
  return element_gain_[dir] * std::norm(factor(dir, w));
}

std::vector<PatternSample> pattern_cut(const ArrayModel &arr,
                                       std::span<const cplx> w,
                                       const CutSpec &cut, std::size_t samples,
                                       double floor_db) {
  if (samples < 2)
    throw InvalidArgument("pattern_cut needs at least two samples");
  check_length(arr, w.size(), "pattern_cut");
  const bool fixed_phi = cut.kind == CutKind::FixedPhi;
  const double lo = fixed_phi ? -90.0 : 0.0;
  const double hi = fixed_phi ? 90.0 : 360.0;

  std::vector<PatternSample> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double angle = lo + (hi - lo) * double(i) / double(samples - 1);
    const double rad = angle * std::numbers::pi / 180.0;
    const Direction d = fixed_phi ? Direction{rad, cut.fixed}
                                  : Direction{cut.fixed, rad};
    const double g = gain(arr, w, d);
    const double db = g > 0.0 ? 10.0 * std::log10(g) : floor_db;
    out.push_back({angle, std::max(db, floor_db)});
  }
  return out;
}

} // namespace nullshaper::array
