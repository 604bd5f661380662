// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

// Seeded generators for the property tests.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace nstest {

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double normal() { return std::normal_distribution<double>()(rng_); }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  std::complex<double> cnormal() { return {normal(), normal()}; }

  std::vector<std::complex<double>> cvec(std::size_t n) {
    std::vector<std::complex<double>> v(n);
    for (auto &x : v)
      x = cnormal();
    return v;
  }

  // Random direction of unit squared norm.
  std::vector<std::complex<double>> unit_cvec(std::size_t n) {
    auto v = cvec(n);
    double s = 0;
    for (auto &x : v)
      s += std::norm(x);
    for (auto &x : v)
      x /= std::sqrt(s);
    return v;
  }

  std::mt19937_64 &engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

} // namespace nstest
