// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "nullshaper/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "nullshaper/error.hpp"
#include "nullshaper/parallel.hpp"

namespace nullshaper::optimizer {

namespace {

using Params = std::vector<double>;

std::span<const cplx> as_weights(const Params &x) {
  // std::complex<double> is layout-compatible with double[2].
  return {reinterpret_cast<const cplx *>(x.data()), x.size() / 2};
}

Params to_params(std::span<const cplx> w) {
  Params x(2 * w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    x[2 * i] = w[i].real();
    x[2 * i + 1] = w[i].imag();
  }
  return x;
}

void project(Params &x) {
  double s = 0.0;
  for (double v : x)
    s += v * v;
  if (s > 0.0 && std::isfinite(s)) {
    const double inv = 1.0 / std::sqrt(s);
    for (double &v : x)
      v *= inv;
  }
}

double fitness(const Objective &obj, const Params &x) {
  const double psi = obj.evaluate(as_weights(x));
  return psi > 0.0 ? std::log10(psi) : -std::numeric_limits<double>::infinity();
}

WeightVector to_weight_vector(const Params &x) {
  return WeightVector(std::vector<cplx>(as_weights(x).begin(), as_weights(x).end()));
}

void check_dims(const Objective &obj, std::span<const cplx> w) {
  if (w.size() != obj.array().size())
    throw InvalidArgument("weight length " + std::to_string(w.size()) +
                          " does not match the array size " +
                          std::to_string(obj.array().size()));
}

struct Terms {
  double num;
  double den;
};

// Numerator and denominator of the objective extended to be homogeneous of
// degree zero: with interferers disabled the denominator is |x|^2, which
// agrees with the objective on the unit sphere.
Terms terms(const Objective &obj, const Params &x) {
  const auto w = as_weights(x);
  if (obj.interferers_disabled()) {
    double s = 0.0;
    for (double v : x)
      s += v * v;
    return {obj.numerator(w), s};
  }
  return {obj.numerator(w), obj.denominator(w)};
}

std::vector<double> quadratic_roots(double a, double b, double c) {
  std::vector<double> roots;
  if (a == 0.0) {
    if (b != 0.0)
      roots.push_back(-c / b);
    return roots;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0)
    return roots;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  roots.push_back(q / a);
  if (q != 0.0)
    roots.push_back(c / q);
  return roots;
}

// Stationary points of (n0 + n1 t + n2 t^2) / (d0 + d1 t + d2 t^2).
std::vector<double> ratio_stationary_points(double n0, double n1, double n2,
                                            double d0, double d1, double d2) {
  // N'D - ND' = (n2 d1 - n1 d2) t^2 + 2 (n2 d0 - n0 d2) t + (n1 d0 - n0 d1)
  return quadratic_roots(n2 * d1 - n1 * d2, 2.0 * (n2 * d0 - n0 * d2),
                         n1 * d0 - n0 * d1);
}

double norm2(const Params &x) {
  double s = 0.0;
  for (double v : x)
    s += v * v;
  return s;
}

// Objective extended off the unit sphere: fitness(x / |x|).
double sphere_fitness(const Objective &obj, Params x) {
  project(x);
  return fitness(obj, x);
}

// Exact search along `dir` from x. Numerator and denominator are quadratic
// along any line, so probes at +-h together with the current point fix both
// polynomials; their ratio's stationary points are tried with the probes.
bool line_search(const Objective &obj, Params &x, double &fx, Terms &t0,
                 const Params &dir, double h, std::size_t &evaluations) {
  const double len = std::sqrt(norm2(dir));
  if (!(len > 0.0))
    return false;
  auto at = [&](double t) {
    Params y = x;
    for (std::size_t i = 0; i < y.size(); ++i)
      y[i] += t / len * dir[i];
    return y;
  };
  const Terms tp = terms(obj, at(h));
  const Terms tm = terms(obj, at(-h));
  evaluations += 2;

  const double n1 = (tp.num - tm.num) / (2.0 * h);
  const double n2 = (tp.num + tm.num - 2.0 * t0.num) / (2.0 * h * h);
  const double d1 = (tp.den - tm.den) / (2.0 * h);
  const double d2 = (tp.den + tm.den - 2.0 * t0.den) / (2.0 * h * h);

  std::vector<double> candidates{h, -h};
  for (double r : ratio_stationary_points(t0.num, n1, n2, t0.den, d1, d2))
    if (std::isfinite(r) && r != 0.0)
      candidates.push_back(r);
  if (!obj.interferers_disabled()) {
    // Where the denominator meets its floor after projection:
    // D(t) = floor |x + t u|^2 with |x| = 1.
    double xu = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      xu += x[i] * dir[i] / len;
    const double f = obj.denominator_floor();
    for (double r : quadratic_roots(d2 - f, d1 - 2.0 * f * xu, t0.den - f))
      if (std::isfinite(r) && r != 0.0)
        candidates.push_back(r);
  }

  Params best;
  double best_fit = fx;
  for (double t : candidates) {
    Params y = at(t);
    const double fy = sphere_fitness(obj, y);
    ++evaluations;
    if (fy > best_fit) {
      best_fit = fy;
      best = std::move(y);
    }
  }
  if (best.empty())
    return false;
  x = std::move(best);
  project(x);
  fx = best_fit;
  t0 = terms(obj, x);
  return true;
}

// Direction-set search shared by local_polish and optimize. A sweep runs an
// exact line search along every direction of the set, starting from the
// coordinate axes; the net displacement of the sweep then replaces the
// direction that contributed most (Powell's update). The probe step
// shrinks after a sweep without improvement.
Params polish_params(const Objective &obj, Params x, double &fx,
                     const LocalPolish &p, std::size_t &evaluations) {
  const std::size_t dim = x.size();
  std::vector<Params> dirs(dim, Params(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i)
    dirs[i][i] = 1.0;

  double step = p.initial_step;
  project(x);
  Terms t0 = terms(obj, x);
  for (std::size_t sweep = 0; sweep < p.sweeps; ++sweep) {
    const Params start = x;
    const double f_start = fx;
    std::size_t largest = 0;
    double largest_gain = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double before = fx;
      if (line_search(obj, x, fx, t0, dirs[k], step, evaluations) &&
          fx - before > largest_gain) {
        largest_gain = fx - before;
        largest = k;
      }
    }
    if (!(fx > f_start)) {
      step *= p.shrink;
      continue;
    }
    Params moved(dim);
    for (std::size_t i = 0; i < dim; ++i)
      moved[i] = x[i] - start[i];
    line_search(obj, x, fx, t0, moved, step, evaluations);
    const double len = std::sqrt(norm2(moved));
    for (double &v : moved)
      v /= len;
    dirs.erase(dirs.begin() + static_cast<std::ptrdiff_t>(largest));
    dirs.push_back(std::move(moved));
  }
  return x;
}

// Coordinate compass search: each real coordinate is probed at +-step with
// the point reprojected; the step shrinks after a sweep without improvement.
Params compass_params(const Objective &obj, Params x, double &fx,
                      const LocalPolish &p, std::size_t &evaluations) {
  double step = p.initial_step;
  project(x);
  for (std::size_t sweep = 0; sweep < p.sweeps; ++sweep) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double sign : {1.0, -1.0}) {
        Params y = x;
        y[i] += sign * step;
        project(y);
        const double fy = fitness(obj, y);
        ++evaluations;
        if (fy > fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
          break;
        }
      }
    }
    if (!improved)
      step *= p.shrink;
  }
  return x;
}

Params refine(const Objective &obj, Params x, double &fx, const LocalPolish &p,
              std::size_t &evaluations) {
  if (p.method == PolishMethod::Compass)
    return compass_params(obj, std::move(x), fx, p, evaluations);
  return polish_params(obj, std::move(x), fx, p, evaluations);
}

} // namespace

Objective::Objective(ArrayModel arr, std::vector<Direction> users,
                     std::vector<NullSampleGrid> interferers,
                     double denominator_floor)
    : arr_(arr), floor_(denominator_floor) {
  arr_.validate();
  if (users.empty())
    throw InvalidArgument("objective needs at least one user direction");
  if (!(denominator_floor > 0.0))
    throw InvalidArgument("denominator floor must be positive");
  users_ = array::SteeringSet(arr_, users);
  grids_.reserve(interferers.size());
  for (auto &g : interferers) {
    if (g.size() == 0 || g.weights.size() != g.size())
      throw InvalidArgument("interferer grid is empty or inconsistent");
    grids_.emplace_back(arr_, g.directions);
    grid_weights_.push_back(std::move(g.weights));
  }
}

Objective Objective::users_only(ArrayModel arr, std::vector<Direction> users) {
  return Objective(arr, std::move(users), {});
}

double Objective::numerator(std::span<const cplx> w) const {
  double s = 0.0;
  for (std::size_t k = 0; k < users_.size(); ++k)
    s += users_.gain(k, w);
  return s / double(users_.size());
}

double Objective::denominator(std::span<const cplx> w) const {
  if (grids_.empty())
    return 1.0;
  double s = 0.0;
  for (std::size_t j = 0; j < grids_.size(); ++j) {
    const auto &weights = grid_weights_[j];
    double g = 0.0;
    for (std::size_t z = 0; z < grids_[j].size(); ++z)
      g += weights[z] * grids_[j].gain(z, w);
    s += g;
  }
  return s / double(grids_.size());
}

double Objective::evaluate(std::span<const cplx> w) const {
  const double num = numerator(w);
  if (num == 0.0)
    return 0.0;
  const double den = denominator(w);
  return num / (den < floor_ ? floor_ : den);
}

double mitigation_effectiveness(const Objective &obj, std::span<const cplx> w) {
  check_dims(obj, w);
  return obj.evaluate(w);
}

PsoConfig PsoConfig::defaults(const ArrayModel &arr, std::uint64_t seed) {
  PsoConfig cfg;
  cfg.swarm_size = static_cast<std::size_t>(
      std::ceil(8.0 * std::sqrt(2.0 * double(arr.size()))));
  cfg.seed = seed;
  return cfg;
}

void PsoConfig::validate() const {
  if (swarm_size < 2)
    throw InvalidArgument("PSO swarm needs at least two particles");
  if (iterations < 1)
    throw InvalidArgument("PSO needs at least one iteration");
  if (!(inertia >= 0.0 && inertia <= 1.0))
    throw InvalidArgument("PSO inertia must lie in [0, 1]");
  if (!(cognitive > 0.0) || !(social > 0.0))
    throw InvalidArgument("PSO acceleration coefficients must be positive");
  if (!(velocity_clamp > 0.0))
    throw InvalidArgument("PSO velocity clamp must be positive");
  if (refinement) {
    if (!(refinement->initial_step > 0.0))
      throw InvalidArgument("polish step must be positive");
    if (!(refinement->shrink > 0.0 && refinement->shrink < 1.0))
      throw InvalidArgument("polish shrink factor must lie in (0, 1)");
  }
}

WeightVector local_polish(const Objective &obj, const WeightVector &w0,
                          const PsoConfig &cfg, std::size_t *evaluations) {
  check_dims(obj, w0);
  cfg.validate();
  const LocalPolish p = cfg.refinement.value_or(LocalPolish{});
  Params x = to_params(w0.values());
  project(x);
  double fx = fitness(obj, x);
  std::size_t evals = 1;
  x = refine(obj, std::move(x), fx, p, evals);
  if (evaluations)
    *evaluations += evals + 1;
  WeightVector out = to_weight_vector(x);
  return obj.evaluate(out) > obj.evaluate(w0) ? out : w0;
}

OptimizationResult optimize(const Objective &obj, const PsoConfig &cfg) {
  cfg.validate();
  const std::size_t dim = 2 * obj.array().size();
  const std::size_t swarm = cfg.swarm_size;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Params> pos(swarm, Params(dim));
  std::vector<Params> vel(swarm, Params(dim));
  for (std::size_t p = 0; p < swarm; ++p) {
    for (double &v : pos[p])
      v = normal(rng);
    project(pos[p]);
    for (double &v : vel[p])
      v = 0.1 * cfg.velocity_clamp * (2.0 * unit(rng) - 1.0);
  }

  std::vector<double> fit(swarm);
  auto evaluate_swarm = [&] {
    parallel_for(swarm, [&](std::size_t p) { fit[p] = fitness(obj, pos[p]); });
  };

  OptimizationResult result;
  result.seed = cfg.seed;

  evaluate_swarm();
  std::size_t evaluations = swarm;
  std::vector<Params> best_pos = pos;
  std::vector<double> best_fit = fit;
  std::size_t leader = 0;
  for (std::size_t p = 1; p < swarm; ++p)
    if (best_fit[p] > best_fit[leader])
      leader = p;
  Params global = best_pos[leader];
  double global_fit = best_fit[leader];
  result.trace.push_back({0, std::pow(10.0, global_fit), evaluations});

  for (std::size_t it = 1; it <= cfg.iterations; ++it) {
    for (std::size_t p = 0; p < swarm; ++p) {
      auto &x = pos[p];
      auto &v = vel[p];
      const auto &pb = best_pos[p];
      for (std::size_t d = 0; d < dim; ++d) {
        const double r1 = unit(rng);
        const double r2 = unit(rng);
        double nv = cfg.inertia * v[d] + cfg.cognitive * r1 * (pb[d] - x[d]) +
                    cfg.social * r2 * (global[d] - x[d]);
        nv = std::clamp(nv, -cfg.velocity_clamp, cfg.velocity_clamp);
        v[d] = nv;
        x[d] += nv;
      }
      project(x);
    }
    evaluate_swarm();
    evaluations += swarm;
    for (std::size_t p = 0; p < swarm; ++p) {
      if (fit[p] > best_fit[p]) {
        best_fit[p] = fit[p];
        best_pos[p] = pos[p];
      }
      if (best_fit[p] > global_fit) {
        global_fit = best_fit[p];
        global = best_pos[p];
      }
    }
    result.trace.push_back({it, std::pow(10.0, global_fit), evaluations});
  }

  if (cfg.refinement) {
    global = refine(obj, std::move(global), global_fit, *cfg.refinement,
                    evaluations);
    result.trace.push_back(
        {cfg.iterations + 1, std::pow(10.0, global_fit), evaluations});
  }

  result.weights = to_weight_vector(global);
  result.psi = obj.evaluate(result.weights);
  result.psi_db = to_db(result.psi);
  result.evaluations = evaluations;
  return result;
}

double to_db(double linear) {
  return linear > 0.0 ? 10.0 * std::log10(linear)
                      : -std::numeric_limits<double>::infinity();
}

std::string trace_to_csv(const OptimizationResult &result) {
  std::string out = "iteration,best_psi_db,evaluations\n";
  char line[96];
  for (const auto &t : result.trace) {
    std::snprintf(line, sizeof line, "%zu,%.12g,%zu\n", t.iteration,
                  to_db(t.best_psi), t.evaluations);
    out += line;
  }
  return out;
}

} // namespace nullshaper::optimizer
