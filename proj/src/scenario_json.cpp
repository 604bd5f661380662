// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nullshaper/error.hpp"
#include "nullshaper/simulation.hpp"

namespace nullshaper::simulation {

namespace {

using nlohmann::json;
using geodesy::deg2rad;

constexpr double kSpeedOfLight = 299792458.0;

double number(const json &obj, const char *key, double fallback) {
  if (!obj.contains(key))
    return fallback;
  if (!obj[key].is_number())
    throw ValidationError(std::string("'") + key + "' must be a number");
  return obj[key].get<double>();
}

double required(const json &obj, const char *key, const char *where) {
  if (!obj.contains(key))
    throw ValidationError(std::string(where) + " is missing '" + key + "'");
  return number(obj, key, 0.0);
}

std::size_t count(const json &obj, const char *key, std::size_t fallback) {
  if (!obj.contains(key))
    return fallback;
  if (!obj[key].is_number_integer() || obj[key].get<long long>() < 0)
    throw ValidationError(std::string("'") + key +
                          "' must be a non-negative integer");
  return obj[key].get<std::size_t>();
}

bool is_geodetic(const json &entry) {
  return entry.contains("lon_deg") || entry.contains("lat_deg");
}

struct Located {
  Direction direction;
  std::optional<GeodeticPosition> position;
};

Located locate(const json &entry, const std::optional<GeodeticPosition> &sat,
               const char *where) {
  if (!entry.is_object())
    throw ValidationError(std::string(where) + " entries must be objects");
  if (is_geodetic(entry)) {
    if (!sat)
      throw ValidationError(std::string(where) +
                            " given geodetically but the scenario has no satellite");
    const auto pos = GeodeticPosition::from_degrees(
        required(entry, "lon_deg", where), required(entry, "lat_deg", where),
        number(entry, "alt_m", 0.0));
    try {
      return {geodetic_to_direction(*sat, pos), pos};
    } catch (const NotVisible &e) {
      throw ValidationError(std::string(where) + ": " + e.what());
    }
  }
  return {{deg2rad(required(entry, "theta_deg", where)),
           deg2rad(required(entry, "phi_deg", where))},
          std::nullopt};
}

optimizer::PsoConfig parse_pso(const json &j, const ArrayModel &arr,
                               std::uint64_t seed) {
  auto cfg = optimizer::PsoConfig::defaults(arr, seed);
  if (!j.is_object())
    return cfg;
  cfg.swarm_size = count(j, "swarm_size", cfg.swarm_size);
  cfg.iterations = count(j, "iterations", cfg.iterations);
  cfg.inertia = number(j, "inertia", cfg.inertia);
  cfg.cognitive = number(j, "cognitive", cfg.cognitive);
  cfg.social = number(j, "social", cfg.social);
  cfg.velocity_clamp = number(j, "velocity_clamp", cfg.velocity_clamp);
  if (j.contains("polish")) {
    const auto &p = j["polish"];
    if (p.is_null() || (p.is_boolean() && !p.get<bool>())) {
      cfg.refinement.reset();
    } else if (p.is_object()) {
      optimizer::LocalPolish lp;
      lp.sweeps = count(p, "sweeps", lp.sweeps);
      lp.initial_step = number(p, "initial_step", lp.initial_step);
      lp.shrink = number(p, "shrink", lp.shrink);
      if (p.contains("method")) {
        const auto m = p["method"].is_string() ? p["method"].get<std::string>() : "";
        if (m == "compass")
          lp.method = optimizer::PolishMethod::Compass;
        else if (m == "direction_set")
          lp.method = optimizer::PolishMethod::DirectionSet;
        else
          throw ValidationError("polish method must be 'compass' or 'direction_set'");
      }
      cfg.refinement = lp;
    }
  }
  return cfg;
}

} // namespace

Scenario parse_scenario(const std::string &json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ValidationError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!root.is_object())
    throw ValidationError("scenario must be a JSON object");

  Scenario sc;
  if (root.contains("seed"))
    sc.seed = static_cast<std::uint64_t>(count(root, "seed", 1));

  if (root.contains("satellite")) {
    const auto &s = root["satellite"];
    sc.satellite = GeodeticPosition::from_degrees(
        required(s, "lon_deg", "satellite"), required(s, "lat_deg", "satellite"),
        required(s, "alt_m", "satellite"));
  }

  if (!root.contains("array"))
    throw ValidationError("scenario is missing 'array'");
  const auto &a = root["array"];
  const double freq = number(a, "freq_hz", ArrayModel::kDefaultFrequencyHz);
  if (!(freq > 0.0))
    throw ValidationError("array frequency must be positive");
  const double lambda = kSpeedOfLight / freq;
  sc.array = ArrayModel{count(a, "m", 0), count(a, "n", 0),
                        number(a, "dx_over_lambda", 0.5) * lambda,
                        number(a, "dy_over_lambda", 0.5) * lambda, lambda,
                        array::ElementPattern::Omni};
  try {
    sc.array.validate();
  } catch (const InvalidArgument &e) {
    throw ValidationError(e.what());
  }

  if (root.contains("users")) {
    if (!root["users"].is_array())
      throw ValidationError("'users' must be an array");
    for (const auto &u : root["users"]) {
      auto loc = locate(u, sc.satellite, "user");
      sc.users.push_back(loc.direction);
      sc.user_positions.push_back(loc.position);
    }
  }

  if (root.contains("interferers")) {
    if (!root["interferers"].is_array())
      throw ValidationError("'interferers' must be an array");
    for (const auto &i : root["interferers"]) {
      auto loc = locate(i, sc.satellite, "interferer");
      sc.interferers.push_back({loc.direction,
                                deg2rad(number(i, "sigma_s_deg", 0.0)),
                                deg2rad(number(i, "sigma_i_deg", 0.0)),
                                loc.position});
    }
  }

  if (root.contains("shaping")) {
    const auto &s = root["shaping"];
    sc.L = count(s, "L", sc.L);
    sc.kappa = number(s, "kappa", sc.kappa);
  }

  sc.pso = parse_pso(root.value("pso", json::object()), sc.array, sc.seed);

  if (root.contains("link_budget")) {
    const auto &lb = root["link_budget"];
    sc.link = LinkBudget::from_db(number(lb, "user_snr_db", 10.0),
                                  number(lb, "interferer_to_user_db", 20.0));
  }

  sc.validate();
  return sc;
}

Scenario load_scenario(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

} // namespace nullshaper::simulation
