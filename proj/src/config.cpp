#include "membrane/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <string>

#include "membrane/errors.hpp"

namespace membrane {

namespace {

void require_keys(const nlohmann::json& j, const std::string& section,
                  std::initializer_list<const char*> allowed) {
  if (!j.is_object()) {
    throw ConfigError("section \"" + section + "\" must be a JSON object");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown config key \"" + section + "." + item.key() +
                        "\"");
    }
  }
}

double get_number(const nlohmann::json& j, const char* key, double fallback,
                  const std::string& section) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) {
    throw ConfigError("config key \"" + section + "." + key +
                      "\" must be a number");
  }
  return v.get<double>();
}

std::int64_t get_integer(const nlohmann::json& j, const char* key,
                         std::int64_t fallback, const std::string& section) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError("config key \"" + section + "." + key +
                      "\" must be an integer");
  }
  return v.get<std::int64_t>();
}

}  // namespace

void SweepConfig::validate() const {
  if (!(t_min > 0.0)) {
    throw std::domain_error("sweep.t_min must be positive");
  }
  if (!(t_max > t_min)) {
    throw std::domain_error("sweep.t_max must exceed sweep.t_min");
  }
  if (n_points < 2) {
    throw std::domain_error("sweep.n_points must be at least 2");
  }
}

void RunConfig::validate() const {
  oscillator.validate();
  drive.validate();
  bath.validate();
  cooling.validate();
  sweep.validate();
}

RunConfig default_config() {
  RunConfig config;
  config.oscillator.omega = 2.0 * std::numbers::pi * 1e6;
  config.oscillator.mass = 1e4 / (config.oscillator.omega * config.oscillator.omega);
  config.drive = LinearDrive{1e2, 1e-12, 100.0};
  config.bath.temperature = 100.0;
  config.bath.gamma_m =
      config.oscillator.mass * 2.0 * std::numbers::pi * 10.0;
  config.cooling.gamma_l = 2.0 * std::numbers::pi * 1e3;
  return config;
}

RunConfig config_from_json(const nlohmann::json& j) {
  require_keys(j, "",
               {"oscillator", "drive", "bath", "cooling", "sweep", "sim",
                "checks"});
  RunConfig config = default_config();

  if (j.contains("oscillator")) {
    const auto& sec = j.at("oscillator");
    require_keys(sec, "oscillator", {"omega", "mass", "stiffness"});
    if (sec.contains("mass") && sec.contains("stiffness")) {
      throw ConfigError(
          "oscillator.mass and oscillator.stiffness are mutually exclusive");
    }
    const double default_stiffness = config.oscillator.stiffness();
    config.oscillator.omega =
        get_number(sec, "omega", config.oscillator.omega, "oscillator");
    if (sec.contains("mass")) {
      config.oscillator.mass = get_number(sec, "mass", 0.0, "oscillator");
    } else {
      const double stiffness =
          get_number(sec, "stiffness", default_stiffness, "oscillator");
      config.oscillator.mass =
          stiffness / (config.oscillator.omega * config.oscillator.omega);
    }
  }

  if (j.contains("drive")) {
    const auto& sec = j.at("drive");
    require_keys(sec, "drive", {"kappa", "alpha", "t_ref"});
    config.drive.kappa = get_number(sec, "kappa", config.drive.kappa, "drive");
    config.drive.alpha = get_number(sec, "alpha", config.drive.alpha, "drive");
    config.drive.t_ref = get_number(sec, "t_ref", config.drive.t_ref, "drive");
  }

  if (j.contains("bath")) {
    const auto& sec = j.at("bath");
    require_keys(sec, "bath", {"t", "gamma_m", "gamma_m_over_m"});
    if (sec.contains("gamma_m") && sec.contains("gamma_m_over_m")) {
      throw ConfigError(
          "bath.gamma_m and bath.gamma_m_over_m are mutually exclusive");
    }
    config.bath.temperature =
        get_number(sec, "t", config.bath.temperature, "bath");
    if (sec.contains("gamma_m")) {
      config.bath.gamma_m = get_number(sec, "gamma_m", 0.0, "bath");
    } else if (sec.contains("gamma_m_over_m")) {
      config.bath.gamma_m =
          config.oscillator.mass *
          get_number(sec, "gamma_m_over_m", 0.0, "bath");
    } else {
      // Keep the default coupling ratio if the mass changed.
      config.bath.gamma_m =
          config.oscillator.mass * 2.0 * std::numbers::pi * 10.0;
    }
  }

  if (j.contains("cooling")) {
    const auto& sec = j.at("cooling");
    require_keys(sec, "cooling", {"gamma_l"});
    config.cooling.gamma_l =
        get_number(sec, "gamma_l", config.cooling.gamma_l, "cooling");
  }

  if (j.contains("sweep")) {
    const auto& sec = j.at("sweep");
    require_keys(sec, "sweep", {"t_min", "t_max", "n_points"});
    config.sweep.t_min = get_number(sec, "t_min", config.sweep.t_min, "sweep");
    config.sweep.t_max = get_number(sec, "t_max", config.sweep.t_max, "sweep");
    config.sweep.n_points = static_cast<int>(
        get_integer(sec, "n_points", config.sweep.n_points, "sweep"));
  }

  if (j.contains("sim")) {
    const auto& sec = j.at("sim");
    require_keys(sec, "sim",
                 {"n_traj", "dt", "t_final", "seed", "n_threads",
                  "burn_in_fraction", "sample_stride", "scheme"});
    config.sim.n_traj = get_integer(sec, "n_traj", config.sim.n_traj, "sim");
    config.sim.dt = get_number(sec, "dt", config.sim.dt, "sim");
    config.sim.t_final = get_number(sec, "t_final", config.sim.t_final, "sim");
    config.sim.seed = static_cast<std::uint64_t>(
        get_integer(sec, "seed", static_cast<std::int64_t>(config.sim.seed),
                    "sim"));
    config.sim.n_threads = static_cast<int>(
        get_integer(sec, "n_threads", config.sim.n_threads, "sim"));
    config.sim.burn_in_fraction =
        get_number(sec, "burn_in_fraction", config.sim.burn_in_fraction, "sim");
    config.sim.sample_stride = get_integer(
        sec, "sample_stride", config.sim.sample_stride, "sim");
    if (sec.contains("scheme")) {
      const auto& v = sec.at("scheme");
      if (!v.is_string()) {
        throw ConfigError("config key \"sim.scheme\" must be a string");
      }
      const std::string scheme = v.get<std::string>();
      if (scheme == "exact") {
        config.sim.scheme = langevin::Scheme::exact;
      } else if (scheme == "euler") {
        config.sim.scheme = langevin::Scheme::euler_maruyama;
      } else {
        throw ConfigError("sim.scheme must be \"exact\" or \"euler\", got \"" +
                          scheme + "\"");
      }
    }
  }

  if (j.contains("checks")) {
    const auto& sec = j.at("checks");
    require_keys(sec, "checks",
                 {"seed", "t_min", "t_max", "n_grid", "n_draws", "mc_n_traj",
                  "mc_dt", "mc_t_final", "mc_n_threads"});
    config.checks.seed = static_cast<std::uint64_t>(get_integer(
        sec, "seed", static_cast<std::int64_t>(config.checks.seed), "checks"));
    config.checks.t_min =
        get_number(sec, "t_min", config.checks.t_min, "checks");
    config.checks.t_max =
        get_number(sec, "t_max", config.checks.t_max, "checks");
    config.checks.n_grid = static_cast<int>(
        get_integer(sec, "n_grid", config.checks.n_grid, "checks"));
    config.checks.n_draws = static_cast<int>(
        get_integer(sec, "n_draws", config.checks.n_draws, "checks"));
    config.checks.mc_n_traj = get_integer(
        sec, "mc_n_traj", config.checks.mc_n_traj, "checks");
    config.checks.mc_dt =
        get_number(sec, "mc_dt", config.checks.mc_dt, "checks");
    config.checks.mc_t_final =
        get_number(sec, "mc_t_final", config.checks.mc_t_final, "checks");
    config.checks.mc_n_threads = static_cast<int>(get_integer(
        sec, "mc_n_threads", config.checks.mc_n_threads, "checks"));
  }

  return config;
}

nlohmann::json config_to_json(const RunConfig& config) {
  nlohmann::json j;
  j["oscillator"] = {{"omega", config.oscillator.omega},
                     {"mass", config.oscillator.mass}};
  j["drive"] = {{"kappa", config.drive.kappa},
                {"alpha", config.drive.alpha},
                {"t_ref", config.drive.t_ref}};
  j["bath"] = {{"t", config.bath.temperature},
               {"gamma_m", config.bath.gamma_m}};
  j["cooling"] = {{"gamma_l", config.cooling.gamma_l}};
  j["sweep"] = {{"t_min", config.sweep.t_min},
                {"t_max", config.sweep.t_max},
                {"n_points", config.sweep.n_points}};
  j["sim"] = {{"n_traj", config.sim.n_traj},
              {"dt", config.sim.dt},
              {"t_final", config.sim.t_final},
              {"seed", config.sim.seed},
              {"n_threads", config.sim.n_threads},
              {"burn_in_fraction", config.sim.burn_in_fraction},
              {"sample_stride", config.sim.sample_stride},
              {"scheme", config.sim.scheme == langevin::Scheme::exact
                             ? "exact"
                             : "euler"}};
  j["checks"] = {{"seed", config.checks.seed},
                 {"t_min", config.checks.t_min},
                 {"t_max", config.checks.t_max},
                 {"n_grid", config.checks.n_grid},
                 {"n_draws", config.checks.n_draws},
                 {"mc_n_traj", config.checks.mc_n_traj},
                 {"mc_dt", config.checks.mc_dt},
                 {"mc_t_final", config.checks.mc_t_final},
                 {"mc_n_threads", config.checks.mc_n_threads}};
  return j;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file \"" + path + "\"");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file \"" + path + "\" is not valid JSON: " +
                      e.what());
  }
  return config_from_json(j);
}

}  // namespace membrane
