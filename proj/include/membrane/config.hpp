#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "membrane/langevin.hpp"
#include "membrane/params.hpp"
#include "membrane/validate.hpp"

namespace membrane {

struct SweepConfig {
  double t_min = 80.0;
  double t_max = 120.0;
  int n_points = 81;

  void validate() const;
};

// Fully resolved run configuration. File values and command-line overrides
// both land here; mass/stiffness and gamma_m/gamma_m_over_m aliases are
// resolved at parse time so the struct only carries concrete numbers.
struct RunConfig {
  OscillatorParams oscillator;
  LinearDrive drive;
  BathParams bath;
  CoolingParams cooling;
  SweepConfig sweep;
  langevin::SimOptions sim;
  validate::SuiteOptions checks;

  void validate() const;
};

RunConfig default_config();

// Strict parser: unknown keys anywhere raise ConfigError naming the key, as
// do mutually exclusive aliases given together. Missing keys keep defaults.
RunConfig config_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const RunConfig& config);

RunConfig load_config_file(const std::string& path);

}  // namespace membrane
