#pragma once

#include <string>
#include <vector>

#include "membrane/constants.hpp"

namespace membrane {

// Non-fatal diagnostic attached to results when a modelling regime
// assumption is stretched (e.g. k_B T / hbar omega below 100).
struct Warning {
  std::string code;     // stable machine-readable id
  std::string message;  // human-readable explanation
  double value = 0.0;   // observed ratio / quantity
  double threshold = 0.0;
};

// Harmonic oscillator ("membrane") with configurable physical constants.
struct OscillatorParams {
  double mass;                                     // kg
  double omega;                                    // rad/s
  double hbar = constants::hbar;                   // J s
  double k_boltzmann = constants::k_boltzmann;     // J/K

  double stiffness() const { return mass * omega * omega; }  // m omega^2, N/m
  double hbar_omega() const { return hbar * omega; }          // level spacing, J
  // k_B T / (hbar omega); >> 1 in the classical regime.
  double thermal_ratio(double t) const { return k_boltzmann * t / hbar_omega(); }

  void validate() const;
};

// Piston force linear in bath temperature: f(T) = kappa * alpha * (T - t_ref).
// kappa couples membrane to piston (N/m), alpha is the piston thermal
// expansion coefficient (m/K), t_ref is the temperature of zero force (K).
struct LinearDrive {
  double kappa;   // N/m
  double alpha;   // m/K
  double t_ref;   // K

  void validate() const;
};

// Thermal environment: temperature and mechanical (bath) damping.
struct BathParams {
  double temperature;   // K
  double gamma_m = 0.0; // mechanical damping, kg/s

  void validate() const;
};

// Laser cold damping rate.
struct CoolingParams {
  double gamma_l;  // 1/s

  void validate() const;
};

// Dimensionless ratios that the cooled-dynamics formulas assume are small.
struct RegimeRatios {
  double gamma_l_over_omega;     // laser damping vs oscillation
  double gamma_m_over_m_omega;   // mechanical damping vs oscillation
  double epsilon;                // gamma_m / (m gamma_l), residual heating

  // One warning per ratio above 0.1.
  std::vector<Warning> warnings() const;
};

RegimeRatios regime_ratios(const OscillatorParams& osc, const BathParams& bath,
                           const CoolingParams& cool);

// Empty when k_B T / (hbar omega) >= 100, else a single high_t warning.
std::vector<Warning> high_t_warnings(const OscillatorParams& osc, double t);

}  // namespace membrane
