#include "membrane/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace membrane {

namespace {

void require_finite_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw std::domain_error(std::string(name) + " must be finite and > 0, got " +
                            std::to_string(v));
  }
}

void require_finite_nonnegative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::domain_error(std::string(name) + " must be finite and >= 0, got " +
                            std::to_string(v));
  }
}

}  // namespace

void OscillatorParams::validate() const {
  require_finite_positive(mass, "oscillator mass");
  require_finite_positive(omega, "oscillator omega");
  require_finite_positive(hbar, "hbar");
  require_finite_positive(k_boltzmann, "k_boltzmann");
}

void LinearDrive::validate() const {
  // kappa = 0 is the legitimate undriven limit; negative stiffness is not.
  if (!std::isfinite(kappa) || kappa < 0.0) {
    throw std::domain_error("drive kappa must be finite and >= 0, got " +
                            std::to_string(kappa));
  }
  require_finite_positive(alpha, "drive alpha");
  require_finite_positive(t_ref, "drive t_ref");
}

void BathParams::validate() const {
  require_finite_positive(temperature, "bath temperature");
  require_finite_nonnegative(gamma_m, "bath gamma_m");
}

void CoolingParams::validate() const {
  require_finite_positive(gamma_l, "cooling gamma_l");
}

std::vector<Warning> RegimeRatios::warnings() const {
  constexpr double kLimit = 0.1;
  std::vector<Warning> out;
  auto check = [&](double value, const char* code, const char* what) {
    if (value > kLimit) {
      out.push_back({code,
                     std::string(what) + " exceeds the underdamped-regime bound",
                     value, kLimit});
    }
  };
  check(gamma_l_over_omega, "regime.gamma_l_over_omega", "gamma_l / omega");
  check(gamma_m_over_m_omega, "regime.gamma_m_over_m_omega", "gamma_m / (m omega)");
  check(epsilon, "regime.epsilon", "epsilon = gamma_m / (m gamma_l)");
  return out;
}

RegimeRatios regime_ratios(const OscillatorParams& osc, const BathParams& bath,
                           const CoolingParams& cool) {
  osc.validate();
  bath.validate();
  cool.validate();
  return {cool.gamma_l / osc.omega,
          bath.gamma_m / (osc.mass * osc.omega),
          bath.gamma_m / (osc.mass * cool.gamma_l)};
}

std::vector<Warning> high_t_warnings(const OscillatorParams& osc, double t) {
  std::vector<Warning> out;
  const double ratio = osc.thermal_ratio(t);
  if (ratio < constants::high_t_ratio_floor) {
    out.push_back({"thermo.high_t_ratio",
                   "k_B T / (hbar omega) is too small for the classical "
                   "closed forms to be accurate",
                   ratio, constants::high_t_ratio_floor});
  }
  return out;
}

}  // namespace membrane
