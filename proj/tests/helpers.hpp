#pragma once

#include <numbers>

#include "membrane/params.hpp"

namespace membrane::testing {

// Reference parameter set used across the unit tests: omega = 2 pi MHz with
// stiffness m omega^2 = 1e4 N/m, linear drive 1e2 N/m * 1e-12 m/K anchored
// at 100 K, cavity cooling at 2 pi kHz and mechanical damping gamma_m/m of
// 2 pi * 10 / s.
inline OscillatorParams default_osc() {
  OscillatorParams osc;
  osc.omega = 2.0 * std::numbers::pi * 1e6;
  osc.mass = 1e4 / (osc.omega * osc.omega);
  return osc;
}

inline LinearDrive default_drive() { return LinearDrive{1e2, 1e-12, 100.0}; }

inline CoolingParams default_cooling() {
  return CoolingParams{2.0 * std::numbers::pi * 1e3};
}

inline BathParams default_bath(double temperature) {
  return BathParams{temperature,
                    default_osc().mass * 2.0 * std::numbers::pi * 10.0};
}

}  // namespace membrane::testing
