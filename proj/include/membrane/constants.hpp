#pragma once

namespace membrane::constants {

// CODATA 2018 exact values (SI).
inline constexpr double k_boltzmann = 1.380649e-23;   // J/K
inline constexpr double hbar = 1.054571817e-34;       // J s

// Ratio k_B T / (hbar omega) below which the classical (high-temperature)
// closed forms stop being trustworthy; used to attach warnings, never errors.
inline constexpr double high_t_ratio_floor = 100.0;

}  // namespace membrane::constants
