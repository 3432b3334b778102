#pragma once

#include <vector>

#include "membrane/params.hpp"

namespace membrane {

// First and second moments of the driven oscillator in thermal equilibrium
// (classical regime k_B T >> hbar omega).
struct EquilibriumState {
  double mean_x;   // f(T)/(m omega^2), m
  double mean_p;   // 0 in equilibrium, kg m/s
  double var_x;    // k_B T/(m omega^2), m^2
  double var_p;    // m k_B T, (kg m/s)^2
  std::vector<Warning> warnings;
};

// Mean potential energy split into the displacement (coherent) part,
// which the drive makes negative, and the thermal (incoherent) part.
struct PotentialSplit {
  double e_coh;  // -(m omega^2/2) <X>^2 <= 0, J
  double e_inc;  // +(m omega^2/2) Var(X) = k_B T/2, J
};

// Piston force at bath temperature t. Throws std::domain_error for t <= 0.
double drive_force(const LinearDrive& drive, double t);

// Equilibrium moments; variances do not depend on the drive.
EquilibriumState equilibrium_state(const OscillatorParams& osc,
                                   const LinearDrive& drive,
                                   const BathParams& bath);

// Position signal-to-noise ratio <X>^2 / Var(X) = f(t)^2/(k_B t m omega^2).
// Grows without bound as t -> 0+ (pulling beats pushing).
double snr_x(const OscillatorParams& osc, const LinearDrive& drive, double t);

PotentialSplit potential_energy_split(const OscillatorParams& osc,
                                      const LinearDrive& drive,
                                      const BathParams& bath);

// Exact temperature derivative of the coherent part:
// d e_coh/dT = -(1/(2 m omega^2)) d f^2/dT = -kappa^2 alpha^2 (t - t_ref)/(m omega^2).
double d_ecoh_dt(const OscillatorParams& osc, const LinearDrive& drive, double t);

// Mean total energy <H(T)>. Computed via the moment route
// <P^2>/2m + (m omega^2/2)<X^2> - f<X> and cross-checked against the
// equivalent k_B T (1 - SNR/2); throws ConsistencyError if the two routes
// disagree beyond 1e-12 of the natural scale k_B T (1 + SNR/2).
double mean_total_energy(const OscillatorParams& osc, const LinearDrive& drive,
                         const BathParams& bath);

}  // namespace membrane
