#pragma once

#include <cstddef>
#include <vector>

#include "membrane/params.hpp"

namespace membrane::thermo {

// Equilibrium thermodynamic potentials and capacities at one temperature
// (classical closed forms, valid for validity_ratio = k_B T/(hbar omega) >> 1).
struct ThermoReport {
  double u;             // internal energy <H(T)>, J
  double f_helmholtz;   // free energy, J
  double s;             // entropy, J/K (drive-independent)
  double c;             // full heat capacity dU/dT (includes work term), J/K
  double c0;            // bare capacity T dS/dT = k_B, J/K
  double validity_ratio;
  std::vector<Warning> warnings;
};

// Signed work/heat bookkeeping for a quasi-static bath-temperature change.
struct TransitionLedger {
  double t_from;   // K
  double t_to;     // K
  double work;     // -(f(t_to)^2 - f(t_from)^2)/(2 m omega^2), J
  double heat;     // k_B (t_to - t_from), J
  double delta_u;  // work + heat (first law holds identically), J
};

// Quantum partition function of the shifted oscillator, evaluated by direct
// summation over levels E_n = hbar omega (n + 1/2) - f^2/(2 m omega^2).
// Everything is carried in log-space to avoid overflow.
struct PartitionExact {
  double log_z;         // ln Z(T)
  double log_z0;        // ln Z0(T), undriven part of the sum
  std::size_t n_terms;  // number of levels summed
};

struct HeatCapacities {
  double c;   // k_B - kappa^2 alpha^2 (t - t_ref)/(m omega^2)
  double c0;  // k_B
};

// The two path integrals of the first law, Eq-by-Eq:
//   heat_term = integral of T dS, work_term = integral of the explicit
//   temperature derivative of <H> (the drive work).
struct PathTerms {
  double heat_term;  // J
  double work_term;  // J
};

// Potentials from the exact level sum: U = -d(ln Z)/d(beta) at fixed drive
// force (central difference in beta), F = -k_B T ln Z, S = (U - F)/T.
struct ExactPotentials {
  double u;
  double f_helmholtz;
  double s;
};

// ln Z0 from the geometric closed form 1/(2 sinh(hbar omega/(2 k_B T))).
double log_z0_closed(const OscillatorParams& osc, double t);

// Direct level sum. n_max = 0 lets the routine pick the truncation; in all
// cases the truncation grows (doubling) until the geometric tail is below
// 1e-15 of the partial sum, and a NumericalError is thrown if that bound is
// unreachable within the hard cap. The result is asserted against the
// closed form exp(SNR/2) Z0 before returning (ConsistencyError otherwise).
PartitionExact partition_exact(const OscillatorParams& osc,
                               const LinearDrive& drive, double t,
                               std::size_t n_max = 0);

HeatCapacities heat_capacity(const OscillatorParams& osc,
                             const LinearDrive& drive, double t);

ThermoReport potentials(const OscillatorParams& osc, const LinearDrive& drive,
                        double t);

// Exact-sum route; serves as the independent oracle for the closed forms.
ExactPotentials exact_potentials(const OscillatorParams& osc,
                                 const LinearDrive& drive, double t,
                                 std::size_t n_max = 0);

TransitionLedger transition(const OscillatorParams& osc,
                            const LinearDrive& drive, double t_from,
                            double t_to);

// Path integration of the first law over [t_from, t_to] with n_steps
// intervals: midpoint-weighted Stieltjes sum for the heat term, trapezoid
// for the work term, each with one Richardson extrapolation level.
PathTerms first_law_path(const OscillatorParams& osc, const LinearDrive& drive,
                         double t_from, double t_to, std::size_t n_steps);

// Doubles n_steps until both terms are stable to rel_tol; throws
// NumericalError if the tolerance is not met at the refinement cap.
PathTerms first_law_path_refined(const OscillatorParams& osc,
                                 const LinearDrive& drive, double t_from,
                                 double t_to, double rel_tol = 1e-10);

}  // namespace membrane::thermo
