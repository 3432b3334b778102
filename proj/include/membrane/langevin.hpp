#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "membrane/params.hpp"

namespace membrane::langevin {

// Linear SDE for the cooled, driven oscillator in the shifted coordinate
// X1 = X - f(T)/(m omega^2):  d(state) = drift * state dt + noise,
// with state = (X1, P) and <noise noise^T> = diffusion dt.
struct SdeModel {
  Eigen::Matrix2d drift;
  Eigen::Matrix2d diffusion;  // PSD
  double x1_offset;           // f(T)/(m omega^2), m
  OscillatorParams osc;       // carried for downstream occupancy conversions
};

// Stationary second moments of (X1, P).
struct StationaryStats {
  double var_x1;   // m^2
  double var_p;    // (kg m/s)^2
  double cov_x1p;  // mixed moment (0 in the rotating-regime approximation)
  double n_star;   // effective thermal occupancy
  double t_star;   // effective temperature, K
};

struct EffectiveTemperature {
  double n_star;
  double t_star;         // (hbar omega/k_B) / ln(1/n* + 1); 0 when n* = 0
  double t_star_high_n;  // large-n* form (hbar omega/k_B) n*
};

enum class Scheme { exact, euler_maruyama };

struct SimOptions {
  std::int64_t n_traj = 10000;
  double dt = 1e-6;              // s
  double t_final = 4e-3;         // s
  std::uint64_t seed = 42;
  int n_threads = 0;             // 0 = use hardware concurrency
  double burn_in_fraction = 0.5; // start of the stationary window
  double initial_x1 = 0.0;       // m
  double initial_p = 0.0;        // kg m/s
  std::int64_t sample_stride = 0;  // steps between stored samples; 0 = auto
  Scheme scheme = Scheme::exact;
};

// Ensemble moments at the stored sample times.
struct EnsembleMoments {
  std::vector<double> time;
  std::vector<double> mean_x1, mean_p;
  std::vector<double> var_x1, var_p;
};

// Stationary-window estimates. Each trajectory contributes one window
// average, so the standard errors are plain iid errors across trajectories.
struct StationaryEstimate {
  double mean_x1, mean_x1_se;
  double mean_p, mean_p_se;
  double var_x1, var_x1_se;
  double var_p, var_p_se;
  double window_start;  // s
  std::int64_t n_traj;
};

struct EnsembleResult {
  EnsembleMoments moments;
  StationaryEstimate stationary;
  std::vector<Warning> warnings;
};

// One-step propagator of the discretized SDE: state -> phi * state + noise,
// noise ~ N(0, cov), cov = noise_chol * noise_chol^T.
struct StepPropagator {
  Eigen::Matrix2d phi;
  Eigen::Matrix2d cov;
  Eigen::Matrix2d noise_chol;
};

// Assembles drift/diffusion from the physical parameters. The diffusion is
// fixed so the undamped-bath (gamma_m = 0) stationary state is the vacuum
// (hbar/(2 m omega), hbar m omega/2). Throws ModelError if the drift is not
// strictly stable.
SdeModel build_sde(const OscillatorParams& osc, const LinearDrive& drive,
                   const BathParams& bath, const CoolingParams& cool);

// Smallest |Re(eigenvalue)| of the drift: the slowest relaxation rate.
double slowest_decay_rate(const SdeModel& model);

// Stationary covariance from drift S + S drift^T + diffusion = 0, reduced to
// a 3x3 linear solve on (var_x1, cov, var_p). Throws ModelError for unstable
// drift, NumericalError for a singular system.
StationaryStats stationary_lyapunov(const SdeModel& model);

// Rotating-regime closed form: var_x1 = (hbar/2 m omega)(1-eps) + eps k_B T/(m omega^2).
StationaryStats stationary_closed_form(const OscillatorParams& osc,
                                       const BathParams& bath,
                                       const CoolingParams& cool);

// Occupancy and effective temperature from a stationary variance. Throws
// std::domain_error if var_x1 sits below the vacuum floor hbar/(2 m omega)
// (inconsistent inputs).
EffectiveTemperature effective_temperature(const OscillatorParams& osc,
                                           const StationaryStats& stats);

// Exact one-step discretization over dt: phi = exp(drift dt) and the
// integrated process noise via the block-matrix (Van Loan) exponential.
StepPropagator make_step_propagator(const SdeModel& model, double dt,
                                    Scheme scheme = Scheme::exact);

// Fixed-seed ensemble simulation. Trajectory i draws from the counter-based
// stream (seed, i) and reductions run in trajectory order, so results are
// bit-identical for any n_threads.
EnsembleResult simulate_ensemble(const SdeModel& model, const SimOptions& opts);

// Cooled signal-to-noise ratio: the stationary mean f(T)/(m omega^2) is
// unchanged while the variance is cooled, so SNR* ~ SNR/eps.
double snr_star(const OscillatorParams& osc, const LinearDrive& drive,
                const BathParams& bath, const CoolingParams& cool);

// Nonequilibrium potentials of the cooled stationary state.
struct NoneqReport {
  double u;            // m omega^2 <X1^2> - f^2/(2 m omega^2), J
  double f_helmholtz;  // k_B T* ln(hbar omega/k_B T*) - f^2/(2 m omega^2), J
  double s;            // k_B [1 - ln(hbar omega/k_B T*)], J/K
  double du_dt;        // eps k_B - (1/(2 m omega^2)) d f^2/dT (exact), J/K
  double n_star;
  double t_star;       // K
  double epsilon;
  std::vector<Warning> warnings;
};

NoneqReport noneq_potentials(const OscillatorParams& osc,
                             const LinearDrive& drive, const BathParams& bath,
                             const CoolingParams& cool);

}  // namespace membrane::langevin
