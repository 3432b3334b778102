#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "membrane/params.hpp"

namespace membrane::validate {

// One validation check. status is "pass" iff |measured - expected| <=
// tolerance, "fail" otherwise ("warn" is reserved for non-gating advisories).
struct CheckReport {
  std::string check_id;
  std::string status;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string detail;
  std::vector<std::string> covers;  // operations exercised (not serialized)
};

struct SuiteOptions {
  std::uint64_t seed = 20240817;
  double t_min = 80.0;   // grid for closed-form checks, K
  double t_max = 120.0;
  int n_grid = 41;
  int n_draws = 1000;    // random parameter draws for the energy identity
  double u_corruption = 0.0;  // harness self-test: bias injected into one route
  std::int64_t mc_n_traj = 4000;
  double mc_dt = 1e-6;
  double mc_t_final = 4e-3;
  int mc_n_threads = 0;
};

// Closed-form identities: energy routes, partition closed form, entropy
// drive-invariance, Legendre transform, work vs coherent energy, first law.
std::vector<CheckReport> run_identity_suite(const OscillatorParams& osc,
                                            const LinearDrive& drive,
                                            const SuiteOptions& opts = {});

// Closed-form derivatives vs central finite differences, with observed-order
// verification where the finite-difference error is measurable.
std::vector<CheckReport> run_derivative_suite(const OscillatorParams& osc,
                                              const LinearDrive& drive,
                                              const SuiteOptions& opts = {});

// Stationary covariance routes (Lyapunov / closed form / Monte Carlo),
// effective temperature, determinism under parallelism, Heisenberg floor.
std::vector<CheckReport> run_stochastic_suite(const OscillatorParams& osc,
                                              const LinearDrive& drive,
                                              const BathParams& bath,
                                              const CoolingParams& cool,
                                              const SuiteOptions& opts = {});

// All three suites; throws ConsistencyError if the union of covered
// operations does not match required_coverage().
std::vector<CheckReport> run_all_suites(const OscillatorParams& osc,
                                        const LinearDrive& drive,
                                        const BathParams& bath,
                                        const CoolingParams& cool,
                                        const SuiteOptions& opts = {});

// Every closed-form / simulation operation that the suites must exercise.
std::vector<std::string> required_coverage();

bool all_passed(const std::vector<CheckReport>& reports);

// One structured record per line: check_id, status, measured, expected,
// tolerance, detail as a JSON object.
std::string to_json_line(const CheckReport& report);

}  // namespace membrane::validate
