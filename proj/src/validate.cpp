#include "membrane/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "membrane/equilibrium.hpp"
#include "membrane/errors.hpp"
#include "membrane/langevin.hpp"
#include "membrane/rng.hpp"
#include "membrane/thermo.hpp"

namespace membrane::validate {

namespace {

CheckReport make_check(std::string id, double measured, double expected,
                       double tolerance, std::string detail,
                       std::vector<std::string> covers) {
  CheckReport report;
  report.check_id = std::move(id);
  report.measured = measured;
  report.expected = expected;
  report.tolerance = tolerance;
  report.status =
      std::abs(measured - expected) <= tolerance ? "pass" : "fail";
  report.detail = std::move(detail);
  report.covers = std::move(covers);
  return report;
}

// Encodes "value must be >= threshold": measured saturates at the threshold
// when satisfied so the pass rule |measured - expected| <= tolerance applies.
CheckReport make_at_least(std::string id, double value, double threshold,
                          std::string detail,
                          std::vector<std::string> covers) {
  return make_check(std::move(id), std::min(value, threshold), threshold, 0.0,
                    std::move(detail) + " (observed " + std::to_string(value) +
                        ", required >= " + std::to_string(threshold) + ")",
                    std::move(covers));
}

double uniform(CounterRng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_uniform();
}

double log_uniform(CounterRng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

// Oscillator rescaled so k_B t / (hbar omega) == ratio (same stiffness);
// keeps exact level sums affordable inside the suites.
OscillatorParams with_thermal_ratio(const OscillatorParams& osc, double t,
                                    double ratio) {
  OscillatorParams scaled = osc;
  scaled.omega = osc.k_boltzmann * t / (ratio * osc.hbar);
  scaled.mass = osc.stiffness() / (scaled.omega * scaled.omega);
  return scaled;
}

std::vector<double> temperature_grid(const SuiteOptions& opts) {
  std::vector<double> grid;
  grid.reserve(opts.n_grid);
  for (int i = 0; i < opts.n_grid; ++i) {
    grid.push_back(opts.t_min + (opts.t_max - opts.t_min) * i /
                                    static_cast<double>(opts.n_grid - 1));
  }
  return grid;
}

}  // namespace

std::vector<CheckReport> run_identity_suite(const OscillatorParams& osc,
                                            const LinearDrive& drive,
                                            const SuiteOptions& opts) {
  osc.validate();
  drive.validate();
  std::vector<CheckReport> reports;
  const auto grid = temperature_grid(opts);

  // 01: energy routes on the grid (corruptible fixture for the harness test).
  {
    double worst = 0.0;
    for (double t : grid) {
      const BathParams bath{t, 0.0};
      const double moment = mean_total_energy(osc, drive, bath) +
                            opts.u_corruption;
      const double snr = snr_x(osc, drive, t);
      const double kbt = osc.k_boltzmann * t;
      const double snr_route = kbt * (1.0 - 0.5 * snr);
      worst = std::max(worst,
                       std::abs(moment - snr_route) / (kbt * (1.0 + 0.5 * snr)));
    }
    reports.push_back(make_check(
        "identity/01_energy_routes_grid", worst, 0.0, 1e-12,
        "max relative disagreement between the moment route and k_B T (1 - SNR/2)",
        {"mean_total_energy", "snr_x"}));
  }

  // 02: energy routes over random parameter draws.
  {
    CounterRng rng(opts.seed, 2);
    double worst = 0.0;
    for (int i = 0; i < opts.n_draws; ++i) {
      OscillatorParams o = osc;
      o.mass = log_uniform(rng, 1e-14, 1e-6);
      o.omega = log_uniform(rng, 1e4, 1e8);
      const double t_ref = uniform(rng, 10.0, 500.0);
      double theta = uniform(rng, 0.2, 3.0);
      if (std::abs(theta - 1.0) < 0.05) theta += 0.1;
      const double t = t_ref * theta;
      const double target_snr = uniform(rng, 0.0, 4.0);
      const double f2 = target_snr * o.k_boltzmann * t * o.stiffness();
      const LinearDrive d{1.0, std::sqrt(f2) / std::abs(t - t_ref), t_ref};
      const BathParams bath{t, 0.0};
      const double moment = mean_total_energy(o, d, bath) + opts.u_corruption;
      const double snr = snr_x(o, d, t);
      const double kbt = o.k_boltzmann * t;
      worst = std::max(worst, std::abs(moment - kbt * (1.0 - 0.5 * snr)) /
                                  (kbt * (1.0 + 0.5 * snr)));
    }
    reports.push_back(make_check(
        "identity/02_energy_routes_draws", worst, 0.0, 1e-12,
        std::to_string(opts.n_draws) + " random parameter draws",
        {"mean_total_energy", "snr_x", "equilibrium_state"}));
  }

  // 03: level sum against the geometric closed form.
  {
    const double t = 1.5 * drive.t_ref;
    const OscillatorParams scaled = with_thermal_ratio(osc, t, 2000.0);
    const auto part = thermo::partition_exact(scaled, drive, t);
    const double closed = 0.5 * snr_x(scaled, drive, t) +
                          thermo::log_z0_closed(scaled, t);
    reports.push_back(make_check(
        "identity/03_partition_closed_form",
        std::abs(part.log_z - closed) / std::max(1.0, std::abs(closed)), 0.0,
        1e-12, "level sum vs exp(SNR/2)/(2 sinh(hbar omega/2 k_B T)) in ln Z",
        {"partition_exact"}));
  }

  // 04: entropy drive-invariance, closed form (exact cancellation).
  {
    const LinearDrive undriven{0.0, drive.alpha, drive.t_ref};
    double worst = 0.0;
    for (double t : grid) {
      const double s_driven = thermo::potentials(osc, drive, t).s;
      const double s_plain = thermo::potentials(osc, undriven, t).s;
      worst = std::max(worst, std::abs(s_driven - s_plain));
    }
    reports.push_back(make_check(
        "identity/04_entropy_drive_invariance_closed", worst, 0.0, 0.0,
        "S is independent of kappa in the closed form", {"potentials"}));
  }

  // 05: entropy drive-invariance through the exact level sum.
  {
    const double t = 1.5 * drive.t_ref;
    const OscillatorParams scaled = with_thermal_ratio(osc, t, 2000.0);
    const LinearDrive undriven{0.0, drive.alpha, drive.t_ref};
    const auto with_drive = thermo::exact_potentials(scaled, drive, t);
    const auto without = thermo::exact_potentials(scaled, undriven, t);
    reports.push_back(make_check(
        "identity/05_entropy_drive_invariance_exact",
        std::abs(with_drive.s - without.s) / std::abs(without.s), 0.0, 1e-10,
        "exact-sum entropy with kappa on/off", {"partition_exact"}));
  }

  // 06: Legendre identity U - F = T S.
  {
    double worst = 0.0;
    for (double t : grid) {
      const auto rep = thermo::potentials(osc, drive, t);
      worst = std::max(worst, std::abs(rep.u - rep.f_helmholtz - t * rep.s) /
                                  std::abs(t * rep.s));
    }
    reports.push_back(make_check("identity/06_legendre_identity", worst, 0.0,
                                 1e-10, "U - F = T S on the grid",
                                 {"potentials"}));
  }

  // 07: |work from t_ref| equals |coherent potential energy|.
  {
    double worst = 0.0;
    for (double t : grid) {
      if (t == drive.t_ref) continue;
      const auto ledger = thermo::transition(osc, drive, drive.t_ref, t);
      const auto split = potential_energy_split(osc, drive, BathParams{t, 0.0});
      worst = std::max(worst, std::abs(std::abs(ledger.work) -
                                       std::abs(split.e_coh)) /
                                  std::abs(split.e_coh));
    }
    reports.push_back(make_check(
        "identity/07_work_matches_ecoh", worst, 0.0, 1e-12,
        "|W(t_ref -> T)| = |E_coh(T)|", {"transition", "potential_energy_split"}));
  }

  // 08: first-law closure at n_steps = 1000.
  {
    const double t_to = opts.t_max;
    const auto path =
        thermo::first_law_path(osc, drive, drive.t_ref, t_to, 1000);
    const auto ledger = thermo::transition(osc, drive, drive.t_ref, t_to);
    reports.push_back(make_check(
        "identity/08_first_law_closure",
        std::abs(path.heat_term + path.work_term - ledger.delta_u) /
            std::abs(ledger.delta_u),
        0.0, 1e-10, "path-integrated W + Q vs delta U",
        {"first_law_path", "transition"}));
  }

  // 09: SNR prefactor at theta = 2.
  {
    const double t = 2.0 * drive.t_ref;
    const double ka = drive.kappa * drive.alpha;
    const double expected =
        drive.t_ref * ka * ka / (osc.k_boltzmann * osc.stiffness());
    const double measured = 2.0 * snr_x(osc, drive, t);
    reports.push_back(make_check(
        "identity/09_snr_prefactor", measured, expected, 1e-12 * expected,
        "SNR(2 t_ref) * theta/(theta-1)^2 vs T0 kappa^2 alpha^2/(k_B m omega^2)",
        {"snr_x", "drive_force"}));
  }

  // 10: variances are drive-independent.
  {
    const LinearDrive undriven{0.0, drive.alpha, drive.t_ref};
    double worst = 0.0;
    for (double t : grid) {
      const BathParams bath{t, 0.0};
      const auto a = equilibrium_state(osc, drive, bath);
      const auto b = equilibrium_state(osc, undriven, bath);
      worst = std::max({worst, std::abs(a.var_x - b.var_x),
                        std::abs(a.var_p - b.var_p)});
    }
    reports.push_back(make_check(
        "identity/10_variance_drive_independence", worst, 0.0, 0.0,
        "Var(X), Var(P) identical with kappa on/off", {"equilibrium_state"}));
  }

  // 11: pulling (theta < 1) beats pushing (theta > 1) at equal |theta - 1|.
  {
    double least = 1e300;
    for (int i = 1; i <= 9; ++i) {
      const double delta = 0.1 * i;
      const double pull = snr_x(osc, drive, drive.t_ref * (1.0 - delta * 0.9));
      const double push = snr_x(osc, drive, drive.t_ref * (1.0 + delta * 0.9));
      least = std::min(least, pull - push);
    }
    reports.push_back(make_at_least("identity/11_pulling_beats_pushing", least,
                                    0.0, "min SNR(pull) - SNR(push) margin",
                                    {"snr_x"}));
  }

  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) {
              return a.check_id < b.check_id;
            });
  return reports;
}

std::vector<CheckReport> run_derivative_suite(const OscillatorParams& osc,
                                              const LinearDrive& drive,
                                              const SuiteOptions& opts) {
  osc.validate();
  drive.validate();
  std::vector<CheckReport> reports;
  const auto grid = temperature_grid(opts);

  const auto central = [](auto&& fn, double t, double h) {
    return (fn(t + h) - fn(t - h)) / (2.0 * h);
  };

  // 01: d e_coh/dT vs finite difference (h = 1e-4 t_ref).
  {
    const double h = 1e-4 * drive.t_ref;
    const auto e_coh = [&](double t) {
      return potential_energy_split(osc, drive, BathParams{t, 0.0}).e_coh;
    };
    double worst = 0.0;
    for (double t : grid) {
      const double closed = d_ecoh_dt(osc, drive, t);
      const double fd = central(e_coh, t, h);
      const double scale = std::max(std::abs(closed),
                                    osc.k_boltzmann * 1e-3);
      worst = std::max(worst, std::abs(closed - fd) / scale);
    }
    reports.push_back(make_check(
        "derivative/01_ecoh_fd", worst, 0.0, 1e-6,
        "closed-form d e_coh/dT vs central difference",
        {"d_ecoh_dt", "potential_energy_split"}));
  }

  // 02: heat capacity c vs finite difference of U.
  {
    const auto u_of = [&](double t) { return thermo::potentials(osc, drive, t).u; };
    double worst = 0.0;
    for (double t : grid) {
      const auto cap = thermo::heat_capacity(osc, drive, t);
      const double fd = central(u_of, t, 1e-3 * t);
      worst = std::max(worst, std::abs(cap.c - fd) / cap.c0);
    }
    reports.push_back(make_check("derivative/02_capacity_fd", worst, 0.0, 1e-8,
                                 "c vs central difference of U (scale k_B)",
                                 {"heat_capacity", "potentials"}));
  }

  // 03: c0 = T dS/dT via finite difference of S.
  {
    const auto s_of = [&](double t) { return thermo::potentials(osc, drive, t).s; };
    double worst = 0.0;
    for (double t : grid) {
      const auto cap = thermo::heat_capacity(osc, drive, t);
      const double fd = t * central(s_of, t, 1e-5 * t);
      worst = std::max(worst, std::abs(cap.c0 - fd) / cap.c0);
    }
    reports.push_back(make_check("derivative/03_capacity_c0_fd", worst, 0.0,
                                 1e-8, "c0 vs T dS/dT by central difference",
                                 {"heat_capacity", "potentials"}));
  }

  // 04: observed order of the S finite difference (genuine h^2 error).
  {
    const double t = 0.5 * (opts.t_min + opts.t_max);
    const auto s_of = [&](double t_) { return thermo::potentials(osc, drive, t_).s; };
    const double exact = osc.k_boltzmann / t;
    const double h = 1e-2 * t;
    const double e1 = std::abs(central(s_of, t, h) - exact);
    const double e2 = std::abs(central(s_of, t, 0.5 * h) - exact);
    const double order = e2 > 0.0 ? std::log2(e1 / e2) : 9.9;
    reports.push_back(make_at_least("derivative/04_s_fd_order", order, 1.9,
                                    "halving h quarters the dS/dT error",
                                    {"potentials"}));
  }

  // 05: nonequilibrium dU/dT vs finite difference (default cooled regime).
  {
    const CoolingParams cool{2.0 * std::numbers::pi * 1e3};
    const double gamma_m = osc.mass * 2.0 * std::numbers::pi * 10.0;
    const auto u_of = [&](double t) {
      return langevin::noneq_potentials(osc, drive, BathParams{t, gamma_m}, cool).u;
    };
    double worst = 0.0;
    for (double t : grid) {
      const auto rep =
          langevin::noneq_potentials(osc, drive, BathParams{t, gamma_m}, cool);
      const double fd = central(u_of, t, 1e-3 * t);
      const double scale =
          std::max(std::abs(rep.du_dt), rep.epsilon * osc.k_boltzmann);
      worst = std::max(worst, std::abs(rep.du_dt - fd) / scale);
    }
    reports.push_back(make_check(
        "derivative/05_noneq_du_fd", worst, 0.0, 1e-8,
        "closed-form dU/dT = eps k_B - (1/2 m omega^2) d f^2/dT vs central "
        "difference",
        {"noneq_potentials"}));
  }

  // 06: first-law heat term converges at (at least) second order.
  {
    const double t_to = opts.t_max;
    const double exact = osc.k_boltzmann * (t_to - drive.t_ref);
    const double e10 = std::abs(
        thermo::first_law_path(osc, drive, drive.t_ref, t_to, 10).heat_term -
        exact);
    const double e100 = std::abs(
        thermo::first_law_path(osc, drive, drive.t_ref, t_to, 100).heat_term -
        exact);
    const double order = e100 > 0.0 ? std::log10(e10 / e100) : 9.9;
    reports.push_back(make_at_least(
        "derivative/06_first_law_order", order, 1.9,
        "observed convergence order of the heat term, n = 10 vs 100",
        {"first_law_path"}));
  }

  // 07: first-law terms against the closed-form integrals.
  {
    const double t_to = opts.t_max;
    const auto path = thermo::first_law_path(osc, drive, drive.t_ref, t_to, 1000);
    const double heat_exact = osc.k_boltzmann * (t_to - drive.t_ref);
    const double f_to = drive_force(drive, t_to);
    const double work_exact = -f_to * f_to / (2.0 * osc.stiffness());
    const double worst = std::max(
        std::abs(path.heat_term - heat_exact) / std::abs(heat_exact),
        std::abs(path.work_term - work_exact) / std::abs(work_exact));
    reports.push_back(make_check(
        "derivative/07_first_law_values", worst, 0.0, 1e-10,
        "heat -> k_B dT and work -> -f^2/(2 m omega^2) at n = 1000",
        {"first_law_path"}));
  }

  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) {
              return a.check_id < b.check_id;
            });
  return reports;
}

std::vector<CheckReport> run_stochastic_suite(const OscillatorParams& osc,
                                              const LinearDrive& drive,
                                              const BathParams& bath,
                                              const CoolingParams& cool,
                                              const SuiteOptions& opts) {
  std::vector<CheckReport> reports;
  const auto model = langevin::build_sde(osc, drive, bath, cool);
  const auto lyap = langevin::stationary_lyapunov(model);
  const auto closed = langevin::stationary_closed_form(osc, bath, cool);
  const auto ratios = regime_ratios(osc, bath, cool);

  // 01: gamma_m = 0 stationary state is the vacuum.
  {
    const auto vac_model =
        langevin::build_sde(osc, drive, BathParams{bath.temperature, 0.0}, cool);
    const auto vac = langevin::stationary_lyapunov(vac_model);
    const double vx = osc.hbar / (2.0 * osc.mass * osc.omega);
    const double vp = osc.hbar * osc.mass * osc.omega / 2.0;
    const double worst = std::max(
        {std::abs(vac.var_x1 - vx) / vx, std::abs(vac.var_p - vp) / vp,
         std::abs(vac.cov_x1p) / std::sqrt(vx * vp)});
    reports.push_back(make_check(
        "stochastic/01_lyapunov_vacuum", worst, 0.0, 1e-12,
        "undamped-bath stationary covariance vs (hbar/2 m omega, hbar m omega/2)",
        {"build_sde", "stationary_lyapunov"}));
  }

  // 02: Lyapunov vs the rotating-regime closed form.
  {
    const double bound = 5.0 * (ratios.gamma_l_over_omega + ratios.epsilon);
    const double worst =
        std::max(std::abs(lyap.var_x1 - closed.var_x1) / closed.var_x1,
                 std::abs(lyap.var_p - closed.var_p) / closed.var_p);
    reports.push_back(make_check(
        "stochastic/02_lyapunov_vs_closed_form", worst, 0.0, bound,
        "relative deviation, bound 5 (gamma_l/omega + eps)",
        {"build_sde", "stationary_lyapunov", "stationary_closed_form"}));
  }

  // 03: Heisenberg floor on both routes.
  {
    const double floor2 = 0.25 * osc.hbar * osc.hbar;
    const double margin = std::min(
        lyap.var_x1 * lyap.var_p / floor2 - (1.0 - 1e-12),
        closed.var_x1 * closed.var_p / floor2 - (1.0 - 1e-12));
    reports.push_back(make_at_least(
        "stochastic/03_heisenberg_floor", margin, 0.0,
        "var_x1 var_p >= (hbar/2)^2 for Lyapunov and closed-form routes",
        {"stationary_lyapunov", "stationary_closed_form"}));
  }

  // 04: T* tracks eps T.
  {
    const double target = ratios.epsilon * bath.temperature;
    reports.push_back(make_check(
        "stochastic/04_t_star_vs_eps_t",
        std::abs(closed.t_star / target - 1.0), 0.0, 1.0 / closed.n_star,
        "effective temperature vs eps T (tolerance 1/n*)",
        {"effective_temperature", "stationary_closed_form"}));
  }

  // 05: SNR* = SNR/eps up to 1/n*. Both sides vanish at the zero-force
  // temperature, so probe away from it in that case.
  {
    const double t_probe =
        std::abs(bath.temperature - drive.t_ref) > 1e-6 * drive.t_ref
            ? bath.temperature
            : 2.0 * drive.t_ref;
    const BathParams probe{t_probe, bath.gamma_m};
    const auto closed_probe = langevin::stationary_closed_form(osc, probe, cool);
    const double snr = snr_x(osc, drive, t_probe);
    const double star = langevin::snr_star(osc, drive, probe, cool);
    reports.push_back(make_check(
        "stochastic/05_snr_star", std::abs(star * ratios.epsilon / snr - 1.0),
        0.0, 1.0 / closed_probe.n_star, "cooled SNR vs SNR/eps (tolerance 1/n*)",
        {"snr_star", "snr_x"}));
  }

  // 06/07: Monte Carlo stationary variances vs Lyapunov, and 08: bit-level
  // determinism across thread counts.
  {
    langevin::SimOptions sim;
    sim.n_traj = opts.mc_n_traj;
    sim.dt = opts.mc_dt;
    sim.t_final = opts.mc_t_final;
    sim.seed = opts.seed;
    sim.n_threads = 1;
    const auto serial = langevin::simulate_ensemble(model, sim);
    sim.n_threads = opts.mc_n_threads > 0 ? opts.mc_n_threads : 4;
    const auto parallel = langevin::simulate_ensemble(model, sim);

    reports.push_back(make_check(
        "stochastic/06_mc_var_x1",
        std::abs(serial.stationary.var_x1 - lyap.var_x1) /
            serial.stationary.var_x1_se,
        0.0, 3.0, "z-score of the MC stationary Var(X1) against Lyapunov",
        {"simulate_ensemble", "stationary_lyapunov"}));
    reports.push_back(make_check(
        "stochastic/07_mc_var_p",
        std::abs(serial.stationary.var_p - lyap.var_p) /
            serial.stationary.var_p_se,
        0.0, 3.0, "z-score of the MC stationary Var(P) against Lyapunov",
        {"simulate_ensemble", "stationary_lyapunov"}));

    std::int64_t mismatches = 0;
    const auto compare = [&](const std::vector<double>& a,
                             const std::vector<double>& b) {
      if (a.size() != b.size()) {
        mismatches += 1;
        return;
      }
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::memcmp(&a[i], &b[i], sizeof(double)) != 0) ++mismatches;
      }
    };
    compare(serial.moments.mean_x1, parallel.moments.mean_x1);
    compare(serial.moments.mean_p, parallel.moments.mean_p);
    compare(serial.moments.var_x1, parallel.moments.var_x1);
    compare(serial.moments.var_p, parallel.moments.var_p);
    if (std::memcmp(&serial.stationary, &parallel.stationary,
                    sizeof(serial.stationary)) != 0) {
      ++mismatches;
    }
    reports.push_back(make_check(
        "stochastic/08_parallel_determinism",
        static_cast<double>(mismatches), 0.0, 0.0,
        "bitwise mismatches between 1-thread and multi-thread runs",
        {"simulate_ensemble"}));
  }

  // 09: nonequilibrium U against its independent closed expression.
  {
    const auto rep = langevin::noneq_potentials(osc, drive, bath, cool);
    const double f = drive_force(drive, bath.temperature);
    const double expected =
        ratios.epsilon * osc.k_boltzmann * bath.temperature +
        0.5 * osc.hbar_omega() * (1.0 - ratios.epsilon) -
        f * f / (2.0 * osc.stiffness());
    reports.push_back(make_check(
        "stochastic/09_noneq_u_closed_form",
        std::abs(rep.u - expected) / std::abs(expected), 0.0, 1e-12,
        "U = eps k_B T + (hbar omega/2)(1 - eps) - f^2/(2 m omega^2)",
        {"noneq_potentials"}));
  }

  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) {
              return a.check_id < b.check_id;
            });
  return reports;
}

std::vector<std::string> required_coverage() {
  return {"drive_force",       "equilibrium_state", "snr_x",
          "potential_energy_split", "d_ecoh_dt",   "mean_total_energy",
          "partition_exact",   "potentials",        "heat_capacity",
          "transition",        "first_law_path",    "build_sde",
          "stationary_lyapunov", "stationary_closed_form", "effective_temperature",
          "simulate_ensemble", "snr_star",          "noneq_potentials"};
}

std::vector<CheckReport> run_all_suites(const OscillatorParams& osc,
                                        const LinearDrive& drive,
                                        const BathParams& bath,
                                        const CoolingParams& cool,
                                        const SuiteOptions& opts) {
  std::vector<CheckReport> reports = run_identity_suite(osc, drive, opts);
  auto deriv = run_derivative_suite(osc, drive, opts);
  auto stoch = run_stochastic_suite(osc, drive, bath, cool, opts);
  reports.insert(reports.end(), std::make_move_iterator(deriv.begin()),
                 std::make_move_iterator(deriv.end()));
  reports.insert(reports.end(), std::make_move_iterator(stoch.begin()),
                 std::make_move_iterator(stoch.end()));
  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) {
              return a.check_id < b.check_id;
            });

  std::set<std::string> covered;
  for (const auto& r : reports) {
    covered.insert(r.covers.begin(), r.covers.end());
  }
  for (const auto& op : required_coverage()) {
    if (covered.count(op) == 0) {
      throw ConsistencyError("validation suites do not cover operation " + op);
    }
  }
  return reports;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) {
    return r.status != "fail";
  });
}

std::string to_json_line(const CheckReport& report) {
  nlohmann::json j;
  j["check_id"] = report.check_id;
  j["status"] = report.status;
  j["measured"] = report.measured;
  j["expected"] = report.expected;
  j["tolerance"] = report.tolerance;
  j["detail"] = report.detail;
  return j.dump();
}

}  // namespace membrane::validate
