// Acceptance suite: each criterion prints exactly one PASS/FAIL line with its
// pinned tolerance, and the process exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "membrane/cli.hpp"
#include "membrane/equilibrium.hpp"
#include "membrane/langevin.hpp"
#include "membrane/params.hpp"
#include "membrane/rng.hpp"
#include "membrane/thermo.hpp"

namespace fs = std::filesystem;
using namespace membrane;

namespace {

OscillatorParams default_osc() {
  OscillatorParams osc;
  osc.omega = 2.0 * std::numbers::pi * 1e6;
  osc.mass = 1e4 / (osc.omega * osc.omega);
  return osc;
}

LinearDrive default_drive() { return LinearDrive{1e2, 1e-12, 100.0}; }

CoolingParams default_cooling() {
  return CoolingParams{2.0 * std::numbers::pi * 1e3};
}

BathParams default_bath(double t) {
  return BathParams{t, default_osc().mass * 2.0 * std::numbers::pi * 10.0};
}

double uniform(CounterRng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_uniform();
}

double log_uniform(CounterRng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Outcome {
  bool pass;
  std::string detail;
};

int run_criterion(int id, const std::string& name,
                  const std::function<Outcome()>& body) {
  Outcome outcome{false, ""};
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  std::printf("[%s] criterion %d — %s: %s\n", outcome.pass ? "PASS" : "FAIL",
              id, name.c_str(), outcome.detail.c_str());
  std::fflush(stdout);
  return outcome.pass ? 0 : 1;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing csv " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

double cell(const std::vector<std::vector<std::string>>& rows, std::size_t r,
            std::size_t c) {
  return std::strtod(rows.at(r).at(c).c_str(), nullptr);
}

// --- criteria -------------------------------------------------------------

Outcome snr_closed_form() {
  const auto osc = default_osc();
  const auto drive = default_drive();
  const double ka = drive.kappa * drive.alpha;
  const double expected =
      drive.t_ref * ka * ka / (osc.k_boltzmann * osc.stiffness());

  double worst = 0.0;
  for (double theta : {0.3, 0.5, 0.8, 1.2, 1.5, 2.0, 2.5, 3.0}) {
    const double snr = snr_x(osc, drive, theta * drive.t_ref);
    const double prefactor = snr * theta / ((theta - 1.0) * (theta - 1.0));
    worst = std::max(worst, std::abs(prefactor / expected - 1.0));
  }
  const bool shape_ok = worst <= 1e-4;
  const bool pinned_ok = std::abs(expected / 7.242970516039921 - 1.0) <= 1e-12;

  bool ordering_ok = true;
  for (int i = 1; i <= 9; ++i) {
    const double delta = 0.1 * i * 0.9;
    if (!(snr_x(osc, drive, drive.t_ref * (1.0 - delta)) >
          snr_x(osc, drive, drive.t_ref * (1.0 + delta)))) {
      ordering_ok = false;
    }
  }
  return {shape_ok && pinned_ok && ordering_ok,
          "prefactor dev " + fmt(worst) + " (tol 1e-4), pinned value " +
              std::string(pinned_ok ? "ok" : "off") + ", pull>push " +
              (ordering_ok ? "ok" : "violated")};
}

Outcome capacity_zero_crossing() {
  const auto osc = default_osc();
  const auto drive = default_drive();

  const bool c0_ok =
      thermo::heat_capacity(osc, drive, 137.0).c0 == osc.k_boltzmann;

  const double ka = drive.kappa * drive.alpha;
  const double slope_expected = -ka * ka / osc.stiffness();
  const double slope_fd = (thermo::heat_capacity(osc, drive, 121.0).c -
                           thermo::heat_capacity(osc, drive, 119.0).c) /
                          2.0;
  const bool slope_ok =
      std::abs(slope_fd / slope_expected - 1.0) <= 1e-10;

  double lo = 80.0, hi = 200.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (thermo::heat_capacity(osc, drive, mid).c > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double t_zero = 0.5 * (lo + hi);
  const bool zero_ok = std::abs(t_zero - 113.80649) <= 1e-3;

  double worst_fd = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double t = 80.0 + i;
    const double h = 1e-3 * t;
    const double fd = (thermo::potentials(osc, drive, t + h).u -
                       thermo::potentials(osc, drive, t - h).u) /
                      (2.0 * h);
    worst_fd = std::max(worst_fd,
                        std::abs(thermo::heat_capacity(osc, drive, t).c - fd));
  }
  const bool fd_ok = worst_fd <= 1e-8 * osc.k_boltzmann;

  return {c0_ok && slope_ok && zero_ok && fd_ok,
          "zero at " + fmt(t_zero) + " K (pinned 113.80649 +/- 1e-3), slope dev " +
              fmt(std::abs(slope_fd / slope_expected - 1.0)) +
              ", dU/dT residual " + fmt(worst_fd / osc.k_boltzmann) + " k_B"};
}

Outcome energy_identity_draws() {
  CounterRng rng(20240817, 3);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    OscillatorParams osc = default_osc();
    osc.mass = log_uniform(rng, 1e-14, 1e-6);
    osc.omega = log_uniform(rng, 1e4, 1e8);
    const double t_ref = uniform(rng, 10.0, 500.0);
    double theta = uniform(rng, 0.2, 3.0);
    if (std::abs(theta - 1.0) < 0.05) theta += 0.1;
    const double t = t_ref * theta;
    const double target_snr = uniform(rng, 0.0, 4.0);
    const double f2 = target_snr * osc.k_boltzmann * t * osc.stiffness();
    const LinearDrive drive{1.0, std::sqrt(f2) / std::abs(t - t_ref), t_ref};

    const double moment = mean_total_energy(osc, drive, BathParams{t, 0.0});
    const double snr = snr_x(osc, drive, t);
    const double kbt = osc.k_boltzmann * t;
    worst = std::max(worst, std::abs(moment - kbt * (1.0 - 0.5 * snr)) /
                                (kbt * (1.0 + 0.5 * snr)));
  }
  return {worst <= 1e-12,
          "1000 draws, worst relative route disagreement " + fmt(worst) +
              " (tol 1e-12)"};
}

Outcome exact_vs_classical() {
  const auto start = std::chrono::steady_clock::now();
  CounterRng rng(20240817, 7);
  double worst_u = 0.0, worst_f = 0.0, worst_s = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double ratio = log_uniform(rng, 1e3, 5e3);
    const double t = uniform(rng, 20.0, 400.0);
    double theta = uniform(rng, 0.3, 3.0);
    if (std::abs(theta - 1.0) < 0.05) theta += 0.1;
    const double t_ref = t / theta;
    const double target_snr = uniform(rng, 0.0, 1.0);

    OscillatorParams osc = default_osc();
    osc.omega = osc.k_boltzmann * t / (ratio * osc.hbar);
    osc.mass = 1e4 / (osc.omega * osc.omega);
    const double f2 = target_snr * osc.k_boltzmann * t * osc.stiffness();
    const LinearDrive drive{1.0, std::sqrt(f2) / std::abs(t - t_ref), t_ref};

    const auto exact = thermo::exact_potentials(osc, drive, t);
    const auto classical = thermo::potentials(osc, drive, t);
    const double kbt = osc.k_boltzmann * t;
    const double x2 = 1.0 / (ratio * ratio);
    worst_u = std::max(worst_u, std::abs(exact.u - classical.u) / (kbt * x2));
    worst_f = std::max(worst_f, std::abs(exact.f_helmholtz -
                                         classical.f_helmholtz) /
                                    (kbt * x2));

    const LinearDrive off{0.0, drive.alpha, drive.t_ref};
    const auto plain = thermo::exact_potentials(osc, off, t);
    worst_s = std::max(worst_s,
                       std::abs(exact.s - plain.s) / std::abs(plain.s));
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const bool ok =
      worst_u <= 1.0 && worst_f <= 1.0 && worst_s <= 1e-10 && elapsed < 10.0;
  return {ok, "200 draws: |U-U_cl| worst " + fmt(worst_u) +
                  " and |F-F_cl| worst " + fmt(worst_f) +
                  " (units k_B T (hbar omega/k_B T)^2, tol 1), entropy drive "
                  "dev " +
                  fmt(worst_s) + " (tol 1e-10), " + fmt(elapsed) +
                  " s (budget 10 s)"};
}

Outcome first_law_closure() {
  const auto osc = default_osc();
  const auto drive = default_drive();

  const auto ledger = thermo::transition(osc, drive, 100.0, 200.0);
  const bool work_ok = std::abs(ledger.work / -5e-21 - 1.0) <= 1e-12;
  const bool heat_ok =
      std::abs(ledger.heat / (osc.k_boltzmann * 100.0) - 1.0) <= 1e-12;

  const auto path = thermo::first_law_path(osc, drive, 100.0, 200.0, 1000);
  const double closure =
      std::abs(path.heat_term + path.work_term - ledger.delta_u) /
      std::abs(ledger.delta_u);
  const bool closure_ok = closure <= 1e-10;

  const double e10 = std::abs(
      thermo::first_law_path(osc, drive, 100.0, 200.0, 10).heat_term -
      ledger.heat);
  const double e100 = std::abs(
      thermo::first_law_path(osc, drive, 100.0, 200.0, 100).heat_term -
      ledger.heat);
  const double e1000 = std::abs(
      thermo::first_law_path(osc, drive, 100.0, 200.0, 1000).heat_term -
      ledger.heat);
  const double order_a = e100 > 0.0 ? std::log10(e10 / e100) : 9.9;
  const double order_b = e1000 > 0.0 ? std::log10(e100 / e1000) : 9.9;
  const bool order_ok = order_a >= 1.9 && order_b >= 1.9;

  return {work_ok && heat_ok && closure_ok && order_ok,
          "W, Q pinned ok; closure " + fmt(closure) +
              " (tol 1e-10 at n=1000); observed orders " + fmt(order_a) +
              ", " + fmt(order_b) + " (required >= 1.9)"};
}

Outcome lyapunov_stationary() {
  const auto osc = default_osc();
  const auto start = std::chrono::steady_clock::now();
  const auto model = langevin::build_sde(osc, default_drive(),
                                         default_bath(100.0), default_cooling());
  const auto lyap = langevin::stationary_lyapunov(model);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  const auto closed =
      langevin::stationary_closed_form(osc, default_bath(100.0), default_cooling());
  const auto ratios =
      regime_ratios(osc, default_bath(100.0), default_cooling());
  const double bound = 5.0 * (ratios.gamma_l_over_omega + ratios.epsilon);
  const double dev =
      std::max(std::abs(lyap.var_x1 - closed.var_x1) / closed.var_x1,
               std::abs(lyap.var_p - closed.var_p) / closed.var_p);

  const auto vac_model = langevin::build_sde(
      osc, default_drive(), BathParams{100.0, 0.0}, default_cooling());
  const auto vac = langevin::stationary_lyapunov(vac_model);
  const double vx = osc.hbar / (2.0 * osc.mass * osc.omega);
  const double vp = osc.hbar * osc.mass * osc.omega / 2.0;
  const double vac_dev = std::max(std::abs(vac.var_x1 - vx) / vx,
                                  std::abs(vac.var_p - vp) / vp);

  const bool ok = dev <= bound && vac_dev <= 1e-12 && elapsed < 1.0;
  return {ok, "closed-form dev " + fmt(dev) + " (bound " + fmt(bound) +
                  "), vacuum dev " + fmt(vac_dev) + " (tol 1e-12), solve in " +
                  fmt(elapsed) + " s (budget 1 s)"};
}

Outcome monte_carlo_agreement() {
  const auto model = langevin::build_sde(default_osc(), default_drive(),
                                         default_bath(100.0), default_cooling());
  const auto lyap = langevin::stationary_lyapunov(model);

  langevin::SimOptions opts;  // n_traj = 10000, dt = 1e-6, t_final = 4e-3
  opts.n_threads = 1;
  const auto run1 = langevin::simulate_ensemble(model, opts);
  opts.n_threads = 2;
  const auto run2 = langevin::simulate_ensemble(model, opts);
  opts.n_threads = 4;
  const auto run4 = langevin::simulate_ensemble(model, opts);

  const double zx =
      std::abs(run1.stationary.var_x1 - lyap.var_x1) / run1.stationary.var_x1_se;
  const double zp =
      std::abs(run1.stationary.var_p - lyap.var_p) / run1.stationary.var_p_se;
  const bool stats_ok = zx <= 3.0 && zp <= 3.0;

  const auto identical = [](const langevin::EnsembleResult& a,
                            const langevin::EnsembleResult& b) {
    return a.moments.var_x1 == b.moments.var_x1 &&
           a.moments.var_p == b.moments.var_p &&
           a.moments.mean_x1 == b.moments.mean_x1 &&
           a.moments.mean_p == b.moments.mean_p &&
           std::memcmp(&a.stationary, &b.stationary, sizeof(a.stationary)) == 0;
  };
  const bool deterministic = identical(run1, run2) && identical(run1, run4);

  return {stats_ok && deterministic,
          "z(var_x1) " + fmt(zx) + ", z(var_p) " + fmt(zp) +
              " (tol 3 SE at n_traj=10^4); threads {1,2,4} bit-identical: " +
              (deterministic ? "yes" : "no")};
}

Outcome effective_temperature_scaling() {
  const auto osc = default_osc();
  const auto closed =
      langevin::stationary_closed_form(osc, default_bath(100.0), default_cooling());
  const double ratios_eps = 0.01;
  const double t_dev = std::abs(closed.t_star / (ratios_eps * 100.0) - 1.0);
  const bool t_ok = t_dev <= 1.0 / closed.n_star;

  const double snr = snr_x(osc, default_drive(), 200.0);
  const double star = langevin::snr_star(osc, default_drive(),
                                         default_bath(200.0), default_cooling());
  const auto closed200 =
      langevin::stationary_closed_form(osc, default_bath(200.0), default_cooling());
  const double s_dev = std::abs(star * ratios_eps / snr - 1.0);
  const bool s_ok = s_dev <= 1.0 / closed200.n_star;

  return {t_ok && s_ok,
          "T*/(eps T)-1 = " + fmt(t_dev) + " (tol 1/n* = " +
              fmt(1.0 / closed.n_star) + "); SNR* eps/SNR-1 = " + fmt(s_dev) +
              " (tol " + fmt(1.0 / closed200.n_star) + ")"};
}

Outcome figure_pipeline() {
  const fs::path dir =
      fs::temp_directory_path() / "membrane_acceptance_figures";
  fs::remove_all(dir);
  std::ostringstream out, err;
  const int code = cli::run_cli({"--out", dir.string(), "figures"}, out, err);
  if (code != 0) {
    return {false, "figures subcommand exited with " + std::to_string(code)};
  }

  const auto osc = default_osc();
  const auto drive = default_drive();
  const double e0 = 0.5 * osc.hbar_omega();

  const auto snr_rows = read_csv(dir / "fig3_snr.csv");
  const auto work = read_csv(dir / "fig4_work.csv");
  const auto free_energy = read_csv(dir / "fig5_free_energy.csv");
  const auto entropy = read_csv(dir / "fig6_entropy.csv");
  const auto internal = read_csv(dir / "fig7_internal_energy.csv");
  const auto capacity = read_csv(dir / "fig8_capacity.csv");

  const std::size_t n = snr_rows.size() - 1;
  bool rows_ok = n == 81 && work.size() == n + 1 &&
                 free_energy.size() == n + 1 && entropy.size() == n + 1 &&
                 internal.size() == n + 1 && capacity.size() == n + 1;

  double worst_f = 0.0, worst_s = 0.0, worst_w = 0.0;
  bool branches_ok = true;
  for (std::size_t r = 1; r <= n && rows_ok; ++r) {
    const double t = cell(free_energy, r, 0);
    const double f = drive_force(drive, t);
    const double shift = f * f / (2.0 * osc.stiffness());

    // fig5: F - F0 = -f^2/(2 m omega^2). Near the anchor temperature the
    // shift sits ~12 orders below |F|, so differencing the stored doubles
    // leaves a few ULPs of |F|; allow that absolute floor alongside the
    // 1e-12 relative term.
    const double df = cell(free_energy, r, 2) - cell(free_energy, r, 3);
    const double floor_f =
        std::ldexp(std::abs(cell(free_energy, r, 2)), -50);
    worst_f = std::max(worst_f, std::abs(df + shift) /
                                    std::max(shift, 1e12 * floor_f));
    // fig7 carries the same decomposition for U.
    const double du = cell(internal, r, 2) - cell(internal, r, 3);
    const double floor_u = std::ldexp(std::abs(cell(internal, r, 2)), -50);
    worst_f = std::max(worst_f, std::abs(du + shift) /
                                    std::max(shift, 1e12 * floor_u));

    // fig6: entropy equals the drive-free closed form.
    const double s_expected =
        osc.k_boltzmann * (1.0 + std::log(osc.thermal_ratio(t)));
    worst_s = std::max(worst_s,
                       std::abs(cell(entropy, r, 2) - s_expected) / s_expected);

    // fig4: branch labels and the E0-scaled magnitude.
    const auto& branch = work.at(r).at(2);
    const double w_j = cell(work, r, 4);
    const double w_e0 = cell(work, r, 3);
    if (t < drive.t_ref && branch != "pull") branches_ok = false;
    if (t > drive.t_ref && branch != "push") branches_ok = false;
    if (t == drive.t_ref && branch != "ref") branches_ok = false;
    worst_w = std::max(worst_w, std::abs(w_e0 - std::abs(w_j) / e0) /
                                    std::max(std::abs(w_j) / e0, 1e-30));
  }

  // fig7/fig8: the internal-energy maximum sits at the capacity zero
  // crossing, within one grid step.
  std::size_t r_umax = 1;
  for (std::size_t r = 1; r <= n; ++r) {
    if (cell(internal, r, 2) > cell(internal, r_umax, 2)) r_umax = r;
  }
  double t_cross = 0.0;
  for (std::size_t r = 1; r < n; ++r) {
    if (cell(capacity, r, 2) > 0.0 && cell(capacity, r + 1, 2) <= 0.0) {
      t_cross = 0.5 * (cell(capacity, r, 0) + cell(capacity, r + 1, 0));
    }
  }
  const double grid_step =
      cell(snr_rows, 2, 0) - cell(snr_rows, 1, 0);
  const bool peak_ok =
      t_cross > 0.0 &&
      std::abs(cell(internal, r_umax, 0) - t_cross) <= grid_step + 1e-9;

  // fig3: the SNR minimum is exactly at theta = 1.
  std::size_t r_smin = 1;
  for (std::size_t r = 1; r <= n; ++r) {
    if (cell(snr_rows, r, 2) < cell(snr_rows, r_smin, 2)) r_smin = r;
  }
  const bool snr_ok = cell(snr_rows, r_smin, 1) == 1.0 &&
                      cell(snr_rows, r_smin, 2) == 0.0;

  fs::remove_all(dir);
  const bool ok = rows_ok && worst_f <= 1e-12 && worst_s <= 1e-12 &&
                  worst_w <= 1e-12 && branches_ok && peak_ok && snr_ok;
  return {ok, "free-energy/internal split dev " + fmt(worst_f) +
                  ", entropy dev " + fmt(worst_s) + ", |W|/E0 dev " +
                  fmt(worst_w) + " (tol 1e-12 each); U-peak at " +
                  (peak_ok ? "capacity zero" : "WRONG location") +
                  "; branch labels " + (branches_ok ? "ok" : "wrong") +
                  "; SNR minimum at theta=1 " + (snr_ok ? "ok" : "wrong")};
}

}  // namespace

int main() {
  int failures = 0;
  failures += run_criterion(1, "snr closed form and pulling advantage",
                            snr_closed_form);
  failures += run_criterion(2, "heat capacity sign change and derivative",
                            capacity_zero_crossing);
  failures += run_criterion(3, "energy identity over random parameter draws",
                            energy_identity_draws);
  failures += run_criterion(4, "exact level sums vs classical potentials",
                            exact_vs_classical);
  failures += run_criterion(5, "first-law path closure and convergence order",
                            first_law_closure);
  failures += run_criterion(6, "stationary covariance solver",
                            lyapunov_stationary);
  failures += run_criterion(7, "monte carlo agreement and determinism",
                            monte_carlo_agreement);
  failures += run_criterion(8, "effective temperature and cooled snr scaling",
                            effective_temperature_scaling);
  failures += run_criterion(9, "figure pipeline structural relations",
                            figure_pipeline);

  std::printf("acceptance: %d of 9 criteria passed\n", 9 - failures);
  return failures;
}
