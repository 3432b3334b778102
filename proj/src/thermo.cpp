#include "membrane/thermo.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "membrane/equilibrium.hpp"
#include "membrane/errors.hpp"

namespace membrane::thermo {

namespace {

constexpr std::size_t kTermCap = std::size_t{1} << 28;
constexpr double kTailFraction = 1e-15;

void require_temperature(double t) {
  if (!std::isfinite(t) || t <= 0.0) {
    throw std::domain_error("temperature must be finite and > 0, got " +
                            std::to_string(t));
  }
}

// ln sum_{n=0}^{N} exp(-x (n + 1/2)) with the truncation grown until the
// geometric tail is below kTailFraction of the partial sum. The inner sum is
// Kahan-compensated and accumulated smallest-term-first.
struct SeriesResult {
  double log_sum;
  std::size_t n_terms;
};

SeriesResult log_level_series(double x, std::size_t n_max) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::domain_error("hbar omega / k_B T must be finite and > 0");
  }
  std::size_t n = n_max;
  if (n == 0) {
    // Tail fraction ~ exp(-x n); aim directly for the bound, then verify.
    const double guess = 38.0 / x;
    n = (guess > static_cast<double>(kTermCap))
            ? kTermCap
            : static_cast<std::size_t>(guess) + 8;
    if (n < 64) n = 64;
  }
  for (;; n *= 2) {
    if (n > kTermCap) {
      throw NumericalError(
          "partition sum tail bound unreachable within " +
          std::to_string(kTermCap) + " terms (x = " + std::to_string(x) + ")");
    }
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t k = n + 1; k-- > 0;) {
      const double term = std::exp(-x * static_cast<double>(k)) - comp;
      const double next = sum + term;
      comp = (next - sum) - term;
      sum = next;
    }
    const double tail =
        std::exp(-x * static_cast<double>(n + 1)) / (-std::expm1(-x));
    if (tail <= kTailFraction * sum) {
      return {-0.5 * x + std::log(sum), n + 1};
    }
  }
}

// ln Z at inverse temperature beta with the drive force frozen (the partial
// beta-derivative of this quantity is the internal energy).
double log_z_at_beta(const OscillatorParams& osc, double f_fixed, double beta,
                     std::size_t n_max) {
  const double x = osc.hbar_omega() * beta;
  const SeriesResult series = log_level_series(x, n_max);
  return beta * f_fixed * f_fixed / (2.0 * osc.stiffness()) + series.log_sum;
}

double work_integrand(const OscillatorParams& osc, const LinearDrive& drive,
                      double t) {
  const double ka = drive.kappa * drive.alpha;
  return -ka * ka * (t - drive.t_ref) / osc.stiffness();
}

double entropy_closed(const OscillatorParams& osc, double t) {
  return osc.k_boltzmann * (1.0 + std::log(osc.thermal_ratio(t)));
}

// Raw (unextrapolated) path terms on a uniform grid with n intervals.
PathTerms path_terms_raw(const OscillatorParams& osc, const LinearDrive& drive,
                         double t_from, double t_to, std::size_t n) {
  const double h = (t_to - t_from) / static_cast<double>(n);
  double heat = 0.0, heat_c = 0.0;
  double work = 0.0, work_c = 0.0;
  double t_lo = t_from;
  double s_lo = entropy_closed(osc, t_lo);
  double g_lo = work_integrand(osc, drive, t_lo);
  for (std::size_t i = 0; i < n; ++i) {
    const double t_hi = (i + 1 == n) ? t_to : t_from + h * static_cast<double>(i + 1);
    const double s_hi = entropy_closed(osc, t_hi);
    const double g_hi = work_integrand(osc, drive, t_hi);
    const double dheat = 0.5 * (t_lo + t_hi) * (s_hi - s_lo) - heat_c;
    const double heat_next = heat + dheat;
    heat_c = (heat_next - heat) - dheat;
    heat = heat_next;
    const double dwork = 0.5 * (g_lo + g_hi) * (t_hi - t_lo) - work_c;
    const double work_next = work + dwork;
    work_c = (work_next - work) - dwork;
    work = work_next;
    t_lo = t_hi;
    s_lo = s_hi;
    g_lo = g_hi;
  }
  return {heat, work};
}

}  // namespace

double log_z0_closed(const OscillatorParams& osc, double t) {
  osc.validate();
  require_temperature(t);
  const double x = 1.0 / osc.thermal_ratio(t);
  // ln [ exp(-x/2) / (1 - exp(-x)) ]
  return -0.5 * x - std::log(-std::expm1(-x));
}

PartitionExact partition_exact(const OscillatorParams& osc,
                               const LinearDrive& drive, double t,
                               std::size_t n_max) {
  osc.validate();
  require_temperature(t);
  const double x = 1.0 / osc.thermal_ratio(t);
  const SeriesResult series = log_level_series(x, n_max);
  const double snr = snr_x(osc, drive, t);
  const double log_z = 0.5 * snr + series.log_sum;

  const double log_z_closed = 0.5 * snr + log_z0_closed(osc, t);
  const double scale = std::max(1.0, std::abs(log_z));
  if (std::abs(log_z - log_z_closed) > 1e-12 * scale) {
    throw ConsistencyError("partition_exact sum disagrees with the geometric "
                           "closed form: sum ln Z = " + std::to_string(log_z) +
                           ", closed ln Z = " + std::to_string(log_z_closed));
  }
  return {log_z, series.log_sum, series.n_terms};
}

HeatCapacities heat_capacity(const OscillatorParams& osc,
                             const LinearDrive& drive, double t) {
  osc.validate();
  drive.validate();
  require_temperature(t);
  const double ka = drive.kappa * drive.alpha;
  const double c0 = osc.k_boltzmann;
  return {c0 - ka * ka * (t - drive.t_ref) / osc.stiffness(), c0};
}

ThermoReport potentials(const OscillatorParams& osc, const LinearDrive& drive,
                        double t) {
  osc.validate();
  require_temperature(t);
  const double f = drive_force(drive, t);
  const double kbt = osc.k_boltzmann * t;
  const double drive_shift = f * f / (2.0 * osc.stiffness());
  const HeatCapacities cap = heat_capacity(osc, drive, t);
  ThermoReport report;
  report.u = kbt - drive_shift;
  report.f_helmholtz = -kbt * std::log(osc.thermal_ratio(t)) - drive_shift;
  report.s = entropy_closed(osc, t);
  report.c = cap.c;
  report.c0 = cap.c0;
  report.validity_ratio = osc.thermal_ratio(t);
  report.warnings = high_t_warnings(osc, t);
  return report;
}

ExactPotentials exact_potentials(const OscillatorParams& osc,
                                 const LinearDrive& drive, double t,
                                 std::size_t n_max) {
  osc.validate();
  require_temperature(t);
  const double f = drive_force(drive, t);
  const double beta = 1.0 / (osc.k_boltzmann * t);
  constexpr double kRelStep = 1e-6;
  const double log_z_hi = log_z_at_beta(osc, f, beta * (1.0 + kRelStep), n_max);
  const double log_z_lo = log_z_at_beta(osc, f, beta * (1.0 - kRelStep), n_max);
  const double u = -(log_z_hi - log_z_lo) / (2.0 * beta * kRelStep);
  const double f_helmholtz = -log_z_at_beta(osc, f, beta, n_max) / beta;
  return {u, f_helmholtz, (u - f_helmholtz) / t};
}

TransitionLedger transition(const OscillatorParams& osc,
                            const LinearDrive& drive, double t_from,
                            double t_to) {
  osc.validate();
  require_temperature(t_from);
  require_temperature(t_to);
  const double f_from = drive_force(drive, t_from);
  const double f_to = drive_force(drive, t_to);
  const double work = -(f_to * f_to - f_from * f_from) / (2.0 * osc.stiffness());
  const double heat = osc.k_boltzmann * (t_to - t_from);
  // delta U = work + heat identically: U = k_B T - f^2/(2 m omega^2).
  return {t_from, t_to, work, heat, work + heat};
}

PathTerms first_law_path(const OscillatorParams& osc, const LinearDrive& drive,
                         double t_from, double t_to, std::size_t n_steps) {
  osc.validate();
  drive.validate();
  require_temperature(t_from);
  require_temperature(t_to);
  if (n_steps == 0) {
    throw std::domain_error("first_law_path requires n_steps >= 1");
  }
  if (t_from == t_to) {
    return {0.0, 0.0};
  }
  const PathTerms coarse = path_terms_raw(osc, drive, t_from, t_to, n_steps);
  const PathTerms fine = path_terms_raw(osc, drive, t_from, t_to, 2 * n_steps);
  return {(4.0 * fine.heat_term - coarse.heat_term) / 3.0,
          (4.0 * fine.work_term - coarse.work_term) / 3.0};
}

PathTerms first_law_path_refined(const OscillatorParams& osc,
                                 const LinearDrive& drive, double t_from,
                                 double t_to, double rel_tol) {
  if (!(rel_tol > 0.0)) {
    throw std::domain_error("rel_tol must be > 0");
  }
  constexpr std::size_t kMaxSteps = std::size_t{1} << 20;
  PathTerms prev = first_law_path(osc, drive, t_from, t_to, 16);
  for (std::size_t n = 32; n <= kMaxSteps; n *= 2) {
    const PathTerms cur = first_law_path(osc, drive, t_from, t_to, n);
    const double scale =
        std::max({std::abs(cur.heat_term), std::abs(cur.work_term),
                  osc.k_boltzmann});
    if (std::abs(cur.heat_term - prev.heat_term) <= rel_tol * scale &&
        std::abs(cur.work_term - prev.work_term) <= rel_tol * scale) {
      return cur;
    }
    prev = cur;
  }
  throw NumericalError("first-law path integration did not converge to " +
                       std::to_string(rel_tol) + " within the refinement cap");
}

}  // namespace membrane::thermo
