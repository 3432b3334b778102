#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "membrane/equilibrium.hpp"
#include "membrane/errors.hpp"
#include "membrane/thermo.hpp"
#include "helpers.hpp"

using namespace membrane;
using testing::default_drive;
using testing::default_osc;

namespace {

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// Oscillator rescaled (same stiffness) so k_B t / (hbar omega) = ratio; keeps
// the exact level sums cheap in tests.
OscillatorParams scaled_osc(double t, double ratio) {
  OscillatorParams osc = default_osc();
  osc.omega = osc.k_boltzmann * t / (ratio * osc.hbar);
  osc.mass = 1e4 / (osc.omega * osc.omega);
  return osc;
}

}  // namespace

TEST_CASE("classical potentials at the reference parameters") {
  const auto osc = default_osc();
  const auto drive = default_drive();
  const auto rep = thermo::potentials(osc, drive, 200.0);
  CHECK(close(rep.u, -2.2387020000000002e-21, 1e-14));
  CHECK(close(rep.s, 2.2425584342405154e-22, 1e-14));
  CHECK(close(rep.f_helmholtz, -4.7089870684810304e-20, 1e-14));
  // Legendre identity holds exactly in the closed form.
  CHECK(rep.u - rep.f_helmholtz - 200.0 * rep.s == 0.0);
  CHECK(rep.validity_ratio > 1e6);
  CHECK(rep.warnings.empty());
}

TEST_CASE("entropy does not depend on the drive") {
  const auto osc = default_osc();
  const auto drive = default_drive();
  const LinearDrive off{0.0, drive.alpha, drive.t_ref};
  for (double t : {50.0, 100.0, 150.0, 200.0}) {
    CHECK(thermo::potentials(osc, drive, t).s ==
          thermo::potentials(osc, off, t).s);
  }
}

TEST_CASE("heat capacity is affine with the expected zero") {
  const auto osc = default_osc();
  const auto drive = default_drive();

  const auto cap = thermo::heat_capacity(osc, drive, 120.0);
  CHECK(close(cap.c, -6.193510000000001e-24, 1e-14));
  CHECK(cap.c0 == osc.k_boltzmann);

  const double slope = (thermo::heat_capacity(osc, drive, 121.0).c -
                        thermo::heat_capacity(osc, drive, 119.0).c) /
                       2.0;
  CHECK(close(slope, -1e-24, 1e-12));

  const double t_zero = 113.80649;
  CHECK(std::abs(thermo::heat_capacity(osc, drive, t_zero).c) <
        1e-12 * osc.k_boltzmann);
  CHECK(thermo::heat_capacity(osc, drive, t_zero - 1.0).c > 0.0);
  CHECK(thermo::heat_capacity(osc, drive, t_zero + 1.0).c < 0.0);
}

TEST_CASE("transition work and heat for heating and cooling") {
  const auto osc = default_osc();
  const auto drive = default_drive();

  const auto heating = thermo::transition(osc, drive, 100.0, 200.0);
  CHECK(close(heating.work, -5e-21, 1e-14));
  CHECK(close(heating.heat, 1.380649e-21, 1e-15));
  CHECK(close(heating.delta_u, -3.619351000000001e-21, 1e-14));

  const auto cooling = thermo::transition(osc, drive, 100.0, 50.0);
  CHECK(close(cooling.work, -1.25e-21, 1e-14));
  CHECK(close(cooling.heat, -6.903245e-22, 1e-15));

  // Work is negative leaving the anchor in either direction.
  CHECK(heating.work < 0.0);
  CHECK(cooling.work < 0.0);
}

TEST_CASE("level sum matches the geometric closed form") {
  const double t = 150.0;
  const auto osc = scaled_osc(t, 2000.0);
  const auto drive = default_drive();

  const auto part = thermo::partition_exact(osc, drive, t);
  const double closed =
      0.5 * snr_x(osc, drive, t) + thermo::log_z0_closed(osc, t);
  CHECK(close(part.log_z, closed, 1e-13));
  CHECK(part.n_terms > 1000);

  // log_z0_closed itself against a directly computed reference.
  const double x = 1.0 / osc.thermal_ratio(t);
  CHECK(close(thermo::log_z0_closed(osc, t),
              -0.5 * x - std::log(1.0 - std::exp(-x)), 1e-12));
}

TEST_CASE("level sum reports when the tail bound is unreachable") {
  const double t = 150.0;
  const auto osc = scaled_osc(t, 1e10);
  CHECK_THROWS_AS(thermo::partition_exact(osc, default_drive(), t),
                  NumericalError);
}

TEST_CASE("exact potentials approach the classical ones at high ratio") {
  const double t = 150.0;
  const double ratio = 2000.0;
  const auto osc = scaled_osc(t, ratio);
  const auto drive = default_drive();

  const auto exact = thermo::exact_potentials(osc, drive, t);
  const auto classical = thermo::potentials(osc, drive, t);
  const double kbt = osc.k_boltzmann * t;
  const double x = 1.0 / ratio;

  CHECK(std::abs(exact.u - classical.u) <= kbt * x * x);
  CHECK(std::abs(exact.f_helmholtz - classical.f_helmholtz) <= kbt * x * x);

  // Against the quantum closed forms the agreement is much tighter.
  const double f = drive_force(drive, t);
  const double shift = f * f / (2.0 * osc.stiffness());
  const double u_quantum =
      osc.hbar_omega() * (0.5 + 1.0 / std::expm1(x)) - shift;
  CHECK(close(exact.u, u_quantum, 1e-8));
  const double f_quantum =
      -kbt * (0.5 * snr_x(osc, drive, t) + thermo::log_z0_closed(osc, t));
  CHECK(close(exact.f_helmholtz, f_quantum, 1e-12));

  // Entropy from the exact route ignores the drive.
  const LinearDrive off{0.0, drive.alpha, drive.t_ref};
  const auto plain = thermo::exact_potentials(osc, off, t);
  CHECK(close(exact.s, plain.s, 1e-10));
}

TEST_CASE("path-integrated first law closes on the two-point ledger") {
  const auto osc = default_osc();
  const auto drive = default_drive();

  const auto ledger = thermo::transition(osc, drive, 100.0, 200.0);
  const auto path = thermo::first_law_path(osc, drive, 100.0, 200.0, 1000);
  CHECK(close(path.heat_term, ledger.heat, 1e-12));
  CHECK(close(path.work_term, ledger.work, 1e-12));
  CHECK(std::abs(path.heat_term + path.work_term - ledger.delta_u) <=
        1e-10 * std::abs(ledger.delta_u));

  // Halving the step size should show at least second-order convergence.
  const double e10 =
      std::abs(thermo::first_law_path(osc, drive, 100.0, 200.0, 10).heat_term -
               ledger.heat);
  const double e100 =
      std::abs(thermo::first_law_path(osc, drive, 100.0, 200.0, 100).heat_term -
               ledger.heat);
  CHECK(e10 / e100 > std::pow(10.0, 1.9));

  // Degenerate path and bad input handling.
  const auto still = thermo::first_law_path(osc, drive, 150.0, 150.0, 10);
  CHECK(still.heat_term == 0.0);
  CHECK(still.work_term == 0.0);
  CHECK_THROWS_AS(thermo::first_law_path(osc, drive, 100.0, 200.0, 0),
                  std::domain_error);
}

TEST_CASE("adaptive refinement meets a requested tolerance") {
  const auto osc = default_osc();
  const auto drive = default_drive();
  const auto ledger = thermo::transition(osc, drive, 80.0, 120.0);
  const auto path =
      thermo::first_law_path_refined(osc, drive, 80.0, 120.0, 1e-12);
  const double scale = std::max(std::abs(ledger.heat), std::abs(ledger.work));
  CHECK(std::abs(path.heat_term - ledger.heat) <= 1e-11 * scale);
  CHECK(std::abs(path.work_term - ledger.work) <= 1e-11 * scale);
  CHECK_THROWS_AS(
      thermo::first_law_path_refined(osc, drive, 80.0, 120.0, -1.0),
      std::domain_error);
}
