#include "membrane/langevin.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "membrane/equilibrium.hpp"
#include "membrane/errors.hpp"
#include "membrane/rng.hpp"

namespace membrane::langevin {

namespace {

void require_stable(const Eigen::Matrix2d& drift, const char* where) {
  if (!(drift.trace() < 0.0 && drift.determinant() > 0.0)) {
    throw ModelError(std::string(where) +
                     ": drift has an eigenvalue with non-negative real part");
  }
}

// Lower-triangular factor of a symmetric PSD 2x2, tolerating rounding-level
// negativity and exact zeros (degenerate noise).
Eigen::Matrix2d psd_cholesky(const Eigen::Matrix2d& q, const char* where) {
  const double q00 = q(0, 0);
  const double q01 = 0.5 * (q(0, 1) + q(1, 0));
  const double q11 = q(1, 1);
  const double scale = std::max({std::abs(q00), std::abs(q11), std::abs(q01)});
  constexpr double kTol = 1e-10;
  if (q00 < -kTol * scale || q11 < -kTol * scale ||
      q00 * q11 - q01 * q01 < -kTol * scale * scale) {
    throw ModelError(std::string(where) + ": covariance is not PSD");
  }
  Eigen::Matrix2d l = Eigen::Matrix2d::Zero();
  l(0, 0) = std::sqrt(std::max(q00, 0.0));
  l(1, 0) = l(0, 0) > 0.0 ? q01 / l(0, 0) : 0.0;
  l(1, 1) = std::sqrt(std::max(q11 - l(1, 0) * l(1, 0), 0.0));
  return l;
}

}  // namespace

SdeModel build_sde(const OscillatorParams& osc, const LinearDrive& drive,
                   const BathParams& bath, const CoolingParams& cool) {
  osc.validate();
  bath.validate();
  cool.validate();
  const double f = drive_force(drive, bath.temperature);
  const double m = osc.mass;
  const double w = osc.omega;
  const double gl = cool.gamma_l;
  const double gm = bath.gamma_m;

  SdeModel model{Eigen::Matrix2d(), Eigen::Matrix2d::Zero(), f / osc.stiffness(),
                 osc};
  model.drift << -0.5 * gl, 1.0 / m, -m * w * w, -(0.5 * gl + gm / m);
  model.diffusion(0, 0) = gl * osc.hbar / (2.0 * m * w);
  model.diffusion(1, 1) =
      gl * osc.hbar * m * w / 2.0 + 2.0 * gm * osc.k_boltzmann * bath.temperature;
  require_stable(model.drift, "build_sde");
  return model;
}

double slowest_decay_rate(const SdeModel& model) {
  const double tr = model.drift.trace();
  const double det = model.drift.determinant();
  const double disc = 0.25 * tr * tr - det;
  if (disc <= 0.0) {
    return std::abs(0.5 * tr);  // complex pair, common real part
  }
  const double r = std::sqrt(disc);
  return std::min(std::abs(0.5 * tr - r), std::abs(0.5 * tr + r));
}

StationaryStats stationary_lyapunov(const SdeModel& model) {
  model.osc.validate();
  require_stable(model.drift, "stationary_lyapunov");

  // Solve in the scaled state (x1, p/(m omega)) where both components share
  // units; this keeps the 3x3 system well conditioned.
  const double mw = model.osc.mass * model.osc.omega;
  const double a11 = model.drift(0, 0);
  const double a12 = model.drift(0, 1) * mw;
  const double a21 = model.drift(1, 0) / mw;
  const double a22 = model.drift(1, 1);
  const double d00 = model.diffusion(0, 0);
  const double d01 = 0.5 * (model.diffusion(0, 1) + model.diffusion(1, 0)) / mw;
  const double d11 = model.diffusion(1, 1) / (mw * mw);

  Eigen::Matrix3d sys;
  sys << 2.0 * a11, 2.0 * a12, 0.0,
         a21, a11 + a22, a12,
         0.0, 2.0 * a21, 2.0 * a22;
  const Eigen::Vector3d rhs(-d00, -d01, -d11);
  const auto qr = sys.colPivHouseholderQr();
  if (qr.rank() < 3) {
    throw NumericalError("stationary_lyapunov: singular linear system");
  }
  const Eigen::Vector3d sol = qr.solve(rhs);
  if (!sol.allFinite() ||
      (sys * sol - rhs).norm() > 1e-8 * rhs.norm() + 1e-300) {
    throw NumericalError("stationary_lyapunov: solve failed to converge");
  }

  StationaryStats stats;
  stats.var_x1 = sol(0);
  stats.cov_x1p = sol(1) * mw;
  stats.var_p = sol(2) * mw * mw;
  if (stats.var_x1 <= 0.0 || stats.var_p <= 0.0) {
    throw NumericalError("stationary_lyapunov: non-positive variances");
  }
  const EffectiveTemperature eff = effective_temperature(model.osc, stats);
  stats.n_star = eff.n_star;
  stats.t_star = eff.t_star;
  return stats;
}

StationaryStats stationary_closed_form(const OscillatorParams& osc,
                                       const BathParams& bath,
                                       const CoolingParams& cool) {
  const RegimeRatios ratios = regime_ratios(osc, bath, cool);
  const double eps = ratios.epsilon;
  const double vacuum = osc.hbar / (2.0 * osc.mass * osc.omega);
  StationaryStats stats;
  stats.var_x1 = vacuum * (1.0 - eps) +
                 eps * osc.k_boltzmann * bath.temperature / osc.stiffness();
  stats.var_p = osc.mass * osc.mass * osc.omega * osc.omega * stats.var_x1;
  stats.cov_x1p = 0.0;
  const EffectiveTemperature eff = effective_temperature(osc, stats);
  stats.n_star = eff.n_star;
  stats.t_star = eff.t_star;
  return stats;
}

EffectiveTemperature effective_temperature(const OscillatorParams& osc,
                                           const StationaryStats& stats) {
  osc.validate();
  const double vacuum = osc.hbar / (2.0 * osc.mass * osc.omega);
  if (!(stats.var_x1 >= vacuum * (1.0 - 1e-9))) {
    throw std::domain_error(
        "effective_temperature: var_x1 = " + std::to_string(stats.var_x1) +
        " sits below the vacuum floor " + std::to_string(vacuum));
  }
  double n_star = osc.mass * osc.omega / osc.hbar * stats.var_x1 - 0.5;
  if (n_star < 0.0) n_star = 0.0;
  const double quantum = osc.hbar_omega() / osc.k_boltzmann;
  const double t_star = n_star > 0.0 ? quantum / std::log1p(1.0 / n_star) : 0.0;
  return {n_star, t_star, quantum * n_star};
}

StepPropagator make_step_propagator(const SdeModel& model, double dt,
                                    Scheme scheme) {
  if (!std::isfinite(dt) || dt <= 0.0) {
    throw std::domain_error("dt must be finite and > 0");
  }
  model.osc.validate();

  // Work in the scaled state (x1, p/(m omega)); see stationary_lyapunov.
  const double mw = model.osc.mass * model.osc.omega;
  Eigen::Matrix2d a;
  a << model.drift(0, 0), model.drift(0, 1) * mw,
       model.drift(1, 0) / mw, model.drift(1, 1);
  Eigen::Matrix2d d;
  d << model.diffusion(0, 0), model.diffusion(0, 1) / mw,
       model.diffusion(1, 0) / mw, model.diffusion(1, 1) / (mw * mw);

  Eigen::Matrix2d phi_s;
  Eigen::Matrix2d cov_s;
  if (scheme == Scheme::euler_maruyama) {
    phi_s = Eigen::Matrix2d::Identity() + a * dt;
    cov_s = d * dt;
  } else {
    // Van Loan block exponential:
    //   exp([[ -a, d ], [ 0, a^T ]] dt) = [[ ., e12 ], [ 0, e22 ]]
    // gives phi = e22^T and the step covariance
    //   int_0^dt exp(a s) d exp(a^T s) ds = e22^T e12.
    Eigen::Matrix4d block = Eigen::Matrix4d::Zero();
    block.topLeftCorner<2, 2>() = -a;
    block.topRightCorner<2, 2>() = d;
    block.bottomRightCorner<2, 2>() = a.transpose();
    const Eigen::Matrix4d e = (block * dt).exp();
    phi_s = e.bottomRightCorner<2, 2>().transpose();
    cov_s = phi_s * e.topRightCorner<2, 2>();
    cov_s = 0.5 * (cov_s + cov_s.transpose()).eval();
  }
  if (!phi_s.allFinite() || !cov_s.allFinite()) {
    throw NumericalError("make_step_propagator: non-finite propagator");
  }
  const Eigen::Matrix2d chol_s = psd_cholesky(cov_s, "make_step_propagator");

  const Eigen::DiagonalMatrix<double, 2> scale(1.0, 1.0 / mw);
  const Eigen::DiagonalMatrix<double, 2> unscale(1.0, mw);
  StepPropagator prop;
  prop.phi = unscale * phi_s * scale;
  prop.cov = unscale * cov_s * unscale;
  prop.noise_chol = unscale * chol_s;
  return prop;
}

EnsembleResult simulate_ensemble(const SdeModel& model, const SimOptions& opts) {
  // Cross-trajectory variances divide by n_traj - 1.
  if (opts.n_traj < 2) throw std::domain_error("n_traj must be >= 2");
  if (!std::isfinite(opts.dt) || opts.dt <= 0.0) {
    throw std::domain_error("dt must be finite and > 0");
  }
  if (!std::isfinite(opts.t_final) || opts.t_final < opts.dt) {
    throw std::domain_error("t_final must be finite and >= dt");
  }
  if (!(opts.burn_in_fraction >= 0.0 && opts.burn_in_fraction < 1.0)) {
    throw std::domain_error("burn_in_fraction must lie in [0, 1)");
  }
  if (opts.n_threads < 0 || opts.sample_stride < 0) {
    throw std::domain_error("n_threads and sample_stride must be >= 0");
  }

  const auto n_steps =
      std::max<std::int64_t>(1, std::llround(opts.t_final / opts.dt));
  const std::int64_t stride =
      opts.sample_stride > 0 ? opts.sample_stride
                             : std::max<std::int64_t>(1, n_steps / 400);
  const std::int64_t n_samples = n_steps / stride + 1;  // includes k = 0
  std::int64_t burn_start = static_cast<std::int64_t>(
      std::ceil(opts.burn_in_fraction * static_cast<double>(n_steps)));
  const std::int64_t last_sample_step = (n_steps / stride) * stride;
  burn_start = std::min(burn_start, last_sample_step);
  std::int64_t n_window = 0;
  for (std::int64_t k = stride; k <= n_steps; k += stride) {
    if (k >= burn_start && k > 0) ++n_window;
  }

  const StepPropagator prop = make_step_propagator(model, opts.dt, opts.scheme);
  const double p00 = prop.phi(0, 0), p01 = prop.phi(0, 1);
  const double p10 = prop.phi(1, 0), p11 = prop.phi(1, 1);
  const double l00 = prop.noise_chol(0, 0);
  const double l10 = prop.noise_chol(1, 0), l11 = prop.noise_chol(1, 1);

  EnsembleResult result;
  const double decay = slowest_decay_rate(model);
  if (decay > 0.0 && opts.t_final < 10.0 / decay) {
    result.warnings.push_back(
        {"langevin.t_final_short",
         "t_final is below ten relaxation times; stationary-window "
         "estimates may be biased",
         opts.t_final, 10.0 / decay});
  }

  // Per-sample-time accumulators, filled strictly in trajectory order.
  std::vector<double> sx(n_samples, 0.0), sxx(n_samples, 0.0);
  std::vector<double> sp(n_samples, 0.0), spp(n_samples, 0.0);
  // Across-trajectory accumulators of per-trajectory window averages.
  double wx = 0, wx2 = 0, wp = 0, wp2 = 0, wxx = 0, wxx2 = 0, wpp = 0, wpp2 = 0;

  const int n_threads =
      opts.n_threads > 0
          ? opts.n_threads
          : std::max(1, static_cast<int>(std::min(
                            8u, std::thread::hardware_concurrency())));

  constexpr std::int64_t kBlock = 256;
  std::vector<double> rows(static_cast<std::size_t>(kBlock) * n_samples * 2);
  std::vector<double> wrows(static_cast<std::size_t>(kBlock) * 4);

  const auto run_one = [&](std::int64_t traj, double* samples, double* wstat) {
    CounterRng rng(opts.seed, static_cast<std::uint64_t>(traj));
    double x = opts.initial_x1;
    double p = opts.initial_p;
    samples[0] = x;
    samples[1] = p;
    std::int64_t sidx = 1;
    double ax = 0, axx = 0, ap = 0, app = 0;
    for (std::int64_t k = 1; k <= n_steps; ++k) {
      const auto [z1, z2] = rng.next_gaussian_pair();
      const double nx = p00 * x + p01 * p + l00 * z1;
      const double np = p10 * x + p11 * p + l10 * z1 + l11 * z2;
      x = nx;
      p = np;
      if (k % stride == 0) {
        samples[2 * sidx] = x;
        samples[2 * sidx + 1] = p;
        ++sidx;
        if (k >= burn_start) {
          ax += x;
          axx += x * x;
          ap += p;
          app += p * p;
        }
      }
    }
    const double inv = n_window > 0 ? 1.0 / static_cast<double>(n_window) : 0.0;
    wstat[0] = ax * inv;
    wstat[1] = axx * inv;
    wstat[2] = ap * inv;
    wstat[3] = app * inv;
  };

  for (std::int64_t b0 = 0; b0 < opts.n_traj; b0 += kBlock) {
    const std::int64_t bn = std::min(kBlock, opts.n_traj - b0);
    if (n_threads == 1 || bn == 1) {
      for (std::int64_t i = 0; i < bn; ++i) {
        run_one(b0 + i, &rows[i * n_samples * 2], &wrows[i * 4]);
      }
    } else {
      std::vector<std::thread> pool;
      pool.reserve(n_threads);
      for (int th = 0; th < n_threads; ++th) {
        pool.emplace_back([&, th] {
          for (std::int64_t i = th; i < bn; i += n_threads) {
            run_one(b0 + i, &rows[i * n_samples * 2], &wrows[i * 4]);
          }
        });
      }
      for (auto& t : pool) t.join();
    }
    // Ordered reduction: identical result for every n_threads.
    for (std::int64_t i = 0; i < bn; ++i) {
      const double* samples = &rows[i * n_samples * 2];
      for (std::int64_t j = 0; j < n_samples; ++j) {
        const double x = samples[2 * j], p = samples[2 * j + 1];
        sx[j] += x;
        sxx[j] += x * x;
        sp[j] += p;
        spp[j] += p * p;
      }
      const double* w = &wrows[i * 4];
      wx += w[0];
      wx2 += w[0] * w[0];
      wxx += w[1];
      wxx2 += w[1] * w[1];
      wp += w[2];
      wp2 += w[2] * w[2];
      wpp += w[3];
      wpp2 += w[3] * w[3];
    }
  }

  const double n = static_cast<double>(opts.n_traj);
  result.moments.time.resize(n_samples);
  result.moments.mean_x1.resize(n_samples);
  result.moments.mean_p.resize(n_samples);
  result.moments.var_x1.resize(n_samples);
  result.moments.var_p.resize(n_samples);
  for (std::int64_t j = 0; j < n_samples; ++j) {
    result.moments.time[j] = static_cast<double>(j * stride) * opts.dt;
    const double mx = sx[j] / n, mp = sp[j] / n;
    result.moments.mean_x1[j] = mx;
    result.moments.mean_p[j] = mp;
    result.moments.var_x1[j] = sxx[j] / n - mx * mx;
    result.moments.var_p[j] = spp[j] / n - mp * mp;
  }

  const auto mean_and_se = [&](double sum, double sumsq) {
    const double mean = sum / n;
    if (opts.n_traj < 2) {
      return std::pair<double, double>(
          mean, std::numeric_limits<double>::quiet_NaN());
    }
    const double ssq = std::max(0.0, sumsq / n - mean * mean) * n / (n - 1.0);
    return std::pair<double, double>(mean, std::sqrt(ssq / n));
  };
  const auto [m_x, se_x] = mean_and_se(wx, wx2);
  const auto [m_p, se_p] = mean_and_se(wp, wp2);
  const auto [m_xx, se_xx] = mean_and_se(wxx, wxx2);
  const auto [m_pp, se_pp] = mean_and_se(wpp, wpp2);
  result.stationary.mean_x1 = m_x;
  result.stationary.mean_x1_se = se_x;
  result.stationary.mean_p = m_p;
  result.stationary.mean_p_se = se_p;
  result.stationary.var_x1 = m_xx - m_x * m_x;
  result.stationary.var_x1_se = se_xx;
  result.stationary.var_p = m_pp - m_p * m_p;
  result.stationary.var_p_se = se_pp;
  result.stationary.window_start =
      static_cast<double>(burn_start) * opts.dt;
  result.stationary.n_traj = opts.n_traj;
  return result;
}

double snr_star(const OscillatorParams& osc, const LinearDrive& drive,
                const BathParams& bath, const CoolingParams& cool) {
  const StationaryStats stats = stationary_closed_form(osc, bath, cool);
  const double mean = drive_force(drive, bath.temperature) / osc.stiffness();
  return mean * mean / stats.var_x1;
}

NoneqReport noneq_potentials(const OscillatorParams& osc,
                             const LinearDrive& drive, const BathParams& bath,
                             const CoolingParams& cool) {
  const RegimeRatios ratios = regime_ratios(osc, bath, cool);
  const StationaryStats stats = stationary_closed_form(osc, bath, cool);
  const double f = drive_force(drive, bath.temperature);
  const double shift = f * f / (2.0 * osc.stiffness());

  NoneqReport report;
  // Exact stationary energy m omega^2 <X1^2> - f^2/(2 m omega^2)
  // = hbar omega (n* + 1/2) - f^2/(2 m omega^2); the k_B T* form quoted in
  // the large-n* regime differs only at O(hbar omega / n*).
  report.u = osc.stiffness() * stats.var_x1 - shift;
  const double kbt_star = osc.k_boltzmann * stats.t_star;
  const double log_ratio = std::log(osc.hbar_omega() / kbt_star);
  report.s = osc.k_boltzmann * (1.0 - log_ratio);
  report.f_helmholtz = kbt_star * log_ratio - shift;
  const double ka = drive.kappa * drive.alpha;
  report.du_dt = ratios.epsilon * osc.k_boltzmann -
                 ka * ka * (bath.temperature - drive.t_ref) / osc.stiffness();
  report.n_star = stats.n_star;
  report.t_star = stats.t_star;
  report.epsilon = ratios.epsilon;
  report.warnings = ratios.warnings();
  if (stats.n_star < 100.0) {
    report.warnings.push_back(
        {"langevin.n_star_small",
         "effective occupancy is small; the T* potentials assume n* >> 1",
         stats.n_star, 100.0});
  }
  return report;
}

}  // namespace membrane::langevin
