#include "membrane/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "membrane/config.hpp"
#include "membrane/csv.hpp"
#include "membrane/equilibrium.hpp"
#include "membrane/errors.hpp"
#include "membrane/langevin.hpp"
#include "membrane/thermo.hpp"
#include "membrane/validate.hpp"

namespace membrane::cli {

namespace {

namespace fs = std::filesystem;

struct Overrides {
  std::optional<double> omega, mass, stiffness;
  std::optional<double> kappa, alpha, t_ref;
  std::optional<double> bath_t, gamma_m, gamma_m_over_m;
  std::optional<double> gamma_l;
  std::optional<double> sweep_t_min, sweep_t_max;
  std::optional<int> sweep_n_points;
  std::optional<std::int64_t> n_traj;
  std::optional<double> dt, t_final, burn_in_fraction;
  std::optional<std::uint64_t> seed;
  std::optional<int> n_threads;
  std::optional<std::string> scheme;
  std::optional<std::uint64_t> checks_seed;
  std::optional<int> checks_n_draws;
  std::optional<std::int64_t> mc_n_traj;
  std::optional<int> mc_n_threads;
};

void apply_overrides(RunConfig& config, const Overrides& ov) {
  if (ov.omega) config.oscillator.omega = *ov.omega;
  if (ov.mass) config.oscillator.mass = *ov.mass;
  if (ov.stiffness) {
    config.oscillator.mass =
        *ov.stiffness / (config.oscillator.omega * config.oscillator.omega);
  }
  if (ov.kappa) config.drive.kappa = *ov.kappa;
  if (ov.alpha) config.drive.alpha = *ov.alpha;
  if (ov.t_ref) config.drive.t_ref = *ov.t_ref;
  if (ov.bath_t) config.bath.temperature = *ov.bath_t;
  if (ov.gamma_m) config.bath.gamma_m = *ov.gamma_m;
  if (ov.gamma_m_over_m) {
    config.bath.gamma_m = config.oscillator.mass * *ov.gamma_m_over_m;
  }
  if (ov.gamma_l) config.cooling.gamma_l = *ov.gamma_l;
  if (ov.sweep_t_min) config.sweep.t_min = *ov.sweep_t_min;
  if (ov.sweep_t_max) config.sweep.t_max = *ov.sweep_t_max;
  if (ov.sweep_n_points) config.sweep.n_points = *ov.sweep_n_points;
  if (ov.n_traj) config.sim.n_traj = *ov.n_traj;
  if (ov.dt) config.sim.dt = *ov.dt;
  if (ov.t_final) config.sim.t_final = *ov.t_final;
  if (ov.burn_in_fraction) config.sim.burn_in_fraction = *ov.burn_in_fraction;
  if (ov.seed) config.sim.seed = *ov.seed;
  if (ov.n_threads) config.sim.n_threads = *ov.n_threads;
  if (ov.scheme) {
    if (*ov.scheme == "exact") {
      config.sim.scheme = langevin::Scheme::exact;
    } else if (*ov.scheme == "euler") {
      config.sim.scheme = langevin::Scheme::euler_maruyama;
    } else {
      throw ConfigError("--sim.scheme must be \"exact\" or \"euler\"");
    }
  }
  if (ov.checks_seed) config.checks.seed = *ov.checks_seed;
  if (ov.checks_n_draws) config.checks.n_draws = *ov.checks_n_draws;
  if (ov.mc_n_traj) config.checks.mc_n_traj = *ov.mc_n_traj;
  if (ov.mc_n_threads) config.checks.mc_n_threads = *ov.mc_n_threads;
}

void print_warnings(std::ostream& err, const std::vector<Warning>& warnings) {
  for (const auto& w : warnings) {
    err << "warning: [" << w.code << "] " << w.message << " (value "
        << csv::format_double(w.value) << ", threshold "
        << csv::format_double(w.threshold) << ")\n";
  }
}

std::vector<double> sweep_grid(const SweepConfig& sweep) {
  std::vector<double> grid;
  grid.reserve(sweep.n_points);
  for (int i = 0; i < sweep.n_points; ++i) {
    grid.push_back(sweep.t_min + (sweep.t_max - sweep.t_min) * i /
                                     static_cast<double>(sweep.n_points - 1));
  }
  return grid;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  std::ofstream file(dir / name);
  if (!file) {
    throw ConfigError("cannot open output file \"" + (dir / name).string() +
                      "\"");
  }
  return file;
}

int run_sweep(const RunConfig& config, const fs::path& out_dir,
              std::ostream& out, std::ostream& err) {
  const auto grid = sweep_grid(config.sweep);
  print_warnings(err, high_t_warnings(config.oscillator, config.sweep.t_min));

  auto file = open_output(out_dir, "sweep.csv");
  csv::write_header(
      file, {"t", "f", "mean_x", "var_x", "var_p", "snr", "e_coh", "e_inc",
             "d_ecoh_dt", "u", "f_helmholtz", "s", "c", "c0",
             "work_from_ref", "heat_from_ref"});
  for (double t : grid) {
    const BathParams bath{t, 0.0};
    const auto state = equilibrium_state(config.oscillator, config.drive, bath);
    const auto split =
        potential_energy_split(config.oscillator, config.drive, bath);
    const auto pot = thermo::potentials(config.oscillator, config.drive, t);
    const auto cap = thermo::heat_capacity(config.oscillator, config.drive, t);
    const auto ledger = thermo::transition(config.oscillator, config.drive,
                                           config.drive.t_ref, t);
    csv::write_row(
        file,
        std::vector<double>{
            t, drive_force(config.drive, t), state.mean_x, state.var_x,
            state.var_p, snr_x(config.oscillator, config.drive, t),
            split.e_coh, split.e_inc,
            d_ecoh_dt(config.oscillator, config.drive, t), pot.u,
            pot.f_helmholtz, pot.s, cap.c, cap.c0, ledger.work, ledger.heat});
  }
  out << "wrote " << (out_dir / "sweep.csv").string() << " (" << grid.size()
      << " rows)\n";
  return 0;
}

int run_figures(const RunConfig& config, const fs::path& out_dir,
                std::ostream& out, std::ostream& err) {
  const auto grid = sweep_grid(config.sweep);
  print_warnings(err, high_t_warnings(config.oscillator, config.sweep.t_min));

  const auto& osc = config.oscillator;
  const auto& drive = config.drive;
  const double e0 = 0.5 * osc.hbar_omega();
  const double t_ref = drive.t_ref;
  const LinearDrive undriven{0.0, drive.alpha, drive.t_ref};

  {
    auto file = open_output(out_dir, "fig3_snr.csv");
    csv::write_header(file, {"t", "theta", "snr"});
    for (double t : grid) {
      csv::write_row(file,
                     std::vector<double>{t, t / t_ref, snr_x(osc, drive, t)});
    }
  }
  {
    auto file = open_output(out_dir, "fig4_work.csv");
    csv::write_header(file,
                      {"t", "theta", "branch", "work_abs_e0", "work_j"});
    for (double t : grid) {
      const auto ledger = thermo::transition(osc, drive, t_ref, t);
      const std::string branch =
          t < t_ref ? "pull" : (t > t_ref ? "push" : "ref");
      csv::write_row(file, std::vector<std::string>{
                               csv::format_double(t),
                               csv::format_double(t / t_ref), branch,
                               csv::format_double(std::abs(ledger.work) / e0),
                               csv::format_double(ledger.work)});
    }
  }
  {
    auto file = open_output(out_dir, "fig5_free_energy.csv");
    csv::write_header(file, {"t", "theta", "f_j", "f0_j", "f_e0", "f0_e0"});
    for (double t : grid) {
      const double f_drive = thermo::potentials(osc, drive, t).f_helmholtz;
      const double f0 = thermo::potentials(osc, undriven, t).f_helmholtz;
      csv::write_row(file, std::vector<double>{t, t / t_ref, f_drive, f0,
                                               f_drive / e0, f0 / e0});
    }
  }
  {
    auto file = open_output(out_dir, "fig6_entropy.csv");
    csv::write_header(file, {"t", "theta", "s_jk", "s_over_kb"});
    for (double t : grid) {
      const double s = thermo::potentials(osc, drive, t).s;
      csv::write_row(
          file, std::vector<double>{t, t / t_ref, s, s / osc.k_boltzmann});
    }
  }
  {
    auto file = open_output(out_dir, "fig7_internal_energy.csv");
    csv::write_header(file, {"t", "theta", "u_j", "u0_j", "u_e0", "u0_e0"});
    for (double t : grid) {
      const double u_drive = thermo::potentials(osc, drive, t).u;
      const double u0 = thermo::potentials(osc, undriven, t).u;
      csv::write_row(file, std::vector<double>{t, t / t_ref, u_drive, u0,
                                               u_drive / e0, u0 / e0});
    }
  }
  {
    auto file = open_output(out_dir, "fig8_capacity.csv");
    csv::write_header(file, {"t", "theta", "c_jk", "c0_jk", "c_over_kb",
                             "c0_over_kb"});
    for (double t : grid) {
      const auto cap = thermo::heat_capacity(osc, drive, t);
      csv::write_row(file, std::vector<double>{t, t / t_ref, cap.c, cap.c0,
                                               cap.c / osc.k_boltzmann,
                                               cap.c0 / osc.k_boltzmann});
    }
  }
  out << "wrote figure data (fig3_snr, fig4_work, fig5_free_energy, "
         "fig6_entropy, fig7_internal_energy, fig8_capacity) to "
      << out_dir.string() << "\n";
  return 0;
}

int run_simulate(const RunConfig& config, const fs::path& out_dir,
                 std::ostream& out, std::ostream& err) {
  const auto model = langevin::build_sde(config.oscillator, config.drive,
                                         config.bath, config.cooling);
  const auto result = langevin::simulate_ensemble(model, config.sim);
  print_warnings(err, result.warnings);

  {
    auto file = open_output(out_dir, "simulate_timeseries.csv");
    csv::write_header(file, {"time", "mean_x1", "mean_p", "var_x1", "var_p"});
    for (std::size_t i = 0; i < result.moments.time.size(); ++i) {
      csv::write_row(file, std::vector<double>{
                               result.moments.time[i],
                               result.moments.mean_x1[i],
                               result.moments.mean_p[i],
                               result.moments.var_x1[i],
                               result.moments.var_p[i]});
    }
  }

  const auto lyap = langevin::stationary_lyapunov(model);
  const auto closed =
      langevin::stationary_closed_form(config.oscillator, config.bath, config.cooling);
  const auto noneq = langevin::noneq_potentials(config.oscillator, config.drive,
                                                config.bath, config.cooling);

  nlohmann::json summary;
  summary["stationary"] = {
      {"mean_x1", result.stationary.mean_x1},
      {"mean_x1_se", result.stationary.mean_x1_se},
      {"mean_p", result.stationary.mean_p},
      {"mean_p_se", result.stationary.mean_p_se},
      {"var_x1", result.stationary.var_x1},
      {"var_x1_se", result.stationary.var_x1_se},
      {"var_p", result.stationary.var_p},
      {"var_p_se", result.stationary.var_p_se},
      {"window_start", result.stationary.window_start},
      {"n_traj", result.stationary.n_traj}};
  summary["lyapunov"] = {{"var_x1", lyap.var_x1},
                         {"var_p", lyap.var_p},
                         {"cov_x1p", lyap.cov_x1p},
                         {"n_star", lyap.n_star},
                         {"t_star", lyap.t_star}};
  summary["closed_form"] = {{"var_x1", closed.var_x1},
                            {"var_p", closed.var_p},
                            {"n_star", closed.n_star},
                            {"t_star", closed.t_star}};
  summary["cooled"] = {{"snr_star", langevin::snr_star(config.oscillator,
                                                       config.drive,
                                                       config.bath,
                                                       config.cooling)},
                       {"u", noneq.u},
                       {"f_helmholtz", noneq.f_helmholtz},
                       {"s", noneq.s},
                       {"du_dt", noneq.du_dt},
                       {"n_star", noneq.n_star},
                       {"t_star", noneq.t_star},
                       {"epsilon", noneq.epsilon}};
  nlohmann::json warn_list = nlohmann::json::array();
  for (const auto& w : result.warnings) {
    warn_list.push_back({{"code", w.code},
                         {"message", w.message},
                         {"value", w.value},
                         {"threshold", w.threshold}});
  }
  summary["warnings"] = warn_list;
  summary["config"] = config_to_json(config);

  auto file = open_output(out_dir, "simulate_summary.json");
  file << summary.dump(2) << "\n";
  out << "wrote " << (out_dir / "simulate_timeseries.csv").string() << " and "
      << (out_dir / "simulate_summary.json").string() << "\n";
  return 0;
}

int run_validate(const RunConfig& config, const fs::path& out_dir,
                 bool corrupt_fixture, std::ostream& out, std::ostream& err) {
  validate::SuiteOptions opts = config.checks;
  if (corrupt_fixture) opts.u_corruption = 1e-25;

  const auto reports =
      validate::run_all_suites(config.oscillator, config.drive, config.bath,
                               config.cooling, opts);

  auto file = open_output(out_dir, "validate_report.jsonl");
  int failures = 0;
  for (const auto& report : reports) {
    file << validate::to_json_line(report) << "\n";
    if (report.status == "fail") ++failures;
    out << (report.status == "fail" ? "FAIL " : "pass ") << report.check_id
        << "  measured " << csv::format_double(report.measured)
        << "  expected " << csv::format_double(report.expected)
        << "  tolerance " << csv::format_double(report.tolerance) << "\n";
  }
  out << reports.size() << " checks, " << failures << " failed; report at "
      << (out_dir / "validate_report.jsonl").string() << "\n";
  if (failures > 0) {
    err << "validation failed: " << failures << " check(s) out of tolerance\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "membrane: equilibrium and stochastic model of a thermally driven "
      "harmonic oscillator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir_str = "out";
  bool print_config = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir_str, "output directory (created if absent)");
  app.add_flag("--print-config", print_config,
               "print the resolved configuration to stdout before running");

  Overrides ov;
  app.add_option("--oscillator.omega", ov.omega, "angular frequency [rad/s]");
  auto* opt_mass =
      app.add_option("--oscillator.mass", ov.mass, "oscillator mass [kg]");
  auto* opt_stiffness = app.add_option("--oscillator.stiffness", ov.stiffness,
                                       "spring constant m omega^2 [N/m]");
  opt_mass->excludes(opt_stiffness);
  opt_stiffness->excludes(opt_mass);
  app.add_option("--drive.kappa", ov.kappa, "piston coupling [N/m]");
  app.add_option("--drive.alpha", ov.alpha,
                 "thermal expansion coefficient [m/K]");
  app.add_option("--drive.t_ref", ov.t_ref, "zero-force temperature [K]");
  app.add_option("--bath.t", ov.bath_t, "bath temperature [K]");
  auto* opt_gm = app.add_option("--bath.gamma_m", ov.gamma_m,
                                "mechanical damping [kg/s]");
  auto* opt_gmr = app.add_option("--bath.gamma_m_over_m", ov.gamma_m_over_m,
                                 "mechanical damping rate gamma_m/m [1/s]");
  opt_gm->excludes(opt_gmr);
  opt_gmr->excludes(opt_gm);
  app.add_option("--cooling.gamma_l", ov.gamma_l, "cooling rate [1/s]");
  app.add_option("--sweep.t_min", ov.sweep_t_min, "sweep start [K]");
  app.add_option("--sweep.t_max", ov.sweep_t_max, "sweep end [K]");
  app.add_option("--sweep.n_points", ov.sweep_n_points, "sweep grid size");
  app.add_option("--sim.n_traj", ov.n_traj, "trajectories in the ensemble");
  app.add_option("--sim.dt", ov.dt, "time step [s]");
  app.add_option("--sim.t_final", ov.t_final, "simulated time span [s]");
  app.add_option("--sim.seed", ov.seed, "RNG seed");
  app.add_option("--sim.n_threads", ov.n_threads,
                 "worker threads (0 = hardware concurrency)");
  app.add_option("--sim.burn_in_fraction", ov.burn_in_fraction,
                 "fraction of the run discarded before stationary averages");
  app.add_option("--sim.scheme", ov.scheme,
                 "integrator: exact or euler");
  app.add_option("--checks.seed", ov.checks_seed, "validation RNG seed");
  app.add_option("--checks.n_draws", ov.checks_n_draws,
                 "random parameter draws in the identity suite");
  app.add_option("--checks.mc_n_traj", ov.mc_n_traj,
                 "trajectories in the validation Monte Carlo runs");
  app.add_option("--checks.mc_n_threads", ov.mc_n_threads,
                 "threads for the validation Monte Carlo runs");

  auto* cmd_sweep = app.add_subcommand(
      "sweep", "tabulate equilibrium statistics and potentials vs T");
  auto* cmd_figures = app.add_subcommand(
      "figures", "write the per-figure CSV data sets");
  auto* cmd_simulate = app.add_subcommand(
      "simulate", "run the Langevin ensemble and summarize it");
  auto* cmd_validate = app.add_subcommand(
      "validate", "run the self-check suites and write a JSONL report");
  bool corrupt_fixture = false;
  cmd_validate->add_flag(
      "--corrupt-fixture", corrupt_fixture,
      "inject a deliberate energy offset to prove the checks can fail");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("membrane");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    RunConfig config =
        config_path.empty() ? default_config() : load_config_file(config_path);
    apply_overrides(config, ov);
    config.validate();

    if (print_config) {
      out << config_to_json(config).dump(2) << "\n";
    }

    const fs::path out_dir(out_dir_str);
    fs::create_directories(out_dir);

    if (app.got_subcommand(cmd_sweep)) {
      return run_sweep(config, out_dir, out, err);
    }
    if (app.got_subcommand(cmd_figures)) {
      return run_figures(config, out_dir, out, err);
    }
    if (app.got_subcommand(cmd_simulate)) {
      return run_simulate(config, out_dir, out, err);
    }
    return run_validate(config, out_dir, corrupt_fixture, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << "\n";
    return 3;
  } catch (const ConsistencyError& e) {
    err << "internal consistency error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace membrane::cli
