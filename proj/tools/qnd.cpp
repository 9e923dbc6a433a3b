// qnd: configuration-driven front end. Each subcommand writes CSV files and a
// JSON manifest into the output directory.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical non-convergence.

#include <Eigen/Core>
#include <boost/version.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "csv_table.hpp"
#include "qnd/budget.hpp"
#include "qnd/cavity_design.hpp"
#include "qnd/config.hpp"
#include "qnd/errors.hpp"
#include "qnd/exchange.hpp"
#include "qnd/parallel.hpp"
#include "qnd/phonon.hpp"
#include "qnd/pipeline.hpp"
#include "qnd/radiative.hpp"

namespace fs = std::filesystem;
using qnd::cli::CsvTable;
using Assignments = std::vector<std::pair<std::string, std::string>>;

namespace {

struct Run {
  std::string name;
  qnd::RunConfig cfg;
  std::vector<std::string> outputs;

  fs::path out_dir() const { return cfg.output_dir; }

  void write(const CsvTable& t, const std::string& file) {
    t.write(out_dir() / file);
    outputs.push_back(file);
  }
};

// Flag value -> config key, applied only when the flag was given.
template <class T>
void bind_flag(CLI::App* sub, const std::string& flag, const std::string& key, const std::string& doc,
               Assignments& sink, std::vector<std::function<void()>>& hooks) {
  auto value = std::make_shared<T>();
  CLI::Option* opt = sub->add_option(flag, *value, doc + " (" + key + ")");
  hooks.push_back([opt, value, key, &sink] {
    if (opt->count() == 0) return;
    std::ostringstream os;
    if constexpr (std::is_same_v<T, double>)
      os << qnd::cli::format_number(*value);
    else
      os << *value;
    sink.emplace_back(key, os.str());
  });
}

std::string signal_header(qnd::SignalKind k, qnd::Spin s) {
  return qnd::to_string(k) + (s == qnd::Spin::up ? "_up" : "_down") + "_rel_input";
}

CsvTable sweep_table(const qnd::ResponseCurve& c) {
  CsvTable t({"delta_meV", signal_header(qnd::SignalKind::phase, qnd::Spin::up),
              signal_header(qnd::SignalKind::phase, qnd::Spin::down),
              signal_header(qnd::SignalKind::intensity, qnd::Spin::up),
              signal_header(qnd::SignalKind::intensity, qnd::Spin::down)});
  for (std::size_t i = 0; i < c.delta.size(); ++i)
    t.add_row({c.delta[i], c.phase_up[i], c.phase_down[i], c.intensity_up[i], c.intensity_down[i]});
  return t;
}

CsvTable budget_table(const std::vector<qnd::BudgetReport>& rows) {
  CsvTable t({"scenario", "cavity", "signal", "v_s_meV", "measurable", "delta_meV", "laser_flux_per_ps",
              "I_D1_per_ps", "I_D2_per_ps", "tau_meas_ns", "p_rad_pct", "p_dark_pct", "p_sn_pct", "p_total_pct"});
  for (const auto& r : rows) {
    const std::string sig = qnd::to_string(r.scenario.kind);
    const std::string cav = qnd::to_string(r.scenario.cavity);
    const std::string label = sig + " (V_s=" + qnd::cli::format_number(r.scenario.v_s) + " meV)";
    if (!r.measurable) {
      t.add_row({label, cav, sig, r.scenario.v_s, "no", "-", "-", "-", "-", "-", "-", "-", "-", "-"});
      continue;
    }
    t.add_row({label, cav, sig, r.scenario.v_s, "yes", r.operating_delta, r.laser_flux, r.I_D1, r.I_D2,
               r.tau_meas, 100.0 * r.p_rad, 100.0 * r.p_dark, 100.0 * r.p_sn, 100.0 * r.p_total});
  }
  return t;
}

qnd::CavityConfig figure_cavity(const qnd::RunConfig& cfg, bool two_sided, double v_s) {
  qnd::CavityConfig c;
  c.gamma1 = two_sided ? 0.5 * cfg.budget.gamma : cfg.budget.gamma;
  c.gamma2 = cfg.budget.gamma - c.gamma1;
  c.v_s = v_s;
  c.v_ex = cfg.budget.v_ex;
  return c;
}

// ---- subcommands ----------------------------------------------------------

void cmd_solve(Run& run, const std::string& carrier) {
  const qnd::RunConfig& cfg = run.cfg;
  CsvTable levels({"carrier", "state", "energy_meV", "residual_meV", "matvecs"});
  std::optional<qnd::EigenSolution> electron, hole;
  if (carrier == "electron" || carrier == "both") electron = qnd::solve_structure(cfg, qnd::Carrier::electron);
  if (carrier == "hole" || carrier == "both") hole = qnd::solve_structure(cfg, qnd::Carrier::heavy_hole);
  for (auto [name, sol] : {std::pair{"electron", &electron}, std::pair{"heavy_hole", &hole}}) {
    if (!*sol) continue;
    const auto& s = **sol;
    for (std::size_t i = 0; i < s.energies.size(); ++i)
      levels.add_row({std::string(name), static_cast<long long>(i), s.energies[i], s.residual_norms[i],
                      static_cast<long long>(s.iterations_used)});
  }
  run.write(levels, "solve_levels.csv");

  const qnd::EigenSolution& ground = electron ? *electron : *hole;
  const qnd::ScalarField3D& psi = ground.states.front();
  const qnd::GridSpec& g = psi.grid();
  const int c = g.n / 2;
  int kz = c;
  for (int k = 0; k < g.n; ++k)
    if (std::abs(psi.at(c, c, k)) > std::abs(psi.at(c, c, kz))) kz = k;
  CsvTable profile({"axis", "coordinate_nm", "psi_nm-1.5"});
  for (int i = 0; i < g.n; ++i) profile.add_row({"x", g.coord(i), psi.at(i, c, kz)});
  for (int k = 0; k < g.n; ++k) profile.add_row({"z", g.coord(k), psi.at(c, c, k)});
  run.write(profile, "solve_profile.csv");

  if (electron && hole) {
    const qnd::EmissionResult em = qnd::emission_from(cfg, electron->energies[0], hole->energies[0]);
    CsvTable t({"trion_energy_meV", "exciton_energy_meV", "qd_trion_nm", "qw_exciton_nm", "detuning_meV"});
    t.add_row({em.trion_energy_meV, em.exciton_energy_meV, em.qd_trion_nm, em.qw_exciton_nm, em.detuning_meV});
    run.write(t, "emission.csv");
  }
  std::cout << "E0 = " << ground.energies[0] << " meV";
  if (ground.energies.size() > 1) std::cout << ", E1 - E0 = " << ground.energies[1] - ground.energies[0] << " meV";
  std::cout << "\n";
}

void cmd_envelope(Run& run) {
  const qnd::EigenSolution sol = qnd::solve_structure(run.cfg, qnd::Carrier::electron);
  const qnd::EnvelopeFit fit = qnd::fit_ground_state(run.cfg, sol);
  CsvTable t({"N_m_nm-1.5", "a_nm", "b_nm", "z0_nm", "rms_residual_nm-1.5", "samples", "E0_meV", "E1_minus_E0_meV"});
  t.add_row({fit.N_m, fit.a, fit.b, fit.z0, fit.rms_residual, static_cast<long long>(fit.samples), sol.energies[0],
             sol.energies.size() > 1 ? sol.energies[1] - sol.energies[0] : 0.0});
  run.write(t, "envelope.csv");
  std::cout << "a = " << fit.a << " nm, b = " << fit.b << " nm, z0 = " << fit.z0 << " nm\n";
}

void cmd_exchange(Run& run, bool with_mc) {
  const qnd::ExchangeInputs in = run.cfg.exchange_inputs();
  CsvTable t({"method", "kernel", "z_factor", "v_ex_ueV", "stderr_ueV", "samples", "lambda_nm", "I1_nm0.5", "I2_nm0.5",
              "Z_nm"});
  const qnd::ExchangeResult cf = qnd::exchange_closed_form(in);
  t.add_row({"closed_form", "gaussian_approx", qnd::to_string(in.z_factor), cf.v_ex_ueV, 0.0, 0LL, cf.lambda_nm, cf.I1,
             cf.I2, cf.z_factor});
  std::cout << "V_ex (closed form) = " << cf.v_ex_ueV << " ueV\n";
  if (with_mc) {
    const qnd::MonteCarloOptions opt = run.cfg.monte_carlo_options();
    const qnd::ExchangeResult mc = qnd::exchange_monte_carlo(in, opt);
    t.add_row({"monte_carlo", opt.kernel == qnd::ExchangeKernel::gaussian ? "gaussian" : "exponential",
               qnd::to_string(in.z_factor), mc.v_ex_ueV, mc.stderr_ueV, static_cast<long long>(mc.samples),
               mc.lambda_nm, mc.I1, mc.I2, mc.z_factor});
    std::cout << "V_ex (Monte Carlo) = " << mc.v_ex_ueV << " +- " << mc.stderr_ueV << " ueV\n";
  }
  run.write(t, "exchange.csv");
}

void cmd_sweep(Run& run) {
  const auto& c = run.cfg;
  run.write(sweep_table(qnd::sweep(c.cavity, c.sweep_min_meV, c.sweep_max_meV, c.sweep_points)), "sweep.csv");
  CsvTable opt({"signal", "delta_opt_meV", "signal_opt_rel_input", "flat"});
  for (qnd::SignalKind k : {qnd::SignalKind::phase, qnd::SignalKind::intensity}) {
    const qnd::OptimalDetuning o = qnd::optimal_detuning(c.cavity, k);
    opt.add_row({qnd::to_string(k), o.delta, o.value, o.flat ? "yes" : "no"});
  }
  run.write(opt, "sweep_optimum.csv");
}

void cmd_spinflip(Run& run, std::optional<double> n_lp_flag, std::optional<double> n_up_flag) {
  const auto& c = run.cfg;
  const double delta = c.spinflip_delta_meV;
  qnd::PhononRateOptions opt;
  opt.dark_gap = c.dark_gap_meV;
  opt.rel_tolerance = c.phonon_rel_tolerance;
  opt.n_lp = n_lp_flag.value_or(c.budget.n_lp);
  opt.n_up = n_up_flag.value_or(
      qnd::upper_polariton_count(opt.n_lp, delta, c.dispersion.rabi_g, c.cavity.gamma()));
  const qnd::ScatteringResult r = qnd::phonon_absorption_rate(delta, c.phonon_params(), c.envelopes, c.dispersion, opt);

  CsvTable t({"delta_meV", "temperature_K", "k_threshold_per_nm", "gamma_per_polariton_per_s", "error_estimate_per_s",
              "n_lp", "n_up", "gamma_dark_per_s"});
  t.add_row({delta, c.phonon.temperature, r.k_threshold, r.gamma_per_polariton, r.error_estimate, opt.n_lp, opt.n_up,
             r.gamma_dark_total});
  run.write(t, "spinflip.csv");
  CsvTable s({"k_per_nm", "qz_per_nm", "integrand_per_ps_per_nm", "energy_residual_meV"});
  for (const auto& x : r.samples) s.add_row({x.k, x.qz, x.integrand, x.energy_residual});
  run.write(s, "spinflip_samples.csv");
  std::cout << "Gamma = " << r.gamma_per_polariton << " 1/s per polariton, Gamma_dark = " << r.gamma_dark_total
            << " 1/s\n";
}

void cmd_radiative(Run& run, double tau_ns) {
  const auto& c = run.cfg;
  const qnd::RadiativeInputs in = c.radiative_inputs();
  const qnd::RadiativeLifetime cf = qnd::radiative_lifetime(in, false);
  const qnd::RadiativeLifetime num = qnd::radiative_lifetime(in, true);
  const double n = c.budget.n_lp;
  CsvTable t({"overlap_closed_nm", "overlap_numerical_nm", "tau_D_closed_s", "tau_D_numerical_s", "n_polaritons",
              "tau_D_over_N_s", "tau_meas_ns", "p_rad_closed", "p_rad_configured_tau0", "tau0_configured_s"});
  t.add_row({cf.overlap, num.overlap, cf.tau_D, num.tau_D, n, qnd::effective_lifetime(cf.tau_D, n), tau_ns,
             qnd::p_rad(n, tau_ns, cf.tau_D), qnd::p_rad(n, tau_ns, c.budget.tau0_s), c.budget.tau0_s});
  run.write(t, "radiative.csv");
  std::cout << "tau_D = " << cf.tau_D << " s (closed form), " << num.tau_D << " s (numerical overlap)\n";
}

void cmd_budget(Run& run, const std::string& cavity, const std::string& signal) {
  const auto& c = run.cfg;
  qnd::Scenario s;
  s.cavity = cavity == "single" ? qnd::CavityType::single_sided : qnd::CavityType::two_sided;
  s.kind = signal == "intensity" ? qnd::SignalKind::intensity : qnd::SignalKind::phase;
  s.v_s = c.cavity.v_s;
  const qnd::BudgetReport r = qnd::evaluate_scenario(s, c.budget);
  run.write(budget_table({r}), "budget.csv");

  // detector fluxes at the configured laser flux and the same operating point
  const qnd::CavityConfig cav = qnd::cavity_for(s, c.budget);
  const qnd::DetectorFluxes f = qnd::detector_fluxes(qnd::steady_state_response(cav, r.operating_delta),
                                                     c.laser_flux_per_ps, c.budget.chain, qnd::waveplate_for(s.kind));
  const double n_laser = qnd::polariton_count(c.laser_flux_per_ps * c.budget.chain.bs_to_cavity, r.operating_delta,
                                              cav.gamma1, cav.gamma(), c.budget.t0_sq);
  const qnd::RadiativeLifetime rad = qnd::radiative_lifetime(c.radiative_inputs());
  const qnd::DensityCheck dens = qnd::density_check(c.budget.n_lp, c.spot_radius_um * qnd::units::nm_per_um,
                                                    c.envelopes.a_B);
  CsvTable t({"laser_flux_per_ps", "delta_meV", "I_D1_per_ps", "I_D2_per_ps", "tau_meas_ns", "n_lp_at_laser_flux",
              "tau_D_closed_s", "density_per_cm2", "n_aB2", "density_ok"});
  const bool ok = f.I_D1 != f.I_D2;
  t.add_row({c.laser_flux_per_ps, r.operating_delta, f.I_D1, f.I_D2,
             ok ? CsvTable::Cell(qnd::required_measurement_time(f.I_D1, f.I_D2, c.budget.target_p_sn))
                : CsvTable::Cell(std::string("-")),
             n_laser, rad.tau_D, dens.density_cm2, dens.n_aB2, dens.pass ? "yes" : "no"});
  run.write(t, "budget_detail.csv");
  if (r.measurable)
    std::cout << "tau_meas = " << r.tau_meas << " ns, P_total = " << 100.0 * r.p_total << " %\n";
  else
    std::cout << "scenario is unmeasurable (flat signal)\n";
}

void cmd_table1(Run& run) {
  const auto rows = qnd::build_table1(qnd::table1_scenarios(run.cfg.table_v_s_meV), run.cfg.budget);
  run.write(budget_table(rows), "table1.csv");
  for (const auto& r : rows)
    std::cout << qnd::to_string(r.scenario.cavity) << " " << qnd::to_string(r.scenario.kind) << " V_s=" << r.scenario.v_s
              << ": " << (r.measurable ? qnd::cli::format_number(r.tau_meas) + " ns" : std::string("-")) << "\n";
}

void cmd_cavity(Run& run) {
  const qnd::MirrorParams& m = run.cfg.mirrors;
  const qnd::DecayRates d = qnd::decay_rates(m);
  const double r = qnd::spot_radius(m);
  CsvTable t({"r1", "r2", "length_nm", "n_c", "wavelength_nm", "tau1_ps", "tau2_ps", "gamma1_meV", "gamma2_meV",
              "spot_radius_um"});
  t.add_row({m.r1, m.r2, m.length_nm, m.n_c, m.wavelength_nm, d.tau1_ps, d.tau2_ps, d.gamma1, d.gamma2,
             r / qnd::units::nm_per_um});
  run.write(t, "cavity.csv");
  std::cout << "gamma1 = " << d.gamma1 << " meV, gamma2 = " << d.gamma2 << " meV, R = " << r / 1000.0 << " um\n";
}

void cmd_reproduce_all(Run& run) {
  const auto& c = run.cfg;
  const double v_s = c.table_v_s_meV;
  const struct {
    const char* file;
    bool two_sided;
    double v_s;
  } figures[] = {{"fig4a_two_sided.csv", true, 0.0},
                 {"fig4b_single_sided.csv", false, 0.0},
                 {"suppfig3a_two_sided_vs.csv", true, v_s},
                 {"suppfig3b_single_sided_vs.csv", false, v_s}};
  for (const auto& f : figures)
    run.write(sweep_table(qnd::sweep(figure_cavity(c, f.two_sided, f.v_s), c.sweep_min_meV, c.sweep_max_meV,
                                     c.sweep_points)),
              f.file);
  cmd_table1(run);
}

// ---- manifest --------------------------------------------------------------

nlohmann::json versions() {
  return {{"qnd", QND_VERSION},
          {"compiler", __VERSION__},
          {"boost", BOOST_LIB_VERSION},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"cli11", CLI11_VERSION},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

void write_manifest(const Run& run, const std::vector<std::string>& argv, double wall_s, int exit_code) {
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [name, value] : qnd::resolved_entries(run.cfg)) {
    const auto dot = name.find('.');
    config[name.substr(0, dot)][name.substr(dot + 1)] = value;
  }
  nlohmann::json m = {{"subcommand", run.name}, {"arguments", argv},       {"config", config},
                      {"versions", versions()}, {"wall_time_s", wall_s},   {"outputs", run.outputs},
                      {"threads", qnd::thread_count()}, {"exit_code", exit_code}};
  std::ofstream os(run.out_dir() / ("manifest_" + run.name + ".json"));
  os << m.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QND spin readout with cavity exciton-polaritons: structure, exchange, response and error budget"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  Assignments flag_sets;
  std::vector<std::function<void()>> hooks;
  app.add_option("-c,--config", config_path, "INI file applied on top of the default profile");
  app.add_option("--set", sets, "override one key, section.key=value (repeatable)");
  bind_flag<std::string>(&app, "-o,--out", "run.output_dir", "output directory", flag_sets, hooks);
  bind_flag<int>(&app, "--threads", "run.threads", "worker cap", flag_sets, hooks);
  bind_flag<std::uint64_t>(&app, "--seed", "run.seed", "random seed", flag_sets, hooks);

  auto* solve = app.add_subcommand("solve", "lowest states of the dot-well structure");
  std::string carrier = "electron";
  solve->add_option("--carrier", carrier, "electron, hole or both")->check(CLI::IsMember({"electron", "hole", "both"}));
  bind_flag<int>(solve, "--n", "grid.n", "grid points per axis", flag_sets, hooks);
  bind_flag<double>(solve, "--spacing", "grid.spacing_nm", "grid spacing [nm]", flag_sets, hooks);

  auto* envelope = app.add_subcommand("envelope", "solve and fit the Gaussian dot envelope");
  bind_flag<int>(envelope, "--n", "grid.n", "grid points per axis", flag_sets, hooks);
  bind_flag<double>(envelope, "--spacing", "grid.spacing_nm", "grid spacing [nm]", flag_sets, hooks);

  auto* exchange = app.add_subcommand("exchange", "exchange energy V_ex");
  bool with_mc = false;
  exchange->add_flag("--mc", with_mc, "also run the Monte-Carlo evaluation");
  bind_flag<std::uint64_t>(exchange, "--samples", "exchange.mc_samples", "Monte-Carlo samples", flag_sets, hooks);
  bind_flag<std::string>(exchange, "--kernel", "exchange.mc_kernel", "exponential or gaussian", flag_sets, hooks);
  bind_flag<std::string>(exchange, "--z-factor", "exchange.z_factor", "derived or printed", flag_sets, hooks);

  auto* sweep = app.add_subcommand("sweep", "phase and intensity response versus detuning");
  bind_flag<double>(sweep, "--gamma1", "cavity.gamma1_meV", "top-mirror decay [meV]", flag_sets, hooks);
  bind_flag<double>(sweep, "--gamma2", "cavity.gamma2_meV", "bottom-mirror decay [meV]", flag_sets, hooks);
  bind_flag<double>(sweep, "--vs", "cavity.v_s_meV", "strain half-splitting [meV]", flag_sets, hooks);
  bind_flag<double>(sweep, "--vex", "cavity.v_ex_meV", "exchange energy [meV]", flag_sets, hooks);
  bind_flag<double>(sweep, "--min", "cavity.sweep_min_meV", "first detuning [meV]", flag_sets, hooks);
  bind_flag<double>(sweep, "--max", "cavity.sweep_max_meV", "last detuning [meV]", flag_sets, hooks);
  bind_flag<int>(sweep, "--points", "cavity.sweep_points", "number of detunings", flag_sets, hooks);

  auto* spinflip = app.add_subcommand("spinflip-rate", "phonon-assisted spin-flip scattering rate");
  bind_flag<double>(spinflip, "--delta", "phonon.delta_meV", "probe detuning below the LP [meV]", flag_sets, hooks);
  bind_flag<double>(spinflip, "--temperature", "phonon.temperature_K", "temperature [K]", flag_sets, hooks);
  bind_flag<double>(spinflip, "--gamma1", "cavity.gamma1_meV", "top-mirror decay [meV]", flag_sets, hooks);
  bind_flag<double>(spinflip, "--gamma2", "cavity.gamma2_meV", "bottom-mirror decay [meV]", flag_sets, hooks);
  std::optional<double> n_lp, n_up;
  spinflip->add_option("--n-lp", n_lp, "excited lower polaritons (default budget.n_lp)");
  spinflip->add_option("--n-up", n_up, "excited upper polaritons (default from the drive)");

  auto* radiative = app.add_subcommand("radiative", "QD electron / QW hole radiative recombination");
  double tau_ns = 28.0;
  radiative->add_option("--tau-ns", tau_ns, "measurement time for the error probability [ns]");

  auto* budget = app.add_subcommand("budget", "error budget of one scenario");
  std::string cavity_kind = "two", signal = "intensity";
  budget->add_option("--cavity", cavity_kind, "single or two")->check(CLI::IsMember({"single", "two"}));
  budget->add_option("--signal", signal, "phase or intensity")->check(CLI::IsMember({"phase", "intensity"}));
  bind_flag<double>(budget, "--vs", "cavity.v_s_meV", "strain half-splitting [meV]", flag_sets, hooks);
  bind_flag<double>(budget, "--laser-flux", "detection.laser_flux_per_ps", "laser flux [1/ps]", flag_sets, hooks);

  auto* table1 = app.add_subcommand("table1", "measurement times and error budget for all scenarios");

  auto* cavity = app.add_subcommand("cavity", "decay rates and spot radius from mirror parameters");
  bind_flag<double>(cavity, "--r1", "mirrors.r1", "top reflectivity", flag_sets, hooks);
  bind_flag<double>(cavity, "--r2", "mirrors.r2", "bottom reflectivity", flag_sets, hooks);
  bind_flag<double>(cavity, "--lc", "mirrors.length_nm", "effective cavity length [nm]", flag_sets, hooks);
  bind_flag<double>(cavity, "--nc", "mirrors.n_c", "cavity index", flag_sets, hooks);
  bind_flag<double>(cavity, "--lambda", "mirrors.wavelength_nm", "wavelength [nm]", flag_sets, hooks);

  auto* reproduce = app.add_subcommand("reproduce-all", "figure sweeps and the table in one run");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto t0 = std::chrono::steady_clock::now();
  Run run;
  run.name = app.get_subcommands().front()->get_name();
  int code = 0;
  try {
    for (auto& h : hooks) h();
    run.cfg = qnd::load_config(config_path);
    Assignments cli_sets;
    for (const std::string& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw qnd::ValidationError("--set expects section.key=value, got '" + s + "'");
      cli_sets.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    qnd::apply_assignments(run.cfg, cli_sets);
    qnd::apply_assignments(run.cfg, flag_sets);
    run.cfg.validate();
    if (run.cfg.threads > 0) qnd::set_thread_count(static_cast<unsigned>(run.cfg.threads));
    fs::create_directories(run.out_dir());

    if (*solve) cmd_solve(run, carrier);
    else if (*envelope) cmd_envelope(run);
    else if (*exchange) cmd_exchange(run, with_mc);
    else if (*sweep) cmd_sweep(run);
    else if (*spinflip) cmd_spinflip(run, n_lp, n_up);
    else if (*radiative) cmd_radiative(run, tau_ns);
    else if (*budget) cmd_budget(run, cavity_kind, signal);
    else if (*table1) cmd_table1(run);
    else if (*cavity) cmd_cavity(run);
    else if (*reproduce) cmd_reproduce_all(run);
  } catch (const qnd::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n  iterations: " << e.iterations() << "\n  residuals:";
    for (double r : e.residuals()) std::cerr << ' ' << r;
    std::cerr << "\n";
    code = 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 1;
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (fs::is_directory(run.out_dir())) write_manifest(run, args, wall, code);
  return code;
}
