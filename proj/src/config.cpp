#include "qnd/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdlib>
#include <sstream>
#include <variant>

#include "qnd/errors.hpp"

#ifndef QND_SOURCE_CONFIG_DIR
#define QND_SOURCE_CONFIG_DIR "config"
#endif

namespace qnd {

namespace {

struct Scaled {
  double* target;
  double scale;  // internal = file value * scale
};

using Slot = std::variant<Scaled, int*, std::uint64_t*, std::string*, Spin*>;

struct Binding {
  const char* section;
  const char* key;
  const char* doc;
  Slot slot;
};

Scaled plain(double& x) { return {&x, 1.0}; }

std::vector<Binding> bindings(RunConfig& c) {
  return {
      {"run", "output_dir", "directory for CSV files and the manifest", &c.output_dir},
      {"run", "seed", "seed for every random stream", &c.seed},
      {"run", "threads", "worker cap, 0 for all cores", &c.threads},

      {"grid", "n", "points per axis (odd)", &c.grid.n},
      {"grid", "spacing_nm", "grid spacing", plain(c.grid.spacing_nm)},
      {"grid", "margin_nm", "minimum barrier margin around the structure", plain(c.margin_nm)},

      {"geometry", "qd_base_nm", "dot base edge", plain(c.geometry.qd_base_nm)},
      {"geometry", "qd_height_nm", "dot height", plain(c.geometry.qd_height_nm)},
      {"geometry", "qw_thickness_nm", "well thickness", plain(c.geometry.qw_thickness_nm)},
      {"geometry", "barrier_thickness_nm", "GaAs spacer between well and dot", plain(c.geometry.barrier_thickness_nm)},
      {"geometry", "indium_qd", "In fraction of the dot", plain(c.geometry.indium_qd)},
      {"geometry", "indium_qw", "In fraction of the well", plain(c.geometry.indium_qw)},

      {"bands", "model", "calibrated (electron offsets below) or alloy (conduction share)", &c.band_model},
      {"bands", "conduction_share", "conduction-band share of each gap step (alloy model)", plain(c.conduction_share)},
      {"bands", "electron_well_meV", "well electron edge above the dot edge", plain(c.electron_well_meV)},
      {"bands", "electron_barrier_meV", "GaAs electron edge above the dot edge", plain(c.electron_barrier_meV)},

      {"solver", "num_eigenpairs", "lowest states to converge", &c.solver.num_eigenpairs},
      {"solver", "max_matvecs", "operator application budget", &c.solver.max_iterations},
      {"solver", "basis_size", "Krylov basis per restart", &c.solver.basis_size},
      {"solver", "tolerance_meV", "residual norm threshold", plain(c.solver.tolerance)},

      {"envelope", "N_m_nm-1.5", "dot envelope amplitude", plain(c.envelopes.N_m)},
      {"envelope", "a_nm", "in-plane dot width", plain(c.envelopes.a)},
      {"envelope", "b_nm", "vertical dot width", plain(c.envelopes.b)},
      {"envelope", "z0_nm", "dot envelope centre above the well midplane", plain(c.envelopes.z0)},
      {"envelope", "a_B_nm", "exciton Bohr radius", plain(c.envelopes.a_B)},
      {"envelope", "c1_nm", "well electron width", plain(c.envelopes.c1)},
      {"envelope", "c2_nm", "well hole width", plain(c.envelopes.c2)},
      {"envelope", "M1_nm-0.5", "well electron amplitude", plain(c.envelopes.M1)},
      {"envelope", "M2_nm-0.5", "well hole amplitude", plain(c.envelopes.M2)},
      {"envelope", "fit_z_min_nm", "lower edge of the fit slab", plain(c.fit_z_min_nm)},
      {"envelope", "fit_z_max_nm", "upper edge of the fit slab", plain(c.fit_z_max_nm)},

      {"exchange", "spot_radius_um", "excitation spot radius, A = pi R^2", plain(c.spot_radius_um)},
      {"exchange", "epsilon_r", "static dielectric constant", plain(c.epsilon_r)},
      {"exchange", "exciton_fraction", "|r0|^2", plain(c.exciton_fraction)},
      {"exchange", "z_factor", "derived or printed", &c.z_factor},
      {"exchange", "mc_samples", "Monte-Carlo samples", &c.mc_samples},
      {"exchange", "mc_streams", "independent generator streams", &c.mc_streams},
      {"exchange", "mc_kernel", "exponential or gaussian", &c.mc_kernel},

      {"cavity", "gamma1_meV", "top-mirror decay", plain(c.cavity.gamma1)},
      {"cavity", "gamma2_meV", "bottom-mirror decay", plain(c.cavity.gamma2)},
      {"cavity", "v_s_meV", "half the H-V splitting", plain(c.cavity.v_s)},
      {"cavity", "v_ex_meV", "exchange energy", plain(c.cavity.v_ex)},
      {"cavity", "spin", "up or down", &c.cavity.spin},
      {"cavity", "sweep_min_meV", "first detuning of a sweep", plain(c.sweep_min_meV)},
      {"cavity", "sweep_max_meV", "last detuning of a sweep", plain(c.sweep_max_meV)},
      {"cavity", "sweep_points", "detunings per sweep", &c.sweep_points},

      {"dispersion", "rabi_g_meV", "Rabi splitting", plain(c.dispersion.rabi_g)},
      {"dispersion", "electron_mass_m0", "QW electron mass", plain(c.dispersion.electron_mass)},
      {"dispersion", "hole_mass_m0", "QW heavy-hole mass", plain(c.dispersion.hole_mass)},
      {"dispersion", "cavity_mass_m0", "effective cavity-photon mass", plain(c.dispersion.cavity_mass)},
      {"dispersion", "cavity_detuning_meV", "E_cav(0) - E_exc(0)", plain(c.dispersion.cavity_detuning)},

      {"phonon", "sound_velocity_nm_per_ps", "longitudinal sound velocity", plain(c.phonon.sound_velocity)},
      {"phonon", "mass_density_kg_per_m3", "mass density", Scaled{&c.phonon.mass_density, units::kg_per_m3_to_internal}},
      {"phonon", "a_e_eV", "electron deformation potential", Scaled{&c.phonon.a_e, units::meV_per_eV}},
      {"phonon", "a_h_eV", "hole deformation potential", Scaled{&c.phonon.a_h, units::meV_per_eV}},
      {"phonon", "temperature_K", "lattice temperature", plain(c.phonon.temperature)},
      {"phonon", "dark_gap_meV", "dark exciton above the k = 0 LP", plain(c.dark_gap_meV)},
      {"phonon", "rel_tolerance", "radial quadrature tolerance", plain(c.phonon_rel_tolerance)},
      {"phonon", "delta_meV", "probe detuning below the LP for spinflip-rate", plain(c.spinflip_delta_meV)},

      {"radiative", "refractive_index", "background index n", plain(c.refractive_index)},
      {"radiative", "exciton_energy_meV", "QW exciton transition energy", plain(c.exciton_energy_meV)},
      {"radiative", "free_exciton_lifetime_ps", "tau_0 of a free k = 0 exciton", plain(c.free_exciton_lifetime_ps)},

      {"detection", "bs_to_cavity", "splitter fraction sent to the cavity", plain(c.budget.chain.bs_to_cavity)},
      {"detection", "bs_to_detectors", "splitter fraction sent to the counters", plain(c.budget.chain.bs_to_detectors)},
      {"detection", "detector_efficiency", "counter quantum efficiency", plain(c.budget.chain.detector_efficiency)},
      {"detection", "laser_flux_per_ps", "laser photon flux for the budget report", plain(c.laser_flux_per_ps)},

      {"budget", "gamma_meV", "total decay gamma1 + gamma2", plain(c.budget.gamma)},
      {"budget", "v_ex_meV", "exchange energy", plain(c.budget.v_ex)},
      {"budget", "v_s_meV", "strain half-splitting of the V_s rows", plain(c.table_v_s_meV)},
      {"budget", "target_p_sn", "shot-noise error target", plain(c.budget.target_p_sn)},
      {"budget", "n_lp", "steady-state LP count", plain(c.budget.n_lp)},
      {"budget", "t0_sq", "photon Hopfield weight |t0|^2", plain(c.budget.t0_sq)},
      {"budget", "drive_calibration", "divides the cavity flux that sustains n_lp", plain(c.budget.drive_calibration)},
      {"budget", "tau0_s", "radiative time constant in N tau / tau0", plain(c.budget.tau0_s)},
      {"budget", "gamma_dark_single_per_s", "total dark rate, single-sided", plain(c.budget.gamma_dark_single)},
      {"budget", "gamma_dark_two_per_s", "total dark rate, two-sided", plain(c.budget.gamma_dark_two)},

      {"mirrors", "r1", "top mirror amplitude reflectivity", plain(c.mirrors.r1)},
      {"mirrors", "r2", "bottom mirror amplitude reflectivity", plain(c.mirrors.r2)},
      {"mirrors", "length_nm", "effective cavity length", plain(c.mirrors.length_nm)},
      {"mirrors", "n_c", "cavity refractive index", plain(c.mirrors.n_c)},
      {"mirrors", "wavelength_nm", "operating wavelength", plain(c.mirrors.wavelength_nm)},
  };
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
bool parse_number(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Returns an error message, empty on success.
std::string assign(const Binding& b, const std::string& raw) {
  const std::string v = trim(raw);
  const std::string name = std::string(b.section) + "." + b.key;
  return std::visit(
      [&](auto slot) -> std::string {
        using S = decltype(slot);
        if constexpr (std::is_same_v<S, Scaled>) {
          double x;
          if (!parse_number(v, x)) return name + ": not a number: '" + v + "'";
          *slot.target = x * slot.scale;
        } else if constexpr (std::is_same_v<S, int*>) {
          if (!parse_number(v, *slot)) return name + ": not an integer: '" + v + "'";
        } else if constexpr (std::is_same_v<S, std::uint64_t*>) {
          if (!parse_number(v, *slot)) return name + ": not an unsigned integer: '" + v + "'";
        } else if constexpr (std::is_same_v<S, std::string*>) {
          *slot = v;
        } else {
          if (v == "up" || v == "+1/2")
            *slot = Spin::up;
          else if (v == "down" || v == "-1/2")
            *slot = Spin::down;
          else
            return name + ": expected up or down, got '" + v + "'";
        }
        return {};
      },
      b.slot);
}

std::string render(const Binding& b) {
  return std::visit(
      [](auto slot) -> std::string {
        using S = decltype(slot);
        if constexpr (std::is_same_v<S, Scaled>) {
          char buf[64];
          const auto res = std::to_chars(buf, buf + sizeof buf, *slot.target / slot.scale);
          return std::string(buf, res.ptr);
        } else if constexpr (std::is_same_v<S, int*>) {
          return std::to_string(*slot);
        } else if constexpr (std::is_same_v<S, std::uint64_t*>) {
          return std::to_string(*slot);
        } else if constexpr (std::is_same_v<S, std::string*>) {
          return *slot;
        } else {
          return *slot == Spin::up ? "up" : "down";
        }
      },
      b.slot);
}

void collect(std::vector<std::string>& errors, const char* what, const auto& check) {
  try {
    check();
  } catch (const std::exception& e) {
    const std::string prefix = std::string(what) + ": ";
    const std::string msg = e.what();
    errors.push_back(msg.starts_with(prefix) ? msg : prefix + msg);
  }
}

}  // namespace

BandProfile RunConfig::bands() const {
  if (band_model == "alloy") return BandProfile::from_alloys(geometry.indium_qd, geometry.indium_qw, conduction_share);
  return BandProfile::with_electron_offsets(geometry.indium_qd, geometry.indium_qw, electron_well_meV,
                                            electron_barrier_meV);
}

double RunConfig::area_nm2() const {
  const double r = spot_radius_um * units::nm_per_um;
  return units::pi * r * r;
}

ExchangeInputs RunConfig::exchange_inputs() const {
  ExchangeInputs in;
  in.envelopes = envelopes;
  in.area_nm2 = area_nm2();
  in.epsilon_r = epsilon_r;
  in.hopfield_exciton_sq = exciton_fraction;
  in.z_factor = z_factor == "printed" ? ZFactorConvention::printed : ZFactorConvention::derived;
  return in;
}

MonteCarloOptions RunConfig::monte_carlo_options() const {
  MonteCarloOptions o;
  o.samples = mc_samples;
  o.seed = seed;
  o.streams = static_cast<unsigned>(std::max(mc_streams, 0));
  o.kernel = mc_kernel == "gaussian" ? ExchangeKernel::gaussian : ExchangeKernel::exponential;
  return o;
}

RadiativeInputs RunConfig::radiative_inputs() const {
  RadiativeInputs in;
  in.envelopes = envelopes;
  in.refractive_index = refractive_index;
  in.exciton_energy = exciton_energy_meV;
  in.free_exciton_lifetime = free_exciton_lifetime_ps;
  in.area_nm2 = area_nm2();
  return in;
}

PhononParams RunConfig::phonon_params() const { return phonon; }

void RunConfig::validate() const {
  std::vector<std::string> errors;
  if (threads < 0) errors.push_back("run.threads must be >= 0");
  collect(errors, "grid", [&] { grid.validate(); });
  if (!(margin_nm >= 0.0)) errors.push_back("grid.margin_nm must be non-negative");
  collect(errors, "geometry", [&] { geometry.validate(); });
  if (band_model != "calibrated" && band_model != "alloy") errors.push_back("bands.model must be calibrated or alloy");
  else collect(errors, "bands", [&] { bands().validate(); });
  if (!(solver.num_eigenpairs >= 1)) errors.push_back("solver.num_eigenpairs must be >= 1");
  if (!(solver.max_iterations >= solver.num_eigenpairs)) errors.push_back("solver.max_matvecs too small");
  if (!(solver.basis_size >= solver.num_eigenpairs + 2)) errors.push_back("solver.basis_size must exceed num_eigenpairs + 1");
  if (!(solver.tolerance > 0.0)) errors.push_back("solver.tolerance_meV must be positive");
  collect(errors, "envelope", [&] { envelopes.validate(); });
  if (!(fit_z_max_nm > fit_z_min_nm)) errors.push_back("envelope: empty fit slab");
  if (!(spot_radius_um > 0.0)) errors.push_back("exchange.spot_radius_um must be positive");
  if (z_factor != "derived" && z_factor != "printed") errors.push_back("exchange.z_factor must be derived or printed");
  if (mc_kernel != "exponential" && mc_kernel != "gaussian")
    errors.push_back("exchange.mc_kernel must be exponential or gaussian");
  if (mc_streams < 1) errors.push_back("exchange.mc_streams must be >= 1");
  else if (mc_samples < 2ULL * static_cast<std::uint64_t>(mc_streams))
    errors.push_back("exchange.mc_samples must be at least two per stream");
  collect(errors, "exchange", [&] { exchange_inputs().validate(); });
  collect(errors, "cavity", [&] { cavity.validate(); });
  if (sweep_points < 2) errors.push_back("cavity.sweep_points must be >= 2");
  if (!(sweep_max_meV > sweep_min_meV)) errors.push_back("cavity: empty sweep range");
  collect(errors, "dispersion", [&] { dispersion.validate(); });
  collect(errors, "phonon", [&] { phonon.validate(); });
  if (!(dark_gap_meV > 0.0)) errors.push_back("phonon.dark_gap_meV must be positive");
  if (!(spinflip_delta_meV < dark_gap_meV)) errors.push_back("phonon.delta_meV must stay below the dark gap");
  if (!(phonon_rel_tolerance > 0.0)) errors.push_back("phonon.rel_tolerance must be positive");
  collect(errors, "radiative", [&] { radiative_inputs().validate(); });
  collect(errors, "budget", [&] { budget.validate(); });
  if (!(laser_flux_per_ps >= 0.0)) errors.push_back("detection.laser_flux_per_ps must be non-negative");
  collect(errors, "mirrors", [&] { mirrors.validate(); });
  if (errors.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& e : errors) msg += "\n  " + e;
  throw ValidationError(msg);
}

std::vector<ConfigKey> config_schema() {
  RunConfig scratch;
  std::vector<ConfigKey> out;
  for (const Binding& b : bindings(scratch)) out.push_back({b.section, b.key, b.doc});
  return out;
}

void apply_assignments(RunConfig& cfg, const std::vector<std::pair<std::string, std::string>>& assignments) {
  auto table = bindings(cfg);
  std::vector<std::string> errors;
  for (const auto& [name, value] : assignments) {
    const auto dot = name.find('.');
    const std::string section = dot == std::string::npos ? "" : name.substr(0, dot);
    const std::string key = dot == std::string::npos ? name : name.substr(dot + 1);
    const Binding* hit = nullptr;
    for (const Binding& b : table)
      if (section == b.section && key == b.key) hit = &b;
    if (!hit) {
      errors.push_back("unknown key '" + name + "'");
      continue;
    }
    if (std::string e = assign(*hit, value); !e.empty()) errors.push_back(e);
  }
  if (errors.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& e : errors) msg += "\n  " + e;
  throw ValidationError(msg);
}

void apply_ini_file(RunConfig& cfg, const std::filesystem::path& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ValidationError("config: " + std::string(e.what()));
  }
  std::vector<std::pair<std::string, std::string>> assignments;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      assignments.emplace_back(section, body.data());
      continue;
    }
    for (const auto& [key, leaf] : body) assignments.emplace_back(section + "." + key, leaf.data());
  }
  apply_assignments(cfg, assignments);
}

std::filesystem::path default_profile_path() {
  if (const char* dir = std::getenv("QND_CONFIG_DIR"); dir && *dir) return std::filesystem::path(dir) / "default.ini";
  return std::filesystem::path(QND_SOURCE_CONFIG_DIR) / "default.ini";
}

RunConfig load_config(const std::filesystem::path& path) {
  RunConfig cfg;
  if (const auto def = default_profile_path(); std::filesystem::exists(def)) apply_ini_file(cfg, def);
  if (!path.empty()) {
    if (!std::filesystem::exists(path)) throw ValidationError("config file not found: " + path.string());
    apply_ini_file(cfg, path);
  }
  return cfg;
}

std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& cfg) {
  RunConfig copy = cfg;
  std::vector<std::pair<std::string, std::string>> out;
  for (const Binding& b : bindings(copy)) out.emplace_back(std::string(b.section) + "." + b.key, render(b));
  return out;
}

std::string to_ini(const RunConfig& cfg) {
  RunConfig copy = cfg;
  std::ostringstream os;
  std::string section;
  for (const Binding& b : bindings(copy)) {
    if (section != b.section) {
      if (!section.empty()) os << '\n';
      section = b.section;
      os << '[' << section << "]\n";
    }
    os << b.key << " = " << render(b) << '\n';
  }
  return os.str();
}

}  // namespace qnd
