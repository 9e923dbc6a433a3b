#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "qnd/budget.hpp"
#include "qnd/cavity.hpp"
#include "qnd/cavity_design.hpp"
#include "qnd/exchange.hpp"
#include "qnd/heterostructure.hpp"
#include "qnd/lanczos.hpp"
#include "qnd/phonon.hpp"
#include "qnd/radiative.hpp"

namespace qnd {

/// Everything a run needs, sectioned like the INI file.
struct RunConfig {
  // [run]
  std::string output_dir = "out";
  std::uint64_t seed = 20240607;
  int threads = 0;  // 0: hardware concurrency

  // [grid], [geometry], [bands]
  GridSpec grid;
  double margin_nm = 10.0;
  HeteroGeometry geometry;
  std::string band_model = "calibrated";  // calibrated | alloy
  double conduction_share = default_conduction_share;
  double electron_well_meV = default_electron_well_meV;
  double electron_barrier_meV = default_electron_barrier_meV;

  // [solver]
  LanczosOptions solver;

  // [envelope]
  GaussianEnvelopes envelopes;
  double fit_z_min_nm = -3.0;
  double fit_z_max_nm = 3.0;

  // [exchange]
  double spot_radius_um = 3.6;
  double epsilon_r = 13.2;
  double exciton_fraction = 0.5;
  std::string z_factor = "derived";  // derived | printed
  std::uint64_t mc_samples = 10'000'000;
  int mc_streams = 64;
  std::string mc_kernel = "exponential";  // exponential | gaussian

  // [cavity]
  CavityConfig cavity;
  double sweep_min_meV = -2.0;
  double sweep_max_meV = 2.0;
  int sweep_points = 2001;

  // [dispersion], [phonon]
  DispersionParams dispersion;
  PhononParams phonon;
  double mass_density_kg_m3 = 5317.0;
  double dark_gap_meV = 1.0;
  double phonon_rel_tolerance = 1e-3;
  double spinflip_delta_meV = 0.0;

  // [radiative]
  double refractive_index = 3.6;
  double exciton_energy_meV = 1350.0;
  double free_exciton_lifetime_ps = 23.0;

  // [detection], [budget]
  BudgetConfig budget;
  double table_v_s_meV = 0.15;
  double laser_flux_per_ps = 5000.0;

  // [mirrors]
  MirrorParams mirrors;

  BandProfile bands() const;
  ExchangeInputs exchange_inputs() const;
  MonteCarloOptions monte_carlo_options() const;
  RadiativeInputs radiative_inputs() const;
  PhononParams phonon_params() const;
  double area_nm2() const;

  /// Runs every sub-validator and throws one ValidationError listing all failures.
  void validate() const;
};

/// One documented key of the INI schema.
struct ConfigKey {
  std::string section;
  std::string key;
  std::string doc;
};

/// All recognised keys, in file order.
std::vector<ConfigKey> config_schema();

/// Applies "section.key = value" assignments. Unknown keys and unparsable
/// values are collected and thrown together as one ValidationError.
void apply_assignments(RunConfig& cfg, const std::vector<std::pair<std::string, std::string>>& assignments);

/// Reads an INI file and applies it on top of cfg.
void apply_ini_file(RunConfig& cfg, const std::filesystem::path& path);

/// The shipped default profile: $QND_CONFIG_DIR/default.ini if the
/// variable is set, otherwise the repository's config/default.ini.
std::filesystem::path default_profile_path();

/// Defaults, then the default profile if present, then `path` if non-empty.
RunConfig load_config(const std::filesystem::path& path);

/// Every key with its resolved value, as (section.key, value) in schema order.
std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& cfg);

/// The resolved configuration as INI text.
std::string to_ini(const RunConfig& cfg);

}  // namespace qnd
