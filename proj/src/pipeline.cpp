#include "qnd/pipeline.hpp"

#include "qnd/errors.hpp"
#include "qnd/hamiltonian.hpp"

namespace qnd {

EigenSolution solve_structure(const RunConfig& cfg, Carrier carrier) {
  const BandProfile bands = cfg.bands();
  const ScalarField3D v = build_potential(cfg.grid, cfg.geometry, bands, carrier, cfg.margin_nm);
  const ScalarField3D m = build_mass_field(cfg.grid, cfg.geometry, bands, carrier, cfg.margin_nm);
  const Hamiltonian h(v, m);
  return solve_lowest(h, cfg.solver);
}

EnvelopeFit fit_ground_state(const RunConfig& cfg, const EigenSolution& sol) {
  if (sol.states.empty()) throw ValidationError("fit_ground_state: no solved state");
  return fit_gaussian_envelope(sol.states.front(), cfg.fit_z_min_nm, cfg.fit_z_max_nm);
}

EmissionResult emission_from(const RunConfig& cfg, double qd_electron_meV, double qd_hole_meV) {
  const BandProfile bands = cfg.bands();
  const WellLevels well = quantum_well_levels(cfg.geometry, bands);
  EmissionInputs in;
  in.gap_qd_meV = ingaas_gap_meV(cfg.geometry.indium_qd);
  in.gap_qw_meV = ingaas_gap_meV(cfg.geometry.indium_qw);
  in.qd_electron_meV = qd_electron_meV;
  in.qd_hole_meV = qd_hole_meV;
  in.qw_electron_meV = well.electron_meV;
  in.qw_hole_meV = well.heavy_hole_meV;
  return emission_wavelengths(in);
}

}  // namespace qnd
