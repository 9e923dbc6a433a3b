#pragma once

#include "qnd/heterostructure.hpp"

namespace qnd {

struct EmissionInputs {
  double gap_qd_meV = 0.0;
  double gap_qw_meV = 0.0;
  /// Confinement energies, each measured from the carrier's band edge in the
  /// material that hosts the transition.
  double qd_electron_meV = 0.0;
  double qd_hole_meV = 0.0;
  double qw_electron_meV = 0.0;
  double qw_hole_meV = 0.0;
  double trion_binding_meV = 20.0;
  double exciton_binding_meV = 5.0;
};

struct EmissionResult {
  double trion_energy_meV = 0.0;
  double exciton_energy_meV = 0.0;
  double qd_trion_nm = 0.0;
  double qw_exciton_nm = 0.0;
  /// exciton - trion transition energy.
  double detuning_meV = 0.0;
};

/// E = gap + E_e + E_h - binding for the QD trion and the QW exciton, and the
/// matching vacuum wavelengths. Throws ValidationError on negative
/// confinement or binding energies and on a non-positive transition energy.
EmissionResult emission_wavelengths(const EmissionInputs& in);

/// Ground subband of a finite square well of width `width_nm` and depth
/// `depth_meV`, with BenDaniel-Duke matching between well and barrier masses.
/// Energy measured from the well bottom [meV].
double finite_well_ground_level(double width_nm, double depth_meV, double mass_well, double mass_barrier);

struct WellLevels {
  double electron_meV = 0.0;
  double heavy_hole_meV = 0.0;
};

/// Electron and heavy-hole ground subbands of the quantum well alone.
WellLevels quantum_well_levels(const HeteroGeometry& geometry, const BandProfile& bands);

}  // namespace qnd
