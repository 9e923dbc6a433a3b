#pragma once

#include "qnd/grid.hpp"

namespace qnd {

enum class Carrier { electron, heavy_hole };

/// Box-shaped In(x)GaAs dot sitting on a GaAs barrier on top of an
/// In(y)GaAs quantum well, all embedded in GaAs. Lengths in nm.
///
/// Placement on the grid: the well occupies |z| <= qw_thickness/2, the
/// barrier the next barrier_thickness above it, and the dot the following
/// qd_height, laterally |x|,|y| <= qd_base/2.
struct HeteroGeometry {
  double qd_base_nm = 20.0;
  double qd_height_nm = 1.5;
  double qw_thickness_nm = 6.0;
  double barrier_thickness_nm = 1.0;
  double indium_qd = 0.30;
  double indium_qw = 0.15;

  void validate() const;

  double qw_top() const noexcept { return 0.5 * qw_thickness_nm; }
  double qd_bottom() const noexcept { return qw_top() + barrier_thickness_nm; }
  double qd_top() const noexcept { return qd_bottom() + qd_height_nm; }
};

/// Band edge and effective mass (units of m0) of one material for one carrier.
struct Material {
  double potential_meV = 0.0;
  double mass = 1.0;
};

struct CarrierBands {
  Material barrier;  // GaAs
  Material dot;
  Material well;
};

/// Confinement potentials for electrons and heavy holes. Each carrier's
/// energies are measured from its own band edge in the dot material, counted
/// positive into the band (so holes are handled as positive-mass particles).
struct BandProfile {
  CarrierBands electron;
  CarrierBands heavy_hole;

  /// Potentials from the low-temperature InGaAs gap model with a fixed
  /// conduction-band share of each gap discontinuity.
  static BandProfile from_alloys(double indium_qd, double indium_qw, double conduction_share);
  /// Alloy masses and gaps with the electron well and barrier edges placed
  /// by hand; the heavy hole takes the rest of each gap discontinuity.
  static BandProfile with_electron_offsets(double indium_qd, double indium_qw, double well_meV,
                                           double barrier_meV);
  /// Alloy masses with electron offsets of default_electron_well_meV and
  /// default_electron_barrier_meV above the dot edge; the heavy hole takes the
  /// rest of each gap discontinuity.
  static BandProfile defaults();

  const CarrierBands& bands(Carrier c) const noexcept {
    return c == Carrier::electron ? electron : heavy_hole;
  }

  /// Finite potentials, positive masses, dot <= well <= barrier.
  void validate() const;
};

inline constexpr double default_conduction_share = 0.65;
inline constexpr double default_electron_well_meV = 180.0;
inline constexpr double default_electron_barrier_meV = 300.0;

/// Low-temperature band gap of In(x)Ga(1-x)As [meV].
double ingaas_gap_meV(double indium_fraction);

/// Builds the piecewise-constant band-edge potential [meV]. Each grid point
/// takes the volume-weighted average over its cell, so interior points carry
/// the exact region value and interface points a mixture.
/// Throws ValidationError unless the structure plus `min_margin_nm` fits in the grid.
ScalarField3D build_potential(const GridSpec& grid, const HeteroGeometry& geometry,
                              const BandProfile& bands, Carrier carrier,
                              double min_margin_nm = 10.0);

/// Effective-mass field (m0 units), cell-averaged on the inverse mass.
ScalarField3D build_mass_field(const GridSpec& grid, const HeteroGeometry& geometry,
                               const BandProfile& bands, Carrier carrier,
                               double min_margin_nm = 10.0);

}  // namespace qnd
