#include "qnd/emission.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "qnd/errors.hpp"
#include "qnd/units.hpp"

namespace qnd {

EmissionResult emission_wavelengths(const EmissionInputs& in) {
  for (double e : {in.qd_electron_meV, in.qd_hole_meV, in.qw_electron_meV, in.qw_hole_meV,
                   in.trion_binding_meV, in.exciton_binding_meV})
    if (!(e >= 0.0)) throw ValidationError("emission: confinement and binding energies must be non-negative");
  if (!(in.gap_qd_meV > 0.0 && in.gap_qw_meV > 0.0)) throw ValidationError("emission: gaps must be positive");

  EmissionResult r;
  r.trion_energy_meV = in.gap_qd_meV + in.qd_electron_meV + in.qd_hole_meV - in.trion_binding_meV;
  r.exciton_energy_meV = in.gap_qw_meV + in.qw_electron_meV + in.qw_hole_meV - in.exciton_binding_meV;
  if (!(r.trion_energy_meV > 0.0 && r.exciton_energy_meV > 0.0))
    throw ValidationError("emission: non-positive transition energy");
  r.qd_trion_nm = units::energy_to_wavelength(r.trion_energy_meV);
  r.qw_exciton_nm = units::energy_to_wavelength(r.exciton_energy_meV);
  r.detuning_meV = r.exciton_energy_meV - r.trion_energy_meV;
  return r;
}

double finite_well_ground_level(double width_nm, double depth_meV, double mass_well, double mass_barrier) {
  if (!(width_nm > 0.0 && depth_meV > 0.0 && mass_well > 0.0 && mass_barrier > 0.0))
    throw ValidationError("finite well: width, depth and masses must be positive");
  const double c = units::hbar2_over_2m0;
  // even solution: (k / m_w) tan(k L / 2) = kappa / m_b
  auto mismatch = [&](double e) {
    const double k = std::sqrt(e * mass_well / c);
    const double kappa = std::sqrt(std::max(depth_meV - e, 0.0) * mass_barrier / c);
    return k / mass_well * std::tan(0.5 * k * width_nm) - kappa / mass_barrier;
  };
  const double pole = c / mass_well * std::pow(units::pi / width_nm, 2);
  const double hi = std::min(depth_meV, pole) * (1.0 - 1e-12);
  boost::uintmax_t iters = 200;
  const auto [lo_e, hi_e] = boost::math::tools::toms748_solve(
      mismatch, 1e-12 * hi, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (lo_e + hi_e);
}

WellLevels quantum_well_levels(const HeteroGeometry& geometry, const BandProfile& bands) {
  geometry.validate();
  bands.validate();
  WellLevels out;
  const CarrierBands& e = bands.electron;
  const CarrierBands& h = bands.heavy_hole;
  out.electron_meV = finite_well_ground_level(geometry.qw_thickness_nm,
                                              e.barrier.potential_meV - e.well.potential_meV,
                                              e.well.mass, e.barrier.mass);
  out.heavy_hole_meV = finite_well_ground_level(geometry.qw_thickness_nm,
                                                h.barrier.potential_meV - h.well.potential_meV,
                                                h.well.mass, h.barrier.mass);
  return out;
}

}  // namespace qnd
