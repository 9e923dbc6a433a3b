#include "qnd/cavity_design.hpp"

#include <cmath>
#include <limits>

#include "qnd/errors.hpp"
#include "qnd/units.hpp"

namespace qnd {

void MirrorParams::validate() const {
  if (!(r1 > 0.0 && r1 <= 1.0 && r2 > 0.0 && r2 <= 1.0))
    throw ValidationError("mirrors: reflectivities must lie in (0, 1]");
  if (r1 < validity_threshold || r2 < validity_threshold)
    throw ValidationError("mirrors: reflectivity below the near-unity validity threshold");
  if (!(length_nm > 0.0 && n_c > 0.0 && wavelength_nm > 0.0))
    throw ValidationError("mirrors: length, index and wavelength must be positive");
}

DecayRates decay_rates(const MirrorParams& m) {
  m.validate();
  const double inf = std::numeric_limits<double>::infinity();
  auto dwell = [&](double r) { return r == 1.0 ? inf : m.length_nm * m.n_c / (units::speed_of_light * (1.0 - r)); };
  DecayRates d;
  d.tau1_ps = dwell(m.r1);
  d.tau2_ps = dwell(m.r2);
  d.gamma1 = units::hbar / d.tau1_ps;
  d.gamma2 = units::hbar / d.tau2_ps;
  return d;
}

double spot_radius(const MirrorParams& m) {
  m.validate();
  const double loss = 1.0 - m.r1 * m.r2;
  if (loss == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(m.wavelength_nm * m.length_nm / (units::pi * loss));
}

}  // namespace qnd
