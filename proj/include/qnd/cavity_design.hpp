#pragma once

namespace qnd {

/// Planar DBR microcavity; r1, r2 are amplitude reflectivities.
struct MirrorParams {
  double r1 = 0.999;
  double r2 = 0.999;
  double length_nm = 100.0;  // effective cavity length L_c
  double n_c = 3.6;
  double wavelength_nm = 918.0;
  /// Below this the near-unity expansions are rejected.
  double validity_threshold = 0.9;

  void validate() const;
};

struct DecayRates {
  double tau1_ps = 0.0, tau2_ps = 0.0;  // photon dwell times L_c n_c / (c (1 - r))
  double gamma1 = 0.0, gamma2 = 0.0;    // hbar / tau [meV]
};

DecayRates decay_rates(const MirrorParams& m);

/// sqrt(lambda L_c / (pi (1 - r1 r2))) [nm]
double spot_radius(const MirrorParams& m);

}  // namespace qnd
