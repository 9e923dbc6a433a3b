#pragma once

#include "qnd/grid.hpp"

namespace qnd {

/// Analytic envelopes consumed by the exchange and radiative modules.
///
/// QD electron:  phi(r) = N_m exp(-(z - z0)^2 / b^2) exp(-rho^2 / a^2)
/// QW exciton:   relative motion exp(-|x| / a_B) in plane,
///               electron h1(z) = M1 exp(-z^2 / c1^2), hole h2(z) = M2 exp(-z^2 / c2^2).
/// Lengths in nm, amplitudes in nm^-3/2 (N_m) and nm^-1/2 (M1, M2).
struct GaussianEnvelopes {
  double N_m = 0.0216;
  double a = 12.0;
  double b = 4.7;
  double z0 = 2.0;
  double a_B = 10.0;
  double c1 = 6.0;
  double c2 = 4.0;
  double M1 = 0.4054;
  double M2 = 0.5;

  /// Throws ValidationError unless all widths and amplitudes are positive.
  void validate() const;
  /// Integral of |phi|^2 over all space: N_m^2 (pi/2)^(3/2) a^2 b.
  double qd_norm() const noexcept;
};

struct EnvelopeFit {
  double N_m = 0.0;
  double a = 0.0;
  double b = 0.0;
  double z0 = 0.0;
  /// Root-mean-square of psi - model over the fitted samples [nm^-3/2].
  double rms_residual = 0.0;
  std::size_t samples = 0;
  int iterations = 0;
};

/// Least-squares fit of the separable Gaussian (dot axis at x = y = 0) to the
/// samples of psi with z_min <= z <= z_max. A weighted log-linear fit seeds a
/// Levenberg-Marquardt refinement on the raw amplitudes.
/// Throws ValidationError if psi has no positive amplitude in the region or
/// the log-linear fit does not describe a decaying Gaussian.
EnvelopeFit fit_gaussian_envelope(const ScalarField3D& psi, double z_min, double z_max);

/// Samples the QD Gaussian of `env` on a grid.
ScalarField3D sample_qd_envelope(const GridSpec& grid, const GaussianEnvelopes& env);

/// Copies the fitted QD parameters into a set of envelopes.
GaussianEnvelopes with_fit(GaussianEnvelopes base, const EnvelopeFit& fit);

}  // namespace qnd
