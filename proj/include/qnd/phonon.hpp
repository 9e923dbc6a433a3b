#pragma once

#include <vector>

#include "qnd/envelope.hpp"
#include "qnd/units.hpp"

namespace qnd {

/// Exciton and cavity-photon branches coupled with Rabi splitting g.
/// Energies in meV measured from E_exc(0); masses in free-electron units.
struct DispersionParams {
  double rabi_g = 2.0;
  double electron_mass = 0.0566;  // QW electron
  double hole_mass = 0.495;       // QW heavy hole
  double cavity_mass = 3.0e-5;    // effective photon mass of the lambda cavity
  double cavity_detuning = 0.0;   // E_cav(0) - E_exc(0)

  double exciton_mass() const noexcept { return electron_mass + hole_mass; }
  void validate() const;
};

struct PhononParams {
  double sound_velocity = 4.7;  // nm/ps, GaAs longitudinal
  double mass_density = 5317.0 * units::kg_per_m3_to_internal;  // meV ps^2 / nm^5
  double a_e = -7.0e3;          // meV
  double a_h = 2.7e3;           // meV
  double temperature = 1.5;     // K

  void validate() const;
};

struct Hopfield {
  double exciton = 0.5;  // |r_k|^2
  double photon = 0.5;   // |t_k|^2
};

double exciton_energy(double k, const DispersionParams& p);
double cavity_energy(double k, const DispersionParams& p);
/// Lower and upper branch energies on the E_exc(0) = 0 scale.
double lp_absolute(double k, const DispersionParams& p);
double up_absolute(double k, const DispersionParams& p);
/// E_LP(k) - E_LP(0).
double lp_energy(double k, const DispersionParams& p);
Hopfield hopfield(double k, const DispersionParams& p);

/// k'_0 with E_LP(k'_0) = E_LP(0) + dark_gap, by bracketed bisection.
double threshold_momentum(double dark_gap, const DispersionParams& p);
/// The same root from the closed inversion (E_cav - E)(E_exc - E) = g^2/4.
double threshold_momentum_analytic(double dark_gap, const DispersionParams& p);

/// Parallel form factor [1 + (m_other/(2M) q a_B)^2]^(-3/2).
double in_plane_form_factor(double q, double other_mass, double exciton_mass, double a_B);
/// Fourier transform of M^2 exp(-2 z^2/c^2): M^2 c sqrt(pi/2) exp(-qz^2 c^2/8).
double perpendicular_form_factor(double qz, double M, double c);

/// |G(q, qz)|^2 V [meV^2 nm^3].
double deformation_matrix_element(double q, double qz, const PhononParams& ph, const DispersionParams& disp,
                                  const GaussianEnvelopes& env);

struct ScatteringSample {
  double k = 0.0;
  double qz = 0.0;
  double integrand = 0.0;         // ps^-1 nm
  double energy_residual = 0.0;   // meV
};

struct ScatteringResult {
  double gamma_per_polariton = 0.0;  // s^-1
  double k_threshold = 0.0;          // nm^-1
  double k_max = 0.0;                // upper radial limit used
  double error_estimate = 0.0;       // s^-1
  std::vector<ScatteringSample> samples;
  double gamma_dark_total = 0.0;     // s^-1, filled when counts are given
};

struct PhononRateOptions {
  double dark_gap = 1.0;        // meV above E_LP(0)
  double rel_tolerance = 1e-3;
  int diagnostic_samples = 64;
  double n_lp = 0.0;
  double n_up = 0.0;
};

/// Golden-rule rate for a k = 0 polariton, probed delta below the LP
/// resonance, to absorb an acoustic phonon and land at |k'| >= k'_0.
/// For each k' the phonon energy E_LP(k') - E_LP(0) + delta fixes |qz|,
/// and both signs of qz are summed.
ScatteringResult phonon_absorption_rate(double delta, const PhononParams& ph, const GaussianEnvelopes& env,
                                        const DispersionParams& disp, const PhononRateOptions& opt = {});

/// (n_lp + n_up) * gamma
double dark_rate_total(double gamma_per_polariton, double n_lp, double n_up);

/// gamma1 t0^2 flux / (delta^2 + gamma^2/4), energies converted to rad/ps.
double polariton_count(double flux_per_ps, double delta, double gamma1, double gamma, double t0_sq);

/// UP population at the drive that sustains n_lp lower polaritons when the
/// probe sits delta below the LP: the UP resonance is then g + delta away and
/// both k = 0 branches carry photon weight 1/2 at resonance.
///   n_up = n_lp (delta^2 + gamma^2/4) / ((g + delta)^2 + gamma^2/4)
double upper_polariton_count(double n_lp, double delta, double rabi_g, double gamma);

struct DensityCheck {
  double density_cm2 = 0.0;
  double n_aB2 = 0.0;
  bool pass = true;
};

DensityCheck density_check(double n_polaritons, double spot_radius_nm, double a_B, double threshold = 0.01);

}  // namespace qnd
