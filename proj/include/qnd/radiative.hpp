#pragma once

#include "qnd/envelope.hpp"

namespace qnd {

struct RadiativeInputs {
  GaussianEnvelopes envelopes;
  double refractive_index = 3.6;
  double exciton_energy = 1350.0;  // meV, QW exciton line near 918 nm
  double free_exciton_lifetime = 23.0;  // ps
  double area_nm2 = 3.14159265358979323846 * 3600.0 * 3600.0;

  void validate() const;
};

/// Overlap factor of the QD electron, the QW exciton and the leftover
/// electron with phi(0) = sqrt(2/pi) 2/a_B taken out [nm]:
///   N_m^2 I1 I2 / sqrt(A) * pi^2 a^2 / (1/a^2 + 8/a_B^2),
/// reading the product M^2 I_0^2 I_0^2 as M1 M2 (I1/M1)(I2/M2) = I1 I2.
double dipole_overlap(const GaussianEnvelopes& env, double area_nm2);

/// The same overlap integrated numerically with the true relative-motion
/// factor exp(-2|rho_e - rho_d|/a_B). With the centre of mass integrated out
/// analytically the in-plane part reduces to
///   (pi a^2/2) int 2 pi r exp(-r^2/(2a^2) - 2r/a_B) dr.
double dipole_overlap_numerical(const GaussianEnvelopes& env, double area_nm2);

struct RadiativeLifetime {
  double overlap = 0.0;     // nm
  double tau_D = 0.0;       // s, single exciton
  double rate = 0.0;        // s^-1
};

/// 1/tau_D = 1/tau_0 * (n omega_x / c)^2 * overlap^2 / (2 pi) * 2/3.
RadiativeLifetime radiative_lifetime(const RadiativeInputs& in, bool numerical_overlap = false);
/// tau_D / N
double effective_lifetime(double tau_D_s, double n_excitons);

/// 1 - exp(-N tau / tau0)
double p_rad(double n_polaritons, double tau_meas_ns, double tau0_s);
/// N tau / tau0
double p_rad_linear(double n_polaritons, double tau_meas_ns, double tau0_s);

}  // namespace qnd
