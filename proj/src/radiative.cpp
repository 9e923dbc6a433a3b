#include "qnd/radiative.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <limits>

#include "qnd/errors.hpp"
#include "qnd/exchange.hpp"
#include "qnd/units.hpp"

namespace qnd {

using units::pi;

void RadiativeInputs::validate() const {
  envelopes.validate();
  if (!(refractive_index > 0.0)) throw ValidationError("radiative: refractive index must be positive");
  if (!(exciton_energy > 0.0)) throw ValidationError("radiative: exciton energy must be positive");
  if (!(free_exciton_lifetime > 0.0)) throw ValidationError("radiative: tau_0 must be positive");
  if (!(area_nm2 > 0.0)) throw ValidationError("radiative: area must be positive");
}

namespace {

double z_part(const GaussianEnvelopes& e) {
  return z_overlap_integral(e.M1, e.c1, e.b, e.z0) * z_overlap_integral(e.M2, e.c2, e.b, e.z0);
}

}  // namespace

double dipole_overlap(const GaussianEnvelopes& e, double area_nm2) {
  e.validate();
  if (!(area_nm2 > 0.0)) throw ValidationError("dipole_overlap: area must be positive");
  const double in_plane = pi * pi * e.a * e.a / (1.0 / (e.a * e.a) + 8.0 / (e.a_B * e.a_B));
  return e.N_m * e.N_m * z_part(e) / std::sqrt(area_nm2) * in_plane;
}

double dipole_overlap_numerical(const GaussianEnvelopes& e, double area_nm2) {
  e.validate();
  if (!(area_nm2 > 0.0)) throw ValidationError("dipole_overlap: area must be positive");
  boost::math::quadrature::exp_sinh<double> integrator;
  const double radial = integrator.integrate(
      [&](double r) { return 2.0 * pi * r * std::exp(-r * r / (2.0 * e.a * e.a) - 2.0 * r / e.a_B); },
      std::sqrt(std::numeric_limits<double>::epsilon()));
  const double in_plane = pi * e.a * e.a / 2.0 * radial;
  return e.N_m * e.N_m * z_part(e) / std::sqrt(area_nm2) * in_plane;
}

RadiativeLifetime radiative_lifetime(const RadiativeInputs& in, bool numerical_overlap) {
  in.validate();
  RadiativeLifetime out;
  out.overlap = numerical_overlap ? dipole_overlap_numerical(in.envelopes, in.area_nm2)
                                  : dipole_overlap(in.envelopes, in.area_nm2);
  // n omega_x / c in nm^-1
  const double nk = in.refractive_index * in.exciton_energy / (units::hbar * units::speed_of_light);
  const double factor = nk * nk * out.overlap * out.overlap / (2.0 * pi) * (2.0 / 3.0);
  out.rate = factor / in.free_exciton_lifetime * units::ps_per_s;
  out.tau_D = out.rate > 0.0 ? 1.0 / out.rate : std::numeric_limits<double>::infinity();
  return out;
}

double effective_lifetime(double tau_D_s, double n_excitons) {
  if (!(n_excitons > 0.0)) throw ValidationError("effective_lifetime: exciton count must be positive");
  return tau_D_s / n_excitons;
}

double p_rad_linear(double n_polaritons, double tau_meas_ns, double tau0_s) {
  if (!(n_polaritons >= 0.0 && tau_meas_ns >= 0.0)) throw ValidationError("p_rad: inputs must be non-negative");
  if (!(tau0_s > 0.0)) throw ValidationError("p_rad: tau0 must be positive");
  return n_polaritons * tau_meas_ns * 1e-9 / tau0_s;
}

double p_rad(double n_polaritons, double tau_meas_ns, double tau0_s) {
  return -std::expm1(-p_rad_linear(n_polaritons, tau_meas_ns, tau0_s));
}

}  // namespace qnd
