#include "qnd/phonon.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "qnd/errors.hpp"

namespace qnd {

using units::pi;

void DispersionParams::validate() const {
  if (!(rabi_g > 0.0)) throw ValidationError("dispersion: Rabi splitting must be positive");
  if (!(electron_mass > 0.0 && hole_mass > 0.0 && cavity_mass > 0.0))
    throw ValidationError("dispersion: masses must be positive");
  if (!std::isfinite(cavity_detuning)) throw ValidationError("dispersion: detuning must be finite");
}

void PhononParams::validate() const {
  if (!(sound_velocity > 0.0)) throw ValidationError("phonon: sound velocity must be positive");
  if (!(mass_density > 0.0)) throw ValidationError("phonon: mass density must be positive");
  if (!(temperature >= 0.0)) throw ValidationError("phonon: temperature must be non-negative");
  if (!std::isfinite(a_e) || !std::isfinite(a_h)) throw ValidationError("phonon: deformation potentials must be finite");
}

double exciton_energy(double k, const DispersionParams& p) {
  return units::hbar2_over_2m0 * k * k / p.exciton_mass();
}

double cavity_energy(double k, const DispersionParams& p) {
  return p.cavity_detuning + units::hbar2_over_2m0 * k * k / p.cavity_mass;
}

double lp_absolute(double k, const DispersionParams& p) {
  const double ec = cavity_energy(k, p), ex = exciton_energy(k, p);
  return 0.5 * (ec + ex) - 0.5 * std::hypot(p.rabi_g, ec - ex);
}

double up_absolute(double k, const DispersionParams& p) {
  const double ec = cavity_energy(k, p), ex = exciton_energy(k, p);
  return 0.5 * (ec + ex) + 0.5 * std::hypot(p.rabi_g, ec - ex);
}

double lp_energy(double k, const DispersionParams& p) { return lp_absolute(k, p) - lp_absolute(0.0, p); }

Hopfield hopfield(double k, const DispersionParams& p) {
  const double d = cavity_energy(k, p) - exciton_energy(k, p);
  const double x = d / std::hypot(p.rabi_g, d);
  Hopfield h;
  h.exciton = 0.5 * (1.0 + x);
  h.photon = 0.5 * (1.0 - x);
  return h;
}

double threshold_momentum(double dark_gap, const DispersionParams& p) {
  p.validate();
  if (!(dark_gap > 0.0)) throw ValidationError("threshold_momentum: dark gap must be positive");
  auto f = [&](double k) { return lp_energy(k, p) - dark_gap; };
  double hi = 1e-3;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 100.0) throw ValidationError("threshold_momentum: no root below 100 nm^-1");
  }
  const auto [lo_k, hi_k] = boost::math::tools::bisect(f, 0.0, hi, boost::math::tools::eps_tolerance<double>(50));
  return 0.5 * (lo_k + hi_k);
}

double threshold_momentum_analytic(double dark_gap, const DispersionParams& p) {
  p.validate();
  const double target = lp_absolute(0.0, p) + dark_gap;
  const double alpha = units::hbar2_over_2m0 / p.cavity_mass;
  const double beta = units::hbar2_over_2m0 / p.exciton_mass();
  // (detuning + alpha s - target)(beta s - target) = g^2/4, s = k^2
  const double A = alpha * beta;
  const double B = -alpha * target + beta * (p.cavity_detuning - target);
  const double C = -target * (p.cavity_detuning - target) - 0.25 * p.rabi_g * p.rabi_g;
  const double disc = std::sqrt(B * B - 4.0 * A * C);
  const double s = (-B + disc) / (2.0 * A);
  return std::sqrt(s);
}

double in_plane_form_factor(double q, double other_mass, double exciton_mass, double a_B) {
  const double x = other_mass / (2.0 * exciton_mass) * q * a_B;
  return std::pow(1.0 + x * x, -1.5);
}

double perpendicular_form_factor(double qz, double M, double c) {
  return M * M * c * std::sqrt(pi / 2.0) * std::exp(-qz * qz * c * c / 8.0);
}

double deformation_matrix_element(double q, double qz, const PhononParams& ph, const DispersionParams& disp,
                                  const GaussianEnvelopes& env) {
  const double mx = disp.exciton_mass();
  const double bracket =
      ph.a_e * in_plane_form_factor(q, disp.hole_mass, mx, env.a_B) * perpendicular_form_factor(qz, env.M1, env.c1) -
      ph.a_h * in_plane_form_factor(q, disp.electron_mass, mx, env.a_B) * perpendicular_form_factor(qz, env.M2, env.c2);
  const double qq = std::hypot(q, qz);
  return units::hbar * qq / (2.0 * ph.mass_density * ph.sound_velocity) * bracket * bracket;
}

namespace {

struct RadialIntegrand {
  double delta;
  const PhononParams& ph;
  const GaussianEnvelopes& env;
  const DispersionParams& disp;
  double r0_sq;

  // Returns the k-space integrand (2 pi k included) and fills the root.
  double operator()(double k, ScatteringSample* out = nullptr) const {
    const double hu = units::hbar * ph.sound_velocity;
    const double e_ph = lp_energy(k, disp) + delta;
    if (out) *out = ScatteringSample{k, 0.0, 0.0, 0.0};
    if (!(e_ph > 0.0)) return 0.0;
    const double Q = e_ph / hu;
    if (!(Q > k)) return 0.0;
    const double qz = std::sqrt(Q * Q - k * k);
    const double n = units::bose_occupation(e_ph, ph.temperature);
    if (n == 0.0) return 0.0;
    const double g2v = deformation_matrix_element(k, qz, ph, disp, env);
    // |d E_ph / d qz| = hbar u qz / Q; two roots +-qz
    const double per_root = r0_sq * hopfield(k, disp).exciton * g2v * n * Q / (hu * qz);
    const double value = 2.0 * pi * k * 2.0 * per_root;
    if (out) {
      out->qz = qz;
      out->integrand = value;
      out->energy_residual = lp_energy(k, disp) + delta - hu * std::hypot(k, qz);
    }
    return value;
  }
};

}  // namespace

ScatteringResult phonon_absorption_rate(double delta, const PhononParams& ph, const GaussianEnvelopes& env,
                                        const DispersionParams& disp, const PhononRateOptions& opt) {
  ph.validate();
  env.validate();
  disp.validate();
  if (!(opt.rel_tolerance > 0.0)) throw ValidationError("phonon rate: tolerance must be positive");
  if (!(delta < opt.dark_gap)) throw ValidationError("phonon rate: detuning must stay below the dark gap");
  if (!(opt.n_lp >= 0.0 && opt.n_up >= 0.0)) throw ValidationError("phonon rate: counts must be non-negative");

  ScatteringResult res;
  res.k_threshold = threshold_momentum(opt.dark_gap, disp);
  if (ph.temperature == 0.0) {
    res.k_max = res.k_threshold;
    return res;
  }

  const RadialIntegrand f{delta, ph, env, disp, hopfield(0.0, disp).exciton};
  const double kT = units::k_boltzmann * ph.temperature;
  const double e_cut = lp_energy(res.k_threshold, disp) + delta + 60.0 * kT;
  double k_max = 2.0 * res.k_threshold;
  while (lp_energy(k_max, disp) + delta < e_cut) k_max *= 1.5;
  res.k_max = k_max;

  // log-spaced panels resolve the steep rise just above k'_0
  std::vector<double> edges{res.k_threshold};
  while (edges.back() * 2.0 < k_max) edges.push_back(edges.back() * 2.0);
  edges.push_back(k_max);

  double total = 0.0, err_total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double k) { return f(k); }, edges[i], edges[i + 1], 20, opt.rel_tolerance * 0.1, &err);
    err_total += err;
  }
  const double scale = 1.0 / (4.0 * pi * pi * units::hbar) * units::ps_per_s;
  res.gamma_per_polariton = total * scale;
  res.error_estimate = err_total * scale;

  const int ns = std::max(opt.diagnostic_samples, 0);
  for (int i = 0; i < ns; ++i) {
    const double k = res.k_threshold + (k_max - res.k_threshold) * (i + 0.5) / ns;
    ScatteringSample s;
    f(k, &s);
    res.samples.push_back(s);
  }
  res.gamma_dark_total = dark_rate_total(res.gamma_per_polariton, opt.n_lp, opt.n_up);
  return res;
}

double dark_rate_total(double gamma_per_polariton, double n_lp, double n_up) {
  if (!(n_lp >= 0.0 && n_up >= 0.0)) throw ValidationError("dark_rate_total: counts must be non-negative");
  return (n_lp + n_up) * gamma_per_polariton;
}

double polariton_count(double flux_per_ps, double delta, double gamma1, double gamma, double t0_sq) {
  if (!(flux_per_ps >= 0.0)) throw ValidationError("polariton_count: flux must be non-negative");
  if (!(gamma1 > 0.0 && gamma >= gamma1)) throw ValidationError("polariton_count: need 0 < gamma1 <= gamma");
  if (!(t0_sq >= 0.0 && t0_sq <= 1.0)) throw ValidationError("polariton_count: t0^2 must lie in [0, 1]");
  const double g1 = units::energy_to_rate(gamma1);
  const double g = units::energy_to_rate(gamma);
  const double d = units::energy_to_rate(delta);
  return g1 * t0_sq * flux_per_ps / (d * d + 0.25 * g * g);
}

double upper_polariton_count(double n_lp, double delta, double rabi_g, double gamma) {
  if (!(n_lp >= 0.0)) throw ValidationError("upper_polariton_count: count must be non-negative");
  if (!(gamma > 0.0 && rabi_g > 0.0)) throw ValidationError("upper_polariton_count: gamma and g must be positive");
  const double q = 0.25 * gamma * gamma;
  const double up = rabi_g + delta;
  return n_lp * (delta * delta + q) / (up * up + q);
}

DensityCheck density_check(double n_polaritons, double spot_radius_nm, double a_B, double threshold) {
  if (!(spot_radius_nm > 0.0)) throw ValidationError("density_check: spot radius must be positive");
  if (!(n_polaritons >= 0.0)) throw ValidationError("density_check: count must be non-negative");
  const double per_nm2 = n_polaritons / (pi * spot_radius_nm * spot_radius_nm);
  DensityCheck d;
  d.density_cm2 = per_nm2 * units::nm2_per_cm2;
  d.n_aB2 = per_nm2 * a_B * a_B;
  d.pass = d.n_aB2 < threshold;
  return d;
}

}  // namespace qnd
