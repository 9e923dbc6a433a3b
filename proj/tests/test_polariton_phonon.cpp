#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qnd/errors.hpp"
#include "qnd/phonon.hpp"
#include "qnd/units.hpp"

using namespace qnd;
using doctest::Approx;

namespace {

// Golden-rule integrand written out directly, integrated with the
// trapezoidal rule on a fine logarithmic k grid.
double brute_force_rate(double delta, const PhononParams& ph, const GaussianEnvelopes& env, const DispersionParams& d,
                        double k_lo, double k_hi) {
  const double hu = units::hbar * ph.sound_velocity;
  const double mx = d.exciton_mass();
  const double r0 = hopfield(0.0, d).exciton;
  auto integrand = [&](double k) {
    const double e = lp_energy(k, d) + delta;
    const double Q = e / hu;
    if (Q <= k) return 0.0;
    const double qz = std::sqrt(Q * Q - k * k);
    const double xe = d.hole_mass / (2 * mx) * k * env.a_B, xh = d.electron_mass / (2 * mx) * k * env.a_B;
    const double pe = env.M1 * env.M1 * env.c1 * std::sqrt(units::pi / 2) * std::exp(-qz * qz * env.c1 * env.c1 / 8);
    const double phh = env.M2 * env.M2 * env.c2 * std::sqrt(units::pi / 2) * std::exp(-qz * qz * env.c2 * env.c2 / 8);
    const double br = ph.a_e * std::pow(1 + xe * xe, -1.5) * pe - ph.a_h * std::pow(1 + xh * xh, -1.5) * phh;
    const double g2 = units::hbar * Q / (2 * ph.mass_density * ph.sound_velocity) * br * br;
    const double n = 1.0 / std::expm1(e / (units::k_boltzmann * ph.temperature));
    return 2 * units::pi * k * 2 * r0 * hopfield(k, d).exciton * g2 * n * Q / (hu * qz);
  };
  const int n = 200000;
  const double a = std::log(k_lo), b = std::log(k_hi), h = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double k = std::exp(a + i * h);
    s += (i == 0 || i == n ? 0.5 : 1.0) * integrand(k) * k;
  }
  return s * h / (4 * units::pi * units::pi * units::hbar) * units::ps_per_s;
}

}  // namespace

TEST_CASE("dispersion and Hopfield coefficients") {
  DispersionParams d;
  CHECK(lp_energy(0.0, d) == 0.0);
  CHECK(lp_absolute(0.0, d) == Approx(-1.0));
  CHECK(up_absolute(0.0, d) == Approx(1.0));
  const Hopfield h0 = hopfield(0.0, d);
  CHECK(h0.exciton == Approx(0.5));
  for (double k : {0.0, 0.005, 0.02, 0.1}) {
    const Hopfield h = hopfield(k, d);
    CHECK(h.exciton + h.photon == Approx(1.0));
    CHECK(lp_absolute(k, d) + up_absolute(k, d) == Approx(cavity_energy(k, d) + exciton_energy(k, d)));
  }
  // the LP becomes exciton-like at large k
  CHECK(hopfield(0.1, d).exciton > 0.99);
  d.cavity_detuning = 1.0;
  CHECK(hopfield(0.0, d).exciton > 0.5);
}

TEST_CASE("threshold momentum") {
  DispersionParams d;
  const double k0 = threshold_momentum(1.0, d);
  CHECK(k0 == Approx(threshold_momentum_analytic(1.0, d)).epsilon(1e-12));
  CHECK(k0 == Approx(0.0103329638325).epsilon(1e-10));
  CHECK(lp_energy(k0, d) == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(threshold_momentum(0.0, d), ValidationError);
  d.cavity_mass = 1e-4;
  CHECK(threshold_momentum(1.0, d) == Approx(threshold_momentum_analytic(1.0, d)).epsilon(1e-12));
}

TEST_CASE("form factors and matrix element") {
  CHECK(in_plane_form_factor(0.0, 0.5, 0.55, 10.0) == 1.0);
  CHECK(in_plane_form_factor(0.2, 0.495, 0.5516, 10.0) == Approx(std::pow(1 + std::pow(0.495 / 1.1032 * 2.0, 2), -1.5)));
  // qz -> 0 gives the integral of M^2 exp(-2 z^2/c^2)
  CHECK(perpendicular_form_factor(0.0, 0.5, 4.0) == Approx(0.25 * 4.0 * std::sqrt(units::pi / 2)));
  PhononParams ph;
  GaussianEnvelopes env;
  DispersionParams d;
  CHECK(deformation_matrix_element(0.02, 0.1, ph, d, env) == Approx(28.3981672024).epsilon(1e-10));
  PhononParams flat = ph;
  flat.a_e = 0.0;
  flat.a_h = 0.0;
  CHECK(deformation_matrix_element(0.02, 0.1, flat, d, env) == 0.0);
}

TEST_CASE("scattering rate") {
  PhononParams ph;
  GaussianEnvelopes env;
  DispersionParams d;
  const ScatteringResult r0 = phonon_absorption_rate(0.0, ph, env, d);
  const ScatteringResult r3 = phonon_absorption_rate(0.3, ph, env, d);

  SUBCASE("frozen values") {
    CHECK(r0.gamma_per_polariton == Approx(1191602.56235).epsilon(1e-8));
    CHECK(r3.gamma_per_polariton == Approx(84854.7440402).epsilon(1e-8));
  }
  SUBCASE("adaptive quadrature agrees with a brute-force sum") {
    CHECK(r0.gamma_per_polariton ==
          Approx(brute_force_rate(0.0, ph, env, d, r0.k_threshold, r0.k_max)).epsilon(1e-6));
    CHECK(r3.gamma_per_polariton ==
          Approx(brute_force_rate(0.3, ph, env, d, r3.k_threshold, r3.k_max)).epsilon(1e-6));
    CHECK(r0.error_estimate < 1e-3 * r0.gamma_per_polariton);
  }
  SUBCASE("energy conservation on the sampled roots") {
    REQUIRE(r0.samples.size() == 64);
    for (const auto& s : r0.samples) CHECK(std::abs(s.energy_residual) < 1e-10);
  }
  SUBCASE("red detuning suppresses the rate") {
    CHECK(r3.gamma_per_polariton < r0.gamma_per_polariton);
    CHECK(phonon_absorption_rate(0.6, ph, env, d).gamma_per_polariton < r3.gamma_per_polariton);
  }
  SUBCASE("temperature") {
    PhononParams cold = ph;
    cold.temperature = 0.0;
    CHECK(phonon_absorption_rate(0.0, cold, env, d).gamma_per_polariton == 0.0);
    cold.temperature = 0.5;
    const double g05 = phonon_absorption_rate(0.0, cold, env, d).gamma_per_polariton;
    cold.temperature = 4.0;
    const double g4 = phonon_absorption_rate(0.0, cold, env, d).gamma_per_polariton;
    CHECK(g05 < r0.gamma_per_polariton);
    CHECK(g4 > r0.gamma_per_polariton);
    CHECK(g4 == Approx(335339184.5).epsilon(1e-8));
  }
  SUBCASE("dark rate scales with the counts") {
    PhononRateOptions o;
    o.n_lp = 2000;
    o.n_up = 100;
    CHECK(phonon_absorption_rate(0.0, ph, env, d, o).gamma_dark_total == Approx(2100 * r0.gamma_per_polariton));
    CHECK(dark_rate_total(2.0, 3.0, 4.0) == 14.0);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(phonon_absorption_rate(1.5, ph, env, d), ValidationError);
    PhononParams bad = ph;
    bad.sound_velocity = 0.0;
    CHECK_THROWS_AS(phonon_absorption_rate(0.0, bad, env, d), ValidationError);
  }
}

TEST_CASE("polariton counts and density") {
  // gamma1 = gamma = 1 meV, t0^2 = 1/2, resonant drive
  CHECK(polariton_count(500.0, 0.0, 1.0, 1.0, 0.5) == Approx(658.2119569).epsilon(1e-9));
  CHECK(polariton_count(500.0, 0.5, 1.0, 1.0, 0.5) == Approx(329.10597845).epsilon(1e-9));
  CHECK(upper_polariton_count(2000.0, 0.0, 2.0, 1.0) == Approx(2000.0 * 0.25 / 4.25));
  CHECK_THROWS_AS(polariton_count(1.0, 0.0, 1.0, 0.5, 0.5), ValidationError);

  const DensityCheck dc = density_check(2000.0, 3600.0, 10.0);
  CHECK(dc.density_cm2 == Approx(4.9121896016e9).epsilon(1e-10));
  CHECK(dc.n_aB2 == Approx(0.0049121896016).epsilon(1e-10));
  CHECK(dc.pass);
  CHECK_FALSE(density_check(2e6, 3600.0, 10.0).pass);
}
