#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qnd/cavity_design.hpp"
#include "qnd/errors.hpp"
#include "qnd/units.hpp"

using namespace qnd;
using doctest::Approx;

TEST_CASE("decay rates") {
  MirrorParams m;
  const DecayRates d = decay_rates(m);
  // L n / (c (1 - r)) = 100 * 3.6 / (299792.458 * 0.001) ps
  CHECK(d.tau1_ps == Approx(360.0 / 299.792458).epsilon(1e-12));
  CHECK(d.tau1_ps == d.tau2_ps);
  CHECK(d.gamma1 == Approx(units::hbar / d.tau1_ps).epsilon(1e-14));
  CHECK(d.gamma1 == Approx(0.548130501233).epsilon(1e-11));

  m.r2 = 0.9999;
  const DecayRates high = decay_rates(m);
  CHECK(high.gamma2 == Approx(0.1 * d.gamma2).epsilon(1e-9));
  m.length_nm = 200.0;
  CHECK(decay_rates(m).gamma1 == Approx(0.5 * d.gamma1));
}

TEST_CASE("spot radius") {
  MirrorParams m;
  const double r1r2 = 0.999 * 0.999;
  CHECK(spot_radius(m) == Approx(std::sqrt(918.0 * 100.0 / (units::pi * (1.0 - r1r2)))).epsilon(1e-14));
  CHECK(spot_radius(m) == Approx(3823.31435304).epsilon(1e-11));
}

TEST_CASE("validity") {
  MirrorParams m;
  m.r1 = 0.5;
  CHECK_THROWS_AS(decay_rates(m), ValidationError);
  m = MirrorParams{};
  m.r2 = 1.0;  // perfect back mirror: single-sided cavity
  CHECK(decay_rates(m).gamma2 == 0.0);
  m.r2 = 1.01;
  CHECK_THROWS_AS(decay_rates(m), ValidationError);
  m = MirrorParams{};
  m.length_nm = -1.0;
  CHECK_THROWS_AS(spot_radius(m), ValidationError);
  m = MirrorParams{};
  m.validity_threshold = 0.4;
  m.r1 = 0.5;
  CHECK_NOTHROW(decay_rates(m));
}
