#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/distributions/normal.hpp>
#include <cmath>

#include "qnd/budget.hpp"
#include "qnd/errors.hpp"

using namespace qnd;
using doctest::Approx;

TEST_CASE("shot-noise worked example") {
  const double n1 = 1803312, n2 = 1796688;
  CHECK(shot_noise_sigma(n1, n2) == Approx(1897.3665961).epsilon(1e-10));
  CHECK(shot_noise_error(n1, n2) == Approx(0.000480937984939).epsilon(1e-10));
  // erfc(x/sqrt 2) = 2 (1 - Phi(x))
  const boost::math::normal_distribution<> unit;
  const double x = (n1 - n2) / shot_noise_sigma(n1, n2);
  CHECK(shot_noise_error(n1, n2) == Approx(2.0 * boost::math::cdf(boost::math::complement(unit, x))).epsilon(1e-12));
  CHECK(shot_noise_error(n2, n1) == shot_noise_error(n1, n2));
}

TEST_CASE("Skellam oracle") {
  CHECK(skellam_error(1803312, 1796688) == Approx(0.000480935543479).epsilon(1e-8));
  CHECK(std::abs(skellam_error(1803312, 1796688) / shot_noise_error(1803312, 1796688) - 1.0) < 0.05);
  // equal means: the two outcomes cannot be told apart
  CHECK(skellam_error(1000, 1000) == Approx(1.0).epsilon(1e-10));
  // a few counts: Gaussian and exact differ noticeably but both lie in (0, 1)
  const double exact = skellam_error(12, 4), gauss = shot_noise_error(12, 4);
  CHECK(exact > 0.0);
  CHECK(exact < 1.0);
  CHECK(std::abs(exact - gauss) > 1e-3);
}

TEST_CASE("measurement time") {
  CHECK(std::erfc(erfc_root(4e-4)) == Approx(4e-4).epsilon(1e-12));
  CHECK(erfc_root(4e-4) == Approx(2.5032172603873).epsilon(1e-12));
  const double tau = required_measurement_time(225.36, 224.64, 4e-4);
  CHECK(tau == Approx(10.878640022).epsilon(1e-9));
  // counts after tau reproduce the target error
  const double n1 = 225.36 * tau * 1e3, n2 = 224.64 * tau * 1e3;
  CHECK(shot_noise_error(n1, n2) == Approx(4e-4).epsilon(1e-9));
  CHECK_THROWS_AS(required_measurement_time(1.0, 1.0, 4e-4), ValidationError);
  CHECK_THROWS_AS(erfc_root(0.0), ValidationError);
}

TEST_CASE("detector fluxes") {
  ReflectionAmplitudes r;
  r.f_h = cplx(-1.0, 0.0);
  r.f_v = cplx(0.0, 0.0);
  const DetectionChain chain;
  const DetectorFluxes h = detector_fluxes(r, 1000.0, chain, Waveplate::half);
  CHECK(h.I_D1 == Approx(45.0));
  CHECK(h.I_D2 == Approx(45.0));
  r.f_v = cplx(0.0, 0.1);
  const DetectorFluxes q = detector_fluxes(r, 1000.0, chain, Waveplate::quarter);
  // |(-1 + i * 0.1 i)|^2/2 = 1.21/2, |(-1 - i * 0.1 i)|^2/2 = 0.81/2
  CHECK(q.I_D1 == Approx(90.0 * 1.21 / 2));
  CHECK(q.I_D2 == Approx(90.0 * 0.81 / 2));
  CHECK(waveplate_for(SignalKind::phase) == Waveplate::half);
  CHECK(waveplate_for(SignalKind::intensity) == Waveplate::quarter);
  DetectionChain bad;
  bad.bs_to_cavity = 1.5;
  CHECK_THROWS_AS(detector_fluxes(r, 1.0, bad, Waveplate::half), ValidationError);
}

TEST_CASE("table rows (frozen)") {
  const BudgetConfig cfg;
  const auto scenarios = table1_scenarios(0.15);
  REQUIRE(scenarios.size() == 8);
  CHECK(scenarios[0].cavity == CavityType::two_sided);
  CHECK(scenarios[5].cavity == CavityType::single_sided);
  CHECK(scenarios[5].kind == SignalKind::intensity);
  CHECK(scenarios[5].v_s == 0.0);

  const auto rows = build_table1(scenarios, cfg);
  const double tau[] = {57.2836212466, 25.4594019507, 47.9557967531, 19.7864157231,
                        7.16045781136, 0.0,           12.2057364466, 28.0765744365};
  const double total[] = {0.00071770671392, 0.00054120306566, 0.000665972685879, 0.000509739520352,
                          0.000889977275928, 0.0, 0.00123521663731, 0.00232122959484};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(i);
    CHECK(rows[i].measurable == (i != 5));
    if (!rows[i].measurable) continue;
    CHECK(rows[i].tau_meas == Approx(tau[i]).epsilon(1e-8));
    CHECK(rows[i].p_total == Approx(total[i]).epsilon(1e-8));
    CHECK(rows[i].p_total == Approx(rows[i].p_sn + rows[i].p_dark + rows[i].p_rad));
    CHECK(rows[i].p_sn == Approx(cfg.target_p_sn));
    CHECK(rows[i].I_D1 > rows[i].I_D2);
  }
}

TEST_CASE("scenario evaluation") {
  BudgetConfig cfg;
  Scenario s;
  s.cavity = CavityType::single_sided;
  s.kind = SignalKind::phase;
  const CavityConfig c = cavity_for(s, cfg);
  CHECK(c.gamma1 == 1.0);
  CHECK(c.gamma2 == 0.0);
  s.cavity = CavityType::two_sided;
  CHECK(cavity_for(s, cfg).gamma1 == 0.5);

  const BudgetReport a = evaluate_scenario(s, cfg);
  cfg.n_lp *= 2.0;
  const BudgetReport b = evaluate_scenario(s, cfg);
  // twice the drive halves the time for the same shot-noise target
  CHECK(b.tau_meas == Approx(0.5 * a.tau_meas).epsilon(1e-9));
  CHECK(b.laser_flux == Approx(2.0 * a.laser_flux).epsilon(1e-12));

  cfg = BudgetConfig{};
  cfg.target_p_sn = 2.0;
  CHECK_THROWS_AS(evaluate_scenario(s, cfg), ValidationError);
}
