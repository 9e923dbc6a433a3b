#include "qnd/budget.hpp"

#include <boost/math/distributions/poisson.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "qnd/errors.hpp"
#include "qnd/phonon.hpp"
#include "qnd/radiative.hpp"
#include "qnd/units.hpp"

namespace qnd {

namespace {

bool fraction(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void DetectionChain::validate() const {
  if (!fraction(bs_to_cavity) || !fraction(bs_to_detectors) || !fraction(detector_efficiency))
    throw ValidationError("detection chain: fractions must lie in [0, 1]");
}

Waveplate waveplate_for(SignalKind kind) noexcept {
  return kind == SignalKind::phase ? Waveplate::half : Waveplate::quarter;
}

DetectorFluxes detector_fluxes(const ReflectionAmplitudes& r, double laser_flux, const DetectionChain& chain,
                               Waveplate plate) {
  chain.validate();
  if (!(laser_flux >= 0.0)) throw ValidationError("detector_fluxes: flux must be non-negative");
  const cplx v = plate == Waveplate::half ? r.f_v : cplx(0.0, 1.0) * r.f_v;
  const double out = laser_flux * chain.bs_to_cavity * chain.bs_to_detectors * chain.detector_efficiency;
  return {out * 0.5 * std::norm(r.f_h + v), out * 0.5 * std::norm(r.f_h - v)};
}

double shot_noise_sigma(double n1, double n2) {
  if (!(n1 >= 0.0 && n2 >= 0.0)) throw ValidationError("shot noise: counts must be non-negative");
  if (!(n1 + n2 > 0.0)) throw ValidationError("shot noise: zero total counts");
  return std::sqrt(n1 + n2);
}

double shot_noise_error(double n1, double n2) {
  const double sigma = shot_noise_sigma(n1, n2);
  return boost::math::erfc(std::abs(n1 - n2) / (std::sqrt(2.0) * sigma));
}

double skellam_error(double n1, double n2) {
  shot_noise_sigma(n1, n2);
  if (n1 < n2) std::swap(n1, n2);
  if (n2 == 0.0) return 0.0;
  const boost::math::poisson_distribution<double> p1(n1), p2(n2);
  const double s2 = std::sqrt(n2);
  const long lo = std::max(0L, static_cast<long>(std::floor(n2 - 40.0 * s2)));
  const long hi = static_cast<long>(std::ceil(n2 + 40.0 * s2));
  double below = 0.0, tie = 0.0;
  for (long m = lo; m <= hi; ++m) {
    const double w = boost::math::pdf(p2, static_cast<double>(m));
    if (w == 0.0) continue;
    if (m > 0) below += w * boost::math::cdf(p1, static_cast<double>(m - 1));
    tie += w * boost::math::pdf(p1, static_cast<double>(m));
  }
  return 2.0 * (below + 0.5 * tie);
}

double erfc_root(double target_p) {
  if (!(target_p > 0.0 && target_p < 1.0)) throw ValidationError("erfc_root: target must lie in (0, 1)");
  double hi = 1.0;
  while (boost::math::erfc(hi) > target_p) hi *= 2.0;
  const auto [a, b] = boost::math::tools::bisect([&](double z) { return boost::math::erfc(z) - target_p; }, 0.0,
                                                 hi, boost::math::tools::eps_tolerance<double>(52));
  return 0.5 * (a + b);
}

double required_measurement_time(double I_D1, double I_D2, double target_p) {
  if (!(I_D1 >= 0.0 && I_D2 >= 0.0)) throw ValidationError("measurement time: fluxes must be non-negative");
  const double d = I_D1 - I_D2;
  if (d == 0.0) throw ValidationError("measurement time: zero signal contrast");
  const double z = erfc_root(target_p);
  return 2.0 * z * z * (I_D1 + I_D2) / (d * d) / units::ps_per_ns;
}

std::string to_string(CavityType t) { return t == CavityType::single_sided ? "single-sided" : "two-sided"; }

std::string Scenario::label() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s %s (V_s=%g meV)", to_string(cavity).c_str(), to_string(kind).c_str(), v_s);
  return buf;
}

std::vector<Scenario> table1_scenarios(double v_s) {
  std::vector<Scenario> out;
  for (CavityType c : {CavityType::two_sided, CavityType::single_sided})
    for (double vs : {0.0, v_s})
      for (SignalKind k : {SignalKind::phase, SignalKind::intensity}) out.push_back({c, k, vs});
  return out;
}

void BudgetConfig::validate() const {
  chain.validate();
  if (!(gamma > 0.0)) throw ValidationError("budget: gamma must be positive");
  if (!(v_ex >= 0.0)) throw ValidationError("budget: v_ex must be non-negative");
  if (!(target_p_sn > 0.0 && target_p_sn < 1.0)) throw ValidationError("budget: target must lie in (0, 1)");
  if (!(n_lp > 0.0)) throw ValidationError("budget: polariton count must be positive");
  if (!(t0_sq > 0.0 && t0_sq <= 1.0)) throw ValidationError("budget: t0^2 must lie in (0, 1]");
  if (!(drive_calibration > 0.0)) throw ValidationError("budget: drive calibration must be positive");
  if (!(tau0_s > 0.0)) throw ValidationError("budget: tau0 must be positive");
  if (!(gamma_dark_single >= 0.0 && gamma_dark_two >= 0.0)) throw ValidationError("budget: dark rates must be non-negative");
  if (!(chain.bs_to_cavity > 0.0 && chain.bs_to_detectors * chain.detector_efficiency > 0.0))
    throw ValidationError("budget: detection chain passes no light");
}

CavityConfig cavity_for(const Scenario& s, const BudgetConfig& cfg) {
  CavityConfig c;
  c.gamma1 = s.cavity == CavityType::two_sided ? 0.5 * cfg.gamma : cfg.gamma;
  c.gamma2 = cfg.gamma - c.gamma1;
  c.v_s = s.v_s;
  c.v_ex = cfg.v_ex;
  c.spin = Spin::up;
  return c;
}

BudgetReport evaluate_scenario(const Scenario& s, const BudgetConfig& cfg) {
  cfg.validate();
  BudgetReport rep;
  rep.scenario = s;
  const CavityConfig cav = cavity_for(s, cfg);
  const OptimalDetuning opt = optimal_detuning(cav, s.kind);
  rep.operating_delta = opt.delta;
  if (opt.flat) return rep;

  const double per_unit_flux = polariton_count(1.0, opt.delta, cav.gamma1, cav.gamma(), cfg.t0_sq);
  rep.cavity_flux = cfg.n_lp / (cfg.drive_calibration * per_unit_flux);
  rep.laser_flux = rep.cavity_flux / cfg.chain.bs_to_cavity;

  const Waveplate plate = waveplate_for(s.kind);
  const DetectorFluxes up = detector_fluxes(steady_state_response(cav, opt.delta), rep.laser_flux, cfg.chain, plate);
  CavityConfig cav_down = cav;
  cav_down.spin = Spin::down;
  const DetectorFluxes down =
      detector_fluxes(steady_state_response(cav_down, opt.delta), rep.laser_flux, cfg.chain, plate);
  rep.I_D1 = up.I_D1;
  rep.I_D2 = up.I_D2;
  rep.contrast_flux = 0.5 * ((up.I_D1 - up.I_D2) - (down.I_D1 - down.I_D2));
  rep.tau_meas = required_measurement_time(up.I_D1, up.I_D2, cfg.target_p_sn);
  rep.measurable = true;

  const double gamma_dark = s.cavity == CavityType::single_sided ? cfg.gamma_dark_single : cfg.gamma_dark_two;
  rep.p_sn = cfg.target_p_sn;
  rep.p_dark = gamma_dark * rep.tau_meas * 1e-9;
  rep.p_rad = p_rad_linear(cfg.n_lp, rep.tau_meas, cfg.tau0_s);
  rep.p_total = rep.p_sn + rep.p_dark + rep.p_rad;
  return rep;
}

std::vector<BudgetReport> build_table1(const std::vector<Scenario>& scenarios, const BudgetConfig& cfg) {
  std::vector<BudgetReport> out;
  out.reserve(scenarios.size());
  for (const Scenario& s : scenarios) out.push_back(evaluate_scenario(s, cfg));
  return out;
}

}  // namespace qnd
