#include "qnd/cavity.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>

#include "qnd/errors.hpp"
#include "qnd/parallel.hpp"
#include "qnd/units.hpp"

namespace qnd {

namespace {

constexpr cplx I{0.0, 1.0};
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

void CavityConfig::validate() const {
  if (!(gamma1 > 0.0)) throw ValidationError("cavity: gamma1 must be positive");
  if (!(gamma2 >= 0.0)) throw ValidationError("cavity: gamma2 must be non-negative");
  if (!(v_ex >= 0.0)) throw ValidationError("cavity: v_ex must be non-negative");
  if (!std::isfinite(v_s) || !std::isfinite(gamma1 + gamma2 + v_ex))
    throw ValidationError("cavity: parameters must be finite");
}

ReflectionAmplitudes steady_state_response(const CavityConfig& c, double delta) {
  c.validate();
  const double s = spin_sign(c.spin);
  const double hb = units::hbar;
  const double g1 = c.gamma1 / hb;
  const double half_g = 0.5 * c.gamma() / hb;

  const cplx m11 = I * (delta - s * c.v_ex) / hb + half_g;
  const cplx m22 = I * (delta + s * c.v_ex) / hb + half_g;
  const cplx m12 = -I * c.v_s / hb;
  const cplx det = m11 * m22 - m12 * m12;

  const cplx drive = std::sqrt(g1) * inv_sqrt2;
  // a = M^-1 sqrt(gamma1) f_in
  const cplx a_p = (m22 * drive - m12 * drive) / det;
  const cplx a_m = (m11 * drive - m12 * drive) / det;

  ReflectionAmplitudes r;
  r.a_plus = a_p;
  r.a_minus = a_m;
  r.f_plus = -inv_sqrt2 + std::sqrt(g1) * a_p;
  r.f_minus = -inv_sqrt2 + std::sqrt(g1) * a_m;
  r.f_h = (r.f_plus + r.f_minus) * inv_sqrt2;
  r.f_v = (r.f_plus - r.f_minus) * inv_sqrt2 / I;
  r.theta_plus = std::arg(r.f_plus);
  r.theta_minus = std::arg(r.f_minus);
  return r;
}

std::array<cplx, 2> closed_form_circular(const CavityConfig& c, double delta) {
  c.validate();
  const double s = spin_sign(c.spin);
  const double hg = 0.5 * c.gamma();
  return {(-1.0 + c.gamma1 / (I * (delta - s * c.v_ex) + hg)) * inv_sqrt2,
          (-1.0 + c.gamma1 / (I * (delta + s * c.v_ex) + hg)) * inv_sqrt2};
}

std::array<double, 2> closed_form_two_sided_moduli(const CavityConfig& c, double delta) {
  c.validate();
  const double s = spin_sign(c.spin);
  const double q = c.gamma() * c.gamma() / 4.0;
  const double dp = delta - s * c.v_ex;
  const double dm = delta + s * c.v_ex;
  return {std::abs(dp) / std::sqrt(2.0 * (dp * dp + q)), std::abs(dm) / std::sqrt(2.0 * (dm * dm + q))};
}

double phase_signal(const ReflectionAmplitudes& r) {
  return 0.5 * std::norm(r.f_h + r.f_v) - 0.5 * std::norm(r.f_h - r.f_v);
}

double phase_signal_polar(const ReflectionAmplitudes& r) {
  return 2.0 * std::abs(r.f_plus) * std::abs(r.f_minus) * std::sin(r.theta_plus - r.theta_minus);
}

double intensity_signal(const ReflectionAmplitudes& r) {
  return 0.5 * std::norm(r.f_h + I * r.f_v) - 0.5 * std::norm(r.f_h - I * r.f_v);
}

double intensity_signal_circular(const ReflectionAmplitudes& r) {
  return std::norm(r.f_plus) - std::norm(r.f_minus);
}

std::string to_string(SignalKind k) { return k == SignalKind::phase ? "phase" : "intensity"; }

double signal(const CavityConfig& config, double delta, SignalKind kind) {
  const ReflectionAmplitudes r = steady_state_response(config, delta);
  return kind == SignalKind::phase ? phase_signal(r) : intensity_signal(r);
}

double spin_contrast(const CavityConfig& config, double delta, SignalKind kind) {
  CavityConfig up = config, down = config;
  up.spin = Spin::up;
  down.spin = Spin::down;
  return 0.5 * (signal(up, delta, kind) - signal(down, delta, kind));
}

DressedModes dressed_modes(const CavityConfig& c) {
  c.validate();
  DressedModes d;
  const double root = std::hypot(c.v_s, c.v_ex);
  const double hg = 0.5 * c.gamma();
  d.eigen_detunings = {cplx(-root, -hg), cplx(root, -hg)};
  d.splitting = 2.0 * root;
  if (root == 0.0) return d;
  d.defined = true;
  d.kappa = spin_sign(c.spin) * c.v_ex / root;
  d.lower_plus_fraction = 0.5 * (1.0 - d.kappa);
  d.upper_plus_fraction = 0.5 * (1.0 + d.kappa);
  return d;
}

ResponseCurve sweep(const CavityConfig& config, double delta_min, double delta_max, int n_points) {
  config.validate();
  if (n_points < 2) throw ValidationError("sweep: need at least two points");
  if (!(delta_max > delta_min)) throw ValidationError("sweep: empty detuning range");
  ResponseCurve out;
  out.config = config;
  const std::size_t n = static_cast<std::size_t>(n_points);
  out.delta.resize(n);
  out.phase_up.resize(n);
  out.phase_down.resize(n);
  out.intensity_up.resize(n);
  out.intensity_down.resize(n);
  CavityConfig up = config, down = config;
  up.spin = Spin::up;
  down.spin = Spin::down;
  parallel_for(0, n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const double d = delta_min + (delta_max - delta_min) * static_cast<double>(i) / (n - 1);
      const ReflectionAmplitudes ru = steady_state_response(up, d);
      const ReflectionAmplitudes rd = steady_state_response(down, d);
      out.delta[i] = d;
      out.phase_up[i] = phase_signal(ru);
      out.phase_down[i] = phase_signal(rd);
      out.intensity_up[i] = intensity_signal(ru);
      out.intensity_down[i] = intensity_signal(rd);
    }
  }, 256);
  return out;
}

OptimalDetuning optimal_detuning(const CavityConfig& config, SignalKind kind) {
  config.validate();
  const double span = 3.0 * config.gamma() + 2.0 * std::abs(config.v_s);
  const int n = 4001;
  const double step = 2.0 * span / (n - 1);
  auto objective = [&](double d) { return std::abs(signal(config, d, kind)); };

  int best = -1;
  double best_val = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = -span + step * i;
    const double v = objective(d);
    const bool better = v > best_val * (1.0 + 1e-12);
    const bool tie = !better && v >= best_val * (1.0 - 1e-12);
    const double bd = best < 0 ? 0.0 : -span + step * best;
    if (better || (tie && (std::abs(d) < std::abs(bd) || (std::abs(d) == std::abs(bd) && d > bd)))) {
      best = i;
      best_val = std::max(v, best_val);
    }
  }

  OptimalDetuning out;
  if (!(best_val > 1e-14)) {
    out.flat = true;
    out.delta = 0.0;
    out.value = signal(config, 0.0, kind);
    return out;
  }
  const double lo = -span + step * std::max(best - 1, 0);
  const double hi = -span + step * std::min(best + 1, n - 1);
  const auto [arg, neg] = boost::math::tools::brent_find_minima(
      [&](double d) { return -objective(d); }, lo, hi, 50);
  const double d_grid = -span + step * best;
  out.delta = -neg >= best_val ? arg : d_grid;
  out.value = signal(config, out.delta, kind);
  return out;
}

}  // namespace qnd
