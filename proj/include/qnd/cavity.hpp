#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace qnd {

using cplx = std::complex<double>;

enum class Spin { up, down };  // s_ze = +1/2, -1/2

inline int spin_sign(Spin s) noexcept { return s == Spin::up ? 1 : -1; }
inline Spin flipped(Spin s) noexcept { return s == Spin::up ? Spin::down : Spin::up; }

/// Two polarization modes of the k = 0 lower polariton, driven through the
/// top mirror. Energies in meV; delta > 0 puts the probe above the bare LP.
struct CavityConfig {
  double gamma1 = 0.5;  // top-mirror decay
  double gamma2 = 0.5;  // bottom-mirror decay
  double v_s = 0.0;     // half the H-V splitting
  double v_ex = 0.2e-3; // exchange energy
  Spin spin = Spin::up;

  double gamma() const noexcept { return gamma1 + gamma2; }
  /// gamma1 > 0, gamma2 >= 0, v_ex >= 0, finite v_s.
  void validate() const;
};

/// Reflected field amplitudes for a unit H-polarized input.
///   f_plus  = (f_H + i f_V) / sqrt(2),  f_minus = (f_H - i f_V) / sqrt(2)
/// a_plus, a_minus are the intracavity J = +1, -1 amplitudes per unit input
/// amplitude, in units of sqrt(ps).
struct ReflectionAmplitudes {
  cplx f_h, f_v, f_plus, f_minus;
  double theta_plus = 0.0, theta_minus = 0.0;
  cplx a_plus, a_minus;
};

/// Steady state of
///   da/dt = -M a + sqrt(gamma1) f_in,  f_out = -f_in + sqrt(gamma1) a,
/// in the circular basis (J = +1, -1) with rates in rad/ps and
///   M = i/hbar [[delta - s V_ex, -V_s], [-V_s, delta + s V_ex]] + gamma/(2 hbar),
/// for the H drive f_in = (1, 1)/sqrt(2). With V_ex = 0 the H mode lies 2 V_s above V.
ReflectionAmplitudes steady_state_response(const CavityConfig& config, double delta);

/// Circular amplitudes from the decoupled single-mode forms, valid for V_s = 0:
///   f_pm = (-1 + gamma1 / (i (delta -+ s V_ex) + gamma/2)) / sqrt(2).
std::array<cplx, 2> closed_form_circular(const CavityConfig& config, double delta);

/// Symmetric two-sided cavity, V_s = 0: |f_pm| = |delta -+ s V_ex| / sqrt(2 ((delta -+ s V_ex)^2 + gamma^2/4)).
std::array<double, 2> closed_form_two_sided_moduli(const CavityConfig& config, double delta);

/// |f_H + f_V|^2/2 - |f_H - f_V|^2/2 (half-wave plate detection).
double phase_signal(const ReflectionAmplitudes& r);
/// 2 |f_+| |f_-| sin(theta_+ - theta_-), the same quantity in polar form.
double phase_signal_polar(const ReflectionAmplitudes& r);
/// |f_H + i f_V|^2/2 - |f_H - i f_V|^2/2 (quarter-wave plate detection).
double intensity_signal(const ReflectionAmplitudes& r);
/// |f_+|^2 - |f_-|^2
double intensity_signal_circular(const ReflectionAmplitudes& r);

enum class SignalKind { phase, intensity };
std::string to_string(SignalKind k);

double signal(const CavityConfig& config, double delta, SignalKind kind);
/// Half the difference between the spin-up and spin-down signals; equals the
/// spin-up signal whenever the response is odd under spin flip (V_s = 0).
double spin_contrast(const CavityConfig& config, double delta, SignalKind kind);

struct DressedModes {
  bool defined = false;  // false when V_s = V_ex = 0
  double kappa = 0.0;    // s V_ex / sqrt(V_s^2 + V_ex^2)
  /// Mode energies relative to the bare LP (real) and -gamma/2 (imag), lower first.
  std::array<cplx, 2> eigen_detunings{};
  double splitting = 0.0;
  /// J = +1 weight of the lower and upper dressed modes, (1 - kappa)/2 and (1 + kappa)/2.
  double lower_plus_fraction = 0.0;
  double upper_plus_fraction = 0.0;
};

/// Eigenmodes of the Hermitian part of the mode matrix.
DressedModes dressed_modes(const CavityConfig& config);

struct ResponseCurve {
  std::vector<double> delta;
  std::vector<double> phase_up, phase_down, intensity_up, intensity_down;
  CavityConfig config;
};

/// Both signals for both spin states at n_points evenly spaced detunings.
ResponseCurve sweep(const CavityConfig& config, double delta_min, double delta_max, int n_points);

struct OptimalDetuning {
  double delta = 0.0;
  double value = 0.0;  // signal at delta
  bool flat = false;   // no usable signal anywhere in the scan
};

/// Maximizes |signal| for config.spin over a scan of +-(3 gamma + 2 |V_s|) refined by
/// Brent's method. Ties go to the smaller |delta|, then positive delta.
OptimalDetuning optimal_detuning(const CavityConfig& config, SignalKind kind);

}  // namespace qnd
