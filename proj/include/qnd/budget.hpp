#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnd/cavity.hpp"

namespace qnd {

enum class Waveplate { half, quarter };

/// One 90:10 splitter traversed twice, a waveplate, a PBS and two counters.
struct DetectionChain {
  double bs_to_cavity = 0.10;
  double bs_to_detectors = 0.90;
  double detector_efficiency = 1.0;

  void validate() const;
};

/// Waveplate that turns the given response into a count imbalance.
Waveplate waveplate_for(SignalKind kind) noexcept;

struct DetectorFluxes {
  double I_D1 = 0.0;  // ps^-1
  double I_D2 = 0.0;  // ps^-1
};

/// half: (f_H +- f_V)/sqrt(2); quarter: (f_H +- i f_V)/sqrt(2).
DetectorFluxes detector_fluxes(const ReflectionAmplitudes& r, double laser_flux, const DetectionChain& chain,
                               Waveplate plate);

/// erfc(|n1 - n2| / (sqrt(2) sigma)), sigma = sqrt(n1 + n2).
double shot_noise_error(double n1, double n2);
double shot_noise_sigma(double n1, double n2);
/// The same error mass from the exact Poisson difference:
/// 2 [P(K < 0) + P(K = 0)/2] for K = N1 - N2, N_i ~ Poisson(n_i), n1 >= n2.
double skellam_error(double n1, double n2);

/// Solves erfc(z) = target by bisection and returns
/// tau = 2 z^2 (I1 + I2) / (I1 - I2)^2 in ns.
double required_measurement_time(double I_D1, double I_D2, double target_p);
/// z with erfc(z) = target.
double erfc_root(double target_p);

enum class CavityType { single_sided, two_sided };
std::string to_string(CavityType t);

struct Scenario {
  CavityType cavity = CavityType::two_sided;
  SignalKind kind = SignalKind::phase;
  double v_s = 0.0;  // meV

  std::string label() const;
};

/// The eight rows of the table in print order: two-sided first, then
/// single-sided; phase, intensity at V_s = 0, then at V_s = 0.15 meV.
std::vector<Scenario> table1_scenarios(double v_s = 0.15);

struct BudgetConfig {
  double gamma = 1.0;       // meV, gamma1 + gamma2
  double v_ex = 0.2e-3;     // meV
  double target_p_sn = 4e-4;
  double n_lp = 2000.0;
  double t0_sq = 0.5;
  /// Divides the cavity flux that sustains n_lp polaritons.
  double drive_calibration = 2.0;
  double tau0_s = 0.39;
  double gamma_dark_single = 63300.0;  // s^-1, all excited polaritons
  double gamma_dark_two = 418.0;       // s^-1
  DetectionChain chain;

  void validate() const;
};

struct BudgetReport {
  Scenario scenario;
  bool measurable = false;
  double operating_delta = 0.0;  // meV
  double laser_flux = 0.0;       // ps^-1
  double cavity_flux = 0.0;      // ps^-1
  double I_D1 = 0.0, I_D2 = 0.0;  // ps^-1, spin up
  /// Mean count-rate difference between the spin states, halved [ps^-1].
  double contrast_flux = 0.0;
  double tau_meas = 0.0;  // ns
  double p_sn = 0.0, p_dark = 0.0, p_rad = 0.0, p_total = 0.0;
};

CavityConfig cavity_for(const Scenario& s, const BudgetConfig& cfg);

/// Operating point, drive, fluxes, measurement time and error budget.
BudgetReport evaluate_scenario(const Scenario& s, const BudgetConfig& cfg);
std::vector<BudgetReport> build_table1(const std::vector<Scenario>& scenarios, const BudgetConfig& cfg);

}  // namespace qnd
