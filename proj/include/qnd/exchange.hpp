#pragma once

#include <cstdint>
#include <string>

#include "qnd/envelope.hpp"

namespace qnd {

/// Which z-overlap product multiplies the in-plane integral.
///   derived: I1^2 * int h(z)^2 dz. Both exchanged electron coordinates
///            overlap the dot, and the hole coordinate is integrated against itself.
///   printed: I1 * I2, the product written in the closed form of the reference derivation.
enum class ZFactorConvention { derived, printed };

struct ExchangeInputs {
  GaussianEnvelopes envelopes;
  /// Polariton quantization area [nm^2]; default pi (3.6 um)^2.
  double area_nm2 = 3.14159265358979323846 * 3600.0 * 3600.0;
  double epsilon_r = 13.2;
  /// Exciton fraction of the polariton.
  double hopfield_exciton_sq = 0.5;
  ZFactorConvention z_factor = ZFactorConvention::derived;

  void validate() const;
};

enum class ExchangeMethod { closed_form, monte_carlo };

struct ExchangeResult {
  double v_ex_ueV = 0.0;
  double lambda_nm = 0.0;
  double I1 = 0.0;  // nm^1/2
  double I2 = 0.0;  // nm^1/2
  double z_factor = 0.0;  // nm
  ExchangeMethod method = ExchangeMethod::closed_form;
  double stderr_ueV = 0.0;
  std::uint64_t samples = 0;
};

/// I = M * int exp(-z^2/c^2) exp(-(z - z0)^2/b^2) dz
///   = M sqrt(pi) sigma exp(-z0^2/(b^2 + c^2)),  1/sigma^2 = 1/c^2 + 1/b^2.
double z_overlap_integral(double M, double c, double b, double z0);

/// 1/lambda^2 = 1/(2 a^2) + 1/a_B^2
double exchange_lambda(double a, double a_B);

/// V_ex = |r0|^2 k_e / eps_r * N_m^2 Z pi^(5/2) a^2 lambda / A, with the
/// exciton relative-motion factor exp(-2t/a_B) replaced by exp(-2t^2/a_B^2).
ExchangeResult exchange_closed_form(const ExchangeInputs& in);

enum class ExchangeKernel { exponential, gaussian };

struct MonteCarloOptions {
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 20240607;
  /// Independent generator streams. Results depend on this and the seed,
  /// never on the worker count.
  unsigned streams = 64;
  ExchangeKernel kernel = ExchangeKernel::exponential;
  /// Multiplies the Coulomb kernel (0 switches the interaction off).
  double kernel_scale = 1.0;
  /// If > 0, a relative standard error above this raises ConvergenceError.
  double target_rel_stderr = 0.0;
};

/// Importance-sampled evaluation of the in-plane exchange integral over
/// (u, x, y), where u is the electron-pair midpoint, x = t + s and y = t - s
/// (t, s the electron-hole separations). u is drawn from its Gaussian weight,
/// |x| from r exp(-2r/a_B) and |y| from the exp(-y^2/(2a^2))/|y| factor, so
/// the Coulomb singularity is absorbed by the sampling density.
ExchangeResult exchange_monte_carlo(const ExchangeInputs& in, const MonteCarloOptions& options);

std::string to_string(ExchangeMethod m);
std::string to_string(ZFactorConvention c);

}  // namespace qnd
