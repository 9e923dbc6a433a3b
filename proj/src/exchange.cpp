#include "qnd/exchange.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "qnd/errors.hpp"
#include "qnd/parallel.hpp"
#include "qnd/units.hpp"

namespace qnd {

namespace {

using units::pi;

double z_factor(const ExchangeInputs& in, double I1, double I2) {
  const GaussianEnvelopes& e = in.envelopes;
  if (in.z_factor == ZFactorConvention::printed) return I1 * I2;
  const double hole_norm = e.M2 * e.M2 * e.c2 * std::sqrt(pi / 2.0);
  return I1 * I1 * hole_norm;
}

// |r0|^2 k_e / eps_r * N_m^2 Z * (8 / (pi a_B^2)) / A: everything in front of
// the in-plane integral over (rho_e, t, s).
double in_plane_prefactor(const ExchangeInputs& in, double z) {
  const GaussianEnvelopes& e = in.envelopes;
  return in.hopfield_exciton_sq * units::coulomb_constant / in.epsilon_r * e.N_m * e.N_m * z * 8.0 /
         (pi * e.a_B * e.a_B * in.area_nm2);
}

struct StreamSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
};

}  // namespace

void ExchangeInputs::validate() const {
  envelopes.validate();
  if (!(area_nm2 > 0.0)) throw ValidationError("exchange: area must be positive");
  if (!(epsilon_r > 0.0)) throw ValidationError("exchange: dielectric constant must be positive");
  if (!(hopfield_exciton_sq >= 0.0 && hopfield_exciton_sq <= 1.0))
    throw ValidationError("exchange: |r0|^2 must lie in [0, 1]");
}

double z_overlap_integral(double M, double c, double b, double z0) {
  if (!(c > 0.0 && b > 0.0)) throw ValidationError("z_overlap_integral: widths must be positive");
  const double sigma = 1.0 / std::sqrt(1.0 / (c * c) + 1.0 / (b * b));
  return M * std::sqrt(pi) * sigma * std::exp(-z0 * z0 / (b * b + c * c));
}

double exchange_lambda(double a, double a_B) {
  return 1.0 / std::sqrt(1.0 / (2.0 * a * a) + 1.0 / (a_B * a_B));
}

ExchangeResult exchange_closed_form(const ExchangeInputs& in) {
  in.validate();
  const GaussianEnvelopes& e = in.envelopes;
  ExchangeResult r;
  r.I1 = z_overlap_integral(e.M1, e.c1, e.b, e.z0);
  r.I2 = z_overlap_integral(e.M2, e.c2, e.b, e.z0);
  r.z_factor = z_factor(in, r.I1, r.I2);
  r.lambda_nm = exchange_lambda(e.a, e.a_B);
  const double v_meV = in.hopfield_exciton_sq * units::coulomb_constant / in.epsilon_r * e.N_m * e.N_m *
                       r.z_factor * std::pow(pi, 2.5) * e.a * e.a * r.lambda_nm / in.area_nm2;
  r.v_ex_ueV = v_meV * units::ueV_per_meV;
  r.method = ExchangeMethod::closed_form;
  return r;
}

ExchangeResult exchange_monte_carlo(const ExchangeInputs& in, const MonteCarloOptions& opt) {
  in.validate();
  if (opt.streams == 0) throw ValidationError("exchange MC: need at least one stream");
  if (opt.samples < 2ULL * opt.streams) throw ValidationError("exchange MC: fewer than two samples per stream");
  const GaussianEnvelopes& e = in.envelopes;
  const double a = e.a;
  const double aB = e.a_B;
  const double c = std::sqrt(2.0) * a;

  // Normalizations of the sampling densities over the plane.
  const double norm_u = pi * a * a / 2.0;            // exp(-2u^2/a^2)
  const double norm_x = pi * aB * aB / 2.0;          // exp(-2|x|/a_B)
  const double norm_y = std::pow(pi, 1.5) * c;       // exp(-y^2/c^2)/|y|
  // d^2t d^2s = d^2x d^2y / 4, and the u integrand exp(-2u^2/a^2) is its own density.
  const double jacobian = 0.25;

  std::vector<StreamSums> sums(opt.streams);
  parallel_for(0, opt.streams, [&](std::size_t b, std::size_t end) {
    for (std::size_t st = b; st < end; ++st) {
      std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                        static_cast<std::uint32_t>(st), 0x51ed2701u};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> u_coord(0.0, a / 2.0);
      std::gamma_distribution<double> x_radius(2.0, aB / 2.0);
      std::normal_distribution<double> y_radius(0.0, c / std::sqrt(2.0));
      std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);

      const std::uint64_t count = opt.samples / opt.streams + (st < opt.samples % opt.streams ? 1 : 0);
      StreamSums s;
      for (std::uint64_t n = 0; n < count; ++n) {
        // u is distributed exactly as its weight, so it leaves w unchanged
        (void)u_coord(rng);
        (void)u_coord(rng);
        const double rx = x_radius(rng);
        const double px = angle(rng);
        const double ry = std::abs(y_radius(rng));
        const double py = angle(rng);
        const double x1 = rx * std::cos(px), x2 = rx * std::sin(px);
        const double y1 = ry * std::cos(py), y2 = ry * std::sin(py);
        double w;
        if (opt.kernel == ExchangeKernel::exponential) {
          const double t = 0.5 * std::hypot(x1 + y1, x2 + y2);
          const double s_len = 0.5 * std::hypot(x1 - y1, x2 - y2);
          w = std::exp(-2.0 * (t + s_len) / aB + 2.0 * rx / aB);
        } else {
          w = std::exp(-(rx * rx + ry * ry) / (aB * aB) + 2.0 * rx / aB);
        }
        w *= opt.kernel_scale;
        s.sum += w;
        s.sum_sq += w * w;
      }
      s.count = count;
      sums[st] = s;
    }
  });

  double sum = 0.0, sum_sq = 0.0;
  std::uint64_t total = 0;
  for (const StreamSums& s : sums) {
    sum += s.sum;
    sum_sq += s.sum_sq;
    total += s.count;
  }
  const double mean = sum / static_cast<double>(total);
  const double var = std::max(0.0, sum_sq / static_cast<double>(total) - mean * mean);
  const double se = std::sqrt(var / static_cast<double>(total));

  ExchangeResult r;
  r.I1 = z_overlap_integral(e.M1, e.c1, e.b, e.z0);
  r.I2 = z_overlap_integral(e.M2, e.c2, e.b, e.z0);
  r.z_factor = z_factor(in, r.I1, r.I2);
  r.lambda_nm = exchange_lambda(a, aB);
  const double scale = in_plane_prefactor(in, r.z_factor) * jacobian * norm_u * norm_x * norm_y *
                       units::ueV_per_meV;
  r.v_ex_ueV = scale * mean;
  r.stderr_ueV = scale * se;
  r.method = ExchangeMethod::monte_carlo;
  r.samples = total;

  if (opt.target_rel_stderr > 0.0 && !(r.stderr_ueV <= opt.target_rel_stderr * std::abs(r.v_ex_ueV)))
    throw ConvergenceError("exchange MC: sample budget too small for the requested standard error",
                           static_cast<int>(std::min<std::uint64_t>(total, 2147483647ULL)),
                           {r.stderr_ueV / std::max(std::abs(r.v_ex_ueV), 1e-300)});
  return r;
}

std::string to_string(ExchangeMethod m) {
  return m == ExchangeMethod::closed_form ? "closed_form" : "monte_carlo";
}

std::string to_string(ZFactorConvention c) {
  return c == ZFactorConvention::derived ? "derived" : "printed";
}

}  // namespace qnd
