#include "qnd/envelope.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "qnd/errors.hpp"
#include "qnd/units.hpp"

namespace qnd {

namespace {

struct Sample {
  double rho2, z, psi;
};

double model(const Eigen::Vector4d& p, const Sample& s) {
  const double dz = s.z - p[3];
  return p[0] * std::exp(-dz * dz / (p[2] * p[2]) - s.rho2 / (p[1] * p[1]));
}

double sum_sq(const Eigen::Vector4d& p, const std::vector<Sample>& samples) {
  double acc = 0.0;
  for (const Sample& s : samples) {
    const double r = s.psi - model(p, s);
    acc += r * r;
  }
  return acc;
}

}  // namespace

void GaussianEnvelopes::validate() const {
  for (double v : {N_m, a, b, a_B, c1, c2, M1, M2})
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("envelopes: widths and amplitudes must be positive");
  if (!std::isfinite(z0)) throw ValidationError("envelopes: z0 must be finite");
}

double GaussianEnvelopes::qd_norm() const noexcept {
  return N_m * N_m * std::pow(units::pi / 2.0, 1.5) * a * a * b;
}

EnvelopeFit fit_gaussian_envelope(const ScalarField3D& psi, double z_min, double z_max) {
  const GridSpec& g = psi.grid();
  std::vector<Sample> samples;
  double peak = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k) {
        const double z = g.coord(k);
        if (z < z_min || z > z_max) continue;
        const double x = g.coord(i), y = g.coord(j);
        const double v = psi.at(i, j, k);
        samples.push_back({x * x + y * y, z, v});
        peak = std::max(peak, v);
      }
  if (samples.empty() || !(peak > 0.0)) throw ValidationError("envelope fit: no positive amplitude in the fit region");

  // ln psi = c0 + c1 z + c2 z^2 + c3 rho^2, weighted by psi^2
  Eigen::Matrix4d ata = Eigen::Matrix4d::Zero();
  Eigen::Vector4d atb = Eigen::Vector4d::Zero();
  for (const Sample& s : samples) {
    if (s.psi <= 1e-3 * peak) continue;
    const Eigen::Vector4d row(1.0, s.z, s.z * s.z, s.rho2);
    const double w = s.psi * s.psi;
    ata += w * row * row.transpose();
    atb += w * std::log(s.psi) * row;
  }
  const Eigen::Vector4d c = ata.ldlt().solve(atb);
  if (!(c[2] < 0.0 && c[3] < 0.0) || !c.allFinite())
    throw ValidationError("envelope fit: samples do not decay like a Gaussian");

  Eigen::Vector4d p;
  p[2] = std::sqrt(-1.0 / c[2]);
  p[1] = std::sqrt(-1.0 / c[3]);
  p[3] = -0.5 * c[1] / c[2];
  p[0] = std::exp(c[0] - c[2] * p[3] * p[3]);

  double cost = sum_sq(p, samples);
  double lambda = 1e-3;
  int iter = 0;
  for (; iter < 200; ++iter) {
    Eigen::Matrix4d jtj = Eigen::Matrix4d::Zero();
    Eigen::Vector4d jtr = Eigen::Vector4d::Zero();
    for (const Sample& s : samples) {
      const double m = model(p, s);
      const double dz = s.z - p[3];
      const Eigen::Vector4d jac(m / p[0], m * 2.0 * s.rho2 / (p[1] * p[1] * p[1]),
                                m * 2.0 * dz * dz / (p[2] * p[2] * p[2]), m * 2.0 * dz / (p[2] * p[2]));
      jtj += jac * jac.transpose();
      jtr += jac * (s.psi - m);
    }
    bool improved = false;
    while (lambda < 1e12) {
      Eigen::Matrix4d a = jtj;
      a.diagonal() *= 1.0 + lambda;
      const Eigen::Vector4d step = a.ldlt().solve(jtr);
      const Eigen::Vector4d trial = p + step;
      const double trial_cost = trial[0] > 0 && trial[1] > 0 && trial[2] > 0 ? sum_sq(trial, samples)
                                                                           : cost * 2.0 + 1.0;
      if (trial_cost < cost) {
        const double rel = (cost - trial_cost) / std::max(cost, 1e-300);
        p = trial;
        cost = trial_cost;
        lambda = std::max(lambda * 0.3, 1e-12);
        improved = rel > 1e-14;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }

  EnvelopeFit fit;
  fit.N_m = p[0];
  fit.a = p[1];
  fit.b = p[2];
  fit.z0 = p[3];
  fit.samples = samples.size();
  fit.rms_residual = std::sqrt(cost / static_cast<double>(samples.size()));
  fit.iterations = iter;
  return fit;
}

ScalarField3D sample_qd_envelope(const GridSpec& grid, const GaussianEnvelopes& env) {
  ScalarField3D f(grid);
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j)
      for (int k = 0; k < grid.n; ++k) {
        const double x = grid.coord(i), y = grid.coord(j), dz = grid.coord(k) - env.z0;
        f.at(i, j, k) = env.N_m * std::exp(-dz * dz / (env.b * env.b) - (x * x + y * y) / (env.a * env.a));
      }
  return f;
}

GaussianEnvelopes with_fit(GaussianEnvelopes base, const EnvelopeFit& fit) {
  base.N_m = fit.N_m;
  base.a = fit.a;
  base.b = fit.b;
  base.z0 = fit.z0;
  return base;
}

}  // namespace qnd
