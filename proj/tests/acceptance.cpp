// Acceptance report: one PASS/FAIL line per criterion, details indented below.
// Exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "dense_oracle.hpp"
#include "qnd/budget.hpp"
#include "qnd/cavity.hpp"
#include "qnd/config.hpp"
#include "qnd/envelope.hpp"
#include "qnd/exchange.hpp"
#include "qnd/lanczos.hpp"
#include "qnd/phonon.hpp"
#include "qnd/pipeline.hpp"

using namespace qnd;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool within_rel(double x, double ref, double tol) { return std::abs(x - ref) <= tol * std::abs(ref); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    notes.push_back(std::string(ok ? "ok   " : "MISS ") + buf);
    pass = pass && ok;
  }
};

Outcome eigensolver_oracle() {
  Outcome o;
  double lanczos_s = 0.0, dense_s = 0.0, worst = 0.0;
  int grids = 0;
  for (int n = 3; n <= 17; n += 2) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      const GridSpec g{n, 0.8};
      const auto s = testing::random_smooth_structure(g, 1000 * seed + n);
      const Hamiltonian h(s.potential, s.mass);
      LanczosOptions opt;
      opt.num_eigenpairs = 5;
      opt.tolerance = 1e-7;
      opt.max_iterations = 20000;
      auto t0 = Clock::now();
      const LanczosResult r = lanczos_lowest(h.as_operator(), opt);
      lanczos_s += seconds_since(t0);
      t0 = Clock::now();
      const auto ref = testing::dense_lowest(h, 5);
      dense_s += seconds_since(t0);
      for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(r.eigenvalues[i] - ref[i]) / std::abs(ref[i]));
      ++grids;
    }
  }
  o.require(worst <= 1e-8, "%d grids, N = 3..17: worst relative deviation %.2e (limit 1e-8)", grids, worst);
  o.require(lanczos_s < 10.0, "Lanczos time %.2f s (limit 10 s); dense LAPACK oracle %.2f s not counted", lanczos_s,
            dense_s);
  return o;
}

struct DeskSolve {
  EigenSolution sol;
  double seconds = 0.0;
};

Outcome qdqw_spectrum(const DeskSolve& d) {
  Outcome o;
  const double e0 = d.sol.energies[0], gap = d.sol.energies[1] - d.sol.energies[0];
  o.require(within_rel(gap, 28.6, 0.15), "E1 - E0 = %.2f meV (target 28.6 +- 15%%)", gap);
  o.require(within_rel(e0, 161.2, 0.15), "E0 = %.2f meV (target 161.2 +- 15%%)", e0);
  o.require(d.seconds < 600.0, "N = 101 solve %.0f s (limit 600 s)", d.seconds);
  return o;
}

Outcome envelope_fit(const RunConfig& cfg, const DeskSolve& d) {
  Outcome o;
  const EnvelopeFit f = fit_ground_state(cfg, d.sol);
  o.require(within_rel(f.a, 12.0, 0.15), "solved a = %.3f nm (12 +- 15%%)", f.a);
  o.require(within_rel(f.b, 4.7, 0.15), "solved b = %.3f nm (4.7 +- 15%%)", f.b);
  o.require(within_rel(f.z0, 2.0, 0.15), "solved z0 = %.3f nm (2 +- 15%%)", f.z0);
  const EnvelopeFit s = fit_gaussian_envelope(sample_qd_envelope(GridSpec{61, 1.0}, GaussianEnvelopes{}), -3.0, 3.0);
  const double dev = std::max({std::abs(s.a / 12.0 - 1), std::abs(s.b / 4.7 - 1), std::abs(s.z0 / 2.0 - 1)});
  o.require(dev < 1e-6, "synthetic Gaussian recovered to %.1e relative", dev);
  return o;
}

Outcome exchange_energy() {
  Outcome o;
  const ExchangeInputs in;
  const double cf = exchange_closed_form(in).v_ex_ueV;
  o.require(cf >= 0.1 && cf <= 0.4, "closed form V_ex = %.4f ueV (0.2 within a factor of 2)", cf);
  MonteCarloOptions mc;
  mc.samples = 10'000'000;
  auto t0 = Clock::now();
  const ExchangeResult ex = exchange_monte_carlo(in, mc);
  const double t_mc = seconds_since(t0);
  o.require(std::abs(ex.v_ex_ueV - cf) <= 0.5 * cf, "exponential-kernel MC %.4f +- %.1e ueV vs closed form (50%%)",
            ex.v_ex_ueV, ex.stderr_ueV);
  mc.kernel = ExchangeKernel::gaussian;
  const ExchangeResult g = exchange_monte_carlo(in, mc);
  o.require(within_rel(g.v_ex_ueV, cf, 0.01), "gaussian-kernel MC %.5f ueV vs closed form %.5f (1%%)", g.v_ex_ueV, cf);
  o.require(t_mc < 60.0, "MC with 1e7 samples %.1f s (limit 60 s)", t_mc);
  return o;
}

CavityConfig two_sided(double v_s) {
  CavityConfig c;
  c.gamma1 = c.gamma2 = 0.5;
  c.v_s = v_s;
  return c;
}

CavityConfig single_sided(double v_s) {
  CavityConfig c;
  c.gamma1 = 1.0;
  c.gamma2 = 0.0;
  c.v_s = v_s;
  return c;
}

Outcome response_closed_form() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const CavityConfig& c : {two_sided(0.0), single_sided(0.0)})
    for (int i = 0; i < 1000; ++i) {
      const double d = -3.0 * c.gamma() + 6.0 * c.gamma() * i / 999.0;
      const auto r = steady_state_response(c, d);
      const auto cf = closed_form_circular(c, d);
      worst = std::max({worst, std::abs(r.f_plus - cf[0]), std::abs(r.f_minus - cf[1])});
    }
  const double t = seconds_since(t0);
  o.require(worst < 1e-12, "max |matrix - closed form| = %.1e over both cavity types", worst);
  o.require(t < 1.0, "%.3f s (limit 1 s)", t);
  return o;
}

// Position of the largest |y| on the negative and on the positive side of x = 0.
std::pair<double, double> extrema(const std::vector<double>& x, const std::vector<double>& y) {
  std::size_t neg = 0, pos = x.size() - 1;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (x[i] < 0.0 && std::abs(y[i]) > std::abs(y[neg])) neg = i;
    if (x[i] > 0.0 && std::abs(y[i]) > std::abs(y[pos])) pos = i;
  }
  return {x[neg], x[pos]};
}

Outcome figure4() {
  Outcome o;
  const ResponseCurve s = sweep(single_sided(0.0), -2.0, 2.0, 40001);
  const ResponseCurve t = sweep(two_sided(0.0), -2.0, 2.0, 40001);
  double max_si = 0.0;
  bool odd = true;
  for (std::size_t i = 0; i < s.delta.size(); ++i) {
    max_si = std::max(max_si, std::abs(s.intensity_up[i]));
    odd = odd && s.phase_up[i] == -s.phase_down[i] && s.intensity_up[i] == -s.intensity_down[i] &&
          t.phase_up[i] == -t.phase_down[i] && t.intensity_up[i] == -t.intensity_down[i];
  }
  o.require(max_si < 1e-12, "single-sided intensity max |value| %.1e", max_si);
  const double sp = optimal_detuning(single_sided(0.0), SignalKind::phase).delta;
  o.require(std::abs(sp) < 1e-4, "single-sided phase extremum at %.2e meV", sp);
  const auto [ti_lo, ti_hi] = extrema(t.delta, t.intensity_up);
  const double target_i = 1.0 / (2.0 * std::sqrt(3.0));
  o.require(within_rel(-ti_lo, target_i, 0.05) && within_rel(ti_hi, target_i, 0.05),
            "two-sided intensity extrema at %.4f and %.4f meV (+-0.2887 +- 5%%)", ti_lo, ti_hi);
  const auto [tp_lo, tp_hi] = extrema(t.delta, t.phase_up);
  o.require(within_rel(-tp_lo, 0.5, 0.10) && within_rel(tp_hi, 0.5, 0.10),
            "two-sided phase extrema at %.4f and %.4f meV (+-0.5 +- 10%%)", tp_lo, tp_hi);
  o.require(odd, "all signals exactly odd under spin flip");
  return o;
}

Outcome supp_figure3() {
  Outcome o;
  const double v_s = 0.15;
  const CavityConfig t = two_sided(v_s);
  auto f = [&](double d) { return signal(t, d, SignalKind::intensity); };
  const auto [a, b] = boost::math::tools::bisect(f, 0.01, 0.4, boost::math::tools::eps_tolerance<double>(40));
  const double cross = 0.5 * (a + b);
  o.require(within_rel(cross, v_s, 0.10), "two-sided intensity zero crossing at %.5f meV (0.15 +- 10%%)", cross);
  const ResponseCurve s = sweep(single_sided(v_s), -2.0, 2.0, 4001);
  double max_si = 0.0;
  for (double v : s.intensity_up) max_si = std::max(max_si, std::abs(v));
  o.require(max_si > 1e-9, "single-sided intensity max |value| %.3e", max_si);
  const double p2 = signal(t, 0.0, SignalKind::phase), p1 = signal(single_sided(v_s), 0.0, SignalKind::phase);
  o.require(std::abs(p2) > 1e-9 && std::abs(p1) > 1e-9, "phase at delta = 0: two-sided %.3e, single-sided %.3e", p2,
            p1);
  return o;
}

Outcome shot_noise() {
  Outcome o;
  const double n1 = 1803312, n2 = 1796688;
  const double sigma = shot_noise_sigma(n1, n2), p = shot_noise_error(n1, n2), sk = skellam_error(n1, n2);
  o.require(std::abs(sigma - 1897.4) <= 0.1, "sigma = %.2f (1897.4 +- 0.1)", sigma);
  o.require(within_rel(p, 4e-4, 0.20), "P = %.3e (4e-4 +- 20%%)", p);
  o.require(within_rel(p, sk, 0.05), "Skellam %.4e vs Gaussian %.4e (5%%)", sk, p);
  return o;
}

Outcome table1(const RunConfig& cfg) {
  Outcome o;
  const auto t0 = Clock::now();
  const auto rows = build_table1(table1_scenarios(cfg.table_v_s_meV), cfg.budget);
  const double t = seconds_since(t0);
  const double tau_ref[] = {64, 28, 72, 17, 8, NAN, 12, 28};
  const double p_ref[] = {0.045, 0.05, 0.08, 0.05, 0.095, NAN, 0.1, 0.2};  // percent
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string name = r.scenario.label();
    if (std::isnan(tau_ref[i])) {
      o.require(!r.measurable, "%s flagged unmeasurable", name.c_str());
      continue;
    }
    o.require(r.measurable && within_rel(r.tau_meas, tau_ref[i], 0.25), "%s: tau = %.1f ns (%.0f +- 25%%)",
              name.c_str(), r.tau_meas, tau_ref[i]);
    o.require(r.measurable && within_rel(100.0 * r.p_total, p_ref[i], 0.50), "%s: P_total = %.4f%% (%.3f%% +- 50%%)",
              name.c_str(), 100.0 * r.p_total, p_ref[i]);
  }
  o.require(t < 60.0, "%.3f s (limit 60 s)", t);
  return o;
}

Outcome phonon_rate(const RunConfig& cfg) {
  Outcome o;
  const auto t0 = Clock::now();
  PhononRateOptions opt;
  const double g0 = phonon_absorption_rate(0.0, cfg.phonon_params(), cfg.envelopes, cfg.dispersion, opt)
                        .gamma_per_polariton;
  const double g3 = phonon_absorption_rate(0.3, cfg.phonon_params(), cfg.envelopes, cfg.dispersion, opt)
                        .gamma_per_polariton;
  PhononParams cold = cfg.phonon_params();
  cold.temperature = 0.0;
  const double gc = phonon_absorption_rate(0.0, cold, cfg.envelopes, cfg.dispersion, opt).gamma_per_polariton;
  const double t = seconds_since(t0);
  o.require(g0 >= 10.0 && g0 <= 90.0, "Gamma(0) = %.4g 1/s (30 within a factor of 3)", g0);
  o.require(g3 >= 0.2 / 3 && g3 <= 0.6, "Gamma(0.3 meV) = %.4g 1/s (0.2 within a factor of 3)", g3);
  o.require(gc == 0.0, "Gamma(T = 0) = %g", gc);
  o.require(g3 < g0 / 10.0, "Gamma(0.3)/Gamma(0) = %.4f (< 0.1)", g3 / g0);
  o.require(t < 120.0, "%.2f s (limit 120 s)", t);
  return o;
}

Outcome density(const RunConfig& cfg) {
  Outcome o;
  const DensityCheck d = density_check(2000.0, 3600.0, cfg.envelopes.a_B);
  o.require(within_rel(d.density_cm2, 5e9, 0.05), "density %.4g cm^-2 (5e9 +- 5%%)", d.density_cm2);
  o.require(within_rel(d.n_aB2, 0.005, 0.10), "n a_B^2 = %.5f (0.005 +- 10%%)", d.n_aB2);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

Outcome determinism() {
  Outcome o;
  const fs::path base = fs::temp_directory_path() / "qnd_acceptance_determinism";
  fs::remove_all(base);
  for (const char* run : {"a", "b"}) {
    const std::string cmd =
        std::string(QND_CLI_PATH) + " reproduce-all --seed 7 -o " + (base / run).string() + " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    o.require(WIFEXITED(st) && WEXITSTATUS(st) == 0, "reproduce-all run %s exit status %d", run, WEXITSTATUS(st));
  }
  int files = 0;
  bool same = true;
  for (const auto& e : fs::directory_iterator(base / "a")) {
    if (e.path().extension() != ".csv") continue;
    ++files;
    same = same && slurp(e.path()) == slurp(base / "b" / e.path().filename());
  }
  o.require(files > 0 && same, "%d CSV files bit-identical across runs", files);
  return o;
}

}  // namespace

int main() {
  RunConfig cfg = load_config({});
  cfg.validate();

  int failed = 0;
  auto report = [&](int id, const char* title, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.require(false, "exception: %s", e.what());
    }
    std::printf("[%s] %2d %s\n", o.pass ? "PASS" : "FAIL", id, title);
    for (const auto& n : o.notes) std::printf("        %s\n", n.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  };

  report(1, "eigensolver oracle equivalence", eigensolver_oracle);

  DeskSolve desk;
  RunConfig desk_cfg = cfg;
  desk_cfg.grid = GridSpec{101, 0.5};
  desk_cfg.solver.num_eigenpairs = 2;
  {
    const auto t0 = Clock::now();
    desk.sol = solve_structure(desk_cfg, Carrier::electron);
    desk.seconds = seconds_since(t0);
  }
  report(2, "QD-QW spectrum at N = 101", [&] { return qdqw_spectrum(desk); });
  report(3, "Gaussian envelope fit", [&] { return envelope_fit(desk_cfg, desk); });
  report(4, "exchange energy", exchange_energy);
  report(5, "response closed-form equivalence", response_closed_form);
  report(6, "V_s = 0 response features", figure4);
  report(7, "V_s = 0.15 meV response features", supp_figure3);
  report(8, "shot-noise worked example", shot_noise);
  report(9, "measurement-time table", [&] { return table1(cfg); });
  report(10, "phonon spin-flip rate", [&] { return phonon_rate(cfg); });
  report(11, "polariton density", [&] { return density(cfg); });
  report(12, "reproduce-all determinism", determinism);

  std::printf("%d of 12 criteria pass\n", 12 - failed);
  return failed == 0 ? 0 : 1;
}
