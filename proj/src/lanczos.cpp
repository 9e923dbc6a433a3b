#include "qnd/lanczos.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "qnd/errors.hpp"
#include "qnd/parallel.hpp"

namespace qnd {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

void scale(Vec& a, double s) {
  for (double& x : a) x *= s;
}

constexpr std::size_t grain = 1 << 15;

// w -= sum_i c_i basis[i] over the first c.size() basis vectors.
void subtract_combination(Vec& w, const std::vector<const Vec*>& basis, const Vec& c) {
  parallel_for(0, w.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t r = 0; r < c.size(); ++r) {
      const double cr = c[r];
      const double* v = basis[r]->data();
      for (std::size_t p = b; p < e; ++p) w[p] -= cr * v[p];
    }
  }, grain);
}

Vec project_coefficients(const Vec& w, const std::vector<const Vec*>& basis) {
  Vec c(basis.size());
  parallel_for(0, basis.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t r = b; r < e; ++r) c[r] = dot(*basis[r], w);
  }, w.size() >= grain ? 1 : basis.size());
  return c;
}

// Classical Gram-Schmidt with one conditional second pass. Returns the
// accumulated projection coefficients.
Vec orthogonalize(Vec& w, const std::vector<const Vec*>& basis) {
  if (basis.empty()) return {};
  const double before = norm(w);
  Vec c = project_coefficients(w, basis);
  subtract_combination(w, basis, c);
  if (norm(w) < 0.7071 * before) {
    const Vec c2 = project_coefficients(w, basis);
    subtract_combination(w, basis, c2);
    for (std::size_t r = 0; r < c.size(); ++r) c[r] += c2[r];
  }
  return c;
}

Vec random_vector(std::size_t n, std::mt19937_64& rng, bool zero_mean) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(n);
  for (double& x : v) x = gauss(rng);
  if (zero_mean && n > 1) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
    for (double& x : v) x -= mean;
  }
  return v;
}

struct CoreResult {
  Vec values;
  std::vector<Vec> vectors;
  Vec residuals;
};

class Solver {
 public:
  Solver(const LinearOperator& op, const LanczosOptions& opt) : op_(op), opt_(opt) {}

  int matvecs() const noexcept { return matvecs_; }

  // Applies P A P + shift (1 - P), P the projector onto the complement of
  // `locked`. Locked directions sit at `shift`, above every value of interest,
  // so rounding drift into them is never mistaken for a low eigenvalue.
  void apply(const Vec& x, Vec& y, const std::vector<const Vec*>& locked, double shift) {
    if (matvecs_ >= opt_.max_iterations) throw_budget();
    ++matvecs_;
    if (locked.empty()) {
      op_.apply(x, y);
      return;
    }
    Vec xp = x;
    const Vec c = project_coefficients(xp, locked);
    subtract_combination(xp, locked, c);
    op_.apply(xp, y);
    orthogonalize(y, locked);
    Vec neg(c.size());
    for (std::size_t r = 0; r < c.size(); ++r) neg[r] = -shift * c[r];
    subtract_combination(y, locked, neg);
  }

  // Thick-restart Lanczos for the k lowest eigenpairs of the deflated operator.
  CoreResult run(int k, Vec start, const std::vector<const Vec*>& locked, double shift = 0.0) {
    const std::size_t n = op_.dimension;
    const int m = static_cast<int>(std::min<std::size_t>(opt_.basis_size, n - locked.size()));
    std::vector<Vec> v(m + 1, Vec(n, 0.0));
    std::vector<Vec> scratch;

    orthogonalize(start, locked);
    const double s0 = norm(start);
    if (!(s0 > 0.0)) throw ValidationError("lanczos: start vector vanished after deflation");
    scale(start, 1.0 / s0);
    v[0] = std::move(start);

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    Vec w(n);
    int kept = 0;
    double beta_last = 0.0;
    std::mt19937_64 refill(opt_.seed ^ 0x9e3779b97f4a7c15ULL);

    for (;;) {
      for (int j = kept; j < m; ++j) {
        apply(v[j], w, locked, shift);
        std::vector<const Vec*> basis;
        for (int r = 0; r <= j; ++r) basis.push_back(&v[r]);
        const Vec c = orthogonalize(w, basis);
        for (int r = 0; r <= j; ++r) t(r, j) += c[r];
        double beta = norm(w);
        const double ref = std::max(1.0, std::abs(t(j, j)));
        if (beta <= 1e-13 * ref) {
          // invariant subspace: continue with a fresh direction, uncoupled
          beta = 0.0;
          if (j + 1 < m) {
            Vec fresh = random_vector(n, refill, false);
            orthogonalize(fresh, locked);
            orthogonalize(fresh, basis);
            scale(fresh, 1.0 / norm(fresh));
            v[j + 1] = std::move(fresh);
          }
        } else {
          for (std::size_t p = 0; p < n; ++p) v[j + 1][p] = w[p] / beta;
        }
        beta_last = beta;
      }

      for (int c = 0; c < m; ++c)
        for (int r = c + 1; r < m; ++r) t(r, c) = t(c, r);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
      const Eigen::VectorXd& theta = eig.eigenvalues();
      const Eigen::MatrixXd& s = eig.eigenvectors();

      Vec est(k);
      bool done = true;
      for (int i = 0; i < k; ++i) {
        est[i] = std::abs(beta_last * s(m - 1, i));
        if (!(est[i] < opt_.tolerance)) done = false;
      }
      best_ = est;

      const int next_kept = done ? k : std::min(m - 1, k + std::max(1, (m - k) / 2));
      scratch.assign(next_kept, Vec(n, 0.0));
      parallel_for(0, n, [&](std::size_t b, std::size_t e) {
        for (int i = 0; i < next_kept; ++i)
          for (int r = 0; r < m; ++r) {
            const double sri = s(r, i);
            const double* src = v[r].data();
            double* dst = scratch[i].data();
            for (std::size_t p = b; p < e; ++p) dst[p] += sri * src[p];
          }
      }, grain);

      if (done) {
        CoreResult out;
        for (int i = 0; i < k; ++i) {
          out.values.push_back(theta(i));
          out.vectors.push_back(std::move(scratch[i]));
        }
        out.residuals = est;
        return out;
      }

      std::swap(v[next_kept], v[m]);
      for (int i = 0; i < next_kept; ++i) std::swap(v[i], scratch[i]);
      t.setZero();
      for (int i = 0; i < next_kept; ++i) t(i, i) = theta(i);
      kept = next_kept;
    }
  }

 private:
  [[noreturn]] void throw_budget() const {
    std::ostringstream msg;
    msg << "lanczos: no convergence within " << opt_.max_iterations << " operator applications";
    if (!best_.empty()) {
      msg << " (best residuals:";
      for (double r : best_) msg << ' ' << r;
      msg << ')';
    }
    throw ConvergenceError(msg.str(), matvecs_, best_);
  }

  const LinearOperator& op_;
  const LanczosOptions& opt_;
  int matvecs_ = 0;
  Vec best_;
};

}  // namespace

LanczosResult lanczos_lowest(const LinearOperator& op, const LanczosOptions& options) {
  const std::size_t n = op.dimension;
  const int k = options.num_eigenpairs;
  if (!op.apply) throw ValidationError("lanczos: operator has no apply function");
  if (k < 1) throw ValidationError("lanczos: need at least one eigenpair");
  if (options.max_iterations < k) throw ValidationError("lanczos: max_iterations must be >= k");
  if (static_cast<std::size_t>(k) > n) throw ValidationError("lanczos: k exceeds operator dimension");
  if (!(options.tolerance > 0.0)) throw ValidationError("lanczos: tolerance must be positive");
  if (options.basis_size < k + 2 && static_cast<std::size_t>(options.basis_size) < n)
    throw ValidationError("lanczos: basis_size must be at least k + 2");

  Solver solver(op, options);
  std::mt19937_64 rng(options.seed);
  CoreResult found = solver.run(k, random_vector(n, rng, true), {});

  // A single Krylov sequence sees only one direction of each degenerate
  // eigenspace. Search the complement of the converged set for anything lower
  // than the current k-th value until nothing turns up.
  while (static_cast<std::size_t>(k) < n) {
    std::vector<const Vec*> locked;
    for (const Vec& y : found.vectors) locked.push_back(&y);
    const double top = found.values.back();
    const double shift = top + std::max(1.0, std::abs(top));
    CoreResult extra = solver.run(1, random_vector(n, rng, false), locked, shift);
    const double slack = std::max(options.tolerance, 1e-12 * std::abs(top));
    if (!(extra.values[0] < top - slack)) break;
    found.values.back() = extra.values[0];
    found.vectors.back() = std::move(extra.vectors[0]);
    found.residuals.back() = extra.residuals[0];
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return found.values[a] < found.values[b]; });
    CoreResult sorted;
    for (int i : order) {
      sorted.values.push_back(found.values[i]);
      sorted.vectors.push_back(std::move(found.vectors[i]));
      sorted.residuals.push_back(found.residuals[i]);
    }
    found = std::move(sorted);
  }

  LanczosResult result;
  result.iterations = solver.matvecs();
  result.eigenvalues = found.values;
  Vec hy(n);
  for (int i = 0; i < k; ++i) {
    Vec& y = found.vectors[i];
    scale(y, 1.0 / norm(y));
    op.apply(y, hy);
    for (std::size_t p = 0; p < n; ++p) hy[p] -= found.values[i] * y[p];
    result.residual_norms.push_back(norm(hy));
    result.eigenvectors.push_back(std::move(y));
  }
  return result;
}

EigenSolution solve_lowest(const Hamiltonian& h, const LanczosOptions& options) {
  const LanczosResult r = lanczos_lowest(h.as_operator(), options);
  EigenSolution out;
  out.energies = r.eigenvalues;
  out.iterations_used = r.iterations;
  out.residual_norms = r.residual_norms;
  for (const auto& y : r.eigenvectors) {
    ScalarField3D psi(h.grid(), y);
    psi.normalize();
    psi.fix_sign();
    out.states.push_back(std::move(psi));
  }
  return out;
}

}  // namespace qnd
