#include "qnd/hamiltonian.hpp"

#include <algorithm>

#include "qnd/errors.hpp"
#include "qnd/parallel.hpp"
#include "qnd/units.hpp"

namespace qnd {

Hamiltonian::Hamiltonian(const ScalarField3D& potential, const ScalarField3D& mass,
                         Boundary boundary)
    : grid_(potential.grid()), boundary_(boundary) {
  if (!(potential.grid() == mass.grid())) throw ValidationError("hamiltonian: potential/mass grid mismatch");
  grid_.validate();
  const auto m = mass.values();
  for (double v : m)
    if (!(v > 0.0)) throw ValidationError("hamiltonian: masses must be positive");

  const int n = grid_.n;
  const double scale = units::hbar2_over_2m0 / (grid_.spacing_nm * grid_.spacing_nm);
  const std::size_t size = grid_.size();
  const std::size_t stride[3] = {static_cast<std::size_t>(n) * n, static_cast<std::size_t>(n), 1};

  diag_.assign(potential.values().begin(), potential.values().end());
  for (auto& h : hop_) h.assign(size, 0.0);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const std::size_t p = grid_.index(i, j, k);
        const int idx[3] = {i, j, k};
        for (int a = 0; a < 3; ++a) {
          // the +1 neighbour along axis a, wrapped for periodic grids
          const bool last = idx[a] == n - 1;
          if (last && boundary_ == Boundary::dirichlet) {
            diag_[p] += scale / m[p];
            continue;
          }
          const std::size_t q = last ? p - (n - 1) * stride[a] : p + stride[a];
          const double t = scale * 0.5 * (1.0 / m[p] + 1.0 / m[q]);
          hop_[a][p] = t;
          diag_[p] += t;
          diag_[q] += t;
        }
        if (boundary_ == Boundary::dirichlet)
          for (int a = 0; a < 3; ++a)
            if (idx[a] == 0) diag_[p] += scale / m[p];
      }
}

void Hamiltonian::apply(std::span<const double> in, std::span<double> out) const {
  const std::size_t size = grid_.size();
  if (in.size() != size || out.size() != size) throw ValidationError("hamiltonian: vector size mismatch");
  const int n = grid_.n;
  const bool periodic = boundary_ == Boundary::periodic;
  const std::size_t sx = static_cast<std::size_t>(n) * n;
  const std::size_t sy = n;

  parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t i_begin, std::size_t i_end) {
    for (std::size_t i = i_begin; i < i_end; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const std::size_t p = (i * n + j) * n + k;
          double acc = diag_[p] * in[p];
          // +x / -x
          if (i + 1 < static_cast<std::size_t>(n)) acc -= hop_[0][p] * in[p + sx];
          else if (periodic) acc -= hop_[0][p] * in[p - (n - 1) * sx];
          if (i > 0) acc -= hop_[0][p - sx] * in[p - sx];
          else if (periodic) acc -= hop_[0][p + (n - 1) * sx] * in[p + (n - 1) * sx];
          // +y / -y
          if (j + 1 < n) acc -= hop_[1][p] * in[p + sy];
          else if (periodic) acc -= hop_[1][p] * in[p - (n - 1) * sy];
          if (j > 0) acc -= hop_[1][p - sy] * in[p - sy];
          else if (periodic) acc -= hop_[1][p + (n - 1) * sy] * in[p + (n - 1) * sy];
          // +z / -z
          if (k + 1 < n) acc -= hop_[2][p] * in[p + 1];
          else if (periodic) acc -= hop_[2][p] * in[p - (n - 1)];
          if (k > 0) acc -= hop_[2][p - 1] * in[p - 1];
          else if (periodic) acc -= hop_[2][p + (n - 1)] * in[p + (n - 1)];
          out[p] = acc;
        }
  }, std::max<std::size_t>(1, (1u << 15) / (static_cast<std::size_t>(n) * n)));
}

ScalarField3D Hamiltonian::apply(const ScalarField3D& psi) const {
  if (!(psi.grid() == grid_)) throw ValidationError("hamiltonian: field grid mismatch");
  ScalarField3D out(grid_);
  apply(psi.values(), out.values());
  return out;
}

LinearOperator Hamiltonian::as_operator() const {
  return {dimension(), [this](std::span<const double> in, std::span<double> out) { apply(in, out); }};
}

}  // namespace qnd
