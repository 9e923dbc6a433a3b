#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qnd/grid.hpp"

namespace qnd {

/// Matrix-free symmetric operator y = A x on vectors of length `dimension`.
struct LinearOperator {
  std::size_t dimension = 0;
  std::function<void(std::span<const double>, std::span<double>)> apply;
};

enum class Boundary { dirichlet, periodic };

/// Effective-mass Hamiltonian with position-dependent mass,
///   (H psi)_j = d_j psi_j - sum_nb t_{j,nb} psi_nb,
///   t_{j,nb} = hbar^2 / (2 mbar Delta^2),  mbar = 2 m_j m_nb / (m_j + m_nb),
///   d_j = V_j + sum over the six bonds of t_{j,nb}.
/// With Dirichlet walls a bond leaving the grid keeps its diagonal term
/// (mass m_j) and drops the hop.
class Hamiltonian {
 public:
  /// Throws ValidationError if the fields live on different grids or any mass is <= 0.
  Hamiltonian(const ScalarField3D& potential, const ScalarField3D& mass,
              Boundary boundary = Boundary::dirichlet);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t dimension() const noexcept { return grid_.size(); }

  /// out = H in. Spans must both have dimension() entries.
  void apply(std::span<const double> in, std::span<double> out) const;
  ScalarField3D apply(const ScalarField3D& psi) const;

  std::span<const double> diagonal() const noexcept { return diag_; }
  LinearOperator as_operator() const;

 private:
  GridSpec grid_;
  Boundary boundary_;
  std::vector<double> diag_;
  // hop_[a][j]: hopping between j and its +1 neighbour along axis a.
  std::vector<double> hop_[3];
};

}  // namespace qnd
