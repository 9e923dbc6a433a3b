#pragma once

#include <cstdint>
#include <vector>

#include "qnd/hamiltonian.hpp"

namespace qnd {

struct LanczosOptions {
  int num_eigenpairs = 2;
  /// Budget of operator applications across all restarts.
  int max_iterations = 6000;
  /// Krylov basis size per restart cycle; clipped to the operator dimension.
  int basis_size = 40;
  /// Convergence threshold on ||A y - theta y|| for unit-norm y.
  double tolerance = 1e-6;
  std::uint64_t seed = 20240607;
};

struct LanczosResult {
  std::vector<double> eigenvalues;                // ascending
  std::vector<std::vector<double>> eigenvectors;  // unit Euclidean norm
  int iterations = 0;                             // operator applications
  std::vector<double> residual_norms;
};

/// Lowest eigenpairs of a symmetric operator by thick-restart Lanczos with
/// full reorthogonalization of the Krylov basis. The start vector is drawn
/// from a seeded generator and projected to zero mean, so results are
/// bit-reproducible for a fixed seed and thread count.
///
/// Throws ValidationError for bad options and ConvergenceError (carrying the
/// best residuals) if the budget runs out.
LanczosResult lanczos_lowest(const LinearOperator& op, const LanczosOptions& options);

/// Eigenpairs of the 3D Hamiltonian with grid-normalized states.
struct EigenSolution {
  std::vector<double> energies;  // meV, ascending
  std::vector<ScalarField3D> states;
  int iterations_used = 0;
  std::vector<double> residual_norms;  // meV
};

/// Runs lanczos_lowest on H and returns states with sum |psi|^2 Delta^3 = 1,
/// sign-fixed so the largest sample is positive.
EigenSolution solve_lowest(const Hamiltonian& h, const LanczosOptions& options);

}  // namespace qnd
