#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qnd {

/// Uniform cubic grid of n^3 points with spacing `spacing_nm`, centred on the
/// origin. In the heterostructure convention the origin sits on the quantum
/// well midplane, under the dot axis, and z is the growth direction.
struct GridSpec {
  int n = 101;
  double spacing_nm = 0.5;

  /// Throws ValidationError unless n is odd and >= 3 and spacing > 0.
  void validate() const;

  std::size_t size() const noexcept { return static_cast<std::size_t>(n) * n * n; }
  /// Coordinate of index i along any axis.
  double coord(int i) const noexcept { return (i - 0.5 * (n - 1)) * spacing_nm; }
  /// Half the physical extent, i.e. the coordinate of the last point.
  double half_extent() const noexcept { return 0.5 * (n - 1) * spacing_nm; }
  double cell_volume() const noexcept { return spacing_nm * spacing_nm * spacing_nm; }
  /// Flat index, x slowest and z fastest.
  std::size_t index(int i, int j, int k) const noexcept {
    return (static_cast<std::size_t>(i) * n + j) * n + k;
  }

  bool operator==(const GridSpec&) const = default;
};

/// Real field sampled on a GridSpec.
class ScalarField3D {
 public:
  ScalarField3D() = default;
  explicit ScalarField3D(GridSpec grid, double fill = 0.0);
  ScalarField3D(GridSpec grid, std::vector<double> values);

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  double& at(int i, int j, int k) noexcept { return values_[grid_.index(i, j, k)]; }
  double at(int i, int j, int k) const noexcept { return values_[grid_.index(i, j, k)]; }

  /// sum |psi|^2 * spacing^3
  double norm_squared() const noexcept;
  /// Scales to unit L2 norm. Throws ValidationError on a zero field.
  void normalize();
  /// Flips the overall sign so the largest-magnitude sample is positive.
  void fix_sign() noexcept;

 private:
  GridSpec grid_{};
  std::vector<double> values_;
};

/// <a, b> = sum a*b * spacing^3; throws on grid mismatch.
double inner_product(const ScalarField3D& a, const ScalarField3D& b);

}  // namespace qnd
