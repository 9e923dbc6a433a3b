#include "qnd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qnd/errors.hpp"

namespace qnd {

void GridSpec::validate() const {
  if (n < 3 || n % 2 == 0) throw ValidationError("grid: n must be an odd integer >= 3");
  if (!(spacing_nm > 0.0)) throw ValidationError("grid: spacing must be positive");
}

ScalarField3D::ScalarField3D(GridSpec grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

ScalarField3D::ScalarField3D(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ValidationError("ScalarField3D: value count does not match grid");
}

double ScalarField3D::norm_squared() const noexcept {
  const double s = std::inner_product(values_.begin(), values_.end(), values_.begin(), 0.0);
  return s * grid_.cell_volume();
}

void ScalarField3D::normalize() {
  const double nrm2 = norm_squared();
  if (!(nrm2 > 0.0)) throw ValidationError("ScalarField3D: cannot normalize a zero field");
  const double scale = 1.0 / std::sqrt(nrm2);
  for (double& v : values_) v *= scale;
}

void ScalarField3D::fix_sign() noexcept {
  if (values_.empty()) return;
  const auto it = std::max_element(values_.begin(), values_.end(),
                                   [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*it < 0.0)
    for (double& v : values_) v = -v;
}

double inner_product(const ScalarField3D& a, const ScalarField3D& b) {
  if (!(a.grid() == b.grid())) throw ValidationError("inner_product: grid mismatch");
  const auto va = a.values();
  const auto vb = b.values();
  return std::inner_product(va.begin(), va.end(), vb.begin(), 0.0) * a.grid().cell_volume();
}

}  // namespace qnd
