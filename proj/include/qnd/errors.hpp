#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qnd {

/// Invalid input: bad configuration, violated precondition, mismatched grids.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method ran out of budget. Carries the best diagnostics reached.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations, std::vector<double> residuals)
      : std::runtime_error(what), iterations_(iterations), residuals_(std::move(residuals)) {}

  int iterations() const noexcept { return iterations_; }
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  int iterations_;
  std::vector<double> residuals_;
};

}  // namespace qnd
