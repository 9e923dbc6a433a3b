#include "qnd/units.hpp"

#include <cmath>
#include <stdexcept>

namespace qnd::units {

double energy_to_rate(double energy_meV) noexcept { return energy_meV / hbar; }

double rate_to_energy(double rate_per_ps) noexcept { return rate_per_ps * hbar; }

double energy_to_wavelength(double energy_meV) {
  if (!(energy_meV > 0.0)) throw std::domain_error("energy_to_wavelength: energy must be positive");
  return planck_c / energy_meV;
}

double wavelength_to_energy(double wavelength_nm) {
  if (!(wavelength_nm > 0.0)) throw std::domain_error("wavelength_to_energy: wavelength must be positive");
  return planck_c / wavelength_nm;
}

double bose_occupation(double energy_meV, double temperature_K) {
  if (!(energy_meV > 0.0)) throw std::domain_error("bose_occupation: energy must be positive");
  if (temperature_K < 0.0) throw std::domain_error("bose_occupation: negative temperature");
  if (temperature_K == 0.0) return 0.0;
  const double x = energy_meV / (k_boltzmann * temperature_K);
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

}  // namespace qnd::units
