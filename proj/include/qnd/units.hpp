#pragma once

// Physical constants and conversions in the library's canonical units:
// energies in meV, lengths in nm, times in ps, temperatures in K.
// Rates leave the library in s^-1 only at reporting boundaries.

namespace qnd::units {

inline constexpr double pi = 3.14159265358979323846;

/// Reduced Planck constant [meV ps].
inline constexpr double hbar = 0.6582119569;
/// Boltzmann constant [meV / K].
inline constexpr double k_boltzmann = 0.08617333262;
/// Vacuum speed of light [nm / ps].
inline constexpr double speed_of_light = 299792.458;
/// e^2 / (4 pi eps0) [meV nm].
inline constexpr double coulomb_constant = 1439.96448;
/// hbar^2 / (2 m0), m0 the free-electron mass [meV nm^2].
inline constexpr double hbar2_over_2m0 = 38.0998212;
/// h c [meV nm]; lambda[nm] = hc / E[meV].
inline constexpr double planck_c = 1239841.984;

inline constexpr double ps_per_s = 1e12;
inline constexpr double ps_per_ns = 1e3;
inline constexpr double nm_per_um = 1e3;
inline constexpr double nm2_per_cm2 = 1e14;
inline constexpr double ueV_per_meV = 1e3;

/// Mass density in kg/m^3 to meV ps^2 / nm^5.
///   1 kg = 1 J s^2 / m^2 = 6.241509074e21 meV * 1e24 ps^2 / 1e18 nm^2
inline constexpr double kg_per_m3_to_internal = 6.241509074e21 * 1e24 / 1e18 / 1e27;
/// Energy in eV to meV.
inline constexpr double meV_per_eV = 1e3;

/// Angular frequency [rad/ps] of an energy [meV].
double energy_to_rate(double energy_meV) noexcept;
/// Energy [meV] of an angular frequency [rad/ps].
double rate_to_energy(double rate_per_ps) noexcept;

/// Rate per ps to rate per second.
constexpr double per_ps_to_per_s(double r) noexcept { return r * ps_per_s; }
constexpr double per_s_to_per_ps(double r) noexcept { return r / ps_per_s; }

/// Photon wavelength [nm] of a transition energy [meV].
double energy_to_wavelength(double energy_meV);
/// Transition energy [meV] of a photon wavelength [nm].
double wavelength_to_energy(double wavelength_nm);

/// Bose-Einstein occupation 1/(exp(E/kT)-1). Zero at T = 0.
/// Throws std::domain_error for E <= 0 or T < 0.
double bose_occupation(double energy_meV, double temperature_K);

}  // namespace qnd::units
