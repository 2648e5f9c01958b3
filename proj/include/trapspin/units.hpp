#pragma once

#include <numbers>

namespace trapspin {

// CODATA 2018. Energies are carried as E/h in Hz throughout the library;
// angular frequencies are always named *_angular or omega_*.
namespace constants {
inline constexpr double pi = std::numbers::pi;
inline constexpr double h = 6.62607015e-34;           // J s (exact)
inline constexpr double hbar = h / (2.0 * pi);        // J s
inline constexpr double bohr_radius = 5.29177210903e-11;  // m
inline constexpr double bohr_magneton = 9.2740100783e-24; // J/T
inline constexpr double amu = 1.66053906660e-27;          // kg
inline constexpr double c = 299792458.0;                  // m/s (exact)
inline constexpr double epsilon0 = 8.8541878128e-12;      // F/m
inline constexpr double mu0 = 1.25663706212e-6;           // N/A^2
inline constexpr double co2_wavelength = 10.6e-6;         // m
}  // namespace constants

/// A frequency in Hz. Energies are expressed as E/h.
struct Frequency {
  double hz = 0.0;

  constexpr double angular() const { return 2.0 * constants::pi * hz; }
  constexpr double khz() const { return hz * 1e-3; }
  constexpr double mhz() const { return hz * 1e-6; }

  static constexpr Frequency from_angular(double omega) { return {omega / (2.0 * constants::pi)}; }
  static constexpr Frequency from_khz(double v) { return {v * 1e3}; }
  static constexpr Frequency from_mhz(double v) { return {v * 1e6}; }
  static constexpr Frequency from_energy(double joules) { return {joules / constants::h}; }

  constexpr double energy() const { return hz * constants::h; }

  friend constexpr auto operator<=>(const Frequency&, const Frequency&) = default;
};

namespace units {
constexpr double amu_to_kg(double m) { return m * constants::amu; }
constexpr double kg_to_amu(double m) { return m / constants::amu; }
constexpr double bohr_to_m(double x) { return x * constants::bohr_radius; }
constexpr double m_to_bohr(double x) { return x / constants::bohr_radius; }
constexpr double nm_to_m(double x) { return x * 1e-9; }
constexpr double m_to_nm(double x) { return x * 1e9; }
/// W/cm^2 to W/m^2.
constexpr double w_per_cm2_to_si(double i) { return i * 1e4; }
constexpr double si_to_w_per_cm2(double i) { return i * 1e-4; }
}  // namespace units

/// Photon recoil energy h/(2 M lambda^2), as a frequency.
/// Throws DomainError unless mass_kg and wavelength_m are positive and finite.
Frequency recoil_frequency(double mass_kg, double wavelength_m);

/// Harmonic ground-state size sqrt(hbar / (2 M omega)) with omega = 2 pi nu.
/// With this convention k * a_osc == sqrt(E_R / nu) holds exactly.
double ground_state_size(double mass_kg, Frequency trap_frequency);

/// Inverse of ground_state_size: the trap frequency whose ground state has the given size.
Frequency trap_frequency_for_size(double mass_kg, double size_m);

/// Lamb-Dicke parameter sqrt(E_R / nu) for the given recoil and trap frequencies.
double lamb_dicke(Frequency recoil, Frequency trap_frequency);

}  // namespace trapspin
