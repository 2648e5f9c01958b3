#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trapspin/units.hpp"

namespace trapspin {

struct AtomSpecies {
  std::string name;
  double mass_amu = 0.0;
  double alpha0_au = 0.0;   // dc polarizability in a0^3
  double lambda0_nm = 0.0;  // resonance wavelength
  double gamma_hz = 1e7;    // natural linewidth

  double mass_kg() const { return units::amu_to_kg(mass_amu); }
  double lambda0_m() const { return units::nm_to_m(lambda0_nm); }
  void validate() const;
};

/// Li, Na, K, Rb, Cs with their mass, alpha(0) and resonance wavelength.
const std::vector<AtomSpecies>& builtin_species();

/// Builtin species plus user-defined entries. Lookup is case-sensitive on the symbol.
class SpeciesRegistry {
 public:
  SpeciesRegistry();
  void add(AtomSpecies s);
  const AtomSpecies& get(std::string_view name) const;  // throws DomainError
  const std::vector<AtomSpecies>& all() const { return species_; }

 private:
  std::vector<AtomSpecies> species_;
};

enum class DepthMode {
  /// V_max = calibration * alpha(0)
  Calibrated,
  /// V_max = alpha(0) E0^2 / 4 with E0^2 = 2 I / (c eps0)
  FirstPrinciples,
};

/// Red-detuned CO2 standing wave holding the qubit atoms.
struct RedLatticeSpec {
  double wavelength_m = constants::co2_wavelength;
  double intensity_w_cm2 = 1e6;
  /// MHz of depth per a0^3 of alpha(0); default fitted to Li (181 MHz at 159.2 a0^3).
  double depth_calibration_mhz = 181.0 / 159.2;
  DepthMode mode = DepthMode::Calibrated;

  void validate() const;
  /// Calibration fitted so that `species` has depth `v_max`.
  static RedLatticeSpec calibrated_to(const AtomSpecies& species, Frequency v_max);
};

/// Blue-detuned near-resonant lattice holding the header atoms. Rabi frequency and
/// detuning are in cycles/s.
struct BlueLatticeSpec {
  double rabi_hz = 1.6e10;
  double detuning_hz = 2e12;
  double linewidth_hz = 1e7;
  /// Curvature depth used for nu_osc, in units of Omega^2/(4 delta).
  double depth_factor = 2.0;

  void validate() const;
};

struct TrapReport {
  std::string species;
  std::string lattice;  // "red" or "blue"
  Frequency v_max;              // reported depth
  Frequency v_max_alternative;  // red: first-principles depth; blue: curvature depth
  Frequency nu_osc;
  double a_osc_m = 0.0;
  Frequency recoil_resonant;  // E_R at lambda0
  Frequency recoil_lattice;   // E_R at the lattice wavelength
  double eta0 = 0.0;          // sqrt(E_R0 / nu_osc)
  double eta_lattice = 0.0;   // sqrt(E_R^lattice / nu_osc)
  std::optional<double> gamma_eff_hz;

  double a_osc_bohr() const { return units::m_to_bohr(a_osc_m); }
};

/// nu_osc = 2 sqrt(V_max E_R^CO2); a_osc, eta0, eta_CO2 from the same frequency.
TrapReport red_lattice_report(const AtomSpecies& species, const RedLatticeSpec& spec);

/// nu_osc = 2 sqrt(depth_factor * V_max * E_R0), eta = sqrt(E_R0/nu_osc),
/// gamma_eff = eta^2 Omega^2 / (4 delta^2) gamma.
TrapReport blue_lattice_report(const AtomSpecies& species, const BlueLatticeSpec& spec);

/// CSV with one row per report; columns in the order of the TrapReport fields.
void write_trap_csv(std::ostream& os, const std::vector<TrapReport>& reports);

}  // namespace trapspin
