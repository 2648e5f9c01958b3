#include "trapspin/traps.hpp"

#include <cmath>
#include <ostream>

#include "trapspin/error.hpp"

namespace trapspin {

namespace {
bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }
}  // namespace

void AtomSpecies::validate() const {
  if (name.empty()) throw DomainError("species name must not be empty");
  if (!positive_finite(mass_amu) || !positive_finite(alpha0_au) || !positive_finite(lambda0_nm) ||
      !positive_finite(gamma_hz)) {
    throw DomainError("species '" + name + "': mass, alpha0, lambda0 and gamma must be positive");
  }
}

const std::vector<AtomSpecies>& builtin_species() {
  static const std::vector<AtomSpecies> table{
      {"Li", 6.9, 159.2, 670.0, 1e7},  {"Na", 23.0, 162.0, 589.0, 1e7},
      {"K", 39.0, 292.8, 766.0, 1e7},  {"Rb", 87.0, 319.2, 780.0, 1e7},
      {"Cs", 133.0, 402.2, 852.0, 1e7},
  };
  return table;
}

SpeciesRegistry::SpeciesRegistry() : species_(builtin_species()) {}

void SpeciesRegistry::add(AtomSpecies s) {
  s.validate();
  for (auto& existing : species_) {
    if (existing.name == s.name) {
      existing = std::move(s);
      return;
    }
  }
  species_.push_back(std::move(s));
}

const AtomSpecies& SpeciesRegistry::get(std::string_view name) const {
  for (const auto& s : species_) {
    if (s.name == name) return s;
  }
  throw DomainError("unknown species '" + std::string(name) + "'");
}

void RedLatticeSpec::validate() const {
  if (!positive_finite(wavelength_m)) throw DomainError("red lattice wavelength must be positive");
  if (!positive_finite(intensity_w_cm2)) throw DomainError("red lattice intensity must be positive");
  if (!positive_finite(depth_calibration_mhz)) {
    throw DomainError("red lattice depth calibration must be positive");
  }
}

RedLatticeSpec RedLatticeSpec::calibrated_to(const AtomSpecies& species, Frequency v_max) {
  species.validate();
  if (!positive_finite(v_max.hz)) throw DomainError("calibration depth must be positive");
  RedLatticeSpec spec;
  spec.depth_calibration_mhz = v_max.mhz() / species.alpha0_au;
  return spec;
}

void BlueLatticeSpec::validate() const {
  if (!positive_finite(rabi_hz)) throw DomainError("blue lattice Rabi frequency must be positive");
  if (!positive_finite(detuning_hz)) {
    throw DomainError("blue lattice detuning must be positive (blue of resonance)");
  }
  if (!positive_finite(linewidth_hz)) throw DomainError("blue lattice linewidth must be positive");
  if (!positive_finite(depth_factor)) throw DomainError("blue lattice depth factor must be positive");
}

namespace {

Frequency first_principles_depth(double alpha0_au, double intensity_w_cm2) {
  using namespace constants;
  // alpha_SI = 4 pi eps0 a0^3 alpha; E0^2 = 2 I / (c eps0); V = alpha_SI E0^2 / 4
  const double a3 = bohr_radius * bohr_radius * bohr_radius;
  const double intensity = units::w_per_cm2_to_si(intensity_w_cm2);
  return Frequency::from_energy(2.0 * pi * a3 * alpha0_au * intensity / c);
}

}  // namespace

TrapReport red_lattice_report(const AtomSpecies& species, const RedLatticeSpec& spec) {
  species.validate();
  spec.validate();
  TrapReport r;
  r.species = species.name;
  r.lattice = "red";
  const Frequency calibrated = Frequency::from_mhz(spec.depth_calibration_mhz * species.alpha0_au);
  const Frequency physical = first_principles_depth(species.alpha0_au, spec.intensity_w_cm2);
  r.v_max = spec.mode == DepthMode::Calibrated ? calibrated : physical;
  r.v_max_alternative = spec.mode == DepthMode::Calibrated ? physical : calibrated;
  r.recoil_lattice = recoil_frequency(species.mass_kg(), spec.wavelength_m);
  r.recoil_resonant = recoil_frequency(species.mass_kg(), species.lambda0_m());
  r.nu_osc = {2.0 * std::sqrt(r.v_max.hz * r.recoil_lattice.hz)};
  r.a_osc_m = ground_state_size(species.mass_kg(), r.nu_osc);
  r.eta0 = lamb_dicke(r.recoil_resonant, r.nu_osc);
  r.eta_lattice = lamb_dicke(r.recoil_lattice, r.nu_osc);
  return r;
}

TrapReport blue_lattice_report(const AtomSpecies& species, const BlueLatticeSpec& spec) {
  species.validate();
  spec.validate();
  TrapReport r;
  r.species = species.name;
  r.lattice = "blue";
  const double saturation = spec.rabi_hz * spec.rabi_hz / (4.0 * spec.detuning_hz);
  r.v_max = {saturation};
  r.v_max_alternative = {spec.depth_factor * saturation};
  // The blue lattice sits within a few nm of resonance, so its recoil is E_R0.
  r.recoil_resonant = recoil_frequency(species.mass_kg(), species.lambda0_m());
  r.recoil_lattice = r.recoil_resonant;
  r.nu_osc = {2.0 * std::sqrt(r.v_max_alternative.hz * r.recoil_resonant.hz)};
  r.a_osc_m = ground_state_size(species.mass_kg(), r.nu_osc);
  r.eta0 = lamb_dicke(r.recoil_resonant, r.nu_osc);
  r.eta_lattice = r.eta0;
  const double s = spec.rabi_hz / spec.detuning_hz;
  r.gamma_eff_hz = r.eta0 * r.eta0 * s * s / 4.0 * spec.linewidth_hz;
  return r;
}

void write_trap_csv(std::ostream& os, const std::vector<TrapReport>& reports) {
  os << "species,lattice,V_max_MHz,V_max_alt_MHz,nu_osc_kHz,a_osc_a0,E_R_kHz,E_R_lattice_kHz,"
        "eta0,eta_lattice,gamma_eff_Hz\n";
  const auto old = os.precision(6);
  for (const auto& r : reports) {
    os << r.species << ',' << r.lattice << ',' << r.v_max.mhz() << ',' << r.v_max_alternative.mhz()
       << ',' << r.nu_osc.khz() << ',' << r.a_osc_bohr() << ',' << r.recoil_resonant.khz() << ','
       << r.recoil_lattice.khz() << ',' << r.eta0 << ',' << r.eta_lattice << ',';
    if (r.gamma_eff_hz) os << *r.gamma_eff_hz;
    os << '\n';
  }
  os.precision(old);
}

}  // namespace trapspin
