#include "trapspin/units.hpp"

#include <cmath>
#include <string>

#include "trapspin/error.hpp"

namespace trapspin {

namespace {
void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive and finite");
  }
}
}  // namespace

Frequency recoil_frequency(double mass_kg, double wavelength_m) {
  require_positive(mass_kg, "mass");
  require_positive(wavelength_m, "wavelength");
  return {constants::h / (2.0 * mass_kg * wavelength_m * wavelength_m)};
}

double ground_state_size(double mass_kg, Frequency trap_frequency) {
  require_positive(mass_kg, "mass");
  require_positive(trap_frequency.hz, "trap frequency");
  return std::sqrt(constants::hbar / (2.0 * mass_kg * trap_frequency.angular()));
}

Frequency trap_frequency_for_size(double mass_kg, double size_m) {
  require_positive(mass_kg, "mass");
  require_positive(size_m, "size");
  return Frequency::from_angular(constants::hbar / (2.0 * mass_kg * size_m * size_m));
}

double lamb_dicke(Frequency recoil, Frequency trap_frequency) {
  require_positive(recoil.hz, "recoil frequency");
  require_positive(trap_frequency.hz, "trap frequency");
  return std::sqrt(recoil.hz / trap_frequency.hz);
}

}  // namespace trapspin
