#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "trapspin/interactions.hpp"
#include "trapspin/scheduler.hpp"
#include "trapspin/traps.hpp"

namespace trapspin::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2 };

struct Config {
  std::uint64_t seed = 1;
  std::string format;  // empty: the command's default
  std::string out;     // empty: stdout

  std::vector<AtomSpecies> custom_species;

  std::string lattice = "red";
  std::vector<std::string> species;  // empty: all
  RedLatticeSpec red;
  BlueLatticeSpec blue;

  TrapGeometry geometry = reference_geometry(units::bohr_to_m(1000.0));
  ScatteringParams scattering = reference_scattering();
  DipoleMode dipole = DipoleMode::Calibrated;
  bool include_exchange = true;

  double z0_min_a0 = 500.0;
  double z0_max_a0 = 5000.0;
  int points = 46;
  CouplingMethod method = CouplingMethod::Quadrature;
  std::int64_t samples = 1'000'000;

  double tolerance = 1.0 - 1e-9;
  std::vector<double> rwa_separations{100.0, 30.0, 10.0, 5.0, 3.0, 2.0, 1.0};
  double rwa_duration_s = 5e-4;

  double distance_m = constants::co2_wavelength / 2.0;
  double trap_khz = 982.0;
  double mass_amu = 87.0;
  double transport_budget = 1e-4;
  TransportPlanOptions transport;

  Register reg = [] {
    Register r;
    r.n_qubits = 0;  // sized from the circuit
    return r;
  }();
  double gate_z0_a0 = 1000.0;
  CompileParams compile;

  std::optional<double> gamma_eff_hz;  // default: blue-lattice value of the header species
  double red_scattering_hz = 1.0 / 300.0;
  double threshold = 1e-2;
};

/// Applies a JSON config on top of `cfg`. Unknown keys throw DomainError.
void apply_config(Config& cfg, const nlohmann::json& j);
void load_config_file(Config& cfg, const std::string& path);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trapspin::cli
