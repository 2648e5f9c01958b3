#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trapspin/units.hpp"

namespace trapspin {

/// Gaussian ground-state sizes of the qubit (q) and header (h) traps, and the
/// separation z0 of the trap centres along z. All lengths in metres.
struct TrapGeometry {
  double a_qr = 0.0;
  double a_qz = 0.0;
  double a_hr = 0.0;
  double a_hz = 0.0;
  double z0 = 0.0;

  static TrapGeometry from_bohr(double a_qr, double a_qz, double a_hr, double a_hz, double z0);

  /// sqrt(a_qr^2 + a_hr^2)
  double a_r() const;
  /// sqrt(a_qz^2 + a_hz^2)
  double a_z() const;

  TrapGeometry with_z0(double z0_m) const;
  void validate() const;
};

/// s-wave scattering data for the contact term, plus the reference trap whose
/// energy scale hbar*omega and ground-state size a enter the exchange overlap.
struct ScatteringParams {
  double a_triplet = 0.0;  // m
  double a_singlet = 0.0;  // m
  double mass_kg = 0.0;
  Frequency reference_trap;

  /// Ground-state size of the reference trap (units convention).
  double reference_size() const;
  void validate() const;
};

enum class CouplingMethod { Quadrature, MonteCarlo, ClosedForm };
std::string to_string(CouplingMethod m);

/// A coupling strength or geometric average. The unit depends on the producer:
/// Hz for couplings, m^-3 for dipolar_average. stderr is set iff method is MonteCarlo.
struct CouplingResult {
  double value = 0.0;
  CouplingMethod method = CouplingMethod::ClosedForm;
  std::optional<double> stderr_value;
  std::int64_t samples = 0;
  std::int64_t rejected = 0;
  double abs_error_estimate = 0.0;
};

enum class DipoleMode {
  /// 5e11 Hz * (a0/R)^3
  Calibrated,
  /// (mu0/4pi) mu_B^2 / (h R^3)
  FirstPrinciples,
};

inline constexpr double kCalibratedDipoleHz = 5e11;

/// gamma_e * R^3 in Hz m^3.
double dipole_prefactor(DipoleMode mode);

/// Exchange overlap J_E = (4/sqrt(2 pi)) (a_T - a_S)/a_z (a/a_r)^2 (hbar omega / h) exp(-z0^2 / 2 a_z^2), in Hz.
CouplingResult exchange_strength(const TrapGeometry& geom, const ScatteringParams& scat);

/// Bare electron dipole strength gamma_e(R) in Hz.
CouplingResult dipole_strength(double r_m, DipoleMode mode = DipoleMode::Calibrated);

/// Radial Gaussian average of (1/R^3)(1 - 3 z^2/R^2) at fixed axial offset z, for a
/// 2-D isotropic Gaussian of per-axis width a_r:
///   (1/(2 a_r^4)) [2|z| - (a_r^2 + z^2) (sqrt(2 pi)/a_r) exp(z^2/2a_r^2) erfc(|z|/(sqrt2 a_r))]
/// Evaluated without overflow or cancellation for |z| >> a_r.
double radial_dipolar_kernel(double z, double a_r);

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double window_sigmas = 10.0;
  unsigned max_depth = 20;
  /// Return the z-outer integral as is. It differs from the spherical principal value by
  /// -(8 pi / 3) rho_R(0), a contact term picked up at R = 0.
  bool slab_ordered = false;
};

/// (8 pi / 3) rho_R(0) in m^-3, where rho_R is the density of R = r_q - r_h - z0 z.
double contact_density(const TrapGeometry& geom);

/// <(1/R^3)(1 - 3 (z.R)^2)> over both ground states, in m^-3, by adaptive
/// Gauss-Kronrod quadrature of the axial integral, plus contact_density() so that the
/// result is the spherical principal value. Throws NumericalError when the error
/// estimate exceeds rel_tol.
CouplingResult dipolar_average(const TrapGeometry& geom, const QuadratureOptions& opts = {});

struct MonteCarloOptions {
  /// Samples with |R| below this are rejected and counted.
  double core_cutoff_m = 0.1 * constants::bohr_radius;
  /// Fixed chunk size; each chunk draws from its own stream seeded by (seed, chunk).
  std::int64_t chunk_size = 1 << 16;
  /// 0 means hardware concurrency. The result does not depend on this value.
  unsigned threads = 0;
};

inline constexpr std::int64_t kMinMonteCarloSamples = 10'000;

/// Monte Carlo estimate of the same average as dipolar_average, with standard error.
/// Bit-identical for a fixed (geom, n_samples, seed, chunk_size).
CouplingResult dipolar_average_mc(const TrapGeometry& geom, std::int64_t n_samples,
                                  std::uint64_t seed, const MonteCarloOptions& opts = {});

struct EffectiveJOptions {
  DipoleMode dipole = DipoleMode::Calibrated;
  /// Drop the contact term (different species: exchange is suppressed).
  bool include_exchange = true;
  CouplingMethod method = CouplingMethod::Quadrature;
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t seed = 1;
  MonteCarloOptions mc;
};

/// Components of the effective Ising coupling J_E(z0), all in Hz.
struct EffectiveJ {
  double exchange_hz = 0.0;
  double dipolar_hz = 0.0;
  CouplingMethod method = CouplingMethod::Quadrature;
  std::optional<double> stderr_hz;

  double total_hz() const { return exchange_hz + dipolar_hz; }
  CouplingResult total() const;
};

EffectiveJ effective_J(const TrapGeometry& geom, const ScatteringParams& scat,
                       const EffectiveJOptions& opts = {});

/// Reference geometry: a_qr = a_qz = 400 a0, a_hr = a_hz = 100 a0.
TrapGeometry reference_geometry(double z0_m);
/// |a_T - a_S| = 100 a0 with a Rb-87 reference mass and the Rb blue-lattice frequency.
ScatteringParams reference_scattering();

struct ScanRow {
  double z0_a0 = 0.0;
  double exchange_hz = 0.0;
  double dipolar_hz = 0.0;
  double total_hz = 0.0;
  CouplingMethod method = CouplingMethod::Quadrature;
  std::optional<double> stderr_hz;
  /// -2 gamma_e(z0), the point-dipole on-axis limit.
  double point_dipole_hz = 0.0;
};

/// Evaluates effective_J at each z0 (metres). MC rows use seed + row index.
std::vector<ScanRow> scan_couplings(const TrapGeometry& geom, const ScatteringParams& scat,
                                    const std::vector<double>& z0s_m,
                                    const EffectiveJOptions& opts = {});

/// Columns: z0_a0,J_exchange_Hz,J_dipolar_Hz,J_total_Hz,method,stderr_Hz,J_point_dipole_Hz
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

}  // namespace trapspin
