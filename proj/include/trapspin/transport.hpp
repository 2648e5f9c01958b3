#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <vector>

namespace trapspin {

/// One Lorentzian force component F(t) = (F0 tau / omega_norm) / (tau^2 + (t - center)^2).
struct LorentzianForce {
  double f0 = 0.0;          // N (times omega_norm / rad s^-1)
  double tau = 0.0;         // s
  double omega_norm = 1.0;  // rad/s
  double center = 0.0;      // s
};

/// Force samples on a strictly increasing time grid; linear between samples, zero outside.
struct SampledForce {
  std::vector<double> times;   // s
  std::vector<double> forces;  // N
};

/// Time-dependent force on the header atom: a sum of Lorentzians or a sampled profile.
class PulseShape {
 public:
  static PulseShape lorentzian(double f0, double tau, double omega_norm, double center = 0.0);
  static PulseShape lorentzian_train(std::vector<LorentzianForce> components);
  static PulseShape sampled(std::vector<double> times, std::vector<double> forces);
  static PulseShape null();

  bool is_sampled() const { return sampled_.has_value(); }
  const std::vector<LorentzianForce>& components() const { return components_; }
  const SampledForce& samples() const { return *sampled_; }

  double force(double t) const;
  /// Fourier transform F~(omega) = int F(t) e^{i omega t} dt.
  std::complex<double> spectrum(double omega) const;
  /// Same as spectrum(), but for sampled pulses integrated with `refine` equal
  /// sub-intervals per sample interval (for convergence checks).
  std::complex<double> spectrum(double omega, int refine) const;

 private:
  std::vector<LorentzianForce> components_;
  std::optional<SampledForce> sampled_;
};

/// M dv = int F dt. Analytic (pi F0 / omega_norm per Lorentzian) or trapezoidal for samples.
double impulse(const PulseShape& pulse);

/// |alpha|^2 = |F~(omega_t)|^2 / (2 M hbar omega_t): the coherent displacement left
/// in a harmonic trap of angular frequency omega_t.
double displacement_squared(const PulseShape& pulse, double omega_t, double mass_kg);

/// First-order excitation probability |alpha|^2. For a single Lorentzian this is
/// (M dv^2 / 2 hbar omega_t) e^{-2 omega_t tau}.
double excitation_first_order(const PulseShape& pulse, double omega_t, double mass_kg);

/// Exact probability of leaving the ground state, 1 - exp(-|alpha|^2).
double excitation_exact(const PulseShape& pulse, double omega_t, double mass_kg);

/// Closed-form first-order probability for one centred Lorentzian.
double lorentzian_first_order(double impulse, double tau, double omega_t, double mass_kg);

struct TransportResult {
  double impulse = 0.0;          // kg m/s
  double kinetic_gain = 0.0;     // J, (M dv)^2 / 2M
  double p_first_order = 0.0;
  double p_exact = 0.0;
  bool adiabatic = true;
};

struct TransportPlanOptions {
  /// Fraction of the displacement allowed outside the reported transit window.
  double settle_fraction = 1e-2;
  /// Lower bound on tau in trap periods.
  double min_tau_periods = 0.25;
  /// Upper bound on tau; exceeding it is a planning error. Infinite by default.
  double max_tau = std::numeric_limits<double>::infinity();
};

struct TransportPlan {
  double distance = 0.0;   // m
  double omega_t = 0.0;    // rad/s
  double mass_kg = 0.0;
  double tau = 0.0;        // s
  /// Equivalent drive M omega_t v(t) for the Lorentzian velocity profile of the trap centre.
  PulseShape pulse = PulseShape::null();
  double transit_time = 0.0;  // s
  double peak_speed = 0.0;    // m/s
  /// -(1/hbar) int M omega_t^2 q0(t)^2 / 2 dt over the transit window.
  double phase = 0.0;
  TransportResult result;
};

/// Moves the trap centre by `distance` with velocity v(t) = (D tau / pi)/(tau^2 + t^2).
/// The translating-trap excitation equals that of the force M omega_t v(t), so
/// p_exact = 1 - exp(-(M omega_t D^2 / 2 hbar) e^{-2 omega_t tau}); tau is the smallest
/// value meeting p_budget.
TransportPlan plan_transport(double distance, double omega_t, double mass_kg, double p_budget,
                             const TransportPlanOptions& opts = {});

/// Evaluates a pulse against an excitation budget.
TransportResult evaluate_pulse(const PulseShape& pulse, double omega_t, double mass_kg,
                               double p_budget);

}  // namespace trapspin
