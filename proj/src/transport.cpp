#include "trapspin/transport.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "trapspin/error.hpp"
#include "trapspin/units.hpp"

namespace trapspin {

using constants::hbar;
using constants::pi;
using cplx = std::complex<double>;

namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

void check_component(const LorentzianForce& c) {
  if (!std::isfinite(c.f0) || !positive_finite(c.tau) || !std::isfinite(c.center)) {
    throw DomainError("Lorentzian force needs finite F0, centre and positive tau");
  }
  if (!(c.omega_norm != 0.0) || !std::isfinite(c.omega_norm)) {
    throw DomainError("Lorentzian force: omega_norm must be finite and non-zero");
  }
}

// int_0^h e^{i w s} ds and int_0^h s e^{i w s} ds, stable for small w h.
std::pair<cplx, cplx> segment_moments(double w, double h) {
  const double theta = w * h;
  if (std::abs(theta) < 0.5) {
    cplx i0 = 0.0, i1 = 0.0;
    cplx p = 1.0;  // (i theta)^k / k!
    for (int k = 0; k < 30; ++k) {
      i0 += p / double(k + 1);
      i1 += p / double(k + 2);
      p *= cplx(0.0, theta) / double(k + 1);
    }
    return {h * i0, h * h * i1};
  }
  const cplx e = std::exp(cplx(0.0, theta));
  const cplx i0 = (e - 1.0) / cplx(0.0, w);
  const cplx i1 = h * e / cplx(0.0, w) + (e - 1.0) / (w * w);
  return {i0, i1};
}

}  // namespace

PulseShape PulseShape::lorentzian(double f0, double tau, double omega_norm, double center) {
  return lorentzian_train({LorentzianForce{f0, tau, omega_norm, center}});
}

PulseShape PulseShape::lorentzian_train(std::vector<LorentzianForce> components) {
  for (const auto& c : components) check_component(c);
  PulseShape p;
  p.components_ = std::move(components);
  return p;
}

PulseShape PulseShape::sampled(std::vector<double> times, std::vector<double> forces) {
  if (times.size() != forces.size() || times.size() < 2) {
    throw DomainError("sampled pulse needs matching time and force arrays of length >= 2");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(forces[i])) {
      throw DomainError("sampled pulse values must be finite (integral would diverge)");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw DomainError("sampled pulse times must be strictly increasing");
    }
  }
  PulseShape p;
  p.sampled_ = SampledForce{std::move(times), std::move(forces)};
  return p;
}

PulseShape PulseShape::null() { return PulseShape{}; }

double PulseShape::force(double t) const {
  if (sampled_) {
    const auto& ts = sampled_->times;
    const auto& fs = sampled_->forces;
    if (t < ts.front() || t > ts.back()) return 0.0;
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.end()) return fs.back();
    const std::size_t k = static_cast<std::size_t>(it - ts.begin());
    const double u = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
    return fs[k - 1] + u * (fs[k] - fs[k - 1]);
  }
  double f = 0.0;
  for (const auto& c : components_) {
    const double dt = t - c.center;
    f += (c.f0 * c.tau / c.omega_norm) / (c.tau * c.tau + dt * dt);
  }
  return f;
}

std::complex<double> PulseShape::spectrum(double omega) const {
  if (sampled_) {
    // Exact transform of the piecewise-linear interpolant.
    const auto& ts = sampled_->times;
    const auto& fs = sampled_->forces;
    cplx acc = 0.0;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      const double h = ts[k + 1] - ts[k];
      const auto [i0, i1] = segment_moments(omega, h);
      acc += std::exp(cplx(0.0, omega * ts[k])) * (fs[k] * i0 + (fs[k + 1] - fs[k]) / h * i1);
    }
    return acc;
  }
  cplx acc = 0.0;
  for (const auto& c : components_) {
    acc += (pi * c.f0 / c.omega_norm) * std::exp(-std::abs(omega) * c.tau) *
           std::exp(cplx(0.0, omega * c.center));
  }
  return acc;
}

std::complex<double> PulseShape::spectrum(double omega, int refine) const {
  if (!sampled_) return spectrum(omega);
  if (refine < 1) throw DomainError("refine must be >= 1");
  const auto& ts = sampled_->times;
  const auto& fs = sampled_->forces;
  cplx acc = 0.0;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const double h = (ts[k + 1] - ts[k]) / refine;
    for (int j = 0; j < refine; ++j) {
      const double ta = ts[k] + j * h;
      const double tb = ta + h;
      const double fa = fs[k] + (fs[k + 1] - fs[k]) * (double(j) / refine);
      const double fb = fs[k] + (fs[k + 1] - fs[k]) * (double(j + 1) / refine);
      acc += 0.5 * h * (fa * std::exp(cplx(0.0, omega * ta)) + fb * std::exp(cplx(0.0, omega * tb)));
    }
  }
  return acc;
}

double impulse(const PulseShape& pulse) { return pulse.spectrum(0.0).real(); }

double displacement_squared(const PulseShape& pulse, double omega_t, double mass_kg) {
  if (!positive_finite(omega_t) || !positive_finite(mass_kg)) {
    throw DomainError("trap frequency and mass must be positive");
  }
  return std::norm(pulse.spectrum(omega_t)) / (2.0 * mass_kg * hbar * omega_t);
}

double excitation_first_order(const PulseShape& pulse, double omega_t, double mass_kg) {
  return displacement_squared(pulse, omega_t, mass_kg);
}

double excitation_exact(const PulseShape& pulse, double omega_t, double mass_kg) {
  return -std::expm1(-displacement_squared(pulse, omega_t, mass_kg));
}

double lorentzian_first_order(double impulse_value, double tau, double omega_t, double mass_kg) {
  if (!positive_finite(omega_t) || !positive_finite(mass_kg) || !(tau >= 0.0)) {
    throw DomainError("lorentzian_first_order: invalid arguments");
  }
  const double kinetic = impulse_value * impulse_value / (2.0 * mass_kg);
  return kinetic / (hbar * omega_t) * std::exp(-2.0 * omega_t * tau);
}

TransportResult evaluate_pulse(const PulseShape& pulse, double omega_t, double mass_kg,
                               double p_budget) {
  TransportResult r;
  r.impulse = impulse(pulse);
  r.kinetic_gain = r.impulse * r.impulse / (2.0 * mass_kg);
  const double x = displacement_squared(pulse, omega_t, mass_kg);
  r.p_first_order = x;
  r.p_exact = -std::expm1(-x);
  r.adiabatic = r.p_exact <= p_budget;
  return r;
}

TransportPlan plan_transport(double distance, double omega_t, double mass_kg, double p_budget,
                             const TransportPlanOptions& opts) {
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    throw DomainError("transport distance must be non-negative");
  }
  if (!positive_finite(omega_t) || !positive_finite(mass_kg)) {
    throw DomainError("trap frequency and mass must be positive");
  }
  if (!(p_budget > 0.0 && p_budget < 1.0)) throw DomainError("excitation budget must be in (0, 1)");
  if (!(opts.settle_fraction > 0.0 && opts.settle_fraction < 1.0)) {
    throw DomainError("settle fraction must be in (0, 1)");
  }

  TransportPlan plan;
  plan.distance = distance;
  plan.omega_t = omega_t;
  plan.mass_kg = mass_kg;
  if (distance == 0.0) {
    plan.result.adiabatic = true;
    return plan;
  }

  const double x0 = mass_kg * omega_t * distance * distance / (2.0 * hbar);
  const double allowed = -std::log1p(-p_budget);
  const double tau_needed = x0 > allowed ? std::log(x0 / allowed) / (2.0 * omega_t) : 0.0;
  const double tau_floor = opts.min_tau_periods * 2.0 * pi / omega_t;
  const double tau = std::max(tau_needed, tau_floor);
  if (tau > opts.max_tau) {
    throw PlanningError("transport needs tau = " + std::to_string(tau) +
                        " s, above the cap of " + std::to_string(opts.max_tau) + " s");
  }

  plan.tau = tau;
  plan.pulse = PulseShape::lorentzian(mass_kg * omega_t * omega_t * distance / pi, tau, omega_t);
  plan.transit_time = 2.0 * tau * std::tan(0.5 * pi * (1.0 - opts.settle_fraction));
  plan.peak_speed = distance / (pi * tau);

  // Integrated in s = t / tau so the rule sees O(1) intervals.
  const double half = 0.5 * plan.transit_time / tau;
  auto energy = [&](double s) {
    const double q = distance * (0.5 + std::atan(s) / pi);
    return 0.5 * mass_kg * omega_t * omega_t * q * q;
  };
  const double action =
      tau * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(energy, -half, half, 15,
                                                                          1e-12);
  plan.phase = -action / hbar;
  plan.result = evaluate_pulse(plan.pulse, omega_t, mass_kg, p_budget);
  return plan;
}

}  // namespace trapspin
