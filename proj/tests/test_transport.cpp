#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "trapspin/error.hpp"
#include "trapspin/transport.hpp"
#include "trapspin/units.hpp"

using namespace trapspin;
using doctest::Approx;

namespace {

constexpr double kPi = constants::pi;
const double kM = units::amu_to_kg(87.0);
const double kW = 2 * kPi * 982e3;

struct Samples {
  std::vector<double> t, f;
};

// Gaussian force envelope on a uniform grid.
Samples gaussian_samples(double f0, double width, int n) {
  Samples s;
  for (int k = 0; k < n; ++k) {
    const double t = -6.0 * width + 12.0 * width * k / (n - 1);
    s.t.push_back(t);
    s.f.push_back(f0 * std::exp(-0.5 * t * t / (width * width)));
  }
  return s;
}

// Linear interpolation of the samples, written independently of PulseShape::force.
double interp(const Samples& s, double t) {
  if (t <= s.t.front() || t >= s.t.back()) return 0.0;
  const double h = s.t[1] - s.t[0];
  const auto k = static_cast<std::size_t>((t - s.t.front()) / h);
  const double u = (t - s.t[k]) / h;
  return (1 - u) * s.f[k] + u * s.f[k + 1];
}

}  // namespace

TEST_CASE("impulse") {
  const double f0 = 3e-20, tau = 1e-6, wn = 5e6;
  CHECK(impulse(PulseShape::lorentzian(f0, tau, wn)) == Approx(kPi * f0 / wn).epsilon(1e-14));
  CHECK(impulse(PulseShape::null()) == 0.0);
  CHECK(impulse(PulseShape::lorentzian(2 * f0, tau, wn)) ==
        Approx(2 * impulse(PulseShape::lorentzian(f0, tau, wn))).epsilon(1e-14));
  const Samples s = gaussian_samples(1e-20, 1e-6, 2001);
  CHECK(impulse(PulseShape::sampled(s.t, s.f)) ==
        Approx(1e-20 * 1e-6 * std::sqrt(2 * kPi)).epsilon(1e-6));
}

TEST_CASE("Lorentzian first order: exponent and closed form") {
  const double f0 = 1e-21, wn = kW;
  for (double tau : {0.5 / kW, 2.0 / kW, 5.0 / kW}) {
    const PulseShape p = PulseShape::lorentzian(f0, tau, wn);
    CHECK(excitation_first_order(p, kW, kM) ==
          Approx(lorentzian_first_order(impulse(p), tau, kW, kM)).epsilon(1e-12));
  }
  const double tau = 2.0 / kW, dt = 0.7 / kW;
  const double ratio = excitation_first_order(PulseShape::lorentzian(f0, tau, wn), kW, kM) /
                       excitation_first_order(PulseShape::lorentzian(f0, tau + dt, wn), kW, kM);
  CHECK(std::log(ratio) / (kW * dt) == Approx(2.0).epsilon(1e-10));
  CHECK(excitation_first_order(PulseShape::null(), kW, kM) == 0.0);
}

TEST_CASE("exact probability bounds and small-amplitude limit") {
  for (double f0 : {1e-24, 1e-21, 1e-18, 1e-15}) {
    const PulseShape p = PulseShape::lorentzian(f0, 1.0 / kW, kW);
    const double pe = excitation_exact(p, kW, kM);
    CHECK(pe >= 0.0);
    CHECK(pe <= 1.0);
    const double p1 = excitation_first_order(p, kW, kM);
    if (p1 < 1e-2) CHECK(pe == Approx(p1).epsilon(0.05));
  }
  const PulseShape tiny = PulseShape::lorentzian(1e-26, 1.0 / kW, kW);
  CHECK(excitation_exact(tiny, kW, kM) ==
        Approx(excitation_first_order(tiny, kW, kM)).epsilon(1e-6));
}

TEST_CASE("sampled spectrum: exact for the interpolant, refined trapezoid converges to it") {
  const Samples s = gaussian_samples(1e-20, 0.2e-6, 401);
  const PulseShape p = PulseShape::sampled(s.t, s.f);
  const auto exact = p.spectrum(kW);
  const auto r1 = p.spectrum(kW, 64);
  const auto r2 = p.spectrum(kW, 128);
  // Trapezoid error is second order in the sub-interval.
  CHECK(std::abs(r2 - exact) / std::abs(r1 - exact) == Approx(0.25).epsilon(0.01));
  const double x_exact = std::norm(exact), x_ref = std::norm(r2);
  CHECK(std::abs(x_ref - x_exact) / x_exact < 1e-6);
}

TEST_CASE("coherent-state probability against a Fock-space integration") {
  const double width = 1.2 / kW;
  for (double f0 : {2e-21, 2e-20}) {
    CAPTURE(f0);
    const Samples s = gaussian_samples(f0, width, 2001);
    const PulseShape p = PulseShape::sampled(s.t, s.f);
    const double oracle_p = oracle::fock_excitation([&](double t) { return interp(s, t); },
                                                    kW * s.t.front(), kW * s.t.back(), kM, kW,
                                                    40, 40000);
    CHECK(excitation_exact(p, kW, kM) == Approx(oracle_p).epsilon(1e-5));
  }
}

TEST_CASE("excitation depends on the pulse only through |F~(omega_t)|") {
  const double f0 = 1e-21, tau = 1.5 / kW;
  const PulseShape single = PulseShape::lorentzian(f0, tau, kW);
  const double target = excitation_exact(single, kW, kM);
  for (double phi : {0.3, 1.0, 2.0, 2.8}) {
    const double sep = phi / kW;
    const double scale = 1.0 / (2.0 * std::abs(std::cos(phi / 2)));
    const PulseShape pair = PulseShape::lorentzian_train(
        {{scale * f0, tau, kW, -sep / 2}, {scale * f0, tau, kW, sep / 2}});
    CHECK(excitation_exact(pair, kW, kM) == Approx(target).epsilon(1e-10));
    // Different impulse, hence different mean speed.
    CHECK(std::abs(impulse(pair) - impulse(single)) > 1e-3 * impulse(single));
  }
}

TEST_CASE("transport plan for Rb in the blue trap") {
  const double d = constants::co2_wavelength / 2;
  const TransportPlan plan = plan_transport(d, kW, kM, 1e-4);
  CHECK(plan.result.p_exact <= 1e-4 * (1 + 1e-9));
  CHECK(plan.result.p_exact == Approx(1e-4).epsilon(1e-6));
  const double periods = plan.tau * kW / (2 * kPi);
  CHECK(periods > 0.5);
  CHECK(periods < 10.0);
  CHECK(plan.transit_time > 2 * plan.tau);
  CHECK(plan.peak_speed == Approx(d / (kPi * plan.tau)).epsilon(1e-14));
  CHECK(impulse(plan.pulse) == Approx(kM * kW * d).epsilon(1e-12));

  const TransportPlan half = plan_transport(d, kW, kM, 0.5e-4);
  CHECK(half.tau - plan.tau == Approx(std::log(2.0) / (2 * kW)).epsilon(1e-4));

  const TransportPlan none = plan_transport(0.0, kW, kM, 1e-4);
  CHECK(none.result.p_exact == 0.0);
  CHECK(none.transit_time == 0.0);
  CHECK(impulse(none.pulse) == 0.0);
}

TEST_CASE("transport planning errors") {
  TransportPlanOptions o;
  o.max_tau = 1e-9;
  CHECK_THROWS_AS(plan_transport(1e-5, kW, kM, 1e-4, o), PlanningError);
  CHECK_THROWS_AS(plan_transport(-1.0, kW, kM, 1e-4), DomainError);
  CHECK_THROWS_AS(plan_transport(1e-5, kW, kM, 0.0), DomainError);
  CHECK_THROWS_AS(PulseShape::sampled({0.0, 0.0}, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(PulseShape::lorentzian(1.0, -1.0, 1.0), DomainError);
}
