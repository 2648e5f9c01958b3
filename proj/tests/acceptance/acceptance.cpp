// Acceptance checks. Prints one PASS/FAIL line per criterion and exits non-zero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "trapspin/circuit_io.hpp"
#include "trapspin/gates.hpp"
#include "trapspin/interactions.hpp"
#include "trapspin/scheduler.hpp"
#include "trapspin/spinops.hpp"
#include "trapspin/transport.hpp"
#include "trapspin/traps.hpp"

using namespace trapspin;

namespace {

constexpr double kPi = constants::pi;
const char* const kSpecies[] = {"Li", "Na", "K", "Rb", "Cs"};

struct Outcome {
  bool pass = false;
  std::string detail;
};

// A reference value is matched when within `rel` of the printed number, or within half a
// unit of its last printed digit when that is looser.
struct Printed {
  std::string text;

  double value() const { return std::stod(text); }
  double half_unit() const {
    const auto dot = text.find('.');
    const int decimals = dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
    return 0.5 * std::pow(10.0, -decimals);
  }
  bool matches(double computed, double rel) const {
    return std::abs(computed - value()) <= std::max(rel * std::abs(value()), half_unit());
  }
};

struct Worst {
  double rel = 0.0;
  std::string worst_label;
  std::vector<std::string> missed;

  void check(const Printed& p, double computed, double rel_tol, const std::string& label) {
    if (!p.matches(computed, rel_tol)) missed.push_back(label);
    const double r = std::abs(computed / p.value() - 1.0);
    if (r > rel) {
      rel = r;
      worst_label = label;
    }
  }
  Outcome outcome() const {
    std::string d = std::to_string(missed.size()) + " misses";
    for (const auto& m : missed) d += " [" + m + "]";
    char buf[64];
    std::snprintf(buf, sizeof buf, ", largest raw deviation %.3g", rel);
    return {missed.empty(), d + buf + " (" + worst_label + ")"};
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome red_table() {
  // Rows: V_max (MHz), nu_osc (kHz), a_osc (a0), E_R (kHz), eta0, eta_CO2.
  const Printed rows[6][5] = {
      {{"181"}, {"185"}, {"334"}, {"364"}, {"458"}},
      {{"432"}, {"239"}, {"247"}, {"172"}, {"156"}},
      {{"778"}, {"573"}, {"433"}, {"347"}, {"295"}},
      {{"64"}, {"25"}, {"8.7"}, {"3.7"}, {"2"}},
      {{"0.39"}, {"0.32"}, {"0.19"}, {"0.15"}, {"0.11"}},
      {{"0.025"}, {"0.018"}, {"0.014"}, {"0.011"}, {"0.009"}},
  };
  const char* names[] = {"V_max", "nu_osc", "a_osc", "E_R", "eta0", "eta_CO2"};
  SpeciesRegistry reg;
  const RedLatticeSpec spec = RedLatticeSpec::calibrated_to(reg.get("Li"), Frequency::from_mhz(181.0));
  Worst w;
  for (int s = 0; s < 5; ++s) {
    const TrapReport r = red_lattice_report(reg.get(kSpecies[s]), spec);
    const double got[6] = {r.v_max.mhz(), r.nu_osc.khz(), r.a_osc_bohr(),
                           r.recoil_resonant.khz(), r.eta0, r.eta_lattice};
    for (int k = 0; k < 6; ++k) {
      w.check(rows[k][s], got[k], 0.03, std::string(kSpecies[s]) + " " + names[k]);
    }
  }
  return w.outcome();
}

Outcome blue_table() {
  const Printed nu[5] = {{"4061"}, {"2530"}, {"1494"}, {"982"}, {"727"}};
  const Printed a[5] = {{"254"}, {"176"}, {"176"}, {"145"}, {"137"}};
  const Printed eta[5] = {{"0.13"}, {"0.1"}, {"0.076"}, {"0.06"}, {"0.05"}};
  const Printed gamma[5] = {{"2.5"}, {"1.6"}, {"0.9"}, {"0.6"}, {"0.5"}};
  SpeciesRegistry reg;
  const BlueLatticeSpec spec;
  Worst w;
  for (int s = 0; s < 5; ++s) {
    const TrapReport r = blue_lattice_report(reg.get(kSpecies[s]), spec);
    const std::string sp = kSpecies[s];
    w.check(nu[s], r.nu_osc.khz(), 0.05, sp + " nu_osc");
    w.check(a[s], r.a_osc_bohr(), 0.05, sp + " a_osc");
    w.check(eta[s], r.eta0, 0.05, sp + " eta");
    // gamma_eff = eta^2 Omega^2 / (4 delta^2) gamma with the computed eta.
    const double g = r.eta0 * r.eta0 * spec.rabi_hz * spec.rabi_hz /
                     (4.0 * spec.detuning_hz * spec.detuning_hz) * spec.linewidth_hz;
    const bool consistent = r.gamma_eff_hz && std::abs(*r.gamma_eff_hz / g - 1.0) < 1e-12;
    if (!consistent) w.missed.push_back(sp + " gamma_eff formula");
    w.check(gamma[s], g, 0.10, sp + " gamma_eff");
  }
  return w.outcome();
}

Outcome coupling_curve() {
  const TrapGeometry g0 = reference_geometry(units::bohr_to_m(1000.0));
  const ScatteringParams scat = reference_scattering();
  std::vector<double> x, y;
  for (double z0a = 100.0; z0a <= 2000.0; z0a += 100.0) {
    const double z0 = units::bohr_to_m(z0a);
    const double j = exchange_strength(g0.with_z0(z0), scat).value;
    x.push_back(z0 * z0);
    y.push_back(std::log(std::abs(j)));
  }
  const auto fit = oracle::fit_line(x, y);
  const double expected = -1.0 / (2.0 * g0.a_z() * g0.a_z());
  const double slope_err = std::abs(fit[0] / expected - 1.0);

  const double amax = std::max(g0.a_r(), g0.a_z());
  double dip_err = 0.0;
  for (double ratio : {10.0, 15.0, 20.0, 40.0}) {
    const double z0 = ratio * amax;
    const double v = dipolar_average(g0.with_z0(z0)).value * z0 * z0 * z0;
    dip_err = std::max(dip_err, std::abs(v / -2.0 - 1.0));
  }

  const double j1000 = effective_J(g0, scat).total_hz();
  const bool ok = slope_err < 1e-6 && dip_err < 0.01 && std::abs(j1000) >= 100.0 &&
                  std::abs(j1000) <= 1e4;
  return {ok, "slope rel err " + fmt("%.2e", slope_err) + ", dipolar z0^3 rel err " +
                  fmt("%.2e", dip_err) + ", |J(1000 a0)| " + fmt("%.1f Hz", std::abs(j1000))};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> aq(100.0, 800.0), ah(50.0, 300.0), ratio(1.5, 6.0);
  int agree = 0;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double qr = aq(rng), qz = aq(rng), hr = ah(rng), hz = ah(rng);
    const double amax = std::max({qr, qz, hr, hz});
    const TrapGeometry g = TrapGeometry::from_bohr(qr, qz, hr, hz, ratio(rng) * amax);
    const double quad = dipolar_average(g).value;
    const CouplingResult mc = dipolar_average_mc(g, 1'000'000, 1000 + k);
    const double z = std::abs(mc.value - quad) / *mc.stderr_value;
    worst = std::max(worst, z);
    agree += z <= 3.0;
  }
  return {agree >= 19, std::to_string(agree) + "/20 within 3 sigma, max " + fmt("%.2f sigma", worst)};
}

Outcome gate_identities() {
  const Complex i{0.0, 1.0};
  Matrix diag = Matrix::Identity(4, 4);
  diag(0, 0) = -1.0;
  const double e1 =
      heisenberg_swap(kPi / 4).max_norm_distance(std::exp(-i * (kPi / 4)) * swap_operator(0, 1, 2));
  const double e2 = ising_phase_gate().max_norm_distance(std::exp(-i * (kPi / 4)) * Operator(diag));
  const GateReport r3 = compare_gates(swap_operator(0, 1, 2), swap_from_xors());
  const double worst = std::max({e1, e2, r3.max_norm_error});
  return {worst < 1e-10, "max-norm errors " + fmt("%.1e", e1) + ", " + fmt("%.1e", e2) + ", " +
                             fmt("%.1e", r3.max_norm_error)};
}

Outcome rwa() {
  const double w = 2.0 * kPi * 1e3;
  const double seps[] = {300.0, 100.0, 10.0, 5.0, 3.0, 2.0, 1.0};
  std::vector<double> f;
  bool high = true;
  for (double s : seps) {
    StirringParams p;
    p.omega1 = 0.7 * w;
    p.rabi_s = w;
    p.gamma_e_hz = 0.5e3;
    p.omega_s = s * w;
    p.omega2 = p.omega_s + 0.4 * w;
    const double measured = rwa_separation(p);
    if (measured < s * (1 - 1e-12) && s >= 100.0) high = false;
    f.push_back(rwa_fidelity(p, 5e-4, 64).fidelity);
    if (s >= 100.0 && f.back() < 0.999) high = false;
  }
  bool monotone = true;
  for (std::size_t k = 1; k < f.size(); ++k) monotone = monotone && f[k] <= f[k - 1] + 1e-3;
  std::string d = "F(100x) " + fmt("%.6f", f[1]) + ", F(10x) " + fmt("%.4f", f[2]) + ", F(1x) " +
                  fmt("%.4f", f.back()) + (monotone ? ", monotone" : ", NOT monotone");
  return {high && monotone, d};
}

Outcome transport() {
  const double m = units::amu_to_kg(87.0);
  const double wt = 2 * kPi * 982e3;

  // p1 vs the exact probability over a grid of strengths and widths.
  double worst_p1 = 0.0;
  for (double f0 : {1e-22, 1e-21, 1e-20, 5e-20}) {
    for (double wtau = 0.5; wtau <= 6.0; wtau += 0.5) {
      const PulseShape p = PulseShape::lorentzian(f0, wtau / wt, wt);
      const double exact = excitation_exact(p, wt, m);
      if (exact >= 1e-2 || exact <= 0.0) continue;
      worst_p1 = std::max(worst_p1, std::abs(excitation_first_order(p, wt, m) / exact - 1.0));
    }
  }
  // The closed form against a direct Fock-space integration.
  const double width = 1.2 / wt, fg = 4e-21;
  std::vector<double> ts, fs;
  for (int k = 0; k < 2001; ++k) {
    const double t = -6 * width + 12 * width * k / 2000.0;
    ts.push_back(t);
    fs.push_back(fg * std::exp(-0.5 * t * t / (width * width)));
  }
  const PulseShape gauss = PulseShape::sampled(ts, fs);
  const double fock = oracle::fock_excitation(
      [&](double t) {
        if (t <= ts.front() || t >= ts.back()) return 0.0;
        const double u = (t - ts.front()) / (ts[1] - ts[0]);
        const auto k = static_cast<std::size_t>(u);
        return fs[k] + (u - static_cast<double>(k)) * (fs[k + 1] - fs[k]);
      },
      wt * ts.front(), wt * ts.back(), m, wt, 40, 40000);
  const double fock_err = std::abs(excitation_exact(gauss, wt, m) / fock - 1.0);
  const double p1_gauss_err =
      fock < 1e-2 ? std::abs(excitation_first_order(gauss, wt, m) / fock - 1.0) : 1.0;

  // ln p affine in omega_t tau.
  std::vector<double> x, y;
  for (double wtau = 0.5; wtau <= 8.0; wtau += 0.25) {
    x.push_back(wtau);
    y.push_back(std::log(excitation_first_order(PulseShape::lorentzian(1e-21, wtau / wt, wt), wt, m)));
  }
  const auto fit = oracle::fit_line(x, y);

  // Reshaping at fixed |F~(omega_t)|: a split pulse with a different impulse.
  const PulseShape single = PulseShape::lorentzian(1e-21, 1.5 / wt, wt);
  const double target = excitation_exact(single, wt, m);
  double reshape = 0.0;
  for (double phi : {0.3, 1.0, 2.0, 2.8}) {
    const double sep = phi / wt, scale = 1.0 / (2.0 * std::abs(std::cos(phi / 2)));
    const PulseShape pair = PulseShape::lorentzian_train(
        {{scale * 1e-21, 1.5 / wt, wt, -sep / 2}, {scale * 1e-21, 1.5 / wt, wt, sep / 2}});
    reshape = std::max(reshape, std::abs(excitation_exact(pair, wt, m) / target - 1.0));
  }

  const bool ok = worst_p1 < 0.05 && p1_gauss_err < 0.05 && fock_err < 1e-5 &&
                  fit[2] < 1e-3 && reshape < 1e-6;
  return {ok, "p1 rel err " + fmt("%.2e", std::max(worst_p1, p1_gauss_err)) + ", Fock check " +
                  fmt("%.1e", fock_err) + ", ln p fit residual " + fmt("%.1e", fit[2]) +
                  " slope " + fmt("%.4f", fit[0]) + ", reshaping " + fmt("%.1e", reshape)};
}

Outcome end_to_end() {
  const std::vector<std::string> gates = {"X q0", "X q1", "H q0", "H q1", "Z q0", "Z q1",
                                          "XOR q0 q1", "XOR q1 q0", "SWAP q0 q1"};
  std::vector<std::string> circuits{""};
  std::vector<std::string> layer{""};
  for (int depth = 1; depth <= 3; ++depth) {
    std::vector<std::string> next;
    for (const auto& c : layer) {
      for (const auto& g : gates) next.push_back(c + g + "\n");
    }
    circuits.insert(circuits.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  Register reg;
  reg.n_qubits = 2;
  int total = 0, bad = 0;
  double worst = 1.0;
  for (const auto& text : circuits) {
    const Circuit c = parse_circuit(text);
    for (SingleBitMode mode : {SingleBitMode::Direct, SingleBitMode::HeaderMediated}) {
      CompileParams p;
      p.single_bit = mode;
      const Operator u = simulate(compile(c, reg, p));
      const double f = fidelity(logical_unitary(c, 2, 1), u);
      worst = std::min(worst, f);
      ++total;
      bad += f < 1.0 - 1e-9;
    }
  }
  return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) +
                        " circuits, min fidelity 1 - " + fmt("%.1e", 1.0 - worst)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"red lattice table", 1.0, red_table},
      {"blue lattice table", 1.0, blue_table},
      {"coupling versus separation", 10.0, coupling_curve},
      {"quadrature versus Monte Carlo", 60.0, oracle_equivalence},
      {"gate identities", 1.0, gate_identities},
      {"rotating-wave approximation", 30.0, rwa},
      {"transport excitation", 10.0, transport},
      {"end-to-end compilation", 30.0, end_to_end},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt <= c.budget_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%s  %-32s %6.2fs  %s%s\n", pass ? "PASS" : "FAIL", c.name, dt, o.detail.c_str(),
                in_time ? "" : "  (over time budget)");
  }
  return failures == 0 ? 0 : 1;
}
