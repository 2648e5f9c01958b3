#include "trapspin/gates.hpp"

#include <algorithm>
#include <cmath>

#include "trapspin/error.hpp"
#include "trapspin/units.hpp"

namespace trapspin {

using namespace std::complex_literals;
using constants::pi;

Matrix hadamard_matrix() {
  Matrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Matrix rz_matrix(double phi) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(Complex(0.0, -phi / 2.0));
  m(1, 1) = std::exp(Complex(0.0, phi / 2.0));
  return m;
}

Matrix phase_matrix(double theta) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = std::exp(Complex(0.0, theta));
  return m;
}

Operator cnot(int control, int target, int n_sites) {
  if (control == target) throw DomainError("CNOT control and target must differ");
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return embed(m, {control, target}, n_sites);
}

Operator controlled_z(int a, int b, int n_sites) {
  if (a == b) throw DomainError("CZ sites must differ");
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return embed(m, {a, b}, n_sites);
}

Operator heisenberg_swap(double pulse_area, int i, int j, int n_sites) {
  return expm_h(heisenberg_coupling(i, j, n_sites), pulse_area);
}

Operator ising_pulse(double theta, int i, int j, int n_sites) {
  if (i == j) throw DomainError("Ising pulse sites must differ");
  return expm_h(pauli(Axis::Z, i, n_sites) * pauli(Axis::Z, j, n_sites), theta);
}

Operator ising_phase_gate(int i, int j, int n_sites) {
  // exp(+i a A) = expm_h(A, -a)
  const Operator zz = pauli(Axis::Z, i, n_sites) * pauli(Axis::Z, j, n_sites);
  return expm_h(zz, -pi / 4.0) * expm_h(pauli(Axis::Z, i, n_sites), -pi / 4.0) *
         expm_h(pauli(Axis::Z, j, n_sites), -pi / 4.0);
}

Operator xor_gate(int control, int target, int n_sites) {
  if (control == target) throw DomainError("XOR control and target must differ");
  const Operator h_t = embed(hadamard_matrix(), {target}, n_sites);
  const Operator z_c = pauli(Axis::Z, control, n_sites);
  const Operator z_t = pauli(Axis::Z, target, n_sites);
  return std::exp(Complex(0.0, 5.0 * pi / 4.0)) *
         (h_t * ising_phase_gate(control, target, n_sites) * z_c * z_t * h_t);
}

Operator swap_from_xors(int i, int j, int n_sites) {
  const Operator a = xor_gate(i, j, n_sites);
  return a * xor_gate(j, i, n_sites) * a;
}

void StirringParams::validate() const {
  for (double v : {omega1, omega2, omega_s, rabi_s, gamma_e_hz}) {
    if (!std::isfinite(v)) throw DomainError("stirring parameters must be finite");
  }
  if (!(alignment >= 0.0 && alignment <= 1.0)) {
    throw DomainError("alignment (R.z)^2 must lie in [0, 1]");
  }
  if (j_total_hz && !std::isfinite(*j_total_hz)) throw DomainError("J_E total must be finite");
}

double StirringParams::ising_angular() const {
  return 2.0 * pi * gamma_e_hz * (1.0 - 3.0 * alignment);
}

Operator stirring_hamiltonian(const StirringParams& p, double t) {
  p.validate();
  constexpr int n = 2;
  const Operator z1 = pauli(Axis::Z, 0, n);
  const Operator z2 = pauli(Axis::Z, 1, n);
  const Complex phase = std::exp(Complex(0.0, -2.0 * p.omega_s * t));
  Operator h = p.omega1 * z1 + p.omega2 * z2;
  h += p.rabi_s * (phase * pauli(Axis::Plus, 1, n) + std::conj(phase) * pauli(Axis::Minus, 1, n));
  const double g = 2.0 * pi * p.gamma_e_hz;
  h += g * (heisenberg_coupling(0, 1, n) - (3.0 * p.alignment) * (z1 * z2));
  return h;
}

Operator effective_hamiltonian(const StirringParams& p, Compensation mode) {
  p.validate();
  constexpr int n = 2;
  const Operator z1 = pauli(Axis::Z, 0, n);
  const Operator z2 = pauli(Axis::Z, 1, n);
  if (mode == Compensation::Compensated) {
    const double j = p.j_total_hz ? 2.0 * pi * *p.j_total_hz : p.ising_angular();
    return j * (z1 * z2);
  }
  Operator h = p.ising_angular() * (z1 * z2);
  h += p.omega1 * z1 + (p.omega2 - p.omega_s) * z2;
  h += p.rabi_s * pauli(Axis::X, 1, n);
  return h;
}

Operator compensate_single_atom_terms(const Operator& u, const StirringParams& p,
                                      double duration) {
  p.validate();
  const Operator single =
      p.omega1 * pauli(Axis::Z, 0, 2) + (p.omega2 - p.omega_s) * pauli(Axis::Z, 1, 2);
  return expm_h(single, -duration) * u;
}

GateReport compare_gates(const Operator& target, const Operator& achieved) {
  GateReport r{target, achieved};
  r.fidelity = fidelity(target, achieved);
  r.global_phase = global_phase(target, achieved);
  r.max_norm_error =
      achieved.max_norm_distance(std::exp(Complex(0.0, r.global_phase)) * target);
  return r;
}

double rwa_separation(const StirringParams& p) {
  const double scale = std::max({std::abs(p.omega1), std::abs(p.omega2 - p.omega_s),
                                 std::abs(p.rabi_s), std::abs(2.0 * pi * p.gamma_e_hz)});
  return scale > 0.0 ? std::abs(p.omega_s) / scale : std::numeric_limits<double>::infinity();
}

GateReport rwa_fidelity(const StirringParams& p, double duration, int steps,
                        const RwaOptions& opts) {
  p.validate();
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw DomainError("evolution time must be non-negative");
  }
  if (steps < 1) throw DomainError("rwa_fidelity needs at least one step");

  // Same operator as stirring_hamiltonian, with the static part built once.
  const Operator h_static = stirring_hamiltonian(p, 0.0) -
                            p.rabi_s * (pauli(Axis::Plus, 1, 2) + pauli(Axis::Minus, 1, 2));
  const Operator plus = p.rabi_s * pauli(Axis::Plus, 1, 2);
  const Operator minus = p.rabi_s * pauli(Axis::Minus, 1, 2);
  const HamiltonianFn h = [&](double t) {
    const Complex phase = std::exp(Complex(0.0, -2.0 * p.omega_s * t));
    return h_static + phase * plus + std::conj(phase) * minus;
  };
  Operator prev = evolve_td(h, 0.0, duration, steps, Stepper::Magnus4);
  double conv = std::numeric_limits<double>::infinity();
  while (true) {
    const int next_steps = steps * 2;
    Operator next = evolve_td(h, 0.0, duration, next_steps, Stepper::Magnus4);
    conv = next.max_norm_distance(prev);
    prev = std::move(next);
    steps = next_steps;
    if (conv < opts.convergence_tol) break;
    if (steps * 2 > opts.max_steps) {
      throw NumericalError("rwa_fidelity: step doubling did not converge (distance " +
                           std::to_string(conv) + " at " + std::to_string(steps) + " steps)");
    }
  }

  const Operator frame = expm_h(pauli(Axis::Z, 1, 2), -p.omega_s * duration);
  const Operator rotating = frame * prev;
  const Operator target = expm_h(effective_hamiltonian(p), duration);
  GateReport r = compare_gates(target, rotating);
  r.convergence_error = conv;
  r.steps = steps;
  return r;
}

}  // namespace trapspin
