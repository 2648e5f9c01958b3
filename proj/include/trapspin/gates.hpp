#pragma once

#include <optional>
#include <vector>

#include "trapspin/spinops.hpp"

namespace trapspin {

// Single-qubit matrices (2x2).
Matrix hadamard_matrix();
/// exp(-i phi sigma_z / 2)
Matrix rz_matrix(double phi);
/// diag(1, e^{i theta})
Matrix phase_matrix(double theta);

/// Canonical CNOT (control on |1>) embedded on n sites.
Operator cnot(int control, int target, int n_sites = 2);
/// Canonical CZ = diag(1,1,1,-1) embedded on n sites.
Operator controlled_z(int a, int b, int n_sites = 2);

/// exp(-i area sigma_i . sigma_j). At area pi/4 this is e^{-i pi/4} SWAP.
Operator heisenberg_swap(double pulse_area, int i = 0, int j = 1, int n_sites = 2);

/// exp(-i theta sigma_iz sigma_jz)
Operator ising_pulse(double theta, int i = 0, int j = 1, int n_sites = 2);

/// e^{i(pi/4) s1z s2z} e^{i(pi/4) s1z} e^{i(pi/4) s2z}, as written; equals
/// e^{-i pi/4} diag(-1, 1, 1, 1).
Operator ising_phase_gate(int i = 0, int j = 1, int n_sites = 2);

/// CNOT built from the Ising phase gate: e^{i 5pi/4} H_t U_phase Z_c Z_t H_t.
/// Equal to the canonical CNOT including global phase.
Operator xor_gate(int control, int target, int n_sites = 2);

/// XOR(i,j) XOR(j,i) XOR(i,j).
Operator swap_from_xors(int i = 0, int j = 1, int n_sites = 2);

/// Parameters of the stirred two-spin model. Spin 1 is the qubit, spin 2 the header.
/// omega* are coefficients of sigma_z in H/hbar (rad/s); gamma_e is in Hz.
struct StirringParams {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega_s = 0.0;
  double rabi_s = 0.0;
  double gamma_e_hz = 0.0;
  /// (R.z)^2 in [0, 1]
  double alignment = 1.0;
  /// Overrides gamma_e (1 - 3 alignment) as the Ising coefficient in compensated mode.
  std::optional<double> j_total_hz;

  void validate() const;
  /// Coefficient of s1z s2z in H_eff/hbar, rad/s.
  double ising_angular() const;
};

/// H_S(t)/hbar in rad/s:
///   w1 s1z + w2 s2z + W_S (s2+ e^{-2i w_S t} + h.c.) + 2pi gamma_e [s1.s2 - 3 s1z s2z (R.z)^2]
/// With sigma_z eigenvalues +-1 the level splitting is 2 w, so the field that the frame
/// e^{i w_S t s2z} holds stationary oscillates at 2 w_S.
Operator stirring_hamiltonian(const StirringParams& p, double t);

enum class Compensation { Raw, Compensated };

/// Raw: 2pi gamma_e (1 - 3 (R.z)^2) s1z s2z + w1 s1z + (w2 - w_S) s2z + W_S (s2+ + s2-).
/// Compensated: the bare Ising term J s1z s2z only.
Operator effective_hamiltonian(const StirringParams& p, Compensation mode = Compensation::Raw);

/// Appends exp(+i (w1 s1z + (w2 - w_S) s2z) T) to a propagator, undoing the single-atom
/// z terms of the effective Hamiltonian. Exact when they commute with the rest (W_S = 0).
Operator compensate_single_atom_terms(const Operator& u, const StirringParams& p, double duration);

struct GateReport {
  Operator target;
  Operator achieved;
  double fidelity = 0.0;
  double global_phase = 0.0;
  /// max |achieved - e^{i phase} target|
  double max_norm_error = 0.0;
  /// Step-doubling distance of the numerical propagator; 0 for closed-form gates.
  double convergence_error = 0.0;
  int steps = 0;
};

GateReport compare_gates(const Operator& target, const Operator& achieved);

struct RwaOptions {
  /// Step doubling continues until successive propagators differ by less than this.
  double convergence_tol = 1e-8;
  int max_steps = 1 << 22;
};

/// Evolves the full stirred Hamiltonian over [0, T], moves to the rotating frame
/// e^{i w_S T s2z}, and compares with exp(-i H_eff T).
GateReport rwa_fidelity(const StirringParams& p, double duration, int steps,
                        const RwaOptions& opts = {});

/// omega_S over the largest other frequency scale (|w1|, |w2 - w_S|, |W_S|, |2pi gamma_e|).
double rwa_separation(const StirringParams& p);

}  // namespace trapspin
