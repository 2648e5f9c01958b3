#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "trapspin/interactions.hpp"
#include "trapspin/spinops.hpp"
#include "trapspin/transport.hpp"
#include "trapspin/units.hpp"

namespace trapspin {

// ---------------------------------------------------------------------------
// Logical layer

enum class GateKind { X, Z, H, P, XOR, SWAP, PHASE };

std::string to_string(GateKind k);
bool is_two_qubit(GateKind k);

/// A logical gate on register qubits. P is diag(1, e^{i angle}); PHASE is CZ.
struct LogicalGate {
  GateKind kind = GateKind::X;
  int a = 0;
  int b = -1;
  double angle = 0.0;
  int line = 0;  // source line, 0 when built programmatically
};

struct Circuit {
  std::vector<LogicalGate> gates;

  /// 1 + the highest qubit index referenced (0 for an empty circuit).
  int min_qubits() const;
};

/// The ideal unitary of `c` on n_qubits register sites followed by n_extra idle sites.
Operator logical_unitary(const Circuit& c, int n_qubits, int n_extra = 0);

// ---------------------------------------------------------------------------
// Hardware layer

/// A movable header atom that serves the qubit block [block_first, block_last].
/// Positions are in lattice-site units: integer k is "at q_k", k + 0.5 a midpoint.
struct HeaderAtom {
  double start_position = 0.5;
  int block_first = 0;
  int block_last = -1;  // -1: through the last qubit
};

struct Register {
  int n_qubits = 2;
  /// q-atom spacing, lambda_CO2 / 2 by default.
  double spacing_m = constants::co2_wavelength / 2.0;
  std::vector<HeaderAtom> headers{HeaderAtom{}};

  void validate() const;
  /// Index of the header serving every listed qubit; throws DomainError if none.
  int header_for(std::initializer_list<int> qubits) const;
  int block_last(int header) const;
};

enum class SwapRoute { Heisenberg, Xor };
enum class SingleBitMode { Direct, HeaderMediated };

std::string to_string(SwapRoute r);
std::string to_string(SingleBitMode m);

struct CompileParams {
  /// Trap sizes of the gate configuration; z0 is the header-qubit separation during gates.
  TrapGeometry gate_geometry = reference_geometry(units::bohr_to_m(1000.0));
  ScatteringParams scattering = reference_scattering();
  EffectiveJOptions coupling = [] {
    EffectiveJOptions o;
    o.include_exchange = false;
    return o;
  }();

  double header_mass_kg = units::amu_to_kg(87.0);
  /// Header trap frequency along the transport axis (Rb in the blue lattice).
  Frequency header_trap = Frequency::from_khz(982.0);
  double transport_budget = 1e-4;
  TransportPlanOptions transport;

  double onebit_time = 10e-6;  // s
  SwapRoute swap_route = SwapRoute::Heisenberg;
  SingleBitMode single_bit = SingleBitMode::Direct;
  bool park_between_gates = true;
};

enum class PrimitiveKind { Move, SwapStep, IsingPulse, OneBit };
std::string to_string(PrimitiveKind k);

/// One timed physical operation.
struct Primitive {
  PrimitiveKind kind = PrimitiveKind::OneBit;
  int header = 0;
  /// SWAPSTEP/ISING partner qubit, or ONEBIT target qubit when !on_header.
  int qubit = -1;
  bool on_header = false;
  // MOVE
  double from = 0.0;
  double to = 0.0;
  double tau = 0.0;
  double p_exact = 0.0;
  // ISING: exp(-i theta s_hz s_qz). ONEBIT: gate name and angle.
  double theta = 0.0;
  std::string gate;
  SwapRoute route = SwapRoute::Heisenberg;

  double start = 0.0;
  double stop = 0.0;
  int source_gate = -1;

  double duration() const { return stop - start; }
};

struct Schedule {
  int n_qubits = 0;
  Register reg;
  Circuit circuit;  // logical source
  std::vector<Primitive> primitives;
  double total_time = 0.0;
  /// Phase discharged at the end so that simulate() equals the logical unitary exactly.
  double global_phase = 0.0;
  /// Gate-distance coupling used for pulse durations, Hz.
  double coupling_hz = 0.0;
  /// Residual coupling of a parked header to its nearest qubit over the gate coupling.
  double park_suppression = 0.0;
  /// Sum over primitives and idle qubits of (2 pi J_residual dt)^2.
  double crosstalk_infidelity = 0.0;
};

/// Expands every logical gate into header moves, swap steps, Ising pulses and one-bit
/// rotations. Two-qubit gates follow MOVE h->qi, SWAP(h,qi), MOVE h->qj, [one-bit
/// dressing], ISING(h,qj), [one-bit dressing], MOVE h->qi, SWAP(h,qi).
Schedule compile(const Circuit& circuit, const Register& reg, const CompileParams& params = {});

/// Largest register simulate() accepts.
inline constexpr int kMaxSimulatedQubits = 3;
inline constexpr int kMaxSimulatedHeaders = 1;

/// Net unitary of the ideal primitives on (q_0 .. q_{n-1}, h_0 ..), including the
/// recorded global phase. MOVE acts as identity on spins.
Operator simulate(const Schedule& schedule);

/// Unitary of a single primitive on the full simulated register.
Operator primitive_unitary(const Primitive& p, int n_qubits, int n_sites);

struct DecoherenceRates {
  double gamma_eff_hz = 0.0;       // header photon scattering (blue lattice)
  double red_scattering_hz = 0.0;  // qubit photon scattering (CO2 lattice)
};

struct PrimitiveCost {
  int index = 0;
  PrimitiveKind kind = PrimitiveKind::OneBit;
  double duration = 0.0;
  double fraction = 0.0;  // duration / coherence_time
};

struct BudgetReport {
  double gate_time = 0.0;
  double transport_time = 0.0;
  double coherence_time = 0.0;  // s, infinite when all rates are zero
  std::string limiting_source;
  double ratio = 0.0;
  bool flagged = false;
  std::vector<PrimitiveCost> per_primitive;
};

BudgetReport budget(const Schedule& schedule, const DecoherenceRates& rates,
                    double threshold = 1e-2);

}  // namespace trapspin
