#include "trapspin/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "trapspin/error.hpp"
#include "trapspin/gates.hpp"

namespace trapspin {

using constants::pi;

std::string to_string(GateKind k) {
  switch (k) {
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::P: return "P";
    case GateKind::XOR: return "XOR";
    case GateKind::SWAP: return "SWAP";
    case GateKind::PHASE: return "PHASE";
  }
  return "?";
}

bool is_two_qubit(GateKind k) {
  return k == GateKind::XOR || k == GateKind::SWAP || k == GateKind::PHASE;
}

int Circuit::min_qubits() const {
  int n = 0;
  for (const auto& g : gates) n = std::max({n, g.a + 1, g.b + 1});
  return n;
}

namespace {

Matrix onebit_matrix(const std::string& name, double angle) {
  if (name == "X") return pauli_matrix(Axis::X);
  if (name == "Z") return pauli_matrix(Axis::Z);
  if (name == "H") return hadamard_matrix();
  if (name == "P") return phase_matrix(angle);
  if (name == "RZ") return rz_matrix(angle);
  throw DomainError("unknown one-bit gate '" + name + "'");
}

void check_gate(const LogicalGate& g, int n_qubits) {
  auto bad = [&](int q) { return q < 0 || q >= n_qubits; };
  if (bad(g.a) || (is_two_qubit(g.kind) && bad(g.b))) {
    throw DomainError(to_string(g.kind) + " references a qubit outside the register");
  }
  if (is_two_qubit(g.kind) && g.a == g.b) {
    throw DomainError(to_string(g.kind) + " needs two distinct qubits");
  }
}

}  // namespace

Operator logical_unitary(const Circuit& c, int n_qubits, int n_extra) {
  const int n = n_qubits + n_extra;
  Operator u = Operator::identity(n);
  for (const auto& g : c.gates) {
    check_gate(g, n_qubits);
    switch (g.kind) {
      case GateKind::X:
      case GateKind::Z:
      case GateKind::H:
      case GateKind::P:
        u = embed(onebit_matrix(to_string(g.kind), g.angle), {g.a}, n) * u;
        break;
      case GateKind::XOR:
        u = cnot(g.a, g.b, n) * u;
        break;
      case GateKind::SWAP:
        u = swap_operator(g.a, g.b, n) * u;
        break;
      case GateKind::PHASE:
        u = controlled_z(g.a, g.b, n) * u;
        break;
    }
  }
  return u;
}

void Register::validate() const {
  if (n_qubits < 1) throw DomainError("register needs at least one qubit");
  if (!(spacing_m > 0.0) || !std::isfinite(spacing_m)) {
    throw DomainError("register spacing must be positive");
  }
  if (headers.empty()) throw DomainError("register needs at least one header atom");
  for (std::size_t h = 0; h < headers.size(); ++h) {
    const int last = block_last(static_cast<int>(h));
    const auto& hd = headers[h];
    if (hd.block_first < 0 || last >= n_qubits || hd.block_first > last) {
      throw DomainError("header block out of range");
    }
    if (!std::isfinite(hd.start_position) || hd.start_position < hd.block_first - 0.5 ||
        hd.start_position > last + 0.5 ||
        std::fmod(std::abs(hd.start_position) * 2.0, 1.0) != 0.0) {
      throw DomainError("header start must be a site or midpoint within its block");
    }
    for (std::size_t o = 0; o < h; ++o) {
      if (!(headers[o].block_first > last || block_last(static_cast<int>(o)) < hd.block_first)) {
        throw DomainError("header blocks must be disjoint");
      }
    }
  }
}

int Register::block_last(int header) const {
  const int last = headers.at(static_cast<std::size_t>(header)).block_last;
  return last < 0 ? n_qubits - 1 : last;
}

int Register::header_for(std::initializer_list<int> qubits) const {
  for (std::size_t h = 0; h < headers.size(); ++h) {
    const bool all = std::all_of(qubits.begin(), qubits.end(), [&](int q) {
      return q >= headers[h].block_first && q <= block_last(static_cast<int>(h));
    });
    if (all) return static_cast<int>(h);
  }
  throw DomainError("no header atom can reach the requested qubits");
}

std::string to_string(SwapRoute r) { return r == SwapRoute::Heisenberg ? "heisenberg" : "xor"; }
std::string to_string(SingleBitMode m) {
  return m == SingleBitMode::Direct ? "direct" : "header";
}

std::string to_string(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::Move: return "MOVE";
    case PrimitiveKind::SwapStep: return "SWAPSTEP";
    case PrimitiveKind::IsingPulse: return "ISING_PULSE";
    case PrimitiveKind::OneBit: return "ONEBIT";
  }
  return "?";
}

namespace {

class Compiler {
 public:
  Compiler(const Register& reg, const CompileParams& params) : reg_(reg), params_(params) {
    reg_.validate();
    if (!(params.onebit_time >= 0.0)) throw DomainError("one-bit time must be non-negative");
    const EffectiveJ j = effective_J(params.gate_geometry, params.scattering, params.coupling);
    j_hz_ = j.total_hz();
    if (!std::isfinite(j_hz_) || j_hz_ == 0.0) {
      throw PlanningError("zero coupling at the requested gate separation");
    }
    omega_t_ = params.header_trap.angular();
    for (const auto& h : reg.headers) pos_.push_back(h.start_position);
    sched_.n_qubits = reg.n_qubits;
    sched_.reg = reg;
    sched_.coupling_hz = j_hz_;
  }

  Schedule run(const Circuit& circuit) {
    sched_.circuit = circuit;
    const auto& gates = circuit.gates;
    for (std::size_t k = 0; k < gates.size(); ++k) {
      check_gate(gates[k], reg_.n_qubits);
      src_ = static_cast<int>(k);
      const int used = expand(gates[k]);
      if (params_.park_between_gates && used >= 0 && k + 1 < gates.size()) {
        park(used, gates[k + 1].a);
      }
    }
    sched_.total_time = clock_;
    estimate_crosstalk();
    return std::move(sched_);
  }

 private:
  // Returns the header index left at a site, or -1.
  int expand(const LogicalGate& g) {
    switch (g.kind) {
      case GateKind::X:
      case GateKind::Z:
      case GateKind::H:
      case GateKind::P:
        return single(g);
      case GateKind::XOR: {
        const int h = reg_.header_for({g.a, g.b});
        controlled(h, g.a, g.b, true);
        return h;
      }
      case GateKind::PHASE: {
        const int h = reg_.header_for({g.a, g.b});
        controlled(h, g.a, g.b, false);
        return h;
      }
      case GateKind::SWAP: {
        const int h = reg_.header_for({g.a, g.b});
        controlled(h, g.a, g.b, true);
        controlled(h, g.b, g.a, true);
        controlled(h, g.a, g.b, true);
        return h;
      }
    }
    return -1;
  }

  int single(const LogicalGate& g) {
    const std::string name = to_string(g.kind);
    if (params_.single_bit == SingleBitMode::Direct) {
      onebit(reg_.header_for({g.a}), g.a, false, name, g.angle);
      return -1;
    }
    const int h = reg_.header_for({g.a});
    const double back = pos_[static_cast<std::size_t>(h)];
    move(h, g.a);
    swap_step(h, g.a);
    onebit(h, -1, true, name, g.angle);
    swap_step(h, g.a);
    move(h, back);
    return h;
  }

  // Three-step protocol: the header borrows q_ctrl, interacts with q_tgt, returns it.
  void controlled(int h, int ctrl, int tgt, bool as_xor) {
    move(h, ctrl);
    swap_step(h, ctrl);
    move(h, tgt);
    if (as_xor) onebit(h, tgt, false, "H", 0.0);
    // CZ = e^{i pi/4} exp(+i pi/4 s_hz s_tz) Rz_h(pi/2) Rz_t(pi/2)
    onebit(h, -1, true, "RZ", pi / 2.0);
    onebit(h, tgt, false, "RZ", pi / 2.0);
    ising(h, tgt, -pi / 4.0);
    sched_.global_phase += pi / 4.0;
    if (as_xor) onebit(h, tgt, false, "H", 0.0);
    move(h, ctrl);
    swap_step(h, ctrl);
  }

  void park(int h, int next_target) {
    const double p = pos_[static_cast<std::size_t>(h)];
    if (p != std::floor(p)) return;
    const double lo = reg_.headers[static_cast<std::size_t>(h)].block_first - 0.5;
    const double hi = reg_.block_last(h) + 0.5;
    double dest = next_target < p ? p - 0.5 : p + 0.5;
    if (dest > hi) dest = p - 0.5;
    if (dest < lo) dest = p + 0.5;
    move(h, dest);
  }

  Primitive base(PrimitiveKind kind, int h) const {
    Primitive p;
    p.kind = kind;
    p.header = h;
    p.from = p.to = pos_[static_cast<std::size_t>(h)];
    p.source_gate = src_;
    p.route = params_.swap_route;
    return p;
  }

  void emit(Primitive p, double duration) {
    p.start = clock_;
    p.stop = clock_ + duration;
    clock_ = p.stop;
    sched_.primitives.push_back(std::move(p));
  }

  const TransportPlan& plan_for(double distance) {
    auto it = plans_.find(distance);
    if (it == plans_.end()) {
      it = plans_
               .emplace(distance, plan_transport(distance, omega_t_, params_.header_mass_kg,
                                                 params_.transport_budget, params_.transport))
               .first;
    }
    return it->second;
  }

  void move(int h, double to) {
    Primitive p = base(PrimitiveKind::Move, h);
    p.to = to;
    const double distance = std::abs(to - p.from) * reg_.spacing_m;
    const TransportPlan& plan = plan_for(distance);
    p.tau = plan.tau;
    p.p_exact = plan.result.p_exact;
    pos_[static_cast<std::size_t>(h)] = to;
    emit(std::move(p), plan.transit_time);
  }

  double ising_time(double theta) {
    // exp(-i 2pi J t ZZ) matches exp(-i theta ZZ) up to a sign whenever 2 pi J t = theta mod pi.
    const double period = 1.0 / (2.0 * std::abs(j_hz_));
    const double x = theta / (2.0 * pi * j_hz_);
    const double wraps = std::floor(x / period);
    const double t = x - wraps * period;
    const double k = -std::copysign(1.0, j_hz_) * wraps;
    sched_.global_phase += k * pi;
    return t;
  }

  void ising(int h, int q, double theta) {
    Primitive p = base(PrimitiveKind::IsingPulse, h);
    p.qubit = q;
    const double t = ising_time(theta);
    p.theta = 2.0 * pi * j_hz_ * t;
    emit(std::move(p), t);
  }

  void swap_step(int h, int q) {
    Primitive p = base(PrimitiveKind::SwapStep, h);
    p.qubit = q;
    double t = 0.0;
    if (params_.swap_route == SwapRoute::Heisenberg) {
      t = 1.0 / (8.0 * std::abs(j_hz_));
      sched_.global_phase += pi / 4.0;  // heisenberg_swap(pi/4) = e^{-i pi/4} SWAP
    } else {
      const double quarter = 1.0 / (8.0 * std::abs(j_hz_));
      t = 3.0 * (quarter + 4.0 * params_.onebit_time);
    }
    emit(std::move(p), t);
  }

  void onebit(int h, int q, bool on_header, const std::string& name, double angle) {
    Primitive p = base(PrimitiveKind::OneBit, h);
    p.qubit = on_header ? -1 : q;
    p.on_header = on_header;
    p.gate = name;
    p.theta = angle;
    emit(std::move(p), params_.onebit_time);
  }

  // Point-dipole coupling at a lateral offset of `sites` lattice spacings.
  double residual_hz(double sites) const {
    const double dx = sites * reg_.spacing_m;
    const double z0 = params_.gate_geometry.z0;
    const double r2 = dx * dx + z0 * z0;
    return dipole_strength(std::sqrt(r2), params_.coupling.dipole).value *
           (1.0 - 3.0 * z0 * z0 / r2);
  }

  // Idle qubits are those the header is not sitting on; a header passing over or
  // stopping at a qubit during a MOVE is charged at the nearest midpoint distance.
  void estimate_crosstalk() {
    sched_.park_suppression = std::abs(residual_hz(0.5) / j_hz_);
    double infid = 0.0;
    for (const auto& p : sched_.primitives) {
      const int h = p.header;
      const double lo = std::min(p.from, p.to);
      const double hi = std::max(p.from, p.to);
      for (int q = reg_.headers[static_cast<std::size_t>(h)].block_first; q <= reg_.block_last(h);
           ++q) {
        if (p.kind != PrimitiveKind::Move && p.from == q) continue;
        const double nearest = q < lo ? lo - q : (q > hi ? q - hi : 0.0);
        const double j = residual_hz(std::max(0.5, nearest));
        const double phi = 2.0 * pi * j * p.duration();
        infid += phi * phi;
      }
    }
    sched_.crosstalk_infidelity = infid;
  }

  Register reg_;
  const CompileParams& params_;
  Schedule sched_;
  std::vector<double> pos_;
  std::map<double, TransportPlan> plans_;
  double clock_ = 0.0;
  double j_hz_ = 0.0;
  double omega_t_ = 0.0;
  int src_ = -1;
};

}  // namespace

Schedule compile(const Circuit& circuit, const Register& reg, const CompileParams& params) {
  return Compiler(reg, params).run(circuit);
}

Operator primitive_unitary(const Primitive& p, int n_qubits, int n_sites) {
  const int hs = n_qubits + p.header;
  if (hs >= n_sites || p.header < 0) throw DomainError("primitive references a missing header");
  auto qubit_site = [&](int q) {
    if (q < 0 || q >= n_qubits) throw DomainError("primitive references a missing qubit");
    return q;
  };
  switch (p.kind) {
    case PrimitiveKind::Move:
      return Operator::identity(n_sites);
    case PrimitiveKind::SwapStep:
      return p.route == SwapRoute::Heisenberg
                 ? heisenberg_swap(pi / 4.0, hs, qubit_site(p.qubit), n_sites)
                 : swap_from_xors(hs, qubit_site(p.qubit), n_sites);
    case PrimitiveKind::IsingPulse:
      return ising_pulse(p.theta, hs, qubit_site(p.qubit), n_sites);
    case PrimitiveKind::OneBit:
      return embed(onebit_matrix(p.gate, p.theta), {p.on_header ? hs : qubit_site(p.qubit)},
                   n_sites);
  }
  throw DomainError("unknown primitive kind");
}

Operator simulate(const Schedule& schedule) {
  const int nq = schedule.n_qubits;
  const int nh = static_cast<int>(schedule.reg.headers.size());
  if (nq < 1 || nq > kMaxSimulatedQubits || nh < 1 || nh > kMaxSimulatedHeaders) {
    throw DomainError("simulate: register exceeds the dense cap of " +
                      std::to_string(kMaxSimulatedQubits) + " qubits and " +
                      std::to_string(kMaxSimulatedHeaders) + " header");
  }
  const int n = nq + nh;
  Operator u = Operator::identity(n);
  for (const auto& p : schedule.primitives) {
    if (p.kind == PrimitiveKind::Move) continue;
    u = primitive_unitary(p, nq, n) * u;
  }
  return std::exp(Complex(0.0, schedule.global_phase)) * u;
}

BudgetReport budget(const Schedule& schedule, const DecoherenceRates& rates, double threshold) {
  if (!(rates.gamma_eff_hz >= 0.0) || !(rates.red_scattering_hz >= 0.0)) {
    throw DomainError("decoherence rates must be non-negative");
  }
  BudgetReport r;
  for (const auto& p : schedule.primitives) {
    (p.kind == PrimitiveKind::Move ? r.transport_time : r.gate_time) += p.duration();
  }
  const double worst = std::max(rates.gamma_eff_hz, rates.red_scattering_hz);
  if (worst > 0.0) {
    r.coherence_time = 1.0 / worst;
    r.limiting_source =
        rates.gamma_eff_hz >= rates.red_scattering_hz ? "gamma_eff" : "red_scattering";
    r.ratio = (r.gate_time + r.transport_time) / r.coherence_time;
  } else {
    r.coherence_time = std::numeric_limits<double>::infinity();
    r.limiting_source = "none";
    r.ratio = 0.0;
  }
  r.flagged = r.ratio > threshold;
  for (std::size_t i = 0; i < schedule.primitives.size(); ++i) {
    const auto& p = schedule.primitives[i];
    r.per_primitive.push_back({static_cast<int>(i), p.kind, p.duration(),
                               worst > 0.0 ? p.duration() / r.coherence_time : 0.0});
  }
  return r;
}

}  // namespace trapspin
