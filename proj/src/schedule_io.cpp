#include "trapspin/schedule_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "trapspin/circuit_io.hpp"
#include "trapspin/error.hpp"

namespace trapspin {

using nlohmann::json;

namespace {

PrimitiveKind kind_from_string(const std::string& s) {
  for (auto k : {PrimitiveKind::Move, PrimitiveKind::SwapStep, PrimitiveKind::IsingPulse,
                 PrimitiveKind::OneBit}) {
    if (to_string(k) == s) return k;
  }
  throw DomainError("unknown primitive kind '" + s + "'");
}

SwapRoute route_from_string(const std::string& s) {
  if (s == "heisenberg") return SwapRoute::Heisenberg;
  if (s == "xor") return SwapRoute::Xor;
  throw DomainError("unknown swap route '" + s + "'");
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw DomainError(std::string("schedule JSON is missing '") + key + "'");
  return j.at(key).get<T>();
}

}  // namespace

json to_json(const Register& reg) {
  json headers = json::array();
  for (const auto& h : reg.headers) {
    headers.push_back(
        {{"start_position", h.start_position}, {"block_first", h.block_first},
         {"block_last", h.block_last}});
  }
  return {{"n_qubits", reg.n_qubits}, {"spacing_m", reg.spacing_m}, {"headers", headers}};
}

Register register_from_json(const json& j) {
  Register reg;
  reg.n_qubits = field<int>(j, "n_qubits");
  reg.spacing_m = field<double>(j, "spacing_m");
  reg.headers.clear();
  for (const auto& h : field<json>(j, "headers")) {
    reg.headers.push_back({field<double>(h, "start_position"), field<int>(h, "block_first"),
                           field<int>(h, "block_last")});
  }
  reg.validate();
  return reg;
}

json to_json(const Primitive& p) {
  json j = {{"kind", to_string(p.kind)}, {"header", p.header},  {"start", p.start},
            {"stop", p.stop},            {"source_gate", p.source_gate}};
  switch (p.kind) {
    case PrimitiveKind::Move:
      j["from"] = p.from;
      j["to"] = p.to;
      j["tau"] = p.tau;
      j["p_exact"] = p.p_exact;
      break;
    case PrimitiveKind::SwapStep:
      j["qubit"] = p.qubit;
      j["route"] = to_string(p.route);
      j["at"] = p.from;
      break;
    case PrimitiveKind::IsingPulse:
      j["qubit"] = p.qubit;
      j["theta"] = p.theta;
      j["at"] = p.from;
      break;
    case PrimitiveKind::OneBit:
      j["target"] = p.on_header ? json("h" + std::to_string(p.header))
                                : json("q" + std::to_string(p.qubit));
      j["gate"] = p.gate;
      j["theta"] = p.theta;
      j["at"] = p.from;
      break;
  }
  return j;
}

Primitive primitive_from_json(const json& j) {
  Primitive p;
  p.kind = kind_from_string(field<std::string>(j, "kind"));
  p.header = field<int>(j, "header");
  p.start = field<double>(j, "start");
  p.stop = field<double>(j, "stop");
  p.source_gate = field<int>(j, "source_gate");
  switch (p.kind) {
    case PrimitiveKind::Move:
      p.from = field<double>(j, "from");
      p.to = field<double>(j, "to");
      p.tau = field<double>(j, "tau");
      p.p_exact = field<double>(j, "p_exact");
      break;
    case PrimitiveKind::SwapStep:
      p.qubit = field<int>(j, "qubit");
      p.route = route_from_string(field<std::string>(j, "route"));
      p.from = p.to = field<double>(j, "at");
      break;
    case PrimitiveKind::IsingPulse:
      p.qubit = field<int>(j, "qubit");
      p.theta = field<double>(j, "theta");
      p.from = p.to = field<double>(j, "at");
      break;
    case PrimitiveKind::OneBit: {
      const auto target = field<std::string>(j, "target");
      if (target.size() < 2 || (target[0] != 'h' && target[0] != 'q')) {
        throw DomainError("bad ONEBIT target '" + target + "'");
      }
      p.on_header = target[0] == 'h';
      if (!p.on_header) p.qubit = std::stoi(target.substr(1));
      p.gate = field<std::string>(j, "gate");
      p.theta = field<double>(j, "theta");
      p.from = p.to = field<double>(j, "at");
      break;
    }
  }
  if (!(p.stop >= p.start)) throw DomainError("primitive ends before it starts");
  return p;
}

json to_json(const BudgetReport& b) {
  json per = json::array();
  for (const auto& c : b.per_primitive) {
    per.push_back({{"index", c.index},
                   {"kind", to_string(c.kind)},
                   {"duration", c.duration},
                   {"fraction", c.fraction}});
  }
  return {{"gate_time", b.gate_time},
          {"transport_time", b.transport_time},
          {"coherence_time", finite_or_null(b.coherence_time)},
          {"limiting_source", b.limiting_source},
          {"ratio", b.ratio},
          {"flagged", b.flagged},
          {"per_primitive", per}};
}

json to_json(const Schedule& s, const std::optional<BudgetReport>& budget) {
  json prims = json::array();
  for (const auto& p : s.primitives) prims.push_back(to_json(p));
  json lines = json::array();
  for (const auto& g : s.circuit.gates) {
    std::ostringstream ss;
    write_circuit(ss, Circuit{{g}});
    std::string line = ss.str();
    line.pop_back();
    lines.push_back(line);
  }
  json j = {{"n_qubits", s.n_qubits},
            {"register", to_json(s.reg)},
            {"circuit", lines},
            {"total_time", s.total_time},
            {"global_phase", s.global_phase},
            {"coupling_hz", s.coupling_hz},
            {"park_suppression", s.park_suppression},
            {"crosstalk_infidelity", s.crosstalk_infidelity},
            {"primitives", prims}};
  if (budget) j["budget"] = to_json(*budget);
  return j;
}

Schedule schedule_from_json(const json& j) {
  Schedule s;
  s.n_qubits = field<int>(j, "n_qubits");
  s.reg = register_from_json(field<json>(j, "register"));
  if (s.reg.n_qubits != s.n_qubits) throw DomainError("register size disagrees with n_qubits");
  std::string text;
  for (const auto& line : field<json>(j, "circuit")) text += line.get<std::string>() + "\n";
  s.circuit = parse_circuit(text);
  s.total_time = field<double>(j, "total_time");
  s.global_phase = field<double>(j, "global_phase");
  s.coupling_hz = field<double>(j, "coupling_hz");
  s.park_suppression = field<double>(j, "park_suppression");
  s.crosstalk_infidelity = field<double>(j, "crosstalk_infidelity");
  for (const auto& p : field<json>(j, "primitives")) s.primitives.push_back(primitive_from_json(p));
  return s;
}

void write_schedule(std::ostream& os, const Schedule& s, const std::optional<BudgetReport>& budget) {
  os << to_json(s, budget).dump(2) << '\n';
}

Schedule read_schedule(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("schedule is not valid JSON: ") + e.what());
  }
  try {
    return schedule_from_json(j);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed schedule: ") + e.what());
  }
}

Schedule read_schedule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open schedule file '" + path + "'");
  return read_schedule(in);
}

}  // namespace trapspin
