#include "trapspin/circuit_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "trapspin/error.hpp"

namespace trapspin {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  return s;
}

int parse_qubit(const std::string& tok, int line) {
  if (tok.size() < 2 || (tok[0] != 'q' && tok[0] != 'Q')) {
    throw ParseError(line, "expected a qubit like q0, got '" + tok + "'");
  }
  int q = -1;
  const char* first = tok.data() + 1;
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, q);
  if (ec != std::errc() || ptr != last || q < 0) {
    throw ParseError(line, "bad qubit index '" + tok + "'");
  }
  return q;
}

double parse_angle(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad angle '" + tok + "'");
  }
}

struct Syntax {
  GateKind kind;
  int qubits;
  bool angle;
};

const Syntax* lookup(const std::string& name) {
  static const std::pair<const char*, Syntax> table[] = {
      {"X", {GateKind::X, 1, false}},       {"Z", {GateKind::Z, 1, false}},
      {"H", {GateKind::H, 1, false}},       {"P", {GateKind::P, 1, true}},
      {"XOR", {GateKind::XOR, 2, false}},   {"CNOT", {GateKind::XOR, 2, false}},
      {"SWAP", {GateKind::SWAP, 2, false}}, {"PHASE", {GateKind::PHASE, 2, false}},
      {"CZ", {GateKind::PHASE, 2, false}},
  };
  for (const auto& [key, syn] : table) {
    if (name == key) return &syn;
  }
  return nullptr;
}

}  // namespace

Circuit parse_circuit(std::istream& in) {
  Circuit c;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto tok = split(raw);
    if (tok.empty()) continue;
    const Syntax* syn = lookup(upper(tok[0]));
    if (!syn) throw ParseError(line, "unknown gate '" + tok[0] + "'");
    const std::size_t want = 1 + static_cast<std::size_t>(syn->qubits) + (syn->angle ? 1 : 0);
    if (tok.size() != want) {
      throw ParseError(line, upper(tok[0]) + " takes " + std::to_string(want - 1) +
                                 " argument(s), got " + std::to_string(tok.size() - 1));
    }
    LogicalGate g;
    g.kind = syn->kind;
    g.line = line;
    g.a = parse_qubit(tok[1], line);
    if (syn->qubits == 2) {
      g.b = parse_qubit(tok[2], line);
      if (g.a == g.b) throw ParseError(line, "two-qubit gate needs distinct qubits");
    }
    if (syn->angle) g.angle = parse_angle(tok.back(), line);
    c.gates.push_back(g);
  }
  return c;
}

Circuit parse_circuit(std::string_view text) {
  std::istringstream ss{std::string(text)};
  return parse_circuit(ss);
}

Circuit read_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open circuit file '" + path + "'");
  return parse_circuit(in);
}

void write_circuit(std::ostream& os, const Circuit& c) {
  for (const auto& g : c.gates) {
    os << to_string(g.kind) << " q" << g.a;
    if (is_two_qubit(g.kind)) os << " q" << g.b;
    if (g.kind == GateKind::P) os << ' ' << std::setprecision(17) << g.angle;
    os << '\n';
  }
}

}  // namespace trapspin
