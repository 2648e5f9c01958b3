#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "trapspin/scheduler.hpp"

namespace trapspin {

/// Parses the line-oriented circuit format. Gate names are case-insensitive,
/// qubits are written q<k>, and '#' starts a comment:
///
///   XOR q0 q1
///   H q2
///   P q0 0.785398   # single-bit phase diag(1, e^{i theta})
///
/// Throws ParseError carrying the offending line number.
Circuit parse_circuit(std::istream& in);
Circuit parse_circuit(std::string_view text);
Circuit read_circuit_file(const std::string& path);

void write_circuit(std::ostream& os, const Circuit& c);

}  // namespace trapspin
