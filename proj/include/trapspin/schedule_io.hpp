#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "trapspin/scheduler.hpp"

namespace trapspin {

nlohmann::json to_json(const Register& reg);
Register register_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Primitive& p);
Primitive primitive_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BudgetReport& b);

/// {"n_qubits", "register", "total_time", "global_phase", ..., "primitives": [...],
/// "budget": {...}}. Doubles round-trip exactly.
nlohmann::json to_json(const Schedule& s, const std::optional<BudgetReport>& budget = {});
Schedule schedule_from_json(const nlohmann::json& j);

void write_schedule(std::ostream& os, const Schedule& s,
                    const std::optional<BudgetReport>& budget = {});
Schedule read_schedule(std::istream& in);
Schedule read_schedule_file(const std::string& path);

}  // namespace trapspin
