#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "trapspin/circuit_io.hpp"
#include "trapspin/error.hpp"
#include "trapspin/gates.hpp"
#include "trapspin/schedule_io.hpp"
#include "trapspin/transport.hpp"

namespace trapspin::cli {

using nlohmann::json;

namespace {

// Strict view of one JSON object: every key must be listed in `allowed`.
class Section {
 public:
  Section(const json& j, std::string where, std::initializer_list<const char*> allowed)
      : j_(j), where_(std::move(where)) {
    if (!j.is_object()) throw DomainError("config: '" + where_ + "' must be an object");
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) throw DomainError("config: unknown key '" + path(key) + "'");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  const json& at(const char* key) const { return j_.at(key); }
  std::string path(const std::string& key) const {
    return where_.empty() ? key : where_ + "." + key;
  }

  template <class T>
  void get(const char* key, T& target) const {
    if (!j_.contains(key)) return;
    try {
      target = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw DomainError("config: '" + path(key) + "' has the wrong type");
    }
  }

  template <class T>
  void get(const char* key, std::optional<T>& target) const {
    if (!j_.contains(key)) return;
    T v{};
    get(key, v);
    target = v;
  }

  void get_bohr(const char* key, double& metres) const {
    if (!j_.contains(key)) return;
    double a0 = 0.0;
    get(key, a0);
    metres = units::bohr_to_m(a0);
  }

 private:
  const json& j_;
  std::string where_;
};

DipoleMode dipole_from(const std::string& s) {
  if (s == "calibrated") return DipoleMode::Calibrated;
  if (s == "first_principles" || s == "first-principles") return DipoleMode::FirstPrinciples;
  throw DomainError("unknown dipole mode '" + s + "'");
}

CouplingMethod method_from(const std::string& s) {
  if (s == "quadrature") return CouplingMethod::Quadrature;
  if (s == "mc" || s == "montecarlo") return CouplingMethod::MonteCarlo;
  throw DomainError("unknown coupling method '" + s + "'");
}

SwapRoute route_from(const std::string& s) {
  if (s == "heisenberg") return SwapRoute::Heisenberg;
  if (s == "xor") return SwapRoute::Xor;
  throw DomainError("unknown swap route '" + s + "'");
}

SingleBitMode single_bit_from(const std::string& s) {
  if (s == "direct") return SingleBitMode::Direct;
  if (s == "header") return SingleBitMode::HeaderMediated;
  throw DomainError("unknown single-bit mode '" + s + "'");
}

DepthMode depth_mode_from(const std::string& s) {
  if (s == "calibrated") return DepthMode::Calibrated;
  if (s == "first_principles" || s == "first-principles") return DepthMode::FirstPrinciples;
  throw DomainError("unknown depth mode '" + s + "'");
}

template <class Fn>
void with_string(const Section& s, const char* key, Fn fn) {
  std::optional<std::string> v;
  s.get(key, v);
  if (v) fn(*v);
}

}  // namespace

void apply_config(Config& cfg, const json& j) {
  const Section top(j, "",
                    {"seed", "format", "out", "species", "tables", "geometry", "scattering",
                     "coupling", "scan", "gatecheck", "transport", "compile", "budget"});
  top.get("seed", cfg.seed);
  top.get("format", cfg.format);
  top.get("out", cfg.out);

  if (top.has("species")) {
    if (!top.at("species").is_array()) throw DomainError("config: 'species' must be an array");
    for (const auto& item : top.at("species")) {
      const Section s(item, "species[]",
                      {"name", "mass_amu", "alpha0_au", "lambda0_nm", "gamma_hz"});
      AtomSpecies sp;
      s.get("name", sp.name);
      s.get("mass_amu", sp.mass_amu);
      s.get("alpha0_au", sp.alpha0_au);
      s.get("lambda0_nm", sp.lambda0_nm);
      s.get("gamma_hz", sp.gamma_hz);
      sp.validate();
      cfg.custom_species.push_back(sp);
    }
  }
  if (top.has("tables")) {
    const Section s(top.at("tables"), "tables", {"lattice", "species", "red", "blue"});
    s.get("lattice", cfg.lattice);
    s.get("species", cfg.species);
    if (s.has("red")) {
      const Section r(s.at("red"), "tables.red",
                      {"wavelength_m", "intensity_w_cm2", "depth_calibration_mhz", "mode"});
      r.get("wavelength_m", cfg.red.wavelength_m);
      r.get("intensity_w_cm2", cfg.red.intensity_w_cm2);
      r.get("depth_calibration_mhz", cfg.red.depth_calibration_mhz);
      with_string(r, "mode", [&](const std::string& v) { cfg.red.mode = depth_mode_from(v); });
    }
    if (s.has("blue")) {
      const Section b(s.at("blue"), "tables.blue",
                      {"rabi_hz", "detuning_hz", "linewidth_hz", "depth_factor"});
      b.get("rabi_hz", cfg.blue.rabi_hz);
      b.get("detuning_hz", cfg.blue.detuning_hz);
      b.get("linewidth_hz", cfg.blue.linewidth_hz);
      b.get("depth_factor", cfg.blue.depth_factor);
    }
  }
  if (top.has("geometry")) {
    const Section s(top.at("geometry"), "geometry", {"a_qr_a0", "a_qz_a0", "a_hr_a0", "a_hz_a0"});
    s.get_bohr("a_qr_a0", cfg.geometry.a_qr);
    s.get_bohr("a_qz_a0", cfg.geometry.a_qz);
    s.get_bohr("a_hr_a0", cfg.geometry.a_hr);
    s.get_bohr("a_hz_a0", cfg.geometry.a_hz);
  }
  if (top.has("scattering")) {
    const Section s(top.at("scattering"), "scattering",
                    {"a_triplet_a0", "a_singlet_a0", "mass_amu", "trap_khz"});
    s.get_bohr("a_triplet_a0", cfg.scattering.a_triplet);
    s.get_bohr("a_singlet_a0", cfg.scattering.a_singlet);
    if (s.has("mass_amu")) {
      double m = 0.0;
      s.get("mass_amu", m);
      cfg.scattering.mass_kg = units::amu_to_kg(m);
    }
    if (s.has("trap_khz")) {
      double k = 0.0;
      s.get("trap_khz", k);
      cfg.scattering.reference_trap = Frequency::from_khz(k);
    }
  }
  if (top.has("coupling")) {
    const Section s(top.at("coupling"), "coupling", {"dipole", "exchange"});
    with_string(s, "dipole", [&](const std::string& v) { cfg.dipole = dipole_from(v); });
    s.get("exchange", cfg.include_exchange);
  }
  if (top.has("scan")) {
    const Section s(top.at("scan"), "scan",
                    {"z0_min_a0", "z0_max_a0", "points", "method", "samples"});
    s.get("z0_min_a0", cfg.z0_min_a0);
    s.get("z0_max_a0", cfg.z0_max_a0);
    s.get("points", cfg.points);
    with_string(s, "method", [&](const std::string& v) { cfg.method = method_from(v); });
    s.get("samples", cfg.samples);
  }
  if (top.has("gatecheck")) {
    const Section s(top.at("gatecheck"), "gatecheck",
                    {"tolerance", "rwa_separations", "rwa_duration_s"});
    s.get("tolerance", cfg.tolerance);
    s.get("rwa_separations", cfg.rwa_separations);
    s.get("rwa_duration_s", cfg.rwa_duration_s);
  }
  if (top.has("transport")) {
    const Section s(top.at("transport"), "transport",
                    {"distance_m", "trap_khz", "mass_amu", "budget", "settle_fraction",
                     "min_tau_periods"});
    s.get("distance_m", cfg.distance_m);
    s.get("trap_khz", cfg.trap_khz);
    s.get("mass_amu", cfg.mass_amu);
    s.get("budget", cfg.transport_budget);
    s.get("settle_fraction", cfg.transport.settle_fraction);
    s.get("min_tau_periods", cfg.transport.min_tau_periods);
  }
  if (top.has("compile")) {
    const Section s(top.at("compile"), "compile",
                    {"n_qubits", "spacing_m", "headers", "gate_z0_a0", "swap_route", "single_bit",
                     "onebit_time_s", "transport_budget", "park", "header_mass_amu",
                     "header_trap_khz"});
    s.get("n_qubits", cfg.reg.n_qubits);
    s.get("spacing_m", cfg.reg.spacing_m);
    if (s.has("headers")) {
      if (!s.at("headers").is_array()) throw DomainError("config: 'compile.headers' must be an array");
      cfg.reg.headers.clear();
      for (const auto& item : s.at("headers")) {
        const Section h(item, "compile.headers[]",
                        {"start_position", "block_first", "block_last"});
        HeaderAtom atom;
        h.get("start_position", atom.start_position);
        h.get("block_first", atom.block_first);
        h.get("block_last", atom.block_last);
        cfg.reg.headers.push_back(atom);
      }
    }
    s.get("gate_z0_a0", cfg.gate_z0_a0);
    with_string(s, "swap_route",
                [&](const std::string& v) { cfg.compile.swap_route = route_from(v); });
    with_string(s, "single_bit",
                [&](const std::string& v) { cfg.compile.single_bit = single_bit_from(v); });
    s.get("onebit_time_s", cfg.compile.onebit_time);
    s.get("transport_budget", cfg.compile.transport_budget);
    s.get("park", cfg.compile.park_between_gates);
    if (s.has("header_mass_amu")) {
      double m = 0.0;
      s.get("header_mass_amu", m);
      cfg.compile.header_mass_kg = units::amu_to_kg(m);
    }
    if (s.has("header_trap_khz")) {
      double k = 0.0;
      s.get("header_trap_khz", k);
      cfg.compile.header_trap = Frequency::from_khz(k);
    }
  }
  if (top.has("budget")) {
    const Section s(top.at("budget"), "budget",
                    {"gamma_eff_hz", "red_scattering_hz", "threshold"});
    s.get("gamma_eff_hz", cfg.gamma_eff_hz);
    s.get("red_scattering_hz", cfg.red_scattering_hz);
    s.get("threshold", cfg.threshold);
  }
}

void load_config_file(Config& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DomainError("config '" + path + "' is not valid JSON: " + e.what());
  }
  apply_config(cfg, j);
}

namespace {

// Writes to --out when given, else to the command's stdout.
void emit(const Config& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw DomainError("cannot write output file '" + cfg.out + "'");
  f << text;
}

std::string format_or(const Config& cfg, const std::string& fallback,
                      std::initializer_list<const char*> allowed, const std::string& command) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw DomainError(command + " does not support --format " + f);
}

json report_json(const TrapReport& r) {
  json j = {{"V_max_MHz", r.v_max.mhz()},
            {"V_max_alt_MHz", r.v_max_alternative.mhz()},
            {"nu_osc_kHz", r.nu_osc.khz()},
            {"a_osc_a0", r.a_osc_bohr()},
            {"E_R_kHz", r.recoil_resonant.khz()},
            {"E_R_lattice_kHz", r.recoil_lattice.khz()},
            {"eta0", r.eta0},
            {"eta_lattice", r.eta_lattice}};
  j["gamma_eff_Hz"] = r.gamma_eff_hz ? json(*r.gamma_eff_hz) : json(nullptr);
  return j;
}

int cmd_tables(const Config& cfg, std::ostream& out) {
  SpeciesRegistry registry;
  for (const auto& s : cfg.custom_species) registry.add(s);
  if (cfg.lattice != "red" && cfg.lattice != "blue") {
    throw DomainError("unknown lattice '" + cfg.lattice + "' (expected red or blue)");
  }
  std::vector<const AtomSpecies*> selected;
  if (cfg.species.empty()) {
    for (const auto& s : registry.all()) selected.push_back(&s);
  } else {
    for (const auto& name : cfg.species) selected.push_back(&registry.get(name));
  }
  std::vector<TrapReport> reports;
  for (const auto* s : selected) {
    reports.push_back(cfg.lattice == "red" ? red_lattice_report(*s, cfg.red)
                                           : blue_lattice_report(*s, cfg.blue));
  }
  const std::string fmt = format_or(cfg, "csv", {"csv", "json"}, "tables");
  std::ostringstream ss;
  if (fmt == "csv") {
    write_trap_csv(ss, reports);
  } else {
    json by_species = json::object();
    for (const auto& r : reports) by_species[r.species] = report_json(r);
    ss << json{{cfg.lattice, by_species}}.dump(2) << '\n';
  }
  emit(cfg, out, ss.str());
  return kOk;
}

int cmd_scan(const Config& cfg, std::ostream& out) {
  if (!(cfg.z0_min_a0 > 0.0) || !(cfg.z0_max_a0 > cfg.z0_min_a0)) {
    throw DomainError("scan needs 0 < z0_min < z0_max");
  }
  if (cfg.points < 2) throw DomainError("scan needs at least 2 points");
  std::vector<double> z0s;
  for (int i = 0; i < cfg.points; ++i) {
    const double a0 = cfg.z0_min_a0 + (cfg.z0_max_a0 - cfg.z0_min_a0) * i / (cfg.points - 1);
    z0s.push_back(units::bohr_to_m(a0));
  }
  EffectiveJOptions opts;
  opts.dipole = cfg.dipole;
  opts.include_exchange = cfg.include_exchange;
  opts.method = cfg.method;
  opts.mc_samples = cfg.samples;
  opts.seed = cfg.seed;
  const auto rows = scan_couplings(cfg.geometry, cfg.scattering, z0s, opts);

  const std::string fmt = format_or(cfg, "csv", {"csv", "json"}, "scan");
  std::ostringstream ss;
  if (fmt == "csv") {
    write_scan_csv(ss, rows);
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"z0_a0", r.z0_a0},
                     {"J_exchange_Hz", r.exchange_hz},
                     {"J_dipolar_Hz", r.dipolar_hz},
                     {"J_total_Hz", r.total_hz},
                     {"method", to_string(r.method)},
                     {"stderr_Hz", r.stderr_hz ? json(*r.stderr_hz) : json(nullptr)},
                     {"J_point_dipole_Hz", r.point_dipole_hz}});
    }
    ss << arr.dump(2) << '\n';
  }
  emit(cfg, out, ss.str());
  return kOk;
}

StirringParams rwa_params(double separation) {
  const double w = 2.0 * constants::pi * 1e3;
  StirringParams p;
  p.omega1 = 0.7 * w;
  p.rabi_s = w;
  p.gamma_e_hz = 0.5e3;
  p.alignment = 1.0;
  p.omega_s = separation * w;
  p.omega2 = p.omega_s + 0.4 * w;
  return p;
}

int cmd_gatecheck(const Config& cfg, std::ostream& out) {
  format_or(cfg, "json", {"json"}, "gatecheck");
  if (cfg.rwa_separations.empty()) throw DomainError("gatecheck needs RWA separations");
  const double pi = constants::pi;
  const Complex i{0.0, 1.0};

  struct Check {
    std::string name;
    Operator target;
    Operator achieved;
  };
  Matrix diag = Matrix::Identity(4, 4);
  diag(0, 0) = -1.0;
  const Operator cz_from_ising = std::exp(i * (pi / 4.0)) * ising_pulse(-pi / 4.0) *
                                 embed(rz_matrix(pi / 2.0), {0}, 2) *
                                 embed(rz_matrix(pi / 2.0), {1}, 2);
  const std::vector<Check> checks{
      {"heisenberg_swap", std::exp(-i * (pi / 4.0)) * swap_operator(0, 1, 2),
       heisenberg_swap(pi / 4.0)},
      {"ising_phase_gate", std::exp(-i * (pi / 4.0)) * Operator(diag), ising_phase_gate()},
      {"swap_from_xors", swap_operator(0, 1, 2), swap_from_xors()},
      {"xor_gate", cnot(0, 1, 2), xor_gate(0, 1, 2)},
      {"cz_dressing", controlled_z(0, 1, 2), cz_from_ising},
  };

  bool pass = true;
  json gates = json::array();
  for (const auto& c : checks) {
    const GateReport r = compare_gates(c.target, c.achieved);
    const bool ok = r.fidelity >= cfg.tolerance && r.max_norm_error < 1e-10;
    pass = pass && ok;
    gates.push_back({{"gate", c.name},
                     {"fidelity", r.fidelity},
                     {"global_phase", r.global_phase},
                     {"max_norm_error", r.max_norm_error},
                     {"pass", ok}});
  }

  std::vector<double> seps = cfg.rwa_separations;
  std::sort(seps.rbegin(), seps.rend());
  json rwa = json::array();
  bool monotone = true;
  bool high_ok = true;
  double prev = 2.0;
  for (double s : seps) {
    const StirringParams p = rwa_params(s);
    const GateReport r = rwa_fidelity(p, cfg.rwa_duration_s, 64);
    if (r.fidelity > prev + 1e-3) monotone = false;
    if (s >= 100.0 && r.fidelity < 0.999) high_ok = false;
    prev = std::min(prev, r.fidelity);
    rwa.push_back({{"separation", s},
                   {"fidelity", r.fidelity},
                   {"steps", r.steps},
                   {"convergence_error", r.convergence_error}});
  }
  pass = pass && monotone && high_ok;

  const json report = {{"tolerance", cfg.tolerance},
                       {"gates", gates},
                       {"rwa", rwa},
                       {"rwa_monotone", monotone},
                       {"rwa_high_separation_ok", high_ok},
                       {"pass", pass}};
  emit(cfg, out, report.dump(2) + "\n");
  return pass ? kOk : kValidation;
}

int cmd_transport(const Config& cfg, std::ostream& out) {
  const std::string fmt = format_or(cfg, "json", {"csv", "json"}, "transport");
  const TransportPlan plan =
      plan_transport(cfg.distance_m, Frequency::from_khz(cfg.trap_khz).angular(),
                     units::amu_to_kg(cfg.mass_amu), cfg.transport_budget, cfg.transport);
  std::ostringstream ss;
  if (fmt == "json") {
    const json j = {{"distance", plan.distance},
                    {"tau", plan.tau},
                    {"transit_time", plan.transit_time},
                    {"p_first_order", plan.result.p_first_order},
                    {"p_exact", plan.result.p_exact},
                    {"phase", plan.phase}};
    ss << j.dump(2) << '\n';
  } else {
    ss.precision(17);
    ss << "distance,tau,transit_time,p_first_order,p_exact,phase\n"
       << plan.distance << ',' << plan.tau << ',' << plan.transit_time << ','
       << plan.result.p_first_order << ',' << plan.result.p_exact << ',' << plan.phase << '\n';
  }
  emit(cfg, out, ss.str());
  return kOk;
}

DecoherenceRates rates_for(const Config& cfg) {
  DecoherenceRates rates;
  rates.red_scattering_hz = cfg.red_scattering_hz;
  if (cfg.gamma_eff_hz) {
    rates.gamma_eff_hz = *cfg.gamma_eff_hz;
  } else {
    SpeciesRegistry registry;
    for (const auto& s : cfg.custom_species) registry.add(s);
    rates.gamma_eff_hz = *blue_lattice_report(registry.get("Rb"), cfg.blue).gamma_eff_hz;
  }
  return rates;
}

int cmd_compile(const Config& cfg, const std::string& circuit_path, std::ostream& out) {
  format_or(cfg, "json", {"json"}, "compile");
  const Circuit circuit = read_circuit_file(circuit_path);
  Register reg = cfg.reg;
  if (reg.n_qubits <= 0) reg.n_qubits = std::max(2, circuit.min_qubits());
  CompileParams params = cfg.compile;
  params.gate_geometry = cfg.geometry.with_z0(units::bohr_to_m(cfg.gate_z0_a0));
  params.scattering = cfg.scattering;
  params.coupling.dipole = cfg.dipole;
  params.coupling.include_exchange = cfg.include_exchange;
  const Schedule s = compile(circuit, reg, params);
  const BudgetReport b = budget(s, rates_for(cfg), cfg.threshold);
  std::ostringstream ss;
  write_schedule(ss, s, b);
  emit(cfg, out, ss.str());
  return kOk;
}

int cmd_simulate(const Config& cfg, const std::string& schedule_path, std::ostream& out) {
  format_or(cfg, "json", {"json"}, "simulate");
  const Schedule s = read_schedule_file(schedule_path);
  const Operator achieved = simulate(s);
  const Operator target =
      logical_unitary(s.circuit, s.n_qubits, static_cast<int>(s.reg.headers.size()));
  const GateReport r = compare_gates(target, achieved);
  const bool pass = r.fidelity >= cfg.tolerance;
  const json j = {{"n_qubits", s.n_qubits},
                  {"n_headers", s.reg.headers.size()},
                  {"primitives", s.primitives.size()},
                  {"total_time", s.total_time},
                  {"fidelity", r.fidelity},
                  {"global_phase", r.global_phase},
                  {"max_norm_error", r.max_norm_error},
                  {"tolerance", cfg.tolerance},
                  {"pass", pass}};
  emit(cfg, out, j.dump(2) + "\n");
  return pass ? kOk : kValidation;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-chain gate, trap and transport calculator", "trapspin"};
  app.require_subcommand(1);

  std::optional<std::string> config_path, out_path, format;
  std::optional<std::uint64_t> seed;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_path, "Output file (default stdout)");
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* tables = app.add_subcommand("tables", "Trap parameter tables for the red or blue lattice");
  common(tables);
  std::optional<std::string> lattice;
  std::vector<std::string> species;
  tables->add_option("--lattice", lattice, "red or blue")->check(CLI::IsMember({"red", "blue"}));
  tables->add_option("--species", species, "Species to include (repeatable)");

  auto* scan = app.add_subcommand("scan", "Averaged exchange and dipolar coupling versus z0");
  common(scan);
  std::optional<double> z0_min, z0_max;
  std::optional<int> points;
  std::optional<std::string> method, dipole;
  std::optional<std::int64_t> samples;
  bool no_exchange = false;
  scan->add_option("--z0-min", z0_min, "Smallest separation, Bohr radii");
  scan->add_option("--z0-max", z0_max, "Largest separation, Bohr radii");
  scan->add_option("--points", points, "Number of separations");
  scan->add_option("--method", method, "quadrature or mc")
      ->check(CLI::IsMember({"quadrature", "mc"}));
  scan->add_option("--samples", samples, "Monte Carlo samples per point");
  scan->add_option("--dipole", dipole, "calibrated or first-principles")
      ->check(CLI::IsMember({"calibrated", "first-principles"}));
  scan->add_flag("--no-exchange", no_exchange, "Drop the exchange term");

  auto* gatecheck = app.add_subcommand("gatecheck", "Verify gate identities and the RWA");
  common(gatecheck);
  std::optional<double> tolerance;
  gatecheck->add_option("--tolerance", tolerance, "Minimum acceptable fidelity");

  auto* transport = app.add_subcommand("transport", "Plan a header-atom transport pulse");
  common(transport);
  std::optional<double> distance, trap_khz, mass_amu, tbudget;
  transport->add_option("--distance", distance, "Distance, m");
  transport->add_option("--trap-khz", trap_khz, "Trap frequency along the transport axis, kHz");
  transport->add_option("--mass-amu", mass_amu, "Atomic mass, amu");
  transport->add_option("--budget", tbudget, "Allowed excitation probability");

  auto* compile_cmd = app.add_subcommand("compile", "Compile a circuit into a timed schedule");
  common(compile_cmd);
  std::string circuit_path;
  std::optional<int> qubits;
  std::optional<std::string> route, single_bit;
  std::optional<double> gate_z0, gamma_eff, red_scatter, threshold;
  bool no_park = false;
  compile_cmd->add_option("circuit", circuit_path, "Circuit text file")->required();
  compile_cmd->add_option("--qubits", qubits, "Register size");
  compile_cmd->add_option("--route", route, "heisenberg or xor")
      ->check(CLI::IsMember({"heisenberg", "xor"}));
  compile_cmd->add_option("--single-bit", single_bit, "direct or header")
      ->check(CLI::IsMember({"direct", "header"}));
  compile_cmd->add_option("--z0", gate_z0, "Header-qubit separation during gates, Bohr radii");
  compile_cmd->add_option("--gamma-eff", gamma_eff, "Header scattering rate, Hz");
  compile_cmd->add_option("--red-scattering", red_scatter, "Qubit scattering rate, Hz");
  compile_cmd->add_option("--threshold", threshold, "Budget ratio that flags the schedule");
  compile_cmd->add_flag("--no-park", no_park, "Leave the header on a site between gates");

  auto* simulate_cmd = app.add_subcommand("simulate", "Check a schedule against its circuit");
  common(simulate_cmd);
  std::string schedule_path;
  std::optional<double> sim_tolerance;
  simulate_cmd->add_option("schedule", schedule_path, "Schedule JSON file")->required();
  simulate_cmd->add_option("--tolerance", sim_tolerance, "Minimum acceptable fidelity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    Config cfg;
    if (config_path) load_config_file(cfg, *config_path);
    if (out_path) cfg.out = *out_path;
    if (seed) cfg.seed = *seed;
    if (format) cfg.format = *format;
    if (lattice) cfg.lattice = *lattice;
    if (!species.empty()) cfg.species = species;
    if (z0_min) cfg.z0_min_a0 = *z0_min;
    if (z0_max) cfg.z0_max_a0 = *z0_max;
    if (points) cfg.points = *points;
    if (method) cfg.method = method_from(*method);
    if (samples) cfg.samples = *samples;
    if (dipole) cfg.dipole = dipole_from(*dipole);
    if (no_exchange) cfg.include_exchange = false;
    if (tolerance) cfg.tolerance = *tolerance;
    if (sim_tolerance) cfg.tolerance = *sim_tolerance;
    if (distance) cfg.distance_m = *distance;
    if (trap_khz) cfg.trap_khz = *trap_khz;
    if (mass_amu) cfg.mass_amu = *mass_amu;
    if (tbudget) cfg.transport_budget = *tbudget;
    if (qubits) cfg.reg.n_qubits = *qubits;
    if (route) cfg.compile.swap_route = route_from(*route);
    if (single_bit) cfg.compile.single_bit = single_bit_from(*single_bit);
    if (gate_z0) cfg.gate_z0_a0 = *gate_z0;
    if (gamma_eff) cfg.gamma_eff_hz = *gamma_eff;
    if (red_scatter) cfg.red_scattering_hz = *red_scatter;
    if (threshold) cfg.threshold = *threshold;
    if (no_park) cfg.compile.park_between_gates = false;
    if (cfg.samples < 1) throw DomainError("samples must be positive");

    if (*tables) return cmd_tables(cfg, out);
    if (*scan) return cmd_scan(cfg, out);
    if (*gatecheck) return cmd_gatecheck(cfg, out);
    if (*transport) return cmd_transport(cfg, out);
    if (*compile_cmd) return cmd_compile(cfg, circuit_path, out);
    if (*simulate_cmd) return cmd_simulate(cfg, schedule_path, out);
    return kValidation;
  } catch (const NumericalError& e) {
    err << "trapspin: numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "trapspin: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace trapspin::cli
