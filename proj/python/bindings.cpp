#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "commands.hpp"
#include "trapspin/circuit_io.hpp"
#include "trapspin/error.hpp"
#include "trapspin/gates.hpp"
#include "trapspin/interactions.hpp"
#include "trapspin/schedule_io.hpp"
#include "trapspin/scheduler.hpp"
#include "trapspin/transport.hpp"
#include "trapspin/traps.hpp"

namespace py = pybind11;
using namespace trapspin;

namespace {

py::dict report_dict(const TrapReport& r) {
  py::dict d;
  d["species"] = r.species;
  d["lattice"] = r.lattice;
  d["V_max_MHz"] = r.v_max.mhz();
  d["V_max_alt_MHz"] = r.v_max_alternative.mhz();
  d["nu_osc_kHz"] = r.nu_osc.khz();
  d["a_osc_a0"] = r.a_osc_bohr();
  d["E_R_kHz"] = r.recoil_resonant.khz();
  d["E_R_lattice_kHz"] = r.recoil_lattice.khz();
  d["eta0"] = r.eta0;
  d["eta_lattice"] = r.eta_lattice;
  d["gamma_eff_Hz"] = r.gamma_eff_hz ? py::object(py::float_(*r.gamma_eff_hz)) : py::none();
  return d;
}

TrapGeometry geometry_a0(double z0_a0, double a_qr, double a_qz, double a_hr, double a_hz) {
  return TrapGeometry::from_bohr(a_qr, a_qz, a_hr, a_hz, z0_a0);
}

SwapRoute route_from(const std::string& s) {
  if (s == "heisenberg") return SwapRoute::Heisenberg;
  if (s == "xor") return SwapRoute::Xor;
  throw DomainError("unknown swap route '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Trap, coupling, gate, transport and scheduling routines";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PlanningError>(m, "PlanningError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("species", [] {
    std::vector<std::string> names;
    for (const auto& s : builtin_species()) names.push_back(s.name);
    return names;
  });
  m.def(
      "red_lattice",
      [](const std::string& name) {
        return report_dict(red_lattice_report(SpeciesRegistry().get(name), RedLatticeSpec{}));
      },
      py::arg("species"));
  m.def(
      "blue_lattice",
      [](const std::string& name) {
        return report_dict(blue_lattice_report(SpeciesRegistry().get(name), BlueLatticeSpec{}));
      },
      py::arg("species"));

  m.def("radial_dipolar_kernel", &radial_dipolar_kernel, py::arg("z"), py::arg("a_r"));
  m.def(
      "effective_j",
      [](double z0_a0, const std::string& method, std::int64_t samples, std::uint64_t seed,
         bool exchange, double a_qr, double a_qz, double a_hr, double a_hz) {
        EffectiveJOptions o;
        o.include_exchange = exchange;
        o.mc_samples = samples;
        o.seed = seed;
        if (method == "mc") {
          o.method = CouplingMethod::MonteCarlo;
        } else if (method != "quadrature") {
          throw DomainError("unknown method '" + method + "'");
        }
        const EffectiveJ j =
            effective_J(geometry_a0(z0_a0, a_qr, a_qz, a_hr, a_hz), reference_scattering(), o);
        py::dict d;
        d["exchange_hz"] = j.exchange_hz;
        d["dipolar_hz"] = j.dipolar_hz;
        d["total_hz"] = j.total_hz();
        d["stderr_hz"] = j.stderr_hz ? py::object(py::float_(*j.stderr_hz)) : py::none();
        return d;
      },
      py::arg("z0_a0"), py::arg("method") = "quadrature", py::arg("samples") = 1'000'000,
      py::arg("seed") = 1, py::arg("exchange") = true, py::arg("a_qr") = 400.0,
      py::arg("a_qz") = 400.0, py::arg("a_hr") = 100.0, py::arg("a_hz") = 100.0);

  m.def("cnot", [](int c, int t, int n) { return cnot(c, t, n).matrix(); }, py::arg("control"),
        py::arg("target"), py::arg("n_sites") = 2);
  m.def("swap", [](int i, int j, int n) { return swap_operator(i, j, n).matrix(); },
        py::arg("i") = 0, py::arg("j") = 1, py::arg("n_sites") = 2);
  m.def("heisenberg_swap", [](double area) { return heisenberg_swap(area).matrix(); },
        py::arg("pulse_area"));
  m.def("ising_phase_gate", [] { return ising_phase_gate().matrix(); });
  m.def("xor_gate", [] { return xor_gate(0, 1, 2).matrix(); });
  m.def("swap_from_xors", [] { return swap_from_xors().matrix(); });
  m.def(
      "fidelity",
      [](const Matrix& u, const Matrix& v) { return fidelity(Operator(u), Operator(v)); },
      py::arg("u"), py::arg("v"));
  m.def(
      "global_phase",
      [](const Matrix& u, const Matrix& v) { return global_phase(Operator(u), Operator(v)); },
      py::arg("u"), py::arg("v"));

  m.def(
      "plan_transport",
      [](double distance, double trap_khz, double mass_amu, double budget) {
        const TransportPlan p = plan_transport(distance, Frequency::from_khz(trap_khz).angular(),
                                               units::amu_to_kg(mass_amu), budget);
        py::dict d;
        d["distance"] = p.distance;
        d["tau"] = p.tau;
        d["transit_time"] = p.transit_time;
        d["p_first_order"] = p.result.p_first_order;
        d["p_exact"] = p.result.p_exact;
        d["phase"] = p.phase;
        return d;
      },
      py::arg("distance"), py::arg("trap_khz") = 982.0, py::arg("mass_amu") = 87.0,
      py::arg("budget") = 1e-4);

  m.def(
      "compile_circuit",
      [](const std::string& text, int n_qubits, const std::string& route, bool header_single_bit) {
        const Circuit c = parse_circuit(text);
        Register reg;
        reg.n_qubits = n_qubits > 0 ? n_qubits : std::max(2, c.min_qubits());
        CompileParams p;
        p.swap_route = route_from(route);
        p.single_bit = header_single_bit ? SingleBitMode::HeaderMediated : SingleBitMode::Direct;
        return to_json(compile(c, reg, p)).dump();
      },
      py::arg("circuit"), py::arg("n_qubits") = 0, py::arg("route") = "heisenberg",
      py::arg("header_single_bit") = false, "Compile circuit text to schedule JSON.");
  m.def(
      "simulate_schedule",
      [](const std::string& schedule_json) {
        return simulate(schedule_from_json(nlohmann::json::parse(schedule_json))).matrix();
      },
      py::arg("schedule_json"));
  m.def(
      "logical_unitary",
      [](const std::string& text, int n_qubits, int n_extra) {
        return logical_unitary(parse_circuit(text), n_qubits, n_extra).matrix();
      },
      py::arg("circuit"), py::arg("n_qubits"), py::arg("n_extra") = 0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"trapspin"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a CLI command in-process; returns (exit_code, stdout, stderr).");
}
