"""Trapped-atom spin gates: trap tables, couplings, transport and circuit scheduling."""

from ._core import (
    DomainError,
    NumericalError,
    ParseError,
    PlanningError,
    blue_lattice,
    cnot,
    compile_circuit,
    effective_j,
    fidelity,
    global_phase,
    heisenberg_swap,
    ising_phase_gate,
    logical_unitary,
    plan_transport,
    radial_dipolar_kernel,
    red_lattice,
    run_cli,
    simulate_schedule,
    species,
    swap,
    swap_from_xors,
    xor_gate,
)

__all__ = [
    "DomainError",
    "NumericalError",
    "ParseError",
    "PlanningError",
    "blue_lattice",
    "cnot",
    "compile_circuit",
    "effective_j",
    "fidelity",
    "global_phase",
    "heisenberg_swap",
    "ising_phase_gate",
    "logical_unitary",
    "plan_transport",
    "radial_dipolar_kernel",
    "red_lattice",
    "run_cli",
    "simulate_schedule",
    "species",
    "swap",
    "swap_from_xors",
    "xor_gate",
]
