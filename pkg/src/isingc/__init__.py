"""Compile gate networks into pulse-and-delay schedules for all-to-all Ising machines."""
from .circuit import (
    ControlledPhase, Coupling, FrameZ, GateNetwork, SingleQubit, decompose_cphase, normalize,
    parse_circuit, render_circuit,
)
from .compiler import compile, compile_hadamard_baseline, flush, format_trace, stats
from .device import DeviceModel, coupling_time, load_device
from .optimizer import OptimizationOptions, cancel_not_pairs
from .schedule import PulseSchedule, dumps_schedule, loads_schedule
from .simulator import circuit_unitary, schedule_unitary, verify_measurement, verify_unitary

__all__ = [
    "ControlledPhase", "Coupling", "DeviceModel", "FrameZ", "GateNetwork", "OptimizationOptions",
    "PulseSchedule", "SingleQubit", "cancel_not_pairs", "circuit_unitary", "compile",
    "compile_hadamard_baseline", "coupling_time", "decompose_cphase", "dumps_schedule", "flush",
    "format_trace", "load_device", "loads_schedule", "normalize", "parse_circuit",
    "render_circuit", "schedule_unitary", "stats", "verify_measurement", "verify_unitary",
]
