"""Gate network -> pulse schedule, lazily tracking couplings between control qubits."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .circuit import (
    ControlledPhase, Coupling, FrameZ, GateNetwork, SingleQubit, decompose_cphase, normalize,
)
from .device import DeviceModel, pair, pair_key
from .optimizer import (
    OptimizationOptions, cancel_not_pairs, plan_with_signs, reduce_mod_180,
)
from .schedule import Delay, Event, Pulse, PulseGroup, PulseSchedule
from .scheduler import RealizationStep, hadamard_timeline, timeline_events
from .tracker import InternalCompilerError, PhaseLedger, wrap


@dataclass(frozen=True)
class TracePoint:
    label: str
    kind: str  # "realize", "pulse" or "flush"
    target: int | None
    angles: dict[tuple[int, int], float] = field(hash=False)
    step: RealizationStep | None = None

    @property
    def bold(self) -> set[tuple[int, int]]:
        """Pairs whose angle had to be exact at this point."""
        if self.kind != "realize":
            return set()
        return {p for p in self.angles if self.target in p}


@dataclass
class CompiledSchedule(PulseSchedule):
    trace: list[TracePoint] = field(default_factory=list)
    steps: list[RealizationStep] = field(default_factory=list)
    fell_back: bool = False


def _labels():
    for k in itertools.count(1):
        for combo in itertools.product("abcdefghijklmnopqrstuvwxyz", repeat=k):
            yield "".join(combo)


def _closing_nots(events: list[Event]) -> set[int]:
    """Qubits whose NOT ends the event list with no delay after it."""
    out: set[int] = set()
    for e in reversed(events):
        if isinstance(e, Delay):
            break
        out |= {p.qubit for p in e.pulses if p.is_not}
    return out


def flush(
    ledger: PhaseLedger,
    device: DeviceModel,
    options: OptimizationOptions | None = None,
) -> list[Event]:
    """Drive every residual deficit to zero, one isolated pair period at a time."""
    options = options or OptimizationOptions()
    events: list[Event] = []
    for p in sorted(ledger.residuals()):
        if options.mod180:
            reduce_mod_180(ledger, p)
        delta = ledger.deficit[p]
        if delta == 0.0:
            continue
        timeline = hadamard_timeline(device, p, delta)
        ledger.advance(device, timeline)
        events += timeline_events(timeline)
    ledger.snap_all()
    return events


def compile(
    network: GateNetwork,
    device: DeviceModel,
    options: OptimizationOptions | None = None,
    flush_residuals: bool = False,
    fallback: bool = True,
) -> CompiledSchedule:
    """Compile a network into a timed schedule.

    Single-qubit gates are realized one at a time in normalized order; before
    each, one evolution period brings every coupling to the target to its
    required angle while couplings among the other qubits are only tracked.
    With ``flush_residuals`` the leftover deficits are refocused at the end.

    The passes in ``options`` act locally and can lose on a whole circuit
    (negation spends extra NOTs; tracked angles diverge). With ``fallback``
    the unoptimized schedule is returned whenever the optimized one has more
    NOT pulses or a longer duration, flagged by ``fell_back``.
    """
    options = options or OptimizationOptions()
    schedule = _compile(network, device, options, flush_residuals)
    if fallback and options != OptimizationOptions():
        plain = _compile(network, device, OptimizationOptions(), flush_residuals)
        a, b = stats(schedule), stats(plain)
        if a.not_count > b.not_count or a.total_duration > b.total_duration:
            plain.fell_back = True
            return plain
    return schedule


def _compile(
    network: GateNetwork,
    device: DeviceModel,
    options: OptimizationOptions,
    flush_residuals: bool,
) -> CompiledSchedule:
    if device.n_qubits != network.n_qubits:
        raise ValueError(
            f"circuit has {network.n_qubits} qubits, device has {device.n_qubits}"
        )
    ledger = PhaseLedger(network.n_qubits)
    events: list[Event] = []
    trace: list[TracePoint] = []
    steps: list[RealizationStep] = []
    labels = _labels()

    def mark(kind, target, step=None):
        trace.append(TracePoint(next(labels), kind, target, dict(ledger.angle), step))

    for gate in normalize(network):
        if isinstance(gate, Coupling):
            ledger.request_coupling((gate.q_a, gate.q_b), gate.angle_deg)
        elif isinstance(gate, ControlledPhase):
            zz, fa, fb, phase = decompose_cphase(gate.phi_deg, gate.q_a, gate.q_b)
            ledger.request_coupling((zz.q_a, zz.q_b), zz.angle_deg)
            ledger.apply_frame(fa.qubit, fa.angle_deg)
            ledger.apply_frame(fb.qubit, fb.angle_deg)
            ledger.global_phase = wrap(ledger.global_phase + phase)
        elif isinstance(gate, FrameZ):
            ledger.apply_frame(gate.qubit, gate.angle_deg)
        elif isinstance(gate, SingleQubit):
            t = gate.qubit
            step = plan_with_signs(ledger, device, t, options, _closing_nots(events) - {t})
            if not step.empty:
                timeline = step.timeline
                ledger.advance(device, timeline)
                events += timeline_events(timeline)
                steps.append(step)
            ledger.snap_target(t)
            if not step.empty:
                mark("realize", t, step)
            axis = ledger.shift_pulse_axis(t, gate.axis_deg)
            events.append(PulseGroup((Pulse(t, axis, gate.angle_deg),)))
            ledger.reset_pair_angles_on_gate(t)
            mark("pulse", t)
        else:  # pragma: no cover
            raise TypeError(f"unknown gate {gate!r}")

    if flush_residuals:
        flushed = flush(ledger, device, options)
        if flushed:
            events += flushed
            mark("flush", None)

    schedule = CompiledSchedule(
        device=device,
        events=events,
        final_frames=dict(ledger.frame_z),
        residual_deficits=ledger.residuals(),
        global_phase=ledger.global_phase,
        target_gates=network.n_target_gates,
        trace=trace,
        steps=steps,
    )
    if options.cancel_nots:
        schedule = cancel_not_pairs(schedule)
    return schedule


def compile_hadamard_baseline(network: GateNetwork, device: DeviceModel) -> CompiledSchedule:
    """Realize every coupling gate on the spot with a Hadamard isolation period."""
    if device.n_qubits != network.n_qubits:
        raise ValueError(
            f"circuit has {network.n_qubits} qubits, device has {device.n_qubits}"
        )
    ledger = PhaseLedger(network.n_qubits)
    events: list[Event] = []

    def couple(p, angle):
        ledger.request_coupling(p, angle)
        delta = ledger.deficit[pair(*p)]
        timeline = hadamard_timeline(device, p, delta)
        ledger.advance(device, timeline)
        ledger.snap_all()
        events.extend(timeline_events(timeline))

    for gate in normalize(network):
        if isinstance(gate, Coupling):
            couple((gate.q_a, gate.q_b), gate.angle_deg)
        elif isinstance(gate, ControlledPhase):
            zz, fa, fb, phase = decompose_cphase(gate.phi_deg, gate.q_a, gate.q_b)
            couple((zz.q_a, zz.q_b), zz.angle_deg)
            ledger.apply_frame(fa.qubit, fa.angle_deg)
            ledger.apply_frame(fb.qubit, fb.angle_deg)
            ledger.global_phase = wrap(ledger.global_phase + phase)
        elif isinstance(gate, FrameZ):
            ledger.apply_frame(gate.qubit, gate.angle_deg)
        else:
            axis = ledger.shift_pulse_axis(gate.qubit, gate.axis_deg)
            events.append(PulseGroup((Pulse(gate.qubit, axis, gate.angle_deg),)))
            ledger.reset_pair_angles_on_gate(gate.qubit)
    if ledger.residuals():
        raise InternalCompilerError("baseline left residual couplings")
    return CompiledSchedule(
        device=device,
        events=events,
        final_frames=dict(ledger.frame_z),
        residual_deficits={},
        global_phase=ledger.global_phase,
        target_gates=network.n_target_gates,
    )


@dataclass(frozen=True)
class Stats:
    pulse_count: int
    not_count: int
    total_duration: float
    p: int

    def not_bound(self, n_qubits: int) -> int:
        """The ``2 n p`` refocusing-pulse budget."""
        return 2 * n_qubits * self.p


def stats(schedule: PulseSchedule, network: GateNetwork | None = None) -> Stats:
    pulses = schedule.pulses()
    if network is not None:
        p = network.n_target_gates
    else:
        p = schedule.target_gates or 0
    return Stats(
        pulse_count=len(pulses),
        not_count=sum(1 for x in pulses if x.is_not),
        total_duration=schedule.total_duration,
        p=p,
    )


def format_trace(trace: list[TracePoint], n_qubits: int, bold_marker: str = "*") -> str:
    """Table of tracked coupling angles (rounded degrees), one column per trace point."""
    pairs = list(itertools.combinations(range(n_qubits), 2))
    width = max([4] + [len(tp.label) + 2 for tp in trace])
    header = "angle".ljust(7) + "".join(tp.label.rjust(width) for tp in trace)
    lines = [header, "-" * len(header)]
    for p in pairs:
        row = f"{p[0]},{p[1]}".ljust(7)
        for tp in trace:
            value = round(tp.angles[p]) % 360
            cell = f"{value}{bold_marker if p in tp.bold else ''}"
            row += cell.rjust(width)
        lines.append(row)
    return "\n".join(lines) + "\n"


def trace_angles_json(trace: list[TracePoint]) -> dict:
    return {tp.label: {pair_key(p): a for p, a in sorted(tp.angles.items())} for tp in trace}
