"""Abstract gate networks: types, text format, normalization, controlled-phase sugar.

Text format (one layer per line, ``;`` joins gates into the same layer)::

    qubits 4
    h 0                 # pseudo-Hadamard, a 90 degree pulse about y
    zz 90 0 1           # Ising coupling evolution exp(-i theta 2 IzIz)
    rot 0 180 2 ; ry90 3
    rz 45 1             # abstract frame rotation
    cphase 180 0 2
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass


class CircuitError(ValueError):
    """Raised for malformed circuit text or an invalid network."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class SingleQubit:
    qubit: int
    axis_deg: float
    angle_deg: float

    def __post_init__(self):
        axis = self.axis_deg % 360.0
        object.__setattr__(self, "axis_deg", 0.0 if axis >= 360.0 else axis)

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.qubit,)


@dataclass(frozen=True)
class FrameZ:
    qubit: int
    angle_deg: float

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.qubit,)


@dataclass(frozen=True)
class Coupling:
    q_a: int
    q_b: int
    angle_deg: float

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.q_a, self.q_b)


@dataclass(frozen=True)
class ControlledPhase:
    q_a: int
    q_b: int
    phi_deg: float

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.q_a, self.q_b)


Gate = SingleQubit | FrameZ | Coupling | ControlledPhase


@dataclass(frozen=True)
class GateNetwork:
    n_qubits: int
    layers: tuple[tuple[Gate, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(tuple(layer) for layer in self.layers))
        validate(self)

    @property
    def gates(self) -> list[Gate]:
        return [g for layer in self.layers for g in layer]

    @property
    def n_target_gates(self) -> int:
        """Number of single-qubit gates, i.e. the ``p`` of the pulse-count bounds."""
        return sum(isinstance(g, SingleQubit) for g in self.gates)


def validate(network: GateNetwork) -> None:
    if network.n_qubits < 1:
        raise CircuitError("qubit count must be positive")
    for li, layer in enumerate(network.layers):
        seen: set[int] = set()
        for gate in layer:
            qs = gate.qubits
            for q in qs:
                if not 0 <= q < network.n_qubits:
                    raise CircuitError(f"qubit {q} out of range in layer {li}")
            if len(qs) == 2 and qs[0] == qs[1]:
                raise CircuitError(f"self-coupling on qubit {qs[0]} in layer {li}")
            for q in qs:
                if q in seen:
                    raise CircuitError(f"duplicate qubit {q} within layer {li}")
                seen.add(q)
            for value in _angles(gate):
                if not math.isfinite(value):
                    raise CircuitError(f"non-finite angle in layer {li}")


def _angles(gate: Gate) -> tuple[float, ...]:
    if isinstance(gate, SingleQubit):
        return (gate.axis_deg, gate.angle_deg)
    if isinstance(gate, ControlledPhase):
        return (gate.phi_deg,)
    return (gate.angle_deg,)


# -- parsing ---------------------------------------------------------------

_RY = re.compile(r"ry(.+)$", re.IGNORECASE)


def _number(token: str, col: int, line: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise CircuitError(f"expected a number, got {token!r}", line, col) from None
    if not math.isfinite(value):
        raise CircuitError(f"non-finite number {token!r}", line, col)
    return value


def _index(token: str, col: int, line: int) -> int:
    if not re.fullmatch(r"\d+", token):
        raise CircuitError(f"expected a qubit index, got {token!r}", line, col)
    return int(token)


def _parse_gate(stmt: str, line: int, col0: int) -> Gate:
    # column of each token, 1-based, for error messages
    tokens = [(m.group(), col0 + m.start() + 1) for m in re.finditer(r"\S+", stmt)]
    name, name_col = tokens[0][0].lower(), tokens[0][1]
    args = tokens[1:]

    def need(k: int) -> None:
        if len(args) != k:
            raise CircuitError(f"{name} takes {k} argument(s), got {len(args)}", line, name_col)

    if name == "h":
        need(1)
        return SingleQubit(_index(*args[0], line), 90.0, 90.0)
    if name == "rot":
        need(3)
        return SingleQubit(
            _index(*args[2], line), _number(*args[0], line), _number(*args[1], line)
        )
    if name == "rz":
        need(2)
        return FrameZ(_index(*args[1], line), _number(*args[0], line))
    if name == "zz":
        need(3)
        return Coupling(_index(*args[1], line), _index(*args[2], line), _number(*args[0], line))
    if name == "cphase":
        need(3)
        return ControlledPhase(
            _index(*args[1], line), _index(*args[2], line), _number(*args[0], line)
        )
    m = _RY.fullmatch(name)
    if m:
        need(1)
        return SingleQubit(_index(*args[0], line), 90.0, _number(m.group(1), name_col + 2, line))
    raise CircuitError(f"unknown gate {tokens[0][0]!r}", line, name_col)


def parse_circuit(text: str) -> GateNetwork:
    """Parse circuit source into a validated :class:`GateNetwork`."""
    n_qubits = None
    layers: list[list[Gate]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if n_qubits is None:
            parts = body.split()
            if parts[0].lower() != "qubits" or len(parts) != 2:
                raise CircuitError("first statement must be 'qubits N'", lineno, 1)
            n_qubits = _index(parts[1], body.index(parts[1]) + 1, lineno)
            if n_qubits < 1:
                raise CircuitError("qubit count must be positive", lineno)
            continue
        layer = []
        offset = 0
        for stmt in body.split(";"):
            if not stmt.strip():
                raise CircuitError("empty statement", lineno, offset + 1)
            gate = _parse_gate(stmt, lineno, offset)
            for q in gate.qubits:
                if q >= n_qubits:
                    raise CircuitError(f"qubit {q} out of range (n={n_qubits})", lineno)
            if len(gate.qubits) == 2 and gate.qubits[0] == gate.qubits[1]:
                raise CircuitError(f"self-coupling on qubit {gate.qubits[0]}", lineno)
            layer.append(gate)
            offset += len(stmt) + 1
        used = [q for g in layer for q in g.qubits]
        if len(used) != len(set(used)):
            raise CircuitError("duplicate qubit within a layer", lineno)
        layers.append(layer)
    if n_qubits is None:
        raise CircuitError("missing 'qubits N' header")
    return GateNetwork(n_qubits, tuple(tuple(layer) for layer in layers))


def _fmt(x: float) -> str:
    return repr(float(x)) if x != int(x) else str(int(x))


def render_gate(gate: Gate) -> str:
    if isinstance(gate, SingleQubit):
        if gate.axis_deg == 90.0 and gate.angle_deg == 90.0:
            return f"h {gate.qubit}"
        return f"rot {_fmt(gate.axis_deg)} {_fmt(gate.angle_deg)} {gate.qubit}"
    if isinstance(gate, FrameZ):
        return f"rz {_fmt(gate.angle_deg)} {gate.qubit}"
    if isinstance(gate, Coupling):
        return f"zz {_fmt(gate.angle_deg)} {gate.q_a} {gate.q_b}"
    return f"cphase {_fmt(gate.phi_deg)} {gate.q_a} {gate.q_b}"


def render_circuit(network: GateNetwork) -> str:
    lines = [f"qubits {network.n_qubits}"]
    lines += [" ; ".join(render_gate(g) for g in layer) for layer in network.layers if layer]
    return "\n".join(lines) + "\n"


# -- transformations -------------------------------------------------------

def normalize(network: GateNetwork) -> list[Gate]:
    """Flatten layers, emitting each layer's gates top to bottom (lowest qubit first)."""
    return [g for layer in network.layers for g in sorted(layer, key=lambda g: min(g.qubits))]


def decompose_cphase(phi_deg: float, q_a: int, q_b: int):
    """Split diag(1, 1, 1, e^{i phi}) into Ising-native pieces.

    Returns ``(coupling, frame_a, frame_b, global_phase_deg)`` with
    ``CP(phi) = e^{i phi/4} . Coupling(-phi/2) . Rz_a(phi/2) Rz_b(phi/2)``.
    """
    if q_a == q_b:
        raise CircuitError("controlled phase needs two distinct qubits")
    half = phi_deg / 2.0
    return (
        Coupling(q_a, q_b, -half),
        FrameZ(q_a, half),
        FrameZ(q_b, half),
        phi_deg / 4.0,
    )
