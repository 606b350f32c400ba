"""Golden data for the worked example, brute-force oracles, random instance generators."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from scipy.linalg import expm

from .circuit import ControlledPhase, Coupling, FrameZ, GateNetwork, SingleQubit
from .device import DeviceModel, load_device, pair
from .circuit import parse_circuit

FIXTURE_DIR = Path(__file__).resolve().parents[2] / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURE_DIR / name


def load_fig2() -> GateNetwork:
    return parse_circuit(fixture_path("fig2.qc").read_text())


def load_fig3_device() -> DeviceModel:
    return load_device(fixture_path("fig3-device.json").read_text())


def load_golden() -> dict:
    return json.loads(fixture_path("table1-golden.json").read_text())


# -- oracles ---------------------------------------------------------------

def oracle_sign_integrate(
    flips: dict[int, tuple[float, ...]], T: float, p: tuple[int, int], steps: int = 10**6
) -> float:
    """Net evolution time of a pair by sampling its sign at the midpoint of each grid cell."""
    dt = T / steps
    toggles = np.zeros(steps + 1, dtype=np.int8)
    for q in p:
        for t in flips.get(q, ()):
            # first cell whose midpoint lies at or after the flip
            k = int(np.ceil(t / dt - 0.5))
            toggles[min(max(k, 0), steps)] ^= 1
    flipped = np.count_nonzero(np.bitwise_xor.accumulate(toggles[:steps]))
    return float((steps - 2 * flipped) * dt)


_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex) / 2
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex) / 2
_Z = np.array([[1, 0], [0, -1]], dtype=complex) / 2


def _embed(op: np.ndarray, q: int, n: int) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for k in range(n):
        out = np.kron(out, op if k == q else _I)
    return out


def oracle_small_unitary(gates, n: int) -> np.ndarray:
    """Matrix-exponential product of a gate list on ``n <= 3`` qubits."""
    if n > 3:
        raise ValueError("oracle is meant for at most 3 qubits")
    U = np.eye(2**n, dtype=complex)
    for g in gates:
        if isinstance(g, SingleQubit):
            phi, a = np.deg2rad(g.axis_deg), np.deg2rad(g.angle_deg)
            H = a * (np.cos(phi) * _embed(_X, g.qubit, n) + np.sin(phi) * _embed(_Y, g.qubit, n))
        elif isinstance(g, FrameZ):
            H = np.deg2rad(g.angle_deg) * _embed(_Z, g.qubit, n)
        elif isinstance(g, Coupling):
            H = np.deg2rad(g.angle_deg) * 2 * _embed(_Z, g.q_a, n) @ _embed(_Z, g.q_b, n)
        elif isinstance(g, ControlledPhase):
            proj = (_embed(_I / 2 - _Z, g.q_a, n) @ _embed(_I / 2 - _Z, g.q_b, n))
            H = -np.deg2rad(g.phi_deg) * proj
        else:
            raise TypeError(g)
        U = expm(-1j * H) @ U
    return U


# -- random instances ------------------------------------------------------

def random_device(rng: np.random.Generator, n: int, low: float = 20.0, high: float = 100.0):
    couplings = {pair(i, j): float(rng.uniform(low, high)) for i in range(n) for j in range(i + 1, n)}
    return DeviceModel(n, couplings)


def random_gate(rng: np.random.Generator, n: int, kind: str | None = None):
    kinds = ["single", "coupling", "cphase", "frame"] if n > 1 else ["single", "frame"]
    kind = kind or kinds[rng.integers(len(kinds))]
    angle = float(rng.uniform(0, 360))
    if kind == "single":
        if rng.random() < 0.5:
            return SingleQubit(int(rng.integers(n)), 90.0, 90.0)
        return SingleQubit(int(rng.integers(n)), float(rng.uniform(0, 360)), angle)
    if kind == "frame":
        return FrameZ(int(rng.integers(n)), angle)
    a, b = (int(x) for x in rng.choice(n, size=2, replace=False))
    if kind == "coupling":
        return Coupling(a, b, angle)
    return ControlledPhase(a, b, angle)


def random_network(
    rng: np.random.Generator, n: int, max_gates: int = 12, min_targets: int = 1
) -> GateNetwork:
    """Random network of at most ``max_gates`` gates with at least ``min_targets`` pulses.

    Consecutive gates on disjoint qubits are sometimes packed into one layer.
    """
    count = int(rng.integers(max(1, min_targets), max_gates + 1))
    gates = [random_gate(rng, n) for _ in range(count)]
    singles = [i for i, g in enumerate(gates) if isinstance(g, SingleQubit)]
    spots = [i for i in range(count) if i not in singles]
    for i in rng.permutation(spots)[: max(0, min_targets - len(singles))]:
        gates[int(i)] = random_gate(rng, n, "single")
    layers: list[list] = []
    for g in gates:
        if layers and rng.random() < 0.3:
            used = {q for h in layers[-1] for q in h.qubits}
            if not used & set(g.qubits):
                layers[-1].append(g)
                continue
        layers.append([g])
    return GateNetwork(n, tuple(tuple(layer) for layer in layers))


def corpus(seed: int = 2024, size: int = 200, n_range=(2, 5), max_gates: int = 12):
    """Deterministic list of (network, device) instances."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(size):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        out.append((random_network(rng, n, max_gates), random_device(rng, n)))
    return out
