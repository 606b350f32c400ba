"""Dense unitaries for gate networks and pulse schedules, and equivalence checks.

Qubit 0 is the most significant bit of a basis-state index. In the rotating
frame a delay only carries the Ising terms, so its propagator is diagonal and
is applied as per-basis-state phases.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .circuit import ControlledPhase, Coupling, FrameZ, Gate, GateNetwork, SingleQubit, normalize
from .device import DeviceModel
from .schedule import Delay, PulseGroup, PulseSchedule

MAX_QUBITS = 10


class SimulationError(ValueError):
    pass


class ModeMismatchError(SimulationError):
    """Unitary-mode verification asked of a schedule with residual couplings."""


def _check_size(n: int, limit: int) -> None:
    if n > limit:
        raise SimulationError(f"{n} qubits exceeds the simulator limit of {limit}")


def rotation(axis_deg: float, angle_deg: float) -> np.ndarray:
    """exp(-i angle (cos(axis) Ix + sin(axis) Iy))."""
    a = np.deg2rad(angle_deg) / 2
    phi = np.deg2rad(axis_deg)
    c, s = np.cos(a), np.sin(a)
    return np.array(
        [[c, -1j * s * np.exp(-1j * phi)], [-1j * s * np.exp(1j * phi), c]], dtype=complex
    )


def rz(angle_deg: float) -> np.ndarray:
    """exp(-i angle Iz)."""
    a = np.deg2rad(angle_deg) / 2
    return np.diag([np.exp(-1j * a), np.exp(1j * a)])


def z_signs(n: int) -> np.ndarray:
    """``(2**n, n)`` array of Iz eigenvalues times 2 (i.e. +-1) per basis state."""
    idx = np.arange(2**n)
    bits = (idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    return 1 - 2 * bits


def coupling_phases(n: int, angles_rad: dict[tuple[int, int], float]) -> np.ndarray:
    """Diagonal of prod over pairs exp(-i angle 2 Iz Iz)."""
    z = z_signs(n)
    phase = np.zeros(2**n)
    for (i, j), theta in angles_rad.items():
        phase += theta * z[:, i] * z[:, j] / 2
    return np.exp(-1j * phase)


def frame_phases(n: int, angles_deg: dict[int, float]) -> np.ndarray:
    """Diagonal of the tensor product of Rz(angle_q)."""
    z = z_signs(n)
    phase = np.zeros(2**n)
    for q, a in angles_deg.items():
        phase += np.deg2rad(a) * z[:, q] / 2
    return np.exp(-1j * phase)


def apply_1q(U: np.ndarray, gate: np.ndarray, q: int, n: int) -> np.ndarray:
    """Left-multiply ``U`` by ``gate`` acting on qubit ``q``."""
    dim = U.shape[0]
    t = U.reshape((2**q, 2, 2 ** (n - q - 1), dim))
    t = np.einsum("ab,ibjk->iajk", gate, t)
    return t.reshape(dim, dim)


def apply_diag(U: np.ndarray, diag: np.ndarray) -> np.ndarray:
    return diag[:, None] * U


def gate_apply(U: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    if isinstance(gate, SingleQubit):
        return apply_1q(U, rotation(gate.axis_deg, gate.angle_deg), gate.qubit, n)
    if isinstance(gate, FrameZ):
        return apply_1q(U, rz(gate.angle_deg), gate.qubit, n)
    if isinstance(gate, Coupling):
        return apply_diag(
            U, coupling_phases(n, {(gate.q_a, gate.q_b): np.deg2rad(gate.angle_deg)})
        )
    if isinstance(gate, ControlledPhase):
        z = z_signs(n)
        both = (z[:, gate.q_a] == -1) & (z[:, gate.q_b] == -1)
        return apply_diag(U, np.where(both, np.exp(1j * np.deg2rad(gate.phi_deg)), 1.0))
    raise TypeError(f"unknown gate {gate!r}")


def circuit_unitary(network: GateNetwork, max_qubits: int = MAX_QUBITS) -> np.ndarray:
    n = network.n_qubits
    _check_size(n, max_qubits)
    U = np.eye(2**n, dtype=complex)
    for gate in normalize(network):
        U = gate_apply(U, gate, n)
    return U


def gates_unitary(gates: Iterable[Gate], n: int) -> np.ndarray:
    U = np.eye(2**n, dtype=complex)
    for gate in gates:
        U = gate_apply(U, gate, n)
    return U


def delay_phases(device: DeviceModel, seconds: float) -> np.ndarray:
    return coupling_phases(
        device.n_qubits,
        {p: np.pi * J * seconds for p, J in device.couplings_hz.items()},
    )


def schedule_unitary(
    schedule: PulseSchedule,
    device: DeviceModel | None = None,
    max_qubits: int = MAX_QUBITS,
    events: Sequence | None = None,
) -> np.ndarray:
    device = device or schedule.device
    n = device.n_qubits
    _check_size(n, max_qubits)
    U = np.eye(2**n, dtype=complex)
    for e in schedule.events if events is None else events:
        if isinstance(e, Delay):
            U = apply_diag(U, delay_phases(device, e.seconds))
        elif isinstance(e, PulseGroup):
            for p in e.pulses:
                U = apply_1q(U, rotation(p.axis_deg, p.angle_deg), p.qubit, n)
    return U


def frame_corrected(schedule: PulseSchedule, U_sched: np.ndarray) -> np.ndarray:
    """Apply the tensor product of Rz(+final frame) after the physical schedule."""
    return apply_diag(U_sched, frame_phases(schedule.n_qubits, schedule.final_frames))


def trace_distance(U: np.ndarray, V: np.ndarray) -> float:
    """1 - |tr(U^dag V)| / d, blind to global phase."""
    d = U.shape[0]
    return max(0.0, 1.0 - abs(np.vdot(U, V)) / d)


@dataclass(frozen=True)
class VerifyResult:
    passed: bool
    distance: float


def verify_unitary(
    U_circuit: np.ndarray,
    schedule: PulseSchedule,
    device: DeviceModel | None = None,
    tol: float = 1e-9,
) -> VerifyResult:
    if not schedule.is_flushed():
        raise ModeMismatchError(
            "schedule has residual couplings; use measurement mode or compile with flush"
        )
    U = frame_corrected(schedule, schedule_unitary(schedule, device))
    dist = trace_distance(U_circuit, U)
    return VerifyResult(bool(dist < tol), float(dist))


def outcome_probabilities(
    U: np.ndarray, n: int, measured: Sequence[int]
) -> np.ndarray:
    """P[input basis state, measured outcome] marginalized over unmeasured qubits."""
    probs = np.abs(U.T) ** 2  # row = input column of U
    probs = probs.reshape((U.shape[0],) + (2,) * n)
    drop = tuple(1 + q for q in range(n) if q not in measured)
    probs = probs.sum(axis=drop) if drop else probs
    return probs.reshape(U.shape[0], -1)


@dataclass(frozen=True)
class MeasurementResult:
    passed: bool
    max_deviation: float


def verify_measurement(
    U_circuit: np.ndarray,
    schedule: PulseSchedule,
    device: DeviceModel | None = None,
    measured_qubits: Sequence[int] | None = None,
    tol: float = 1e-9,
) -> MeasurementResult:
    n = schedule.n_qubits
    measured = sorted(range(n) if measured_qubits is None else set(measured_qubits))
    U = frame_corrected(schedule, schedule_unitary(schedule, device))
    dev = np.max(np.abs(
        outcome_probabilities(U_circuit, n, measured) - outcome_probabilities(U, n, measured)
    ))
    return MeasurementResult(bool(dev < tol), float(dev))
