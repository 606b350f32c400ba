"""Coupling-angle bookkeeping.

The ledger stores, per qubit pair, the *deficit* (required minus achieved
coupling angle) and the achieved angle since the last gate on either qubit
(the quantity tabulated for the worked example).  Per-qubit abstract frames
are virtual z-rotations: ``frame_z[q] = f`` means the abstract state equals
``Rz(f)`` applied to the physical one, so a pulse about axis ``phi`` must be
emitted about ``phi - f``.
"""
from __future__ import annotations

import copy
import itertools
from dataclasses import dataclass, field

from .device import DeviceModel, pair, pair_key

ANGLE_TOL = 1e-6  # degrees


class InternalCompilerError(AssertionError):
    """A compiler invariant was violated (a bug, not bad input)."""


def wrap(deg: float) -> float:
    r = deg % 360.0
    return 0.0 if r >= 360.0 else r


def circular_distance(deg: float) -> float:
    """Distance of an angle from 0 modulo 360."""
    r = wrap(deg)
    return min(r, 360.0 - r)


def is_zero(deg: float, tol: float = ANGLE_TOL) -> bool:
    return circular_distance(deg) < tol


@dataclass(frozen=True)
class SignTimeline:
    """NOT-gate times per qubit inside one evolution period ``[0, T]``."""

    T: float
    flips: dict[int, tuple[float, ...]] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        flips = {q: tuple(sorted(ts)) for q, ts in self.flips.items() if ts}
        for q, ts in flips.items():
            if ts[0] < 0 or ts[-1] > self.T:
                raise ValueError(f"flip on qubit {q} outside [0, {self.T}]")
        object.__setattr__(self, "flips", flips)

    def sign(self, i: int, j: int, t: float) -> int:
        count = sum(1 for q in (i, j) for f in self.flips.get(q, ()) if f <= t)
        return -1 if count % 2 else 1

    def qubit_parity(self, q: int) -> int:
        """+1 when the qubit ends the period in its initial orientation."""
        return -1 if len(self.flips.get(q, ())) % 2 else 1


def net_time(timeline: SignTimeline, p: tuple[int, int], T: float | None = None):
    """Integral of the pair's sign function over the period.

    Pure arithmetic, so exact Fractions in give an exact Fraction out.
    """
    T = timeline.T if T is None else T
    i, j = p
    toggles = sorted(timeline.flips.get(i, ()) + timeline.flips.get(j, ()))
    net = 0 * T
    sign = 1
    prev = 0 * T
    for t in toggles:
        net += sign * (t - prev)
        sign = -sign
        prev = t
    return net + sign * (T - prev)


@dataclass
class PhaseLedger:
    n_qubits: int
    deficit: dict[tuple[int, int], float] = field(default_factory=dict)
    angle: dict[tuple[int, int], float] = field(default_factory=dict)
    frame_z: dict[int, float] = field(default_factory=dict)
    global_phase: float = 0.0

    def __post_init__(self):
        for p in itertools.combinations(range(self.n_qubits), 2):
            self.deficit.setdefault(p, 0.0)
            self.angle.setdefault(p, 0.0)
        for q in range(self.n_qubits):
            self.frame_z.setdefault(q, 0.0)

    def copy(self) -> PhaseLedger:
        return copy.deepcopy(self)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.deficit)

    def request_coupling(self, p: tuple[int, int], angle_deg: float) -> None:
        p = pair(*p)
        self.deficit[p] = wrap(self.deficit[p] + angle_deg)

    def evolve(self, p: tuple[int, int], angle_deg: float) -> None:
        """Record ``angle_deg`` of achieved coupling evolution on a pair."""
        p = pair(*p)
        self.deficit[p] = wrap(self.deficit[p] - angle_deg)
        self.angle[p] = wrap(self.angle[p] + angle_deg)

    def advance(self, device: DeviceModel, timeline: SignTimeline) -> None:
        for p in self.pairs:
            self.evolve(p, 180.0 * device.J(*p) * net_time(timeline, p))

    def target_pairs(self, target: int) -> list[tuple[int, int]]:
        return [p for p in self.pairs if target in p]

    def snap_target(self, target: int, tol: float = ANGLE_TOL) -> None:
        """Check the target's deficits are zero and clear round-off."""
        for p in self.target_pairs(target):
            if not is_zero(self.deficit[p], tol):
                raise InternalCompilerError(
                    f"deficit {self.deficit[p]:.9f} deg left on pair {pair_key(p)}"
                )
            self.angle[p] = wrap(self.angle[p] + self.deficit[p])
            self.deficit[p] = 0.0

    def snap_all(self, tol: float = ANGLE_TOL) -> None:
        for q in range(self.n_qubits):
            self.snap_target(q, tol)

    def reset_pair_angles_on_gate(self, target: int) -> None:
        for p in self.target_pairs(target):
            if not is_zero(self.deficit[p]):
                raise InternalCompilerError(
                    f"gate on qubit {target} with pending deficit on {pair_key(p)}"
                )
            self.deficit[p] = 0.0
            self.angle[p] = 0.0

    def apply_frame(self, qubit: int, angle_deg: float) -> None:
        self.frame_z[qubit] = wrap(self.frame_z[qubit] + angle_deg)

    def shift_pulse_axis(self, qubit: int, axis_deg: float) -> float:
        return wrap(axis_deg - self.frame_z[qubit])

    def residuals(self, tol: float = ANGLE_TOL) -> dict[tuple[int, int], float]:
        return {p: d for p, d in self.deficit.items() if not is_zero(d, tol)}
