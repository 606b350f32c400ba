"""Evolution periods: planning NOT placements, executing them, Hadamard isolation."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .device import DeviceModel, pair
from .schedule import MERGE_TOL_S, Delay, Event, Pulse, PulseGroup
from .tracker import PhaseLedger, SignTimeline

NOT_AXIS_DEG = 0.0


@dataclass(frozen=True)
class RealizationStep:
    """One evolution period that zeroes every deficit touching ``target``.

    ``net`` holds the signed net evolution time demanded of each control's
    coupling to the target; ``not_times`` the NOT pulses realizing it.
    """

    target: int
    T: float
    not_times: dict[int, tuple[float, ...]] = field(default_factory=dict, hash=False)
    net: dict[int, float] = field(default_factory=dict, hash=False)
    reversed: frozenset[int] = frozenset()

    @property
    def empty(self) -> bool:
        return self.T == 0.0

    @property
    def timeline(self) -> SignTimeline:
        return SignTimeline(self.T, self.not_times)

    @property
    def tau(self) -> dict[int, float]:
        return {q: abs(v) for q, v in self.net.items()}


def place_nots(
    target: int,
    net: dict[int, float],
    anchor_start: frozenset[int] | set[int] = frozenset(),
) -> RealizationStep:
    """Choose NOT times so each control's pair with the target nets ``net[q]`` seconds.

    The period is as long as the largest demand. A control needing net ``v``
    spends ``(T - v) / 2`` reversed; by default that interval closes at ``T``,
    for controls in ``anchor_start`` it opens at 0 instead.
    """
    T = max((abs(v) for v in net.values()), default=0.0)
    if T == 0.0:
        return RealizationStep(target, 0.0, {}, dict(net))
    not_times = {}
    for q, v in sorted(net.items()):
        reversed_len = (T - v) / 2.0
        if reversed_len < MERGE_TOL_S:
            continue
        if T - reversed_len < MERGE_TOL_S:
            not_times[q] = (0.0, T)
        elif q in anchor_start:
            not_times[q] = (0.0, reversed_len)
        else:
            not_times[q] = ((T + v) / 2.0, T)
    rev = frozenset(q for q, v in net.items() if v < 0)
    return RealizationStep(target, T, not_times, dict(net), rev)


def control_demands(
    deficits: dict[int, float], device: DeviceModel, target: int
) -> dict[int, float]:
    """Signed net time per control that accrues each (signed) deficit."""
    return {q: d / (180.0 * device.J(q, target)) for q, d in deficits.items()}


def plan_realization(ledger: PhaseLedger, device: DeviceModel, target: int) -> RealizationStep:
    deficits = {
        q: ledger.deficit[pair(q, target)] for q in range(ledger.n_qubits) if q != target
    }
    return place_nots(target, control_demands(deficits, device, target))


def timeline_events(timeline: SignTimeline) -> list[Event]:
    """Delays and NOT groups for a period; near-simultaneous NOTs share a group."""
    marks = sorted((t, q) for q, ts in timeline.flips.items() for t in ts)
    events: list[Event] = []
    prev = 0.0
    i = 0
    while i < len(marks):
        t0 = marks[i][0]
        group = []
        while i < len(marks) and marks[i][0] - t0 < MERGE_TOL_S:
            group.append(marks[i][1])
            i += 1
        if t0 - prev > MERGE_TOL_S:
            events.append(Delay(t0 - prev))
            prev = t0
        events.append(PulseGroup(tuple(Pulse(q, NOT_AXIS_DEG, 180.0) for q in group)))
    if timeline.T - prev > MERGE_TOL_S:
        events.append(Delay(timeline.T - prev))
    return events


def execute_step(
    ledger: PhaseLedger, device: DeviceModel, step: RealizationStep
) -> list[Event]:
    """Advance the ledger through the step and return its events."""
    if step.empty:
        ledger.snap_target(step.target)
        return []
    timeline = step.timeline
    ledger.advance(device, timeline)
    ledger.snap_target(step.target)
    return timeline_events(timeline)


# -- Hadamard isolation ----------------------------------------------------

def _hadamard_entry(r: int, k: int) -> int:
    return -1 if bin(r & k).count("1") % 2 else 1


def hadamard_rows(n_qubits: int, p: tuple[int, int]) -> tuple[int, dict[int, int]]:
    """Slot count and the Sylvester-Hadamard row assigned to each qubit.

    The pair shares row 0 (never flipped); the others take rows 1, 2, ...
    so every other pair's signs are orthogonal over the slots.
    """
    m = 1
    while m < n_qubits:
        m *= 2
    rows = {q: 0 for q in p}
    others = [q for q in range(n_qubits) if q not in p]
    rows.update({q: r for r, q in enumerate(others, start=1)})
    return m, rows


def hadamard_timeline(device: DeviceModel, p: tuple[int, int], angle_deg: float) -> SignTimeline:
    """Sign timeline isolating ``p``; a ``Fraction`` angle gives exact rational flip times."""
    p = pair(*p)
    J = device.J(*p)
    if isinstance(angle_deg, Fraction):
        J = Fraction(J)
    T = abs(angle_deg) / (180 * abs(J))
    if T == 0:
        return SignTimeline(0.0)
    m, rows = hadamard_rows(device.n_qubits, p)
    flips: dict[int, tuple[float, ...]] = {}
    for q, r in rows.items():
        if r == 0:
            continue
        ts = [T * k / m for k in range(1, m) if _hadamard_entry(r, k) != _hadamard_entry(r, k - 1)]
        if _hadamard_entry(r, m - 1) == -1:
            ts.append(T)
        flips[q] = tuple(ts)
    if (J < 0) != (angle_deg < 0):
        # pair must evolve against its coupling: hold one pair qubit flipped
        flips[p[1]] = (0.0, T)
    return SignTimeline(T, flips)


def hadamard_refocus(device: DeviceModel, p: tuple[int, int], angle_deg: float) -> list[Event]:
    """A period in which only ``p`` evolves, by ``angle_deg``."""
    return timeline_events(hadamard_timeline(device, p, angle_deg))
