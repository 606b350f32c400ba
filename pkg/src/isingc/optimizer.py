"""Optional passes: 180-degree reduction via frames, sign negation, NOT cancellation."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .device import DeviceModel, pair
from .schedule import Delay, Event, PulseGroup, PulseSchedule
from .scheduler import RealizationStep, control_demands, place_nots
from .tracker import PhaseLedger, wrap


@dataclass(frozen=True)
class OptimizationOptions:
    cancel_nots: bool = False
    mod180: bool = False
    negate: bool = False

    def __post_init__(self):
        if self.negate and not self.mod180:
            object.__setattr__(self, "mod180", True)

    @classmethod
    def parse(cls, spec: str | None) -> OptimizationOptions:
        """From a comma list such as ``"cancel,mod180,negate"``."""
        names = {s.strip().lower() for s in (spec or "").split(",") if s.strip()}
        unknown = names - {"cancel", "mod180", "negate"}
        if unknown:
            raise ValueError(f"unknown optimization(s): {', '.join(sorted(unknown))}")
        return cls("cancel" in names, "mod180" in names, "negate" in names)

    def label(self) -> str:
        names = [n for n, on in (("cancel", self.cancel_nots), ("mod180", self.mod180),
                                 ("negate", self.negate)) if on]
        return ",".join(names) or "none"


ALL_OPTION_SETS = [
    OptimizationOptions(c, m, n)
    for c in (False, True)
    for m, n in ((False, False), (True, False), (True, True))
]


def _frame_pair_180(ledger: PhaseLedger, p: tuple[int, int]) -> None:
    # exp(-i pi 2IzIz) = e^{i pi/2} Rz(180) x Rz(180)
    for q in p:
        ledger.apply_frame(q, 180.0)
    ledger.angle[p] = wrap(ledger.angle[p] + 180.0)
    ledger.global_phase = wrap(ledger.global_phase + 90.0)


def reduce_mod_180(ledger: PhaseLedger, p: tuple[int, int]) -> bool:
    """Move 180 degrees of a pair's deficit into frame rotations of both qubits."""
    p = pair(*p)
    if ledger.deficit[p] >= 180.0:
        ledger.deficit[p] = ledger.deficit[p] - 180.0
        _frame_pair_180(ledger, p)
        return True
    return False


def negate_to_quarter(deficit: float) -> tuple[float, bool]:
    """Map a deficit in [0, 180) to (-90, 90]; True when the sign was reversed."""
    if deficit > 90.0:
        return deficit - 180.0, True
    return deficit, False


def plan_with_signs(
    ledger: PhaseLedger,
    device: DeviceModel,
    target: int,
    options: OptimizationOptions,
    anchor_start: frozenset[int] | set[int] = frozenset(),
) -> RealizationStep:
    """Plan a realization period, applying the enabled reductions to ``ledger`` first."""
    signed = {}
    for q in range(ledger.n_qubits):
        if q == target:
            continue
        p = pair(q, target)
        if options.mod180:
            reduce_mod_180(ledger, p)
        d = ledger.deficit[p]
        if options.negate:
            d, flipped = negate_to_quarter(d)
            if flipped:
                ledger.deficit[p] = wrap(d)
                _frame_pair_180(ledger, p)
        signed[q] = d
    if not options.cancel_nots:
        anchor_start = frozenset()
    return place_nots(target, control_demands(signed, device, target), anchor_start)


def _cancel_once(events: list[Event]) -> tuple[list[Event], int]:
    # identical 180-degree pulses on one qubit, no delay and no other pulse on
    # that qubit in between, multiply to -1
    drop: set[tuple[int, int]] = set()  # (event index, qubit)
    pending: dict[int, tuple[int, float]] = {}
    for idx, e in enumerate(events):
        if isinstance(e, Delay):
            if e.seconds > 0:
                pending.clear()
            continue
        for pulse in e.pulses:
            prev = pending.pop(pulse.qubit, None)
            if not pulse.is_not:
                continue
            if prev is not None and abs(wrap(prev[1] - pulse.axis_deg)) < 1e-9:
                drop.add((prev[0], pulse.qubit))
                drop.add((idx, pulse.qubit))
            else:
                pending[pulse.qubit] = (idx, pulse.axis_deg)
    if not drop:
        return events, 0
    out: list[Event] = []
    for idx, e in enumerate(events):
        if isinstance(e, PulseGroup):
            kept = tuple(p for p in e.pulses if (idx, p.qubit) not in drop)
            if not kept:
                continue
            e = PulseGroup(kept)
        if isinstance(e, Delay) and out and isinstance(out[-1], Delay):
            out[-1] = Delay(out[-1].seconds + e.seconds)
            continue
        out.append(e)
    return out, len(drop) // 2


def cancel_not_pairs(schedule: PulseSchedule) -> PulseSchedule:
    """Peephole pass deleting back-to-back identical NOT pulses."""
    events = list(schedule.events)
    removed = 0
    while True:
        events, k = _cancel_once(events)
        if not k:
            break
        removed += k
    return dataclasses.replace(
        schedule,
        events=events,
        global_phase=wrap(schedule.global_phase + 180.0 * removed),
    )
