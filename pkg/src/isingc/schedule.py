"""Timed pulse schedules and their JSON form."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .device import DeviceModel, device_from_json, pair_key, parse_pair_key

MERGE_TOL_S = 1e-12


class ScheduleError(ValueError):
    pass


@dataclass(frozen=True)
class Delay:
    seconds: float

    def __post_init__(self):
        if self.seconds < 0:
            raise ScheduleError(f"negative delay {self.seconds}")


@dataclass(frozen=True)
class Pulse:
    qubit: int
    axis_deg: float
    angle_deg: float

    @property
    def is_not(self) -> bool:
        return abs(self.angle_deg % 360.0 - 180.0) < 1e-9


@dataclass(frozen=True)
class PulseGroup:
    pulses: tuple[Pulse, ...]

    def __post_init__(self):
        qs = [p.qubit for p in self.pulses]
        if len(qs) != len(set(qs)):
            raise ScheduleError(f"pulse group touches a qubit twice: {qs}")
        object.__setattr__(self, "pulses", tuple(sorted(self.pulses, key=lambda p: p.qubit)))


Event = Delay | PulseGroup


@dataclass
class PulseSchedule:
    device: DeviceModel
    events: list[Event] = field(default_factory=list)
    final_frames: dict[int, float] = field(default_factory=dict)
    residual_deficits: dict[tuple[int, int], float] = field(default_factory=dict)
    global_phase: float = 0.0
    target_gates: int | None = None

    @property
    def n_qubits(self) -> int:
        return self.device.n_qubits

    @property
    def total_duration(self) -> float:
        return sum(e.seconds for e in self.events if isinstance(e, Delay))

    def pulses(self) -> list[Pulse]:
        return [p for e in self.events if isinstance(e, PulseGroup) for p in e.pulses]

    def is_flushed(self, tol: float = 1e-6) -> bool:
        return all(min(d % 360.0, 360.0 - d % 360.0) < tol for d in self.residual_deficits.values())


def _r3(x: float) -> float:
    value = round(float(x), 3)
    return 0.0 if value == 0 else value  # no "-0.0"


def schedule_to_json(schedule: PulseSchedule) -> dict:
    events = []
    for e in schedule.events:
        if isinstance(e, Delay):
            events.append({"delay_us": _r3(e.seconds * 1e6)})
        else:
            events.append({"pulses": [
                {"q": p.qubit, "axis_deg": _r3(p.axis_deg), "angle_deg": _r3(p.angle_deg)}
                for p in e.pulses
            ]})
    out = {
        "device": schedule.device.to_json(),
        "events": events,
        "final_frames_deg": {str(q): _r3(f) for q, f in sorted(schedule.final_frames.items())},
        "residual_deficits_deg": {
            pair_key(p): _r3(d) for p, d in sorted(schedule.residual_deficits.items())
        },
        "global_phase_deg": _r3(schedule.global_phase),
    }
    if schedule.target_gates is not None:
        out["target_gates"] = schedule.target_gates
    return out


def dumps_schedule(schedule: PulseSchedule) -> str:
    return json.dumps(schedule_to_json(schedule), indent=1) + "\n"


def schedule_from_json(data: dict) -> PulseSchedule:
    try:
        device = device_from_json(data["device"])
        events: list[Event] = []
        for e in data["events"]:
            if "delay_us" in e:
                events.append(Delay(float(e["delay_us"]) * 1e-6))
            else:
                events.append(PulseGroup(tuple(
                    Pulse(int(p["q"]), float(p["axis_deg"]), float(p["angle_deg"]))
                    for p in e["pulses"]
                )))
        return PulseSchedule(
            device=device,
            events=events,
            final_frames={int(q): float(f) for q, f in data.get("final_frames_deg", {}).items()},
            residual_deficits={
                parse_pair_key(k): float(v)
                for k, v in data.get("residual_deficits_deg", {}).items()
            },
            global_phase=float(data.get("global_phase_deg", 0.0)),
            target_gates=data.get("target_gates"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ScheduleError(f"malformed schedule: {exc}") from None


def loads_schedule(text: str) -> PulseSchedule:
    try:
        return schedule_from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ScheduleError(f"invalid schedule JSON: {exc}") from None
