"""The Ising machine: qubit count and all-to-all coupling strengths (Hz)."""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field


class DeviceError(ValueError):
    pass


def pair(i: int, j: int) -> tuple[int, int]:
    """Canonical unordered pair key."""
    if i == j:
        raise DeviceError(f"no self-coupling on qubit {i}")
    return (i, j) if i < j else (j, i)


def pair_key(p: tuple[int, int]) -> str:
    return f"{p[0]}-{p[1]}"


def parse_pair_key(key: str) -> tuple[int, int]:
    try:
        a, b = (int(s) for s in key.split("-"))
    except ValueError:
        raise DeviceError(f"bad pair key {key!r}; expected 'i-j'") from None
    return pair(a, b)


@dataclass(frozen=True)
class DeviceModel:
    n_qubits: int
    couplings_hz: dict[tuple[int, int], float] = field(hash=False)
    allow_negative: bool = False

    def __post_init__(self):
        if self.n_qubits < 1:
            raise DeviceError("qubit count must be positive")
        canon = {}
        for (i, j), value in self.couplings_hz.items():
            key = pair(i, j)
            if not (0 <= key[0] and key[1] < self.n_qubits):
                raise DeviceError(f"pair {pair_key(key)} out of range")
            canon[key] = float(value)
        for key in self.pairs:
            if key not in canon:
                raise DeviceError(f"missing pair {pair_key(key)}")
            value = canon[key]
            if not math.isfinite(value):
                raise DeviceError(f"non-finite coupling for {pair_key(key)}")
            if value == 0.0:
                raise DeviceError(f"zero coupling for {pair_key(key)}")
            if value < 0 and not self.allow_negative:
                raise DeviceError(
                    f"negative coupling for {pair_key(key)} (set allow_negative to permit)"
                )
        object.__setattr__(self, "couplings_hz", canon)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(itertools.combinations(range(self.n_qubits), 2))

    def J(self, i: int, j: int) -> float:
        return self.couplings_hz[pair(i, j)]

    def with_coupling(self, i: int, j: int, value: float) -> DeviceModel:
        couplings = dict(self.couplings_hz)
        couplings[pair(i, j)] = value
        return DeviceModel(self.n_qubits, couplings, self.allow_negative)

    def to_json(self) -> dict:
        return {
            "qubits": self.n_qubits,
            "couplings_hz": {pair_key(p): v for p, v in sorted(self.couplings_hz.items())},
            **({"allow_negative": True} if self.allow_negative else {}),
        }


def device_from_json(data: dict) -> DeviceModel:
    try:
        n = int(data["qubits"])
        raw = data["couplings_hz"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DeviceError(f"device config needs 'qubits' and 'couplings_hz': {exc}") from None
    couplings = {parse_pair_key(k): float(v) for k, v in raw.items()}
    return DeviceModel(n, couplings, bool(data.get("allow_negative", False)))


def load_device(text: str) -> DeviceModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DeviceError(f"invalid device JSON: {exc}") from None
    return device_from_json(data)


def coupling_time(device: DeviceModel, p: tuple[int, int], delta_deg: float) -> float:
    """Seconds of full-strength evolution that accrue ``delta_deg`` on the pair."""
    return delta_deg / (180.0 * abs(device.J(*p)))
