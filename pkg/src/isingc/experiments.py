"""Measurements shared by the acceptance suite and the scripts in ``scripts/``."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .compiler import compile, compile_hadamard_baseline, stats
from .device import pair
from .fixtures import random_device
from .optimizer import OptimizationOptions, plan_with_signs
from .scheduler import hadamard_timeline
from .tracker import PhaseLedger


@dataclass(frozen=True)
class DurationFactor:
    pooled: float          # sum of unoptimized periods / sum of negated periods
    mean_of_ratios: float
    geometric_mean: float
    samples: int


def duration_factor(seed: int = 2024, samples: int = 500, n_range=(2, 5)) -> DurationFactor:
    """Period-length reduction from mod180 + negate on random single realizations.

    Each sample draws a device, a target and a deficit per control pair
    uniformly in [0, 360).
    """
    rng = np.random.default_rng(seed)
    plain, negated = [], []
    for _ in range(samples):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        device = random_device(rng, n)
        target = int(rng.integers(n))
        deficits = {pair(q, target): float(rng.uniform(0, 360)) for q in range(n) if q != target}
        ledger = PhaseLedger(n, deficit=deficits)
        plain.append(plan_with_signs(ledger.copy(), device, target, OptimizationOptions()).T)
        negated.append(plan_with_signs(ledger.copy(), device, target,
                                       OptimizationOptions(negate=True)).T)
    a, b = np.array(plain), np.array(negated)
    ratios = a / b
    return DurationFactor(
        pooled=float(a.sum() / b.sum()),
        mean_of_ratios=float(ratios.mean()),
        geometric_mean=float(np.exp(np.log(ratios).mean())),
        samples=samples,
    )


@dataclass(frozen=True)
class BaselineRow:
    index: int
    n: int
    p: int
    lazy_nots: int
    lazy_flushed_nots: int
    baseline_nots: int
    couplings: int


def baseline_comparison(instances) -> list[BaselineRow]:
    rows = []
    for i, (network, device) in enumerate(instances):
        lazy = stats(compile(network, device))
        flushed = stats(compile(network, device, flush_residuals=True))
        base = stats(compile_hadamard_baseline(network, device))
        couplings = sum(len(g.qubits) == 2 for g in network.gates)
        rows.append(BaselineRow(i, network.n_qubits, lazy.p, lazy.not_count,
                                flushed.not_count, base.not_count, couplings))
    return rows


def hadamard_nots_per_period(n_values=range(2, 9), seed: int = 0) -> dict[int, float]:
    """Mean NOT count of one isolation period, averaged over every pair."""
    rng = np.random.default_rng(seed)
    out = {}
    for n in n_values:
        device = random_device(rng, n)
        counts = [
            sum(len(ts) for ts in hadamard_timeline(device, p, 90.0).flips.values())
            for p in itertools.combinations(range(n), 2)
        ]
        out[n] = float(np.mean(counts))
    return out
