from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isingc.device import DeviceModel
from isingc.fixtures import load_fig3_device, oracle_sign_integrate
from isingc.tracker import (
    InternalCompilerError, PhaseLedger, SignTimeline, circular_distance, net_time, wrap,
)

US = 1e-6


@pytest.fixture
def fig3():
    return load_fig3_device()


@pytest.mark.parametrize("start, request_, after", [(0, 90, 90), (144, 216, 0), (0, 0, 0)])
def test_request_coupling(start, request_, after):
    ledger = PhaseLedger(2, deficit={(0, 1): start})
    ledger.request_coupling((1, 0), request_)
    assert ledger.deficit[(0, 1)] == after


def test_wrap_stays_in_range():
    assert wrap(-1e-17) == 0.0
    assert wrap(360.0) == 0.0
    assert wrap(-90) == 270
    assert circular_distance(359.5) == pytest.approx(0.5)


def test_net_time_quoted_point_d():
    tl = SignTimeline(17910 * US, {0: (8955 * US, 17910 * US), 1: (13266 * US, 17910 * US)})
    assert net_time(tl, (0, 1)) / US == pytest.approx(9288, abs=1e-6)


def test_net_time_point_f_pair_02():
    tl = SignTimeline(32200 * US, {0: (16100 * US, 32200 * US), 2: (19832 * US, 32200 * US)})
    net = net_time(tl, (0, 2))
    # piecewise: + for 16100, - for 3732, + for 12368
    assert net / US == pytest.approx(16100 - 3732 + 12368, abs=1e-6)
    assert 180 * 62 * net == pytest.approx(276, abs=0.5)


def test_net_time_no_flips():
    assert net_time(SignTimeline(0.01), (0, 1)) == 0.01


def test_simultaneous_flips_cancel():
    tl = SignTimeline(0.02, {2: (0.01, 0.02), 3: (0.01, 0.02)})
    assert net_time(tl, (2, 3)) == 0.02


def test_staggered_flip_pattern():
    tau0, eps2, eps3 = Fraction(10), Fraction(2), Fraction(3)
    tl = SignTimeline(tau0, {2: (tau0 - eps2, tau0), 3: (tau0 - eps3, tau0)})
    assert net_time(tl, (0, 1)) == tau0
    assert net_time(tl, (0, 2)) == tau0 - 2 * eps2
    assert net_time(tl, (0, 3)) == tau0 - 2 * eps3
    assert net_time(tl, (2, 3)) == tau0 - 2 * (eps3 - eps2)


def test_oracle_matches_staggered_pattern():
    tau0, eps2, eps3 = 0.01, 0.002, 0.003
    flips = {2: (tau0 - eps2, tau0), 3: (tau0 - eps3, tau0)}
    assert oracle_sign_integrate(flips, tau0, (0, 2)) == pytest.approx(tau0 - 2 * eps2, abs=1e-8)
    assert oracle_sign_integrate(flips, tau0, (2, 3)) == pytest.approx(
        tau0 - 2 * (eps3 - eps2), abs=1e-8)
    assert oracle_sign_integrate({}, tau0, (0, 1)) == pytest.approx(tau0)


def test_timeline_rejects_out_of_range_flips():
    with pytest.raises(ValueError):
        SignTimeline(1.0, {0: (0.5, 1.5)})


def test_sign_function():
    tl = SignTimeline(1.0, {0: (0.25, 1.0), 1: (0.5, 1.0)})
    assert tl.sign(0, 1, 0.0) == 1
    assert tl.sign(0, 1, 0.3) == -1
    assert tl.sign(0, 1, 0.6) == 1
    assert tl.qubit_parity(0) == 1


def test_advance_point_b(fig3):
    ledger = PhaseLedger(4)
    ledger.request_coupling((0, 1), 90)
    T = 1 / (2 * 42)
    ledger.advance(fig3, SignTimeline(T, {2: (T / 2, T), 3: (T / 2, T)}))
    assert circular_distance(ledger.deficit[(0, 1)]) < 1e-9
    assert ledger.angle[(2, 3)] == pytest.approx(144, abs=0.5)
    assert ledger.deficit[(2, 3)] == pytest.approx(216, abs=0.5)
    for p in [(0, 2), (0, 3), (1, 2), (1, 3)]:
        assert circular_distance(ledger.deficit[p]) < 1e-9


def test_advance_zero_length(fig3):
    ledger = PhaseLedger(4, deficit={(1, 2): 33.0})
    before = ledger.copy()
    ledger.advance(fig3, SignTimeline(0.0))
    assert ledger == before


def test_advance_point_d(fig3):
    ledger = PhaseLedger(4, deficit={(1, 2): 90.0, (2, 3): 216.0})
    t12, T = 90 / (180 * 58), 216 / (180 * 67)
    ledger.advance(fig3, SignTimeline(T, {0: (T / 2, T), 1: ((T + t12) / 2, T)}))
    assert ledger.angle[(0, 1)] == pytest.approx(70, abs=0.5)
    assert ledger.angle[(1, 3)] == pytest.approx(76, abs=0.5)
    assert ledger.angle[(0, 3)] == pytest.approx(0, abs=1e-9)


def test_reset_on_gate():
    ledger = PhaseLedger(4, angle={(0, 1): 90.0, (2, 3): 144.0})
    ledger.reset_pair_angles_on_gate(1)
    assert ledger.angle[(0, 1)] == 0 and ledger.angle[(2, 3)] == 144
    with pytest.raises(InternalCompilerError):
        PhaseLedger(3, deficit={(1, 2): 90.0}).reset_pair_angles_on_gate(1)
    empty = PhaseLedger(3)
    empty.reset_pair_angles_on_gate(2)
    assert empty == PhaseLedger(3)


def test_frames_and_axis_shift():
    ledger = PhaseLedger(2)
    assert ledger.shift_pulse_axis(0, 90) == 90
    ledger.apply_frame(0, 180)
    assert ledger.shift_pulse_axis(0, 90) == 270
    ledger.apply_frame(0, 180)
    assert ledger.frame_z[0] == 0


# -- properties ---------------------------------------------------------------

@st.composite
def timelines(draw, n=4, max_nots=8):
    T = draw(st.floats(1e-4, 0.04))
    k = draw(st.integers(0, max_nots))
    flips: dict[int, list[float]] = {}
    for _ in range(k):
        q = draw(st.integers(0, n - 1))
        flips.setdefault(q, []).append(draw(st.floats(0, 1)) * T)
    return SignTimeline(T, {q: tuple(ts) for q, ts in flips.items()})


J_REF = 67.0  # strongest coupling of the worked-example device


@given(timelines(), st.sampled_from([(0, 1), (0, 2), (1, 3), (2, 3)]))
@settings(max_examples=60, deadline=None)
def test_net_time_matches_discretized_oracle(tl, p):
    closed = net_time(tl, p)
    brute = oracle_sign_integrate(tl.flips, tl.T, p)
    assert abs(closed - brute) * 180 * J_REF < 0.01


@given(timelines(), st.floats(0, 1))
@settings(max_examples=200, deadline=None)
def test_advance_is_additive(tl, frac):
    dev = load_fig3_device()
    t = tl.T * frac
    first = SignTimeline(t, {q: tuple(x for x in ts if x <= t) for q, ts in tl.flips.items()})
    # the second part starts in whatever orientation the first part left
    second_flips = {}
    for q in range(4):
        before = sum(1 for x in tl.flips.get(q, ()) if x <= t)
        ts = tuple(x - t for x in tl.flips.get(q, ()) if x > t)
        if before % 2:
            ts = (0.0,) + ts
        second_flips[q] = ts
    second = SignTimeline(tl.T - t, second_flips)
    whole, split = PhaseLedger(4), PhaseLedger(4)
    whole.advance(dev, tl)
    split.advance(dev, first)
    split.advance(dev, second)
    for p in whole.pairs:
        assert circular_distance(whole.deficit[p] - split.deficit[p]) < 1e-9


@given(timelines(), st.sampled_from([(0, 1), (1, 2), (2, 3)]), st.lists(st.floats(0, 1), max_size=3))
@settings(max_examples=100, deadline=None)
def test_simultaneous_pair_flips_leave_pair_unchanged(tl, p, extra):
    flips = {q: list(ts) for q, ts in tl.flips.items()}
    for x in extra:
        for q in p:
            flips.setdefault(q, []).append(x * tl.T)
    with_extra = SignTimeline(tl.T, {q: tuple(v) for q, v in flips.items()})
    assert net_time(with_extra, p) == pytest.approx(net_time(tl, p), abs=1e-15)


def test_net_time_exact_with_fractions():
    tl = SignTimeline(Fraction(1), {0: (Fraction(1, 3), Fraction(1)), 1: (Fraction(1, 2), Fraction(1))})
    assert net_time(tl, (0, 1)) == Fraction(1) - 2 * Fraction(1, 6)


def test_negative_coupling_device_evolves_backwards():
    dev = DeviceModel(2, {(0, 1): -50.0}, allow_negative=True)
    ledger = PhaseLedger(2)
    ledger.advance(dev, SignTimeline(0.01))
    assert ledger.angle[(0, 1)] == pytest.approx(wrap(-90.0))
    assert np.isclose(ledger.deficit[(0, 1)], 90.0)
