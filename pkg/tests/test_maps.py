"""Closed forms of the elementary letters, checked against independent
finite-difference and direct-formula oracles."""
from __future__ import annotations

import math

import pytest

from circleconj.circle import circle_dist
from circleconj.errors import DegenerateSigma, InvalidBreaks, SlopeNotPositive
from circleconj.maps import ExpMap, PLMap, QuadMap, Rotation

MAPS = [
    PLMap(breaks=(0.0, 0.3), slopes=(2.0, 4.0 / 7.0), anchor=0.3),
    PLMap(breaks=(0.1, 0.45, 0.8), slopes=(0.5, 2.2, 0.055 / 0.3), anchor=0.62),
    Rotation(0.3),
    Rotation(0.9999),
    QuadMap(sigma=2.0, center=0.0),
    QuadMap(sigma=0.4, center=0.37),
    ExpMap(sigma=2.0, center=0.0),
    ExpMap(sigma=0.25, center=0.81),
]


def test_rotation_eval():
    r = Rotation(0.3)
    assert r.ev(0.9) == pytest.approx(0.2)
    assert r.lift(1.9) == pytest.approx(2.2)


def test_exp_closed_forms():
    h = ExpMap(sigma=2.0, center=0.0)
    assert h.ev(0.5) == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-15)
    assert h.inv_ev(math.sqrt(2.0) - 1.0) == pytest.approx(0.5, abs=1e-15)
    dm, dp = h.deriv_pair(0.0)
    assert dm == pytest.approx(2.0 * math.log(2.0), abs=1e-15)
    assert dp == pytest.approx(math.log(2.0), abs=1e-15)


def test_quad_closed_forms():
    g = QuadMap(sigma=2.0, center=0.0)
    # lift with parameter 2 is (4x - x^2)/3
    assert g.lift(0.5) == pytest.approx(7.0 / 12.0, abs=1e-15)
    dm, dp = g.deriv_pair(0.0)
    assert dm == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert dp == pytest.approx(4.0 / 3.0, abs=1e-15)
    assert dm / dp == pytest.approx(0.5, abs=1e-14)


@pytest.mark.parametrize("sigma", [2.0, 0.3, 5.5])
def test_one_break_jumps(sigma):
    h = ExpMap(sigma=sigma, center=0.0)
    dm, dp = h.deriv_pair(0.0)
    assert dm / dp == pytest.approx(sigma, rel=1e-12)
    g = QuadMap(sigma=sigma, center=0.0)
    dm, dp = g.deriv_pair(0.0)
    assert dm / dp == pytest.approx(1.0 / sigma, rel=1e-12)


def test_center_moves_break():
    h = ExpMap(sigma=3.0, center=0.25)
    assert h.break_points() == (0.25,)
    assert h.ev(0.25) == pytest.approx(0.25)  # the center is fixed
    dm, dp = h.deriv_pair(0.25)
    assert dm / dp == pytest.approx(3.0, rel=1e-12)
    # smooth elsewhere
    for x in (0.0, 0.1, 0.6, 0.9):
        dm, dp = h.deriv_pair(x)
        assert dm == pytest.approx(dp, rel=1e-14)


@pytest.mark.parametrize("m", MAPS, ids=lambda m: f"{m.kind}")
def test_lift_monotone_and_periodic(m):
    grid = [i / 1000 for i in range(1001)]
    vals = [m.lift(x) for x in grid]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert 0.0 <= m.lift(0.0) < 1.0
    for x in (0.0, 0.123, 0.77, 3.4, -2.6):
        assert m.lift(x + 1.0) == pytest.approx(m.lift(x) + 1.0, abs=1e-12)


@pytest.mark.parametrize("m", MAPS, ids=lambda m: f"{m.kind}")
def test_inverse_lift_round_trip(m):
    for i in range(97):
        x = i / 97 + 0.003
        y = m.lift(x)
        assert m.inv_lift(y) == pytest.approx(x, abs=1e-12)
        assert circle_dist(m.inv_ev(m.ev(x)), x) <= 1e-12


@pytest.mark.parametrize("m", MAPS, ids=lambda m: f"{m.kind}")
def test_one_sided_derivatives_match_finite_differences(m):
    eps = 1e-6
    # sample away from breaks so the difference quotient stays one-sided
    pts = [x / 101 + 0.0132 for x in range(101)]
    pts = [x for x in pts
           if all(circle_dist(x, b) > 1e-4 for b in m.break_points())]
    for x in pts[:50]:
        dm, dp = m.deriv_pair(x)
        fd_m = (m.lift(x) - m.lift(x - eps)) / eps
        fd_p = (m.lift(x + eps) - m.lift(x)) / eps
        assert dm == pytest.approx(fd_m, rel=1e-4)
        assert dp == pytest.approx(fd_p, rel=1e-4)


def test_one_sided_fd_at_the_break_itself():
    eps = 1e-7
    for m in (ExpMap(sigma=2.0, center=0.4), QuadMap(sigma=0.5, center=0.4)):
        dm, dp = m.deriv_pair(0.4)
        fd_m = (m.lift(0.4) - m.lift(0.4 - eps)) / eps
        fd_p = (m.lift(0.4 + eps) - m.lift(0.4)) / eps
        assert dm == pytest.approx(fd_m, rel=1e-5)
        assert dp == pytest.approx(fd_p, rel=1e-5)


def test_pl_validation():
    with pytest.raises(InvalidBreaks):
        PLMap(breaks=(0.5, 0.2), slopes=(1.0, 1.0), anchor=0.0)
    with pytest.raises(SlopeNotPositive):
        PLMap(breaks=(0.0, 0.5), slopes=(-1.0, 3.0), anchor=0.0)
    with pytest.raises(InvalidBreaks):
        # does not close up: rises by 1.5 per period
        PLMap(breaks=(0.0, 0.5), slopes=(2.0, 1.0), anchor=0.0)


def test_degenerate_sigma_rejected():
    for bad in (1.0, 1.0 + 1e-7, 0.0, -2.0):
        with pytest.raises(DegenerateSigma):
            ExpMap(sigma=bad, center=0.0)
        with pytest.raises(DegenerateSigma):
            QuadMap(sigma=bad, center=0.0)


def test_pl_snap_keeps_breaks_and_jumps():
    m = PLMap(breaks=(0.0, 0.3), slopes=(2.0, 4.0 / 7.0), anchor=0.3)
    assert m.ev(0.0) == pytest.approx(0.3)
    dm, dp = m.deriv_pair(0.0)
    assert dm / dp == pytest.approx(2.0 / 7.0, rel=1e-12)
    dm, dp = m.deriv_pair(0.3)
    assert dm / dp == pytest.approx(3.5, rel=1e-12)
    # points within the snap tolerance report the break's one-sided pair
    dm, dp = m.deriv_pair(0.3 + 1e-12)
    assert (dm, dp) == (2.0, m.slopes[1])
    # points beyond it report the arc slope on both sides
    dm, dp = m.deriv_pair(0.3 + 1e-6)
    assert dm == dp == m.slopes[1]
