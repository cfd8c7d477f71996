"""Constructors: prescribed-jump PL maps, one-break letters, golden instances."""
from __future__ import annotations

import math
from fractions import Fraction as F

import numpy as np
import pytest

from circleconj.analysis import jumps_report
from circleconj.builders import (PLSpec, build_pl_from_jumps,
                                 exponential_elementary, quadratic_elementary,
                                 synthesize_instance, two_break_pl)
from circleconj.circle import circle_dist
from circleconj.errors import (DegenerateSigma, InvalidBreaks,
                               JumpProductNotOne, SlopeNotPositive)
from circleconj.maps import Rotation
from circleconj.words import conjugate, word


def random_specs(count: int, seed: int = 20240817):
    """Randomized prescriptions: n <= 10 breaks, log-jumps uniform in
    [-2, 2] recentered so the product is 1."""
    rng = np.random.RandomState(seed)
    for _ in range(count):
        n = rng.randint(1, 11)
        breaks = np.sort(rng.uniform(0.0, 1.0, size=n))
        while np.min(np.diff(breaks), initial=1.0) < 1e-3:
            breaks = np.sort(rng.uniform(0.0, 1.0, size=n))
        logs = rng.uniform(-2.0, 2.0, size=n)
        logs -= logs.mean()
        yield PLSpec(breaks=[float(b) for b in breaks],
                     jumps=[float(j) for j in np.exp(logs)])


def builder_residuals(m, breaks, jumps):
    """Continuity / jump / closure residuals of a built PL map, measured
    through the generic evaluation path."""
    eps = 1e-8
    cont = 0.0
    jump_err = 0.0
    for b, j in zip(breaks, jumps):
        left_limit = m.lift(float(b) - eps) + m.deriv_pair(float(b) - 2 * eps)[0] * eps
        cont = max(cont, abs(left_limit - m.lift(float(b))))
        dm, dp = m.deriv_pair(float(b))
        jump_err = max(jump_err, abs(dm / dp - float(j)) / float(j))
    widths = [q - p for p, q in zip(m.breaks, m.breaks[1:])]
    widths.append(m.breaks[0] + 1.0 - m.breaks[-1])
    closure = abs(math.fsum(s * w for s, w in zip(m.slopes, widths)) - 1.0)
    return cont, jump_err, closure


def test_reference_instance():
    m = build_pl_from_jumps([F(0), F(1, 2)], [F(2), F(1, 2)])
    # slope 4/3 above 1/2, 2/3 below, fixed point 0, image of 1/2 at 1/3
    assert set(m.slopes) == {pytest.approx(4.0 / 3.0), pytest.approx(2.0 / 3.0)}
    assert m.ev(0.0) == pytest.approx(0.0)
    assert m.ev(0.5) == pytest.approx(1.0 / 3.0)
    assert m.exact is not None
    assert m.exact.ev(F(1, 2)) == F(1, 3)


def test_trivial_jumps_give_identity():
    m = build_pl_from_jumps([0.25, 0.75], [1.0, 1.0])
    for x in (0.0, 0.3, 0.9):
        assert m.ev(x) == pytest.approx(x)


def test_three_break_prescription_matches_exact_backend():
    breaks = [F(0), F(1, 4), F(1, 2)]
    jumps = [F(2), F(2), F(1, 4)]
    m = build_pl_from_jumps(breaks, jumps)
    for b, j in zip(breaks, jumps):
        dm, dp = m.deriv_pair(float(b))
        assert dm / dp == pytest.approx(float(j), rel=1e-12)
        assert m.exact.jump_at(b) == j
    assert m.exact.ev(F(0)) == 0


def test_jump_product_validation():
    with pytest.raises(JumpProductNotOne):
        build_pl_from_jumps([0.0, 0.5], [2.0, 2.0])
    with pytest.raises(InvalidBreaks):
        build_pl_from_jumps([0.5, 0.2], [2.0, 0.5])
    # deviations inside the tolerance are absorbed by the last jump
    m = build_pl_from_jumps([0.0, 0.5], [2.0, 0.5 * (1.0 + 1e-13)],
                            product_tol=1e-12)
    dm, dp = m.deriv_pair(0.0)
    assert dm / dp == pytest.approx(2.0, rel=1e-12)


def test_randomized_prescriptions():
    worst = [0.0, 0.0, 0.0]
    for spec in random_specs(60):
        m = build_pl_from_jumps(spec)
        cont, jerr, clos = builder_residuals(m, spec.breaks, spec.jumps)
        worst = [max(a, b) for a, b in zip(worst, (cont, jerr, clos))]
    assert worst[0] <= 1e-11
    assert worst[1] <= 1e-10
    assert worst[2] <= 1e-12


def test_builder_pi_s_is_one():
    for spec in random_specs(20, seed=7):
        m = build_pl_from_jumps(spec)
        prod = math.prod(r.jump for r in jumps_report(word(m)))
        assert prod == pytest.approx(1.0, rel=1e-10)


def test_anchor_insertion_keeps_fixed_point():
    m = build_pl_from_jumps([0.25, 0.75], [3.0, 1.0 / 3.0], anchor=0.1)
    assert m.ev(0.1) == pytest.approx(0.1, abs=1e-15)
    dm, dp = m.deriv_pair(0.25)
    assert dm / dp == pytest.approx(3.0, rel=1e-12)


def test_quadratic_elementary_targets_jump():
    for s, c in ((0.5, 0.0), (2.0, 0.0), (3.0, 0.25)):
        m = quadratic_elementary(s, c)
        w = word(m)
        assert w.jump(c) == pytest.approx(s, rel=1e-12)
        recs = jumps_report(w)
        assert len(recs) == 1 and recs[0].point.close_to(c)
    # the stored parameter is the reciprocal of the requested jump
    assert quadratic_elementary(0.5, 0.0).sigma == pytest.approx(2.0)


def test_exponential_elementary_jump_is_sigma():
    for s, c in ((2.0, 0.0), (1.0 / 3.0, 0.6)):
        m = exponential_elementary(s, c)
        assert word(m).jump(c) == pytest.approx(s, rel=1e-12)
    assert word(exponential_elementary(2.0, 0.0))(0.5) == pytest.approx(
        math.sqrt(2.0) - 1.0, abs=1e-15)


def test_degenerate_targets_rejected():
    with pytest.raises(DegenerateSigma):
        quadratic_elementary(1.0 + 1e-9, 0.0)
    with pytest.raises(DegenerateSigma):
        exponential_elementary(1.0, 0.2)


def test_rotation_conjugation_moves_jump_table():
    base = quadratic_elementary(2.5, 0.0)
    c = 0.37
    conj = conjugate(word(Rotation(c)), word(base))
    recs_base = jumps_report(word(base))
    recs_conj = jumps_report(conj)
    assert len(recs_base) == len(recs_conj) == 1
    assert circle_dist(recs_conj[0].point.value, recs_base[0].point.value + c) <= 1e-10
    assert recs_conj[0].jump == pytest.approx(recs_base[0].jump, rel=1e-10)
    # recentring the letter directly agrees with conjugation by the rotation
    direct = jumps_report(word(quadratic_elementary(2.5, c)))
    assert circle_dist(direct[0].point.value, recs_conj[0].point.value) <= 1e-10


def test_two_break_family():
    m = two_break_pl(F(3, 10), F(2))
    assert m.ev(0.0) == pytest.approx(0.3)
    recs = jumps_report(word(m))
    assert [r.jump for r in recs] == [pytest.approx(2.0 / 7.0, rel=1e-12),
                                      pytest.approx(3.5, rel=1e-12)]
    m2 = two_break_pl(0.5, 1.5)
    recs2 = jumps_report(word(m2))
    assert sorted(r.jump for r in recs2) == [pytest.approx(1.0 / 3.0, rel=1e-12),
                                             pytest.approx(3.0, rel=1e-12)]


def test_two_break_degenerate_slope_is_rotation():
    m = two_break_pl(0.4, 1.0)
    assert jumps_report(word(m)) == []
    for x in (0.0, 0.3, 0.8):
        assert circle_dist(m.ev(x), x + 0.4) <= 1e-15


def test_two_break_validation():
    with pytest.raises(SlopeNotPositive):
        two_break_pl(0.6, 2.0)  # s1 * c >= 1
    with pytest.raises(InvalidBreaks):
        two_break_pl(0.0, 2.0)


def test_synthesize_instance():
    h0 = word(exponential_elementary(2.0, 0.4))
    f0 = word(Rotation(0.6180339887498949))
    f = synthesize_instance(h0, f0)
    assert f == h0.inverse() @ f0 @ h0
    recs = jumps_report(f)
    assert len(recs) == 2
    jumps = sorted(r.jump for r in recs)
    assert jumps[0] == pytest.approx(0.5, rel=1e-10)
    assert jumps[1] == pytest.approx(2.0, rel=1e-10)
    # identity conjugator keeps the rotation untouched
    assert synthesize_instance(word(), f0) == f0


def test_synthesize_rejects_broken_inner_map():
    with pytest.raises(ValueError):
        synthesize_instance(word(), word(exponential_elementary(2.0, 0.1)))
