"""Exact rational PL backend: group laws, jump bookkeeping, oracle bridge."""
from __future__ import annotations

from fractions import Fraction as F

import pytest

from circleconj.errors import InvalidBreaks, JumpProductNotOne
from circleconj.exact import RationalPL, frac_wrap, pl_from_jumps
from circleconj.maps import PLMap, Rotation, pl_from_exact
from circleconj.oracle import oracle_compare, word_to_rational
from circleconj.words import word


def two_arc() -> RationalPL:
    # slopes 2 and 4/7, image of 0 at 3/10
    return RationalPL.from_slopes([F(0), F(3, 10)], [F(2), F(4, 7)], anchor=F(3, 10))


def test_identity_and_rotation():
    i = RationalPL.identity()
    assert i.ev(F(1, 3)) == F(1, 3)
    r = RationalPL.rotation(F(1, 3))
    assert r.ev(F(5, 6)) == F(1, 6)
    assert (r @ i) == r == (i @ r)


def test_rotations_compose_exactly():
    r = RationalPL.rotation(F(1, 3)) @ RationalPL.rotation(F(1, 4))
    assert r == RationalPL.rotation(F(7, 12))


def test_two_arc_structure():
    m = two_arc()
    assert m.ev(F(0)) == F(3, 10)
    assert m.jump_at(F(0)) == F(2, 7)
    assert m.jump_at(F(3, 10)) == F(7, 2)
    assert m.jump_at(F(1, 2)) == 1
    assert m.pi_s() == 1
    assert m.genuine_breaks() == [F(0), F(3, 10)]


def test_compose_jump_products():
    u = pl_from_jumps([F(0), F(1, 2)], [F(3), F(1, 3)])
    v = pl_from_jumps([F(0), F(1, 2)], [F(2), F(1, 2)])
    assert v.ev(F(0)) == 0
    w = u @ v
    assert w.jump_at(F(0)) == 6


def test_inverse_is_exact():
    m = two_arc()
    mi = m.inverse()
    assert (mi @ m) == RationalPL.identity()
    assert (m @ mi) == RationalPL.identity()
    # inverse has reciprocal jumps at the image points
    assert mi.jump_at(m.ev(F(0))) == F(7, 2)
    assert mi.jump_at(m.ev(F(3, 10))) == F(2, 7)
    # slopes 1/2 and 7/4 at the pushed-forward breaks
    assert set(mi.slopes()) == {F(1, 2), F(7, 4)}
    assert mi.inverse() == m


def test_group_laws():
    u = two_arc()
    v = RationalPL.rotation(F(2, 5))
    w = pl_from_jumps([F(1, 10), F(7, 10)], [F(2), F(1, 2)])
    assert ((u @ v) @ w) == (u @ (v @ w))
    assert (u @ u.inverse()) == RationalPL.identity()


def test_break_count_bound():
    u = two_arc()
    w = pl_from_jumps([F(1, 10), F(7, 10)], [F(2), F(1, 2)])
    c = u @ w
    assert len(c.genuine_breaks()) <= len(u.genuine_breaks()) + len(w.genuine_breaks())


def test_powers():
    m = two_arc()
    assert m ** 0 == RationalPL.identity()
    assert m ** 2 == m @ m
    assert m ** (-1) == m.inverse()
    # denominators stay manageable at desk iteration depths
    m8 = m ** 8
    assert m8.pi_s() == 1


def test_pi_s_always_one():
    for m in (two_arc(), pl_from_jumps([F(1, 10), F(2, 5), F(7, 10)],
                                       [F(2), F(3), F(1, 6)])):
        assert m.pi_s() == 1
        for k in (1, 2, 3):
            assert (m ** k).pi_s() == 1


def test_pl_from_jumps_formula():
    # breaks (0, 1/2), jumps (2, 1/2): slope above 1/2 is 4/3, below is 2/3
    m = pl_from_jumps([F(0), F(1, 2)], [F(2), F(1, 2)])
    assert m.ev(F(0)) == 0
    assert m.ev(F(1, 2)) == F(1, 3)
    assert m.jump_at(F(0)) == 2
    assert m.jump_at(F(1, 2)) == F(1, 2)
    assert set(m.slopes()) == {F(4, 3), F(2, 3)}


def test_pl_from_jumps_identity_when_trivial():
    m = pl_from_jumps([F(1, 4), F(3, 4)], [F(1), F(1)])
    assert m == RationalPL.identity()


def test_pl_from_jumps_requires_product_one():
    with pytest.raises(JumpProductNotOne):
        pl_from_jumps([F(0), F(1, 2)], [F(2), F(2)])


def test_pl_from_jumps_anchor_elsewhere():
    m = pl_from_jumps([F(1, 4), F(3, 4)], [F(2), F(1, 2)], anchor=F(1, 10))
    assert m.ev(F(1, 10)) == F(1, 10)
    assert m.jump_at(F(1, 4)) == 2
    assert m.jump_at(F(3, 4)) == F(1, 2)


def test_from_nodes_validation():
    with pytest.raises(InvalidBreaks):
        RationalPL.from_nodes([(F(0), F(0)), (F(0), F(1, 2))])
    with pytest.raises(InvalidBreaks):
        RationalPL.from_slopes([F(0), F(1, 2)], [F(2), F(2)], anchor=F(0))


def test_frac_wrap():
    assert frac_wrap(F(5, 4)) == F(1, 4)
    assert frac_wrap(F(-1, 4)) == F(3, 4)


# -- float/exact bridge ----------------------------------------------------------


def test_word_to_rational_and_oracle():
    m = pl_from_exact(two_arc())
    r = word(Rotation(0.25, exact_alpha=F(1, 4)))
    w = word(m) @ r @ word(m).inverse()
    exact = word_to_rational(w)
    rep = oracle_compare(w, exact)
    assert rep.max_deviation <= 1e-12
    assert all(row.rel_error <= 1e-12 for row in rep.jumps)


def test_word_to_rational_rejects_transcendental_letters():
    from circleconj.builders import exponential_elementary
    w = word(exponential_elementary(2.0, 0.1))
    with pytest.raises(ValueError):
        word_to_rational(w)


def test_oracle_detects_injected_mismatch():
    m = two_arc()
    # perturb the first slope by 1e-6, keeping the closure valid
    s1 = 2.0 + 1e-6
    s2 = (1.0 - s1 * 0.3) / 0.7
    bad = PLMap(breaks=(0.0, 0.3), slopes=(s1, s2), anchor=0.3)
    rep = oracle_compare(word(bad), m)
    assert rep.max_deviation > 1e-7


def test_oracle_identity():
    rep = oracle_compare(word(pl_from_exact(RationalPL.identity())),
                         RationalPL.identity())
    assert rep.max_deviation == 0.0
