"""Word algebra: evaluation, composition, inversion, iteration, candidates."""
from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circleconj.builders import (build_pl_from_jumps, exponential_elementary,
                                 quadratic_elementary, two_break_pl)
from circleconj.circle import circle_dist
from circleconj.maps import ExpMap, QuadMap, Rotation
from circleconj.words import Letter, MapWord, conjugate, word


def _sample_words():
    pl = two_break_pl(0.3, 2.0)
    e = exponential_elementary(2.0, 0.4)
    q = quadratic_elementary(3.0, 0.7)
    r = Rotation(0.6180339887498949)
    return {
        "identity": MapWord.identity(),
        "rotation": word(r),
        "pl": word(pl),
        "pe_pair": word(pl, e),
        "conjugated": conjugate(word(e), word(r)),
        "mixed": MapWord((Letter(q, True), Letter(pl), Letter(e))),
    }


WORDS = _sample_words()


def test_identity_and_rotation_eval():
    assert MapWord.identity()(0.25) == 0.25
    assert word(Rotation(0.3))(0.9) == pytest.approx(0.2)


def test_exp_word_eval():
    w = word(ExpMap(sigma=2.0, center=0.0))
    assert w(0.5) == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-15)


def test_quad_lift_eval():
    w = word(QuadMap(sigma=2.0, center=0.0))
    assert w.lift(0.5) == pytest.approx(7.0 / 12.0, abs=1e-15)
    assert MapWord.identity().lift(2.25) == 2.25
    assert word(Rotation(0.3)).lift(1.9) == pytest.approx(2.2)


def test_compose_is_concatenation():
    u, v = WORDS["pl"], WORDS["rotation"]
    w = u @ v
    assert w.letters == u.letters + v.letters
    assert (u @ MapWord.identity()) == u
    for x in (0.0, 0.2, 0.77):
        assert w(x) == pytest.approx(u(v(x)))


def test_compose_rotations():
    w = word(Rotation(0.3)) @ word(Rotation(0.4))
    assert w(0.5) == pytest.approx(0.2)


def test_jump_chain_rule_at_matched_break():
    # two PL maps both breaking at 0 with v(0) = 0: jumps multiply
    u = build_pl_from_jumps([0.0, 0.5], [3.0, 1.0 / 3.0])
    v = build_pl_from_jumps([0.0, 0.5], [2.0, 0.5])
    assert v.ev(0.0) == pytest.approx(0.0)
    uv = word(u) @ word(v)
    assert uv.jump(0.0) == pytest.approx(6.0, rel=1e-12)
    assert uv.jump(0.0) == pytest.approx(word(u).jump(v.ev(0.0)) * word(v).jump(0.0),
                                         rel=1e-10)


@pytest.mark.parametrize("name", list(WORDS), ids=list(WORDS))
def test_round_trip(name):
    w = WORDS[name]
    wi = w.inverse()
    for i in range(1000):
        x = i / 1000
        assert circle_dist(wi(w(x)), x) <= 1e-9


@pytest.mark.parametrize("name", list(WORDS), ids=list(WORDS))
def test_double_inversion_matches(name):
    w = WORDS[name]
    wii = w.inverse().inverse()
    assert wii == w  # inversion is a structural involution
    for i in range(100):
        x = i / 100
        assert circle_dist(wii(x), w(x)) <= 1e-12


@pytest.mark.parametrize("name", list(WORDS), ids=list(WORDS))
def test_lift_periodicity_and_pin(name):
    w = WORDS[name]
    assert 0.0 <= w.lift(0.0) < 1.0
    for x in (0.0, 0.31, 2.7, -1.4, 5.55):
        assert w.lift(x + 1.0) == pytest.approx(w.lift(x) + 1.0, abs=1e-12)


@pytest.mark.parametrize("name", list(WORDS), ids=list(WORDS))
def test_lift_monotone(name):
    w = WORDS[name]
    vals = [w.lift(i / 1000) for i in range(1001)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_iterate():
    r = word(Rotation(0.25))
    w4 = r ** 4
    for x in (0.0, 0.3, 0.9):
        assert circle_dist(w4(x), x) <= 1e-15
    f = WORDS["pl"]
    assert f ** (-1) == f.inverse()
    assert (f ** 0) == MapWord.identity()
    w3 = f ** 3
    assert w3(0.11) == pytest.approx(f(f(f(0.11))))


def test_candidate_breaks_identity_empty():
    assert MapWord.identity().candidate_breaks() == []
    assert word(Rotation(0.3)).candidate_breaks() == []


def test_candidate_breaks_pull_back():
    e = exponential_elementary(2.0, 0.4)   # breaks at 0.4
    pl = two_break_pl(0.3, 2.0)            # breaks at 0, 0.3
    w = word(pl) @ word(e)                 # pl o e
    cands = w.candidate_breaks()
    expected = sorted([0.4, word(e).inverse()(0.0), word(e).inverse()(0.3)])
    assert len(cands) == 3
    for c, x in zip(cands, expected):
        assert circle_dist(c, x) <= 1e-12


def test_candidate_breaks_iterate_union():
    f = WORDS["pl"]
    w3 = f ** 3
    cands = w3.candidate_breaks()
    finv = f.inverse()
    expected = set()
    base = [0.0, 0.3]
    for k in range(3):
        expected.update(round((finv ** k)(b), 9) for b in base)
    assert len(cands) == len(expected)
    for c in cands:
        assert any(circle_dist(c, e) <= 1e-8 for e in expected)


def test_candidate_breaks_superset_of_grid_scan():
    w = WORDS["mixed"]
    cands = w.candidate_breaks()
    for i in range(1000):
        x = i / 1000
        if abs(w.jump(x) - 1.0) > 1e-6:
            assert any(circle_dist(x, c) <= 1e-9 for c in cands)


@given(st.floats(0, 0.999), st.floats(0.01, 0.99))
def test_rotation_word_round_trip(alpha, x):
    w = word(Rotation(alpha))
    assert circle_dist(w.inverse()(w(x)), x) <= 1e-12


def test_words_are_immutable():
    w = WORDS["pl"]
    with pytest.raises(AttributeError):
        w.letters = ()
