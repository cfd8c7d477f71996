from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circleconj.circle import CirclePoint, circle_dist, dedupe_points, wrap


def test_wrap_basics():
    assert wrap(0.25) == 0.25
    assert wrap(1.25) == 0.25
    assert wrap(-0.75) == 0.25
    assert wrap(0.0) == 0.0
    assert wrap(1.0) == 0.0


def test_wrap_stays_below_one():
    # float modulo rounds up to 1.0 for tiny negative arguments
    assert 0.0 <= wrap(-1e-18) < 1.0
    assert 0.0 <= wrap(-1e-300) < 1.0


@given(st.floats(-100, 100))
def test_wrap_range(x):
    assert 0.0 <= wrap(x) < 1.0


def test_circle_dist_wraps():
    assert circle_dist(0.1, 0.9) == pytest.approx(0.2)
    assert circle_dist(0.0, 0.5) == 0.5
    assert circle_dist(0.25, 0.25) == 0.0
    assert circle_dist(1.75, -0.25) == 0.0


def test_circle_point_normalizes():
    p = CirclePoint(1.3)
    assert p.value == pytest.approx(0.3)
    assert p.close_to(0.3)
    assert p.close_to(0.3 + 1e-10)
    assert not p.close_to(0.3 + 1e-6)
    assert float(p) == p.value


def test_dedupe_points_merges_clusters():
    pts = [0.5, 0.5 + 1e-12, 0.1, 0.100000000001, 0.9]
    out = dedupe_points(pts, tol=1e-9)
    assert out == pytest.approx([0.1, 0.5, 0.9])


def test_dedupe_points_merges_across_seam():
    out = dedupe_points([1e-12, 0.5, 1.0 - 1e-12], tol=1e-9)
    assert len(out) == 2
    assert out[0] == pytest.approx(0.0, abs=1e-9)
    assert out[1] == 0.5
