"""Numerical criteria around bounded break growth and orbit statistics.

The break count of the iterates of a map stays bounded exactly when
every orbit's jump product is trivial; the growth table makes that
visible at desk scale.  The orbit histogram illustrates how strongly an
invariant measure concentrates; the top-decile statistic is this
package's own diagnostic and carries no claim beyond the bundled
fixtures.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .circle import JUMP_TOL, POINT_TOL, circle_dist, wrap
from .words import MapWord


@dataclass(frozen=True)
class GrowthRow:
    n: int
    break_count: int
    max_abs_log_jump: float


@dataclass(frozen=True)
class GrowthTable:
    rows: Tuple[GrowthRow, ...]

    def counts(self) -> List[int]:
        return [r.break_count for r in self.rows]

    def constant_from(self, n0: int) -> bool:
        """True when the break count is constant for all n >= n0."""
        tail = [r.break_count for r in self.rows if r.n >= n0]
        return len(set(tail)) <= 1

    def strictly_increasing(self) -> bool:
        c = self.counts()
        return all(b > a for a, b in zip(c, c[1:]))

    def csv_rows(self) -> List[Tuple[int, int, float]]:
        return [(r.n, r.break_count, r.max_abs_log_jump) for r in self.rows]


class _Tracker:
    """One pullback candidate: its forward frontier and running jump product.

    After round n the invariants are ``front = f^n(point)`` and
    ``product = jump of f^n at point``.
    """

    __slots__ = ("point", "front", "product")

    def __init__(self, point: float, front: float, product: float):
        self.point = point
        self.front = front
        self.product = product


def break_growth(f: MapWord, n_max: int = 32, jump_tol: float = JUMP_TOL,
                 point_tol: float = POINT_TOL) -> GrowthTable:
    """Break counts of the iterates f^n for n = 1 .. n_max.

    The candidates of f^n are the pullbacks of the candidates of f, and
    their jumps are chain-rule products along the orbit.  A pullback
    created in round n inherits its parent's pre-advance state: with
    ``x = f^-1(parent)``, the product picks up one factor at x and the
    frontier is shared, which keeps every round at one map evaluation per
    candidate.
    """
    if n_max > 64:
        raise ValueError("n_max is capped at 64")
    base = f.candidate_breaks(point_tol)
    finv = f.inverse()
    rows: List[GrowthRow] = []
    trackers: List[_Tracker] = []
    prev_level: List[_Tracker] = []
    for n in range(1, n_max + 1):
        if n == 1:
            new = [_Tracker(p, p, 1.0) for p in base]
            for t in new:
                t.product *= f.jump(t.front, point_tol)
                t.front = f(t.front)
        else:
            new = []
            for parent in prev_level:
                x = finv(parent.point)
                if any(circle_dist(x, t.point) <= point_tol for t in trackers + new):
                    continue
                new.append(_Tracker(x, parent.front,
                                    f.jump(x, point_tol) * parent.product))
            for t in trackers:
                t.product *= f.jump(t.front, point_tol)
                t.front = f(t.front)
        trackers.extend(new)
        prev_level = new
        genuine = [t for t in trackers if abs(t.product - 1.0) > jump_tol]
        max_log = max((abs(math.log(t.product)) for t in genuine), default=0.0)
        rows.append(GrowthRow(n=n, break_count=len(genuine), max_abs_log_jump=max_log))
    return GrowthTable(rows=tuple(rows))


@dataclass(frozen=True)
class MeasureHistogram:
    bin_edges: Tuple[float, ...]
    masses: Tuple[float, ...]
    top_decile_mass: float
    n_points: int
    start: float

    def csv_rows(self) -> List[Tuple[float, float]]:
        return list(zip(self.bin_edges[:-1], self.masses))


def invariant_measure_histogram(f: MapWord, n_points: int = 1_000_000,
                                bins: int = 100, seed: Optional[int] = None,
                                start: float = 0.173,
                                burn_in: int = 1000) -> MeasureHistogram:
    """Histogram of one long orbit, as a stand-in for the invariant measure.

    The start point is fixed (or drawn from a seeded generator) and a
    burn-in prefix is discarded, so runs are reproducible.  The top-decile
    mass is the total weight of the heaviest tenth of the bins: about 0.1
    for an equidistributed orbit, larger as mass concentrates.
    """
    start_val = wrap(start if seed is None else random.Random(seed).random())
    x = start_val
    for _ in range(burn_in):
        x = f(x)
    orbit = np.empty(n_points)
    for i in range(n_points):
        x = f(x)
        orbit[i] = x
    counts, edges = np.histogram(orbit, bins=bins, range=(0.0, 1.0))
    masses = counts / float(n_points)
    top = int(math.ceil(bins / 10))
    top_mass = float(np.sort(masses)[-top:].sum())
    return MeasureHistogram(
        bin_edges=tuple(float(e) for e in edges),
        masses=tuple(float(m) for m in masses),
        top_decile_mass=top_mass,
        n_points=n_points,
        start=start_val,
    )
