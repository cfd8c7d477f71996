"""Rotation-number estimation and continued-fraction screening.

The estimator averages lift displacements along one orbit; the classical
bound keeps the estimate within 2/n of the true rotation number.
Irrationality is never asserted: the estimate only carries a
``looks_rational`` flag when the continued fraction terminates and an
orbit of the implied period closes up numerically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .circle import POINT_TOL, circle_dist, wrap
from .words import MapWord


def _cf_quotients(alpha: float, depth: int, rem_tol: float) -> Tuple[List[int], bool]:
    """Partial quotients of alpha in [0, 1); the flag marks termination."""
    out: List[int] = []
    x = wrap(alpha)
    for _ in range(depth):
        if x < rem_tol:
            return out, True
        x = 1.0 / x
        a = math.floor(x)
        out.append(a)
        x -= a
    return out, x < rem_tol


def continued_fraction(alpha: float, depth: int = 40,
                       rem_tol: float = 1e-12) -> List[int]:
    """Partial quotients of alpha in [0, 1), stopping at ``depth`` terms or
    when the remainder drops below ``rem_tol``."""
    quotients, _ = _cf_quotients(alpha, depth, rem_tol)
    return quotients


def convergents(quotients: Sequence[int]) -> List[Tuple[int, int]]:
    """Convergents p/q of [0; a_1, a_2, ...]."""
    out = []
    p0, q0 = 1, 0  # p_{-1}/q_{-1}
    p1, q1 = 0, 1  # p_0/q_0 for integer part 0
    for a in quotients:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((p1, q1))
    return out


@dataclass(frozen=True)
class RotationEstimate:
    value: float
    n_iter: int
    error_bound: float
    base_point: float
    cf: Tuple[int, ...]
    rationality: str  # "looks_rational" | "no_period_found"
    rational_approx: Optional[Tuple[int, int]]


def rotation_number(f: MapWord, n_iter: int = 100_000, base_point: float = 0.0,
                    cf_depth: int = 40, point_tol: float = POINT_TOL) -> RotationEstimate:
    """Birkhoff estimate of the rotation number from one orbit.

    Displacements are accumulated with the orbit point kept in [0, 1), so
    precision does not decay as the lift orbit grows.  The guarantee
    ``|estimate - rho| <= 2/n_iter`` holds for any starting point.
    """
    if n_iter < 1:
        raise ValueError("n_iter must be at least 1")
    fns = f.lift_fns()
    x = wrap(base_point)
    total = 0.0
    for _ in range(n_iter):
        y = x
        for fn in fns:
            y = fn(y)
        total += y - x
        x = wrap(y)
    value = wrap(total / n_iter)

    quotients, terminated = _cf_quotients(value, cf_depth, 1e-12)
    rationality = "no_period_found"
    approx: Optional[Tuple[int, int]] = None
    if terminated and quotients:
        p, q = convergents(quotients)[-1]
        if 1 <= q <= min(n_iter, 100_000):
            y = x
            for _ in range(q):
                for fn in fns:
                    y = fn(y)
                y = wrap(y)
            if circle_dist(y, x) <= point_tol:
                rationality = "looks_rational"
                approx = (p, q)
    elif terminated:
        # the estimate itself is (numerically) an integer: rotation number 0
        rationality = "looks_rational"
        approx = (0, 1)

    return RotationEstimate(
        value=value,
        n_iter=n_iter,
        error_bound=2.0 / n_iter,
        base_point=wrap(base_point),
        cf=tuple(quotients),
        rationality=rationality,
        rational_approx=approx,
    )
