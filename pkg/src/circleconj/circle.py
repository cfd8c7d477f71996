"""Points on the circle R/Z: wrapping, distance, tolerant identity."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

#: Default tolerance for identifying two circle points.
POINT_TOL = 1e-9
#: Default threshold on |jump - 1| for classifying a genuine break.
JUMP_TOL = 1e-8


def wrap(x: float) -> float:
    """Canonical representative of ``x`` mod 1 in ``[0, 1)``."""
    r = x % 1.0
    # x % 1.0 rounds up to 1.0 for tiny negative x; keep the invariant r < 1
    return 0.0 if r >= 1.0 else r


def circle_dist(a: float, b: float) -> float:
    """Shortest distance on R/Z: min(|a-b|, 1-|a-b|) after wrapping."""
    d = abs(wrap(a) - wrap(b))
    return 1.0 - d if d > 0.5 else d


PointLike = Union["CirclePoint", float, int]


def as_value(x: PointLike) -> float:
    """Float representative in [0, 1) of a point-like argument."""
    return x.value if isinstance(x, CirclePoint) else wrap(float(x))


@dataclass(frozen=True)
class CirclePoint:
    """A point of the circle, stored by its canonical representative."""

    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", wrap(float(self.value)))

    @staticmethod
    def of(x: PointLike) -> "CirclePoint":
        return x if isinstance(x, CirclePoint) else CirclePoint(float(x))

    def dist(self, other: PointLike) -> float:
        return circle_dist(self.value, as_value(other))

    def close_to(self, other: PointLike, tol: float = POINT_TOL) -> bool:
        return self.dist(other) <= tol

    def __float__(self) -> float:
        return self.value


def dedupe_points(points: Iterable[float], tol: float = POINT_TOL) -> list[float]:
    """Sort points and merge clusters that are circle-equal within ``tol``.

    Each cluster is represented by its smallest member; a cluster straddling
    the 0/1 seam is represented by its member just above 0.
    """
    pts = sorted(wrap(p) for p in points)
    if not pts:
        return []
    out = [pts[0]]
    for p in pts[1:]:
        if p - out[-1] > tol:
            out.append(p)
    if len(out) > 1 and (out[0] + 1.0) - out[-1] <= tol:
        out.pop()
    return out
