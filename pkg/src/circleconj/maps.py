"""Elementary circle homeomorphisms: the letters that words are built from.

Four kinds: piecewise-linear maps, rigid rotations, and one-break
quadratic / exponential maps recentered to an arbitrary point.  Every
kind exposes a pinned lift (lift of 0 in ``[0, 1)``), its exact
functional inverse, and closed-form one-sided derivatives, so words of
letters can be evaluated, differentiated and inverted without any
root-finding.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .circle import POINT_TOL, circle_dist, wrap
from .errors import DegenerateSigma, InvalidBreaks, SlopeNotPositive
from .exact import RationalPL

#: quadratic / exponential parameter must keep this distance from 1
SIGMA_GAP = 1e-6
_CLOSURE_TOL = 1e-9


class ElementaryMap:
    """Shared interface; subclasses are frozen dataclasses."""

    kind: str = "?"
    exact: Optional[RationalPL] = None

    def lift01(self, t: float) -> float:
        """Pinned lift on [0, 1): increasing, with lift01(0) in [0, 1)."""
        raise NotImplementedError

    def inv_lift(self, y: float) -> float:
        """Functional inverse of :meth:`lift` on all of R."""
        raise NotImplementedError

    def deriv_pair(self, x: float, tol: float = POINT_TOL) -> Tuple[float, float]:
        """One-sided derivatives (left, right) at the circle point x."""
        raise NotImplementedError

    def break_points(self) -> Tuple[float, ...]:
        return ()

    def lift(self, x: float) -> float:
        k = math.floor(x)
        t = x - k
        if t >= 1.0:  # representational edge near an integer
            t, k = 0.0, k + 1
        return self.lift01(t) + k

    def ev(self, x: float) -> float:
        return wrap(self.lift01(wrap(x)))

    def inv_ev(self, y: float) -> float:
        return wrap(self.inv_lift(wrap(y)))

    def image_break_points(self) -> Tuple[float, ...]:
        """Break points of the inverse map."""
        return tuple(self.ev(b) for b in self.break_points())

    def payload(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class PLMap(ElementaryMap):
    """Piecewise-linear circle homeomorphism.

    ``slopes[j]`` rules the arc ``[breaks[j], breaks[j+1])``; the last arc
    wraps around to ``breaks[0] + 1``.  ``anchor`` is the lift value at
    ``breaks[0]``; it may be handed in as a circle value and is shifted by
    an integer at construction so the lift of 0 lands in ``[0, 1)``.  The
    last slope is snapped so the lift rises by exactly 1 per period.
    """

    breaks: Tuple[float, ...]
    slopes: Tuple[float, ...]
    anchor: float
    exact: Optional[RationalPL] = field(default=None, compare=False)

    kind = "pl"

    _vals: Tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        breaks = tuple(float(b) for b in self.breaks)
        slopes = tuple(float(s) for s in self.slopes)
        if not breaks or len(slopes) != len(breaks):
            raise InvalidBreaks("need one slope per arc and at least one break")
        if any(not (0.0 <= b < 1.0) for b in breaks):
            raise InvalidBreaks("break points must lie in [0, 1)")
        if any(q <= p for p, q in zip(breaks, breaks[1:])):
            raise InvalidBreaks("break points must be strictly increasing")
        if any(s <= 0.0 for s in slopes):
            raise SlopeNotPositive("all slopes must be positive")
        widths = [q - p for p, q in zip(breaks, breaks[1:])]
        widths.append(breaks[0] + 1.0 - breaks[-1])
        rise = math.fsum(s * w for s, w in zip(slopes, widths))
        if abs(rise - 1.0) > _CLOSURE_TOL:
            raise InvalidBreaks(f"lift rises by {rise!r} per period, expected 1")
        # snap the last slope so the closure holds exactly in floating point
        partial = math.fsum(s * w for s, w in zip(slopes[:-1], widths[:-1]))
        last = (1.0 - partial) / widths[-1]
        if last <= 0.0:
            raise SlopeNotPositive("closure leaves a nonpositive final slope")
        slopes = slopes[:-1] + (last,)

        vals = [float(self.anchor)]
        for s, w in zip(slopes[:-1], widths[:-1]):
            vals.append(vals[-1] + s * w)
        lift0 = vals[0] - slopes[-1] * breaks[0]
        shift = math.floor(lift0)
        if shift:
            vals = [v - shift for v in vals]

        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(self, "slopes", slopes)
        object.__setattr__(self, "anchor", vals[0])
        object.__setattr__(self, "_vals", tuple(vals))

    def lift01(self, t: float) -> float:
        b, v, s = self.breaks, self._vals, self.slopes
        i = bisect_right(b, t)
        if i == 0:  # t below the first break: wrapped tail of the last arc
            return v[-1] + s[-1] * (t + 1.0 - b[-1]) - 1.0
        return v[i - 1] + s[i - 1] * (t - b[i - 1])

    def inv_lift(self, y: float) -> float:
        b, v, s = self.breaks, self._vals, self.slopes
        k = math.floor(y - v[0])
        yy = y - k
        if yy >= v[0] + 1.0:
            yy, k = yy - 1.0, k + 1
        elif yy < v[0]:
            yy, k = yy + 1.0, k - 1
        j = bisect_right(v, yy) - 1
        if j < 0:
            j = 0
        return b[j] + (yy - v[j]) / s[j] + k

    def deriv_pair(self, x: float, tol: float = POINT_TOL) -> Tuple[float, float]:
        x = wrap(x)
        b, s = self.breaks, self.slopes
        m = len(b)
        i = bisect_right(b, x)
        near = min(((i - 1) % m, i % m), key=lambda j: circle_dist(x, b[j]))
        if circle_dist(x, b[near]) <= tol:
            return s[near - 1], s[near]
        arc = (i - 1) % m
        return s[arc], s[arc]

    def break_points(self) -> Tuple[float, ...]:
        return self.breaks

    def image_break_points(self) -> Tuple[float, ...]:
        return tuple(wrap(v) for v in self._vals)

    def payload(self) -> dict:
        return {"kind": "pl", "breaks": list(self.breaks),
                "slopes": list(self.slopes), "anchor": self.anchor}


@dataclass(frozen=True)
class Rotation(ElementaryMap):
    """Rigid rotation x -> x + alpha."""

    alpha: float
    exact_alpha: Optional[Fraction] = field(default=None, compare=False)

    kind = "rotation"

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", wrap(float(self.alpha)))

    @property
    def exact(self) -> Optional[RationalPL]:  # type: ignore[override]
        if self.exact_alpha is None:
            return None
        return RationalPL.rotation(self.exact_alpha)

    def lift01(self, t: float) -> float:
        return t + self.alpha

    def lift(self, x: float) -> float:
        return x + self.alpha

    def inv_lift(self, y: float) -> float:
        return y - self.alpha

    def deriv_pair(self, x: float, tol: float = POINT_TOL) -> Tuple[float, float]:
        return 1.0, 1.0

    def payload(self) -> dict:
        return {"kind": "rotation", "alpha": self.alpha}


def _check_sigma(sigma: float) -> float:
    sigma = float(sigma)
    if sigma <= 0.0 or abs(sigma - 1.0) < SIGMA_GAP:
        raise DegenerateSigma(f"parameter {sigma!r} must be positive and away from 1")
    return sigma


class _CenteredOneBreak(ElementaryMap):
    """Common machinery for one-break maps recentered by a rotation.

    The stored base lift fixes 0 and 1; the letter acts as
    ``x -> c + base(x - c)`` with the single break moved to the center c.
    """

    center: float
    _pin: int

    # base lift on [0, 1), its inverse, derivative, and one-sided pair at 0
    def _base(self, t: float) -> float:
        raise NotImplementedError

    def _base_inv(self, y: float) -> float:
        raise NotImplementedError

    def _base_d(self, t: float) -> float:
        raise NotImplementedError

    def _break_sides(self) -> Tuple[float, float]:
        raise NotImplementedError

    def _init_pin(self) -> None:
        c = wrap(float(self.center))
        object.__setattr__(self, "center", c)
        raw0 = self._base(1.0 - c) - 1.0 + c if c > 0.0 else 0.0
        object.__setattr__(self, "_pin", -math.floor(raw0))

    def lift01(self, t: float) -> float:
        z = t - self.center
        if z < 0.0:
            return self._base(z + 1.0) - 1.0 + self.center + self._pin
        return self._base(z) + self.center + self._pin

    def inv_lift(self, y: float) -> float:
        w = y - self.center - self._pin
        m = math.floor(w)
        r = w - m
        if r >= 1.0:
            r, m = 0.0, m + 1
        return self._base_inv(r) + m + self.center

    def deriv_pair(self, x: float, tol: float = POINT_TOL) -> Tuple[float, float]:
        z = wrap(x - self.center)
        if min(z, 1.0 - z) <= tol:
            return self._break_sides()
        d = self._base_d(z)
        return d, d

    def break_points(self) -> Tuple[float, ...]:
        return (self.center,)

    def image_break_points(self) -> Tuple[float, ...]:
        return (self.center,)  # the center is a fixed point


@dataclass(frozen=True)
class QuadMap(_CenteredOneBreak):
    """One-break map with quadratic lift, recentered.

    Base lift on [0, 1): ``q(t) = ((1-s) t^2 + 2 s t) / (1+s)`` with
    parameter ``s = sigma``.  Its one-sided derivatives at the break are
    ``2/(1+s)`` from the left and ``2s/(1+s)`` from the right, so the jump
    there is ``1/s`` (the map is exposed exactly as parametrized; callers
    wanting a prescribed jump ``j`` should pass ``sigma = 1/j``).
    """

    sigma: float
    center: float

    kind = "quad"
    _pin: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", _check_sigma(self.sigma))
        s = self.sigma
        object.__setattr__(self, "_qa", (1.0 - s) / (1.0 + s))
        object.__setattr__(self, "_qb", 2.0 * s / (1.0 + s))
        self._init_pin()

    def _base(self, t: float) -> float:
        return (self._qa * t + self._qb) * t

    def _base_inv(self, y: float) -> float:
        s = self.sigma
        # rationalized root of (1-s) z^2 + 2 s z = (1+s) y: no cancellation
        return (1.0 + s) * y / (s + math.sqrt(s * s + (1.0 - s * s) * y))

    def _base_d(self, t: float) -> float:
        return 2.0 * self._qa * t + self._qb

    def _break_sides(self) -> Tuple[float, float]:
        s = self.sigma
        return 2.0 / (1.0 + s), 2.0 * s / (1.0 + s)

    def payload(self) -> dict:
        return {"kind": "quad", "sigma": self.sigma, "center": self.center}


@dataclass(frozen=True)
class ExpMap(_CenteredOneBreak):
    """One-break map with exponential lift, recentered.

    Base lift on [0, 1): ``h(t) = (s^t - 1) / (s - 1)``; the jump at the
    break equals the parameter ``s = sigma``.
    """

    sigma: float
    center: float

    kind = "exp"
    _pin: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", _check_sigma(self.sigma))
        object.__setattr__(self, "_ls", math.log(self.sigma))
        object.__setattr__(self, "_den", self.sigma - 1.0)
        self._init_pin()

    def _base(self, t: float) -> float:
        return math.expm1(t * self._ls) / self._den

    def _base_inv(self, y: float) -> float:
        return math.log1p(self._den * y) / self._ls

    def _base_d(self, t: float) -> float:
        return math.exp(t * self._ls) * self._ls / self._den

    def _break_sides(self) -> Tuple[float, float]:
        d = self._ls / self._den
        return self.sigma * d, d

    def payload(self) -> dict:
        return {"kind": "exp", "sigma": self.sigma, "center": self.center}


def pl_from_exact(r: RationalPL) -> PLMap:
    """Floating-point view of an exact PL map, keeping the exact payload."""
    return PLMap(
        breaks=tuple(float(b) for b in r.breaks),
        slopes=tuple(float(s) for s in r.slopes()),
        anchor=float(r.values[0]),
        exact=r,
    )
