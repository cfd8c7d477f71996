"""Constructors for the maps the rest of the package works with.

The central one builds a PL homeomorphism with prescribed break points
and jumps (possible exactly when the jumps multiply to 1); the others
produce the one-break quadratic/exponential letters with a prescribed
jump, the two-break PL family, and synthesized instances whose correct
conjugator is known by construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Sequence, Union

from . import exact
from .analysis import jumps_report
from .circle import POINT_TOL, PointLike, as_value, circle_dist, wrap
from .errors import InvalidBreaks, JumpProductNotOne, SlopeNotPositive
from .maps import ExpMap, PLMap, QuadMap, Rotation, pl_from_exact
from .words import MapWord, word

Num = Union[int, float, Fraction]

#: prescribed jump products may deviate from 1 by at most this much
PRODUCT_TOL = 1e-12


def _all_rational(*values: Num) -> bool:
    return all(isinstance(v, Rational) for v in values)


@dataclass(frozen=True)
class PLSpec:
    """Prescription for a PL map: break points, jumps, and the anchored
    fixed point (defaults to the first break)."""

    breaks: Sequence[Num]
    jumps: Sequence[Num]
    anchor: Optional[Num] = None


def build_pl_from_jumps(spec: Union[PLSpec, Sequence[Num]],
                        jumps: Optional[Sequence[Num]] = None,
                        anchor: Optional[Num] = None,
                        product_tol: float = PRODUCT_TOL) -> PLMap:
    """PL homeomorphism with the prescribed breaks and jumps, fixing the
    anchor point.

    The slope above the last break is pinned by requiring the lift to
    close up over one period; every following slope divides out one more
    jump.  The jump product must be 1 within ``product_tol``; a deviation
    inside the tolerance is absorbed by rescaling the last jump.  When all
    inputs are rational the construction runs in exact arithmetic and the
    result carries its exact counterpart.
    """
    if isinstance(spec, PLSpec):
        breaks, jumps, anchor = spec.breaks, spec.jumps, spec.anchor
    else:
        breaks = spec
        if jumps is None:
            raise TypeError("jumps are required")
    breaks = list(breaks)
    jumps = list(jumps)
    if len(breaks) != len(jumps) or not breaks:
        raise InvalidBreaks("need one jump per break point")
    if any(s <= 0 for s in jumps):
        raise JumpProductNotOne("jumps must be positive")

    exact_ok = _all_rational(*breaks, *jumps) and (anchor is None or
                                                   isinstance(anchor, Rational))
    if exact_ok:
        fr_breaks = [exact.frac_wrap(Fraction(b)) for b in breaks]
        fr_jumps = [Fraction(s) for s in jumps]
        prod = math.prod(fr_jumps)
        if prod != 1:
            if abs(float(prod) - 1.0) > product_tol:
                raise JumpProductNotOne(f"jump product is {float(prod)!r}")
            fr_jumps[-1] /= prod
        r = exact.pl_from_jumps(fr_breaks, fr_jumps,
                                None if anchor is None else Fraction(anchor))
        return pl_from_exact(r)

    bs = [wrap(float(b)) for b in breaks]
    ss = [float(s) for s in jumps]
    if any(q <= p for p, q in zip(bs, bs[1:])):
        raise InvalidBreaks("break points must be strictly increasing in [0, 1)")
    prod = math.prod(ss)
    if abs(prod - 1.0) > product_tol:
        raise JumpProductNotOne(f"jump product is {prod!r}, allowed deviation {product_tol}")
    ss[-1] /= prod

    a = bs[0] if anchor is None else wrap(float(anchor))
    hit = [i for i, b in enumerate(bs) if circle_dist(b, a) <= POINT_TOL]
    if hit:
        a = bs[hit[0]]
    else:
        from bisect import bisect_right
        i = bisect_right(bs, a)
        bs.insert(i, a)
        ss.insert(i, 1.0)

    # representatives in [a, a+1), rotated so the anchor leads
    i0 = bs.index(a)
    n = len(bs) - 1
    qs = [bs[(i0 + j) % len(bs)] + (0.0 if bs[(i0 + j) % len(bs)] >= a else 1.0)
          for j in range(len(bs))]
    sj = [ss[(i0 + j) % len(ss)] for j in range(len(ss))]

    denom = 0.0
    cum = 1.0
    for j in range(n):
        cum *= sj[j]
        denom += (qs[j + 1] - qs[j]) / cum
    denom += qs[0] + 1.0 - qs[n]
    lam0 = 1.0 / denom
    lams = [lam0]
    for j in range(n):
        lams.append(lams[-1] / sj[j])
    arc_slopes = lams[1:] + [lam0]  # slope of [q_j, q_{j+1})

    vals = [a]
    for j in range(n):
        vals.append(vals[-1] + arc_slopes[j] * (qs[j + 1] - qs[j]))
    triples = sorted((wrap(q), s, v - (1.0 if q >= 1.0 else 0.0))
                     for q, s, v in zip(qs, arc_slopes, vals))
    return PLMap(breaks=tuple(t[0] for t in triples),
                 slopes=tuple(t[1] for t in triples),
                 anchor=triples[0][2])


def quadratic_elementary(jump: float, center: PointLike) -> QuadMap:
    """One-break quadratic map with the prescribed jump at ``center``.

    The quadratic lift with parameter s has jump 1/s at its break, so the
    internal parameter is the reciprocal of the requested jump.
    """
    return QuadMap(sigma=1.0 / float(jump), center=as_value(center))


def exponential_elementary(sigma: float, center: PointLike) -> ExpMap:
    """One-break exponential map; the jump at ``center`` equals ``sigma``."""
    return ExpMap(sigma=float(sigma), center=as_value(center))


def two_break_pl(c: Num, s1: Num) -> PLMap:
    """Two-break PL map: slope ``s1`` on [0, c), image of 0 equal to c.

    The second slope is forced by closure: ``s2 = (1 - s1 c)/(1 - c)``.
    The breaks are 0 and c = f(0), with jumps ``s2/s1`` and ``s1/s2``, so
    the orbit jump product is trivial by construction.
    """
    cf = float(c)
    if not 0.0 < cf < 1.0:
        raise InvalidBreaks("the image of 0 must lie strictly inside (0, 1)")
    if float(s1) <= 0.0:
        raise SlopeNotPositive("s1 must be positive")
    if _all_rational(c, s1):
        c_, s1_ = Fraction(c), Fraction(s1)
        s2_ = (1 - s1_ * c_) / (1 - c_)
        if s2_ <= 0:
            raise SlopeNotPositive("closure forces a nonpositive second slope")
        r = exact.RationalPL.from_slopes([Fraction(0), c_], [s1_, s2_], anchor=c_)
        return pl_from_exact(r)
    s1f = float(s1)
    s2f = (1.0 - s1f * cf) / (1.0 - cf)
    if s2f <= 0.0:
        raise SlopeNotPositive("closure forces a nonpositive second slope")
    return PLMap(breaks=(0.0, cf), slopes=(s1f, s2f), anchor=cf)


def synthesize_instance(h0: MapWord, F0: MapWord) -> MapWord:
    """Golden instance: the conjugate of a smooth map by a known word.

    Returns ``h0^-1 o F0 o h0``, which is conjugated back to ``F0`` by
    ``h0`` exactly; ``F0`` must have no genuine breaks.
    """
    if jumps_report(F0):
        raise ValueError("the inner map must be free of genuine breaks")
    return h0.inverse() @ F0 @ h0
