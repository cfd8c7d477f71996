"""Exact PL circle homeomorphisms over the rationals.

A map is stored by its nodes: positions ``b_0 < ... < b_{m-1}`` in
``[0, 1)`` together with the lift values at those positions, pinned so
that the lift of 0 lies in ``[0, 1)``.  Slopes are derived cyclically
with ``b_m = b_0 + 1`` and ``v_m = v_0 + 1``.  Composition, inversion
and powers stay in this class with exactly computed data, which makes it
the ground-truth oracle for every PL-only computation in the package.

Canonical form: nodes whose left and right slopes agree are dropped (a
pure rotation keeps the single node 0), so structural equality of two
values means equality of the maps.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .errors import InvalidBreaks, JumpProductNotOne, SlopeNotPositive

Rat = Fraction


def frac_wrap(x: Rat) -> Rat:
    """Representative of x mod 1 in [0, 1), exactly."""
    return x - math.floor(x)


@dataclass(frozen=True)
class RationalPL:
    breaks: Tuple[Rat, ...]
    values: Tuple[Rat, ...]

    def __post_init__(self) -> None:
        b, v = self.breaks, self.values
        if not b or len(b) != len(v):
            raise InvalidBreaks("need matching, nonempty node and value lists")
        if any(not (0 <= x < 1) for x in b) or any(y <= x for x, y in zip(b, b[1:])):
            raise InvalidBreaks("node positions must be strictly increasing in [0, 1)")
        if any(w <= u for u, w in zip(v, v[1:])) or v[-1] >= v[0] + 1:
            raise InvalidBreaks("lift values must increase by less than 1 over a period")
        object.__setattr__(self, "_slopes", self._compute_slopes())

    # -- construction -----------------------------------------------------

    @classmethod
    def from_nodes(cls, nodes: Iterable[Tuple[Rat, Rat]]) -> "RationalPL":
        """Build from (position, lift value) pairs; pins and canonicalizes."""
        items = sorted((frac_wrap(Rat(p)), Rat(val)) for p, val in nodes)
        pos = [p for p, _ in items]
        if any(q == p for p, q in zip(pos, pos[1:])):
            raise InvalidBreaks("duplicate node positions")
        raw = cls(tuple(pos), tuple(val for _, val in items))
        pinned = raw._shift(-math.floor(raw.lift(Rat(0))))
        return pinned._canonical()

    @classmethod
    def from_slopes(cls, breaks: Sequence[Rat], slopes: Sequence[Rat],
                    anchor: Rat) -> "RationalPL":
        """Build from break points, per-arc slopes, and the lift value at
        the first break; the slopes must close up exactly over one period."""
        bs = [Rat(b) for b in breaks]
        ss = [Rat(s) for s in slopes]
        if len(bs) != len(ss):
            raise InvalidBreaks("need one slope per arc")
        if any(s <= 0 for s in ss):
            raise SlopeNotPositive("slopes must be positive")
        widths = [q - p for p, q in zip(bs, bs[1:])] + [bs[0] + 1 - bs[-1]]
        if sum(s * w for s, w in zip(ss, widths)) != 1:
            raise InvalidBreaks("slopes do not close up over one period")
        vals = [Rat(anchor)]
        for s, w in zip(ss[:-1], widths[:-1]):
            vals.append(vals[-1] + s * w)
        return cls.from_nodes(zip(bs, vals))

    @classmethod
    def identity(cls) -> "RationalPL":
        return cls((Rat(0),), (Rat(0),))

    @classmethod
    def rotation(cls, alpha: Rat) -> "RationalPL":
        return cls((Rat(0),), (frac_wrap(Rat(alpha)),))

    # -- structure ---------------------------------------------------------

    def _compute_slopes(self) -> Tuple[Rat, ...]:
        b, v = self.breaks, self.values
        ext_b = b + (b[0] + 1,)
        ext_v = v + (v[0] + 1,)
        return tuple((ext_v[j + 1] - ext_v[j]) / (ext_b[j + 1] - ext_b[j])
                     for j in range(len(b)))

    def slopes(self) -> Tuple[Rat, ...]:
        """Slope of each arc [b_j, b_{j+1}), cyclically."""
        return self._slopes  # type: ignore[attr-defined]

    def _shift(self, k: int) -> "RationalPL":
        return RationalPL(self.breaks, tuple(v + k for v in self.values))

    def _canonical(self) -> "RationalPL":
        s = self.slopes()
        m = len(self.breaks)
        keep = [j for j in range(m) if s[j - 1] != s[j]]
        if not keep:
            # constant slope 1: a rigid rotation
            return RationalPL((Rat(0),), (frac_wrap(self.values[0] - self.breaks[0]),))
        if len(keep) == m:
            return self
        nodes = [(self.breaks[j], self.values[j]) for j in keep]
        raw = RationalPL(tuple(p for p, _ in nodes), tuple(v for _, v in nodes))
        return raw._shift(-math.floor(raw.lift(Rat(0))))

    def jump_at(self, p: Rat) -> Rat:
        """Ratio of left to right slope at p; 1 when p is not a node."""
        p = frac_wrap(Rat(p))
        try:
            j = self.breaks.index(p)
        except ValueError:
            return Rat(1)
        s = self.slopes()
        return s[j - 1] / s[j]

    def genuine_breaks(self) -> list[Rat]:
        return [b for b in self.breaks if self.jump_at(b) != 1]

    def pi_s(self) -> Rat:
        """Product of the jumps over all nodes (telescopes to 1)."""
        out = Rat(1)
        for b in self.breaks:
            out *= self.jump_at(b)
        return out

    # -- evaluation ---------------------------------------------------------

    def lift(self, x: Rat) -> Rat:
        x = Rat(x)
        k = math.floor(x)
        t = x - k
        b, v, s = self.breaks, self.values, self.slopes()
        i = bisect_right(b, t)
        if i == 0:  # t below the first node: wrapped continuation of the last arc
            return v[-1] + s[-1] * (t + 1 - b[-1]) - 1 + k
        return v[i - 1] + s[i - 1] * (t - b[i - 1]) + k

    def ev(self, x: Rat) -> Rat:
        return frac_wrap(self.lift(frac_wrap(Rat(x))))

    def inv_lift(self, y: Rat) -> Rat:
        y = Rat(y)
        b, v, s = self.breaks, self.values, self.slopes()
        k = math.floor(y - v[0])
        yy = y - k
        j = bisect_right(v, yy) - 1
        return b[j] + (yy - v[j]) / s[j] + k

    def inv_ev(self, y: Rat) -> Rat:
        return frac_wrap(self.inv_lift(frac_wrap(Rat(y))))

    # -- group operations ----------------------------------------------------

    def compose(self, other: "RationalPL") -> "RationalPL":
        """self after other (``self @ other``)."""
        pos = set(other.breaks)
        pos.update(other.inv_ev(p) for p in self.breaks)
        nodes = [(p, self.lift(other.lift(p))) for p in sorted(pos)]
        return RationalPL.from_nodes(nodes)

    def inverse(self) -> "RationalPL":
        nodes = []
        for p, val in zip(self.breaks, self.values):
            m = math.floor(val)
            nodes.append((val - m, p - m))
        return RationalPL.from_nodes(nodes)

    def power(self, n: int) -> "RationalPL":
        base = self if n >= 0 else self.inverse()
        out = RationalPL.identity()
        for _ in range(abs(n)):
            out = base.compose(out)
        return out

    def __matmul__(self, other: "RationalPL") -> "RationalPL":
        return self.compose(other)

    def __pow__(self, n: int) -> "RationalPL":
        return self.power(n)


def pl_from_jumps(breaks: Sequence[Rat], jumps: Sequence[Rat],
                  anchor: Rat | None = None) -> RationalPL:
    """PL homeomorphism with prescribed break points and jumps, exactly.

    The construction fixes ``L(a) = a`` at the anchor ``a`` (default: the
    first break; inserted as a jump-1 node when not listed).  Writing the
    points as ``a = q_0 < q_1 < ... < q_n < a + 1`` with jumps
    ``s_0, ..., s_n``, the slope above ``q_n`` is::

        lam_0 = 1 / (sum_j (s_0...s_j)^-1 (q_{j+1} - q_j) + (a + 1 - q_n))

    and each following slope divides out one more jump.  Requires the jump
    product to equal 1 exactly.
    """
    bs = [frac_wrap(Rat(b)) for b in breaks]
    ss = [Rat(s) for s in jumps]
    if len(bs) != len(ss) or not bs:
        raise InvalidBreaks("need one jump per break point")
    if sorted(set(bs)) != bs:
        raise InvalidBreaks("break points must be strictly increasing in [0, 1)")
    if any(s <= 0 for s in ss):
        raise JumpProductNotOne("jumps must be positive")
    if math.prod(ss) != 1:
        raise JumpProductNotOne("prescribed jumps must multiply to 1")

    a = bs[0] if anchor is None else frac_wrap(Rat(anchor))
    if a not in bs:
        i = bisect_right(bs, a)
        bs.insert(i, a)
        ss.insert(i, Rat(1))
    # representatives in [a, a+1), rotated so the anchor comes first
    i0 = bs.index(a)
    qs = [bs[(i0 + j) % len(bs)] + (0 if bs[(i0 + j) % len(bs)] >= a else 1)
          for j in range(len(bs))]
    sj = [ss[(i0 + j) % len(ss)] for j in range(len(ss))]
    n = len(qs) - 1

    denom = Rat(0)
    cum = Rat(1)
    for j in range(n):
        cum *= sj[j]
        denom += (qs[j + 1] - qs[j]) / cum
    denom += qs[0] + 1 - qs[n]
    lam0 = 1 / denom
    lams = [lam0]
    for j in range(n):
        lams.append(lams[-1] / sj[j])
    arc_slopes = lams[1:] + [lam0]  # slope of [q_j, q_{j+1})

    vals = [a]
    for j in range(n):
        vals.append(vals[-1] + arc_slopes[j] * (qs[j + 1] - qs[j]))
    nodes = [(frac_wrap(q), v - (1 if q >= 1 else 0)) for q, v in zip(qs, vals)]
    return RationalPL.from_nodes(nodes)
