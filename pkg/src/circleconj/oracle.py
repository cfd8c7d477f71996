"""Cross-checks of the floating pipeline against the exact rational backend."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .circle import circle_dist
from .exact import RationalPL, frac_wrap
from .words import MapWord


def word_to_rational(w: MapWord) -> RationalPL:
    """Fold a word of rational PL/rotation letters into one exact map.

    Raises ValueError when the word contains quadratic/exponential letters
    or letters constructed from non-rational data.
    """
    total = RationalPL.identity()
    for letter in w.letters:
        ex = letter.map.exact
        if ex is None:
            raise ValueError(
                f"letter of kind {letter.map.kind!r} has no exact rational form")
        if letter.inverse:
            ex = ex.inverse()
        total = total @ ex
    return total


@dataclass(frozen=True)
class JumpRow:
    point: float
    exact: Fraction
    measured: float

    @property
    def rel_error(self) -> float:
        e = float(self.exact)
        return abs(self.measured - e) / abs(e)


@dataclass(frozen=True)
class OracleReport:
    max_deviation: float
    jumps: Tuple[JumpRow, ...]

    def ok(self, eval_tol: float = 1e-10, jump_tol: float = 1e-10) -> bool:
        return (self.max_deviation <= eval_tol
                and all(r.rel_error <= jump_tol for r in self.jumps))


def oracle_compare(w: MapWord, exact: Optional[RationalPL] = None,
                   grid: int = 512) -> OracleReport:
    """Compare float evaluation of ``w`` against exact evaluation.

    Uses a dyadic grid so the float and rational sample points coincide
    exactly.  Reports the max circle distance between the two evaluations
    and an exact-vs-float jump table at the genuine breaks.
    """
    if exact is None:
        exact = word_to_rational(w)
    dev = 0.0
    for i in range(grid):
        xf = i / grid
        ye = exact.ev(Fraction(i, grid))
        dev = max(dev, circle_dist(w(xf), float(ye)))
    rows = []
    for b in exact.genuine_breaks():
        rows.append(JumpRow(point=float(b), exact=exact.jump_at(b),
                            measured=w.jump(float(b))))
    return OracleReport(max_deviation=dev, jumps=tuple(rows))


# -- exact mirror of the PL-only reduction -------------------------------------

@dataclass(frozen=True)
class ExactConnection:
    representative: Fraction
    offsets: Tuple[int, ...]
    jumps: Tuple[Fraction, ...]
    points: Tuple[Fraction, ...]

    @property
    def span(self) -> int:
        return self.offsets[-1]

    def a(self, k: int) -> Fraction:
        for off, j in zip(self.offsets, self.jumps):
            if off == k:
                return j
        return Fraction(1)

    def pi_s_orbit(self) -> Fraction:
        return math.prod(self.jumps, start=Fraction(1))

    def pi_orbit(self) -> Fraction:
        out = Fraction(1)
        for off, j in zip(self.offsets, self.jumps):
            out *= j ** off
        return out


def exact_connections(f: RationalPL, n_max: int = 64) -> List[ExactConnection]:
    """Orbit classes of the genuine breaks, by exact forward iteration."""
    pts = f.genuine_breaks()
    index = {p: i for i, p in enumerate(pts)}
    m = len(pts)
    offset = {i: None for i in range(m)}
    conns: List[ExactConnection] = []
    for root in range(m):
        if offset[root] is not None:
            continue
        offset[root] = 0
        members = {root: 0}
        frontier = [root]
        while frontier:
            i = frontier.pop()
            x = pts[i]
            for k in range(1, n_max + 1):
                x = f.ev(x)
                j = index.get(x)
                if j is not None and j not in members:
                    members[j] = members[i] + k
                    offset[j] = members[j]
                    frontier.append(j)
        base = min(members.values())
        ordered = sorted(members.items(), key=lambda kv: kv[1])
        conns.append(ExactConnection(
            representative=pts[ordered[0][0]],
            offsets=tuple(off - base for _, off in ordered),
            jumps=tuple(f.jump_at(pts[i]) for i, _ in ordered),
            points=tuple(pts[i] for i, _ in ordered),
        ))
    conns.sort(key=lambda c: c.representative)
    return conns


def exact_sigma_ki(conn: ExactConnection, k_i: int, k: int) -> Fraction:
    if k > k_i:
        out = Fraction(1)
        for j in range(max(k, 0), conn.span + 1):
            out *= conn.a(j)
        return out
    out = Fraction(1)
    for j in range(0, min(k, conn.span + 1)):
        out *= conn.a(j)
    return 1 / out


@dataclass(frozen=True)
class ExactReduction:
    conjugator: RationalPL
    reduced: RationalPL
    predicted: Tuple[Tuple[Fraction, Fraction], ...]  # (point, jump) per connection

    def residual_breaks(self) -> List[Fraction]:
        """Breaks of the reduced map not accounted for by the predictions."""
        predicted_pts = {p for p, _ in self.predicted}
        return [b for b in self.reduced.genuine_breaks() if b not in predicted_pts]

    def jumps_match(self) -> bool:
        return all(self.reduced.jump_at(p) == j for p, j in self.predicted)


def exact_reduce_case1(f: RationalPL, k_vector: Optional[List[int]] = None,
                       anchor: Fraction = Fraction(0),
                       n_max: int = 64) -> ExactReduction:
    """Exact mirror of the PL-conjugator construction.

    Builds the PL map with breaks along the break orbits and the
    telescoping jumps, conjugates exactly, and returns the predicted
    one-break-per-orbit data.  Requires the total bookkeeping product to
    equal 1 exactly.
    """
    from .errors import SigmaNotOne

    conns = exact_connections(f, n_max)
    ks = k_vector if k_vector is not None else [0] * len(conns)
    if len(ks) != len(conns):
        raise ValueError("k vector length must match the number of connections")

    sigma = Fraction(1)
    slots: List[Tuple[Fraction, Fraction]] = []
    predicted: List[Tuple[Fraction, Fraction]] = []
    for conn, ki in zip(conns, ks):
        m_i, n_i = min(0, ki), max(ki, conn.span)
        pt = {0: conn.representative}
        x = conn.representative
        for k in range(1, n_i + 1):
            x = f.ev(x)
            pt[k] = x
        x = conn.representative
        for k in range(-1, m_i - 1, -1):
            x = f.inv_ev(x)
            pt[k] = x
        for k in range(m_i, n_i + 1):
            s = exact_sigma_ki(conn, ki, k)
            sigma *= s
            slots.append((pt[k], s))
        predicted.append((pt[ki], conn.pi_s_orbit()))
    if sigma != 1:
        raise SigmaNotOne(f"exact bookkeeping product is {sigma}, not 1")

    from .exact import pl_from_jumps

    slots.sort()
    L = pl_from_jumps([p for p, _ in slots], [s for _, s in slots], anchor=anchor)
    F = L @ f @ L.inverse()
    predicted_img = tuple((L.ev(p), j) for p, j in predicted)
    return ExactReduction(conjugator=L, reduced=F, predicted=predicted_img)
