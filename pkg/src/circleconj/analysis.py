"""Break detection, orbit connections, and the jump invariants.

The per-orbit invariants drive everything downstream: a map is
conjugate to a diffeomorphism through a piecewise-smooth map exactly
when every orbit's jump product is trivial, and the weighted product
over orbits decides whether a PL conjugator suffices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .circle import JUMP_TOL, POINT_TOL, CirclePoint, circle_dist
from .errors import AmbiguousMatch, InternalMismatch
from .words import MapWord


@dataclass(frozen=True)
class BreakRecord:
    """One candidate break: one-sided derivatives and their ratio."""

    point: CirclePoint
    d_minus: float
    d_plus: float
    jump: float

    def is_genuine(self, tol: float = JUMP_TOL) -> bool:
        return abs(self.jump - 1.0) > tol


@dataclass(frozen=True)
class ConnectionReport:
    """Breaks lying on a single orbit, as offsets from the earliest one.

    ``offsets[0] == 0`` names the representative; ``jumps[i]`` is the jump
    at the point ``offsets[i]`` steps ahead of it, and ``N = offsets[-1]``
    is the span of the segment.
    """

    representative: CirclePoint
    offsets: Tuple[int, ...]
    jumps: Tuple[float, ...]
    points: Tuple[float, ...]

    @property
    def N(self) -> int:
        return self.offsets[-1]

    def a(self, k: int) -> float:
        """Jump at offset k; 1 outside the recorded break offsets."""
        for off, j in zip(self.offsets, self.jumps):
            if off == k:
                return j
        return 1.0

    def pi_s_orbit(self) -> float:
        """Plain product of the jumps along the connection."""
        return math.prod(self.jumps)

    def pi_orbit(self) -> float:
        """Offset-weighted product: each jump enters to the power of its offset."""
        out = 1.0
        for off, j in zip(self.offsets, self.jumps):
            out *= j ** off
        return out


@dataclass(frozen=True)
class InvariantSheet:
    pi_s: float
    pi: float
    sigma: float
    d_property: bool
    orbit_products: Tuple[float, ...]
    k_vector: Tuple[int, ...]


def jumps_report(f: MapWord, jump_tol: float = JUMP_TOL,
                 point_tol: float = POINT_TOL) -> List[BreakRecord]:
    """Genuine breaks of f: candidates filtered by |jump - 1| > jump_tol."""
    out = []
    for p in f.candidate_breaks(point_tol):
        dm, dp = f.deriv_pair(p, point_tol)
        rec = BreakRecord(CirclePoint(p), dm, dp, dm / dp)
        if rec.is_genuine(jump_tol):
            out.append(rec)
    return out


def orbit_connections(f: MapWord, n_max: int = 64, tol: float = POINT_TOL,
                      jump_tol: float = JUMP_TOL) -> List[ConnectionReport]:
    """Group the breaks of f into orbit classes by iterating up to n_max steps.

    Matching uses the tolerance ``tol``; a match whose next iterates drift
    apart by more than ``10*tol``, a point matching two distinct breaks, or
    inconsistent offsets (an orbit returning to itself) raise
    :class:`AmbiguousMatch`.
    """
    recs = jumps_report(f, jump_tol, tol)
    if not recs:
        return []
    pts = [r.point.value for r in recs]
    m = len(pts)
    for i in range(m):
        for j in range(i + 1, m):
            if circle_dist(pts[i], pts[j]) <= tol:
                raise AmbiguousMatch(
                    f"breaks at {pts[i]!r} and {pts[j]!r} are closer than the tolerance")

    finv = f.inverse()
    edges: dict[tuple[int, int], int] = {}
    for i in range(m):
        for g, sign in ((f, 1), (finv, -1)):
            x = pts[i]
            for k in range(1, n_max + 1):
                x = g(x)
                hits = [j for j in range(m) if circle_dist(x, pts[j]) <= tol]
                if not hits:
                    continue
                if len(hits) > 1:
                    raise AmbiguousMatch(f"iterate {x!r} matches several breaks")
                j = hits[0]
                if circle_dist(f(x), f(pts[j])) > 10.0 * tol:
                    raise AmbiguousMatch(
                        f"match at {x!r} not confirmed by the next iterate")
                off = sign * k
                if i == j:
                    raise AmbiguousMatch(
                        "a break orbit returns to itself; rotation number looks rational")
                prev = edges.get((i, j))
                if prev is not None and prev != off:
                    raise AmbiguousMatch("conflicting orbit offsets between two breaks")
                edges[(i, j)] = off

    # connected components with consistent offsets
    offset: dict[int, int] = {}
    comps: List[List[int]] = []
    for root in range(m):
        if root in offset:
            continue
        offset[root] = 0
        comp = [root]
        frontier = [root]
        while frontier:
            i = frontier.pop()
            for (a, b), k in edges.items():
                for src, dst, step in ((a, b, k), (b, a, -k)):
                    if src != i:
                        continue
                    want = offset[i] + step
                    if dst in offset:
                        if offset[dst] != want:
                            raise AmbiguousMatch("inconsistent offsets along an orbit")
                    else:
                        offset[dst] = want
                        comp.append(dst)
                        frontier.append(dst)
        comps.append(comp)

    conns = []
    for comp in comps:
        base = min(offset[i] for i in comp)
        ordered = sorted(comp, key=lambda i: offset[i])
        conns.append(ConnectionReport(
            representative=recs[ordered[0]].point,
            offsets=tuple(offset[i] - base for i in ordered),
            jumps=tuple(recs[i].jump for i in ordered),
            points=tuple(pts[i] for i in ordered),
        ))
    conns.sort(key=lambda c: c.representative.value)
    return conns


def orbit_jump_product(conn: ConnectionReport) -> float:
    """Product of the jumps over one connection."""
    return conn.pi_s_orbit()


def pi_invariant(conn: ConnectionReport) -> float:
    """Offset-weighted jump product over one connection."""
    return conn.pi_orbit()


MAX_K = 32


def sigma_ki(conn: ConnectionReport, k_i: int, k: int) -> float:
    """Telescoping slot value: the tail product of jumps past k when
    k > k_i, the reciprocal head product when k <= k_i."""
    if abs(k_i) > MAX_K:
        raise ValueError(f"|k_i| is capped at {MAX_K}")
    if k > k_i:
        out = 1.0
        for j in range(max(k, 0), conn.N + 1):
            out *= conn.a(j)
        return out
    out = 1.0
    for j in range(0, min(k, conn.N + 1)):
        out *= conn.a(j)
    return 1.0 / out


def sigma_invariant(conns: Sequence[ConnectionReport],
                    k_vector: Optional[Sequence[int]] = None,
                    rel_tol: float = 1e-10) -> float:
    """Total bookkeeping product over all connections and slots.

    Computed both as the double product of slot values and in the closed
    form product of per-orbit invariants; the two must agree to ``rel_tol``
    relative error.
    """
    ks = list(k_vector) if k_vector is not None else [0] * len(conns)
    if len(ks) != len(conns):
        raise ValueError("k vector length must match the number of connections")
    double = 1.0
    closed = 1.0
    for conn, ki in zip(conns, ks):
        for k in range(min(0, ki), max(ki, conn.N) + 1):
            double *= sigma_ki(conn, ki, k)
        closed *= conn.pi_s_orbit() ** (-ki) * conn.pi_orbit()
    if abs(double - closed) > rel_tol * abs(closed):
        raise InternalMismatch(
            f"slot product {double!r} disagrees with closed form {closed!r}")
    return closed


def invariant_sheet(f: MapWord, conns: Sequence[ConnectionReport],
                    k_vector: Optional[Sequence[int]] = None,
                    jump_tol: float = JUMP_TOL) -> InvariantSheet:
    ks = tuple(k_vector) if k_vector is not None else (0,) * len(conns)
    products = tuple(c.pi_s_orbit() for c in conns)
    pi_s = math.prod(r.jump for r in jumps_report(f, jump_tol))
    return InvariantSheet(
        pi_s=pi_s,
        pi=math.prod(c.pi_orbit() for c in conns),
        sigma=sigma_invariant(conns, ks),
        d_property=all(abs(p - 1.0) <= jump_tol for p in products),
        orbit_products=products,
        k_vector=ks,
    )


def has_d_property(f: MapWord, conns: Optional[Sequence[ConnectionReport]] = None,
                   jump_tol: float = JUMP_TOL) -> Tuple[bool, InvariantSheet]:
    """Whether every orbit's jump product is trivial, plus the full sheet."""
    if conns is None:
        conns = orbit_connections(f, jump_tol=jump_tol)
    sheet = invariant_sheet(f, conns, jump_tol=jump_tol)
    return sheet.d_property, sheet
