"""Constructive conjugation of class-P circle maps.

Two routes move all breaks to one prescribed point per orbit: when the
total bookkeeping product is 1, a single PL map with telescoping jumps
along the break orbits does it; otherwise a one-break quadratic or
exponential letter placed one step past the last break of the leading
orbit first restores the product to 1.  Maps whose orbit jump products
are all trivial come out numerically smooth, and the two-break PL family
admits a direct one-letter conjugator that linearizes it completely.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .analysis import (BreakRecord, ConnectionReport, MAX_K, has_d_property,
                       invariant_sheet, jumps_report, orbit_connections,
                       sigma_invariant, sigma_ki)
from .builders import build_pl_from_jumps, exponential_elementary, quadratic_elementary
from .circle import JUMP_TOL, POINT_TOL, CirclePoint, circle_dist, wrap
from .errors import (BreakCollision, DPropertyFails, InternalMismatch,
                     NotTwoBreakForm, SigmaIsOne, SigmaNotOne)
from .rotation import RotationEstimate, rotation_number
from .words import Letter, MapWord, word

#: dispatch threshold: bookkeeping products this close to 1 take the PL route
CASE_TOL = 1e-8
#: measured-vs-predicted jump tolerance for a successful reduction
REDUCE_TOL = 1e-8

FAMILIES = ("pl", "pq", "pe")


@dataclass(frozen=True)
class PredictedBreak:
    point: CirclePoint
    jump: float
    connection: int
    offset: int


@dataclass(frozen=True)
class ReductionResult:
    conjugator: MapWord
    reduced: MapWord
    predicted: Tuple[PredictedBreak, ...]
    measured: Tuple[BreakRecord, ...]
    residual: float
    family: str
    case: int
    sigma: float
    pi: float
    pi_s: float
    d_property: bool
    k_vector: Tuple[int, ...]
    fixed_point: Optional[float] = None


def _normalize_k(k_vector: Optional[Sequence[int]], n: int) -> List[int]:
    ks = list(k_vector) if k_vector is not None else [0] * n
    if len(ks) != n:
        raise ValueError(f"k vector has {len(ks)} entries for {n} connections")
    if any(abs(k) > MAX_K for k in ks):
        raise ValueError(f"|k_i| is capped at {MAX_K}")
    return ks


def _orbit_points(f: MapWord, rep: float, lo: int, hi: int) -> dict[int, float]:
    """f^k(rep) for lo <= k <= hi, by forward/backward iteration."""
    pts = {0: rep}
    x = rep
    for k in range(1, hi + 1):
        x = f(x)
        pts[k] = x
    finv = f.inverse()
    x = rep
    for k in range(-1, lo - 1, -1):
        x = finv(x)
        pts[k] = x
    return pts


def _measure(F: MapWord, predicted: Sequence[PredictedBreak],
             point_tol: float, jump_tol: float) -> Tuple[Tuple[BreakRecord, ...], float]:
    """Measured jumps of F against the predictions.

    Every candidate break is expected to carry its predicted jump (1 when
    unlisted); a predicted point missing from the candidates counts as a
    measured jump of 1.
    """
    cands = F.candidate_breaks(point_tol)
    records = []
    residual = 0.0
    seen = [False] * len(predicted)
    for p in cands:
        dm, dp = F.deriv_pair(p, point_tol)
        rec = BreakRecord(CirclePoint(p), dm, dp, dm / dp)
        records.append(rec)
        expected = 1.0
        for i, pb in enumerate(predicted):
            if circle_dist(p, pb.point.value) <= point_tol:
                expected = pb.jump
                seen[i] = True
                break
        residual = max(residual, abs(rec.jump - expected))
    for i, pb in enumerate(predicted):
        if not seen[i]:
            residual = max(residual, abs(1.0 - pb.jump))
    measured = tuple(r for r in records if r.is_genuine(jump_tol))
    return measured, residual


def reduce_case1(f: MapWord, conns: Optional[Sequence[ConnectionReport]] = None,
                 k_vector: Optional[Sequence[int]] = None, *,
                 anchor: float = 0.0, case_tol: float = CASE_TOL,
                 point_tol: float = POINT_TOL,
                 jump_tol: float = JUMP_TOL) -> ReductionResult:
    """PL route: requires the total bookkeeping product to be 1.

    The conjugator is the PL map anchored at ``anchor`` whose breaks run
    along the break orbits (offsets ``min(0, k_i) .. max(k_i, N_i)``) and
    whose jumps are the telescoping slot values; conjugation then cancels
    every jump except one per orbit, which receives the orbit's product.
    """
    if conns is None:
        conns = orbit_connections(f, tol=point_tol, jump_tol=jump_tol)
    ks = _normalize_k(k_vector, len(conns))
    sig = sigma_invariant(conns, ks)
    if abs(sig - 1.0) > case_tol:
        raise SigmaNotOne(f"bookkeeping product {sig!r} is not 1; the PL route needs"
                          " a quadratic/exponential correction first")
    sheet = invariant_sheet(f, conns, ks, jump_tol)

    slots: List[Tuple[float, float, int, int]] = []  # point, jump, connection, offset
    predicted: List[PredictedBreak] = []
    for i, (conn, ki) in enumerate(zip(conns, ks)):
        lo, hi = min(0, ki), max(ki, conn.N)
        pts = _orbit_points(f, conn.representative.value, lo, hi)
        for k in range(lo, hi + 1):
            slots.append((pts[k], sigma_ki(conn, ki, k), i, k))
        predicted.append(PredictedBreak(
            point=CirclePoint(pts[ki]), jump=conn.pi_s_orbit(),
            connection=i, offset=ki))

    for a in range(len(slots)):
        for b in range(a + 1, len(slots)):
            if circle_dist(slots[a][0], slots[b][0]) <= point_tol:
                raise BreakCollision(
                    f"orbit slots {slots[a][2:]} and {slots[b][2:]} land on the same point")

    if slots:
        slots.sort()
        L = build_pl_from_jumps([s[0] for s in slots], [s[1] for s in slots],
                                anchor=anchor, product_tol=10.0 * case_tol)
        h = word(L)
    else:
        h = MapWord.identity()
    F = h @ f @ h.inverse()
    predicted = [PredictedBreak(CirclePoint(h(pb.point.value)), pb.jump,
                                pb.connection, pb.offset) for pb in predicted]
    measured, residual = _measure(F, predicted, point_tol, jump_tol)
    return ReductionResult(
        conjugator=h, reduced=F, predicted=tuple(predicted), measured=measured,
        residual=residual, family="pl", case=1, sigma=sig, pi=sheet.pi,
        pi_s=sheet.pi_s, d_property=sheet.d_property, k_vector=tuple(ks),
        fixed_point=wrap(anchor) if slots else None)


def reduce_case2(f: MapWord, conns: Optional[Sequence[ConnectionReport]] = None,
                 k_vector: Optional[Sequence[int]] = None, *,
                 family: str = "pe", anchor: Optional[float] = None,
                 case_tol: float = CASE_TOL, point_tol: float = POINT_TOL,
                 jump_tol: float = JUMP_TOL) -> ReductionResult:
    """Corrective route for a nontrivial bookkeeping product.

    A single one-break letter with jump equal to the product, centered one
    step past the last break of the leading orbit, restores the product to
    1; the PL route then finishes.  The final conjugator is the PL map
    composed with that letter.
    """
    if family not in ("pq", "pe"):
        raise ValueError("family must be 'pq' or 'pe'")
    if conns is None:
        conns = orbit_connections(f, tol=point_tol, jump_tol=jump_tol)
    ks = _normalize_k(k_vector, len(conns))
    sig = sigma_invariant(conns, ks)
    if abs(sig - 1.0) <= case_tol:
        raise SigmaIsOne("bookkeeping product is already 1; use the PL route")
    sheet = invariant_sheet(f, conns, ks, jump_tol)

    lead = conns[0]  # connections are sorted by representative coordinate
    c = _orbit_points(f, lead.representative.value, 0, lead.N + 1)[lead.N + 1]
    u = (exponential_elementary(sig, c) if family == "pe"
         else quadratic_elementary(sig, c))
    uw = word(u)
    f1 = uw @ f @ uw.inverse()

    conns1 = orbit_connections(f1, tol=point_tol, jump_tol=jump_tol)
    # transport the k vector: a new connection's representative sits s steps
    # ahead of the image of some original representative
    ks1: List[int] = []
    for conn1 in conns1:
        match = None
        for i, conn in enumerate(conns):
            img_pts = _orbit_points(f, conn.representative.value, -2, conn.N + 2)
            for s, p in img_pts.items():
                if circle_dist(conn1.representative.value, u.ev(p)) <= point_tol:
                    match = ks[i] - s
                    break
            if match is not None:
                break
        if match is None:
            raise InternalMismatch(
                "could not relate a corrected-map orbit to an original one")
        ks1.append(match)

    try:
        inner = reduce_case1(f1, conns1, ks1, anchor=(c if anchor is None else anchor),
                             case_tol=case_tol, point_tol=point_tol, jump_tol=jump_tol)
    except SigmaNotOne as e:
        raise InternalMismatch(
            f"corrective letter failed to restore the product to 1: {e}") from e

    h = inner.conjugator @ uw
    F = inner.reduced
    predicted = []
    for i, (conn, ki) in enumerate(zip(conns, ks)):
        target = _orbit_points(f, conn.representative.value, min(0, ki),
                               max(0, ki))[ki]
        predicted.append(PredictedBreak(
            point=CirclePoint(h(target)), jump=conn.pi_s_orbit(),
            connection=i, offset=ki))
    measured, residual = _measure(F, predicted, point_tol, jump_tol)
    return ReductionResult(
        conjugator=h, reduced=F, predicted=tuple(predicted), measured=measured,
        residual=residual, family=family, case=2, sigma=sig, pi=sheet.pi,
        pi_s=sheet.pi_s, d_property=sheet.d_property, k_vector=tuple(ks),
        fixed_point=inner.fixed_point)


def reduce_to_prescribed(f: MapWord, k_vector: Optional[Sequence[int]] = None,
                         family: str = "pe", *, anchor: Optional[float] = None,
                         case_tol: float = CASE_TOL, point_tol: float = POINT_TOL,
                         jump_tol: float = JUMP_TOL) -> ReductionResult:
    """Move every break orbit of f to one prescribed point.

    Dispatches on the bookkeeping product: the PL route when it is 1
    within ``case_tol``, the corrective route otherwise.  The result
    predicts one break per orbit, at offset ``k_i`` from the image of the
    orbit's first break, carrying the orbit's jump product; all other
    candidate breaks of the reduced map must measure 1.
    """
    conns = orbit_connections(f, tol=point_tol, jump_tol=jump_tol)
    if not conns:
        F = f
        measured, residual = _measure(F, (), point_tol, jump_tol)
        return ReductionResult(
            conjugator=MapWord.identity(), reduced=F, predicted=(),
            measured=measured, residual=residual, family="pl", case=1,
            sigma=1.0, pi=1.0, pi_s=1.0, d_property=True,
            k_vector=(), fixed_point=None)
    ks = _normalize_k(k_vector, len(conns))
    sig = sigma_invariant(conns, ks)
    if abs(sig - 1.0) <= case_tol:
        return reduce_case1(f, conns, ks, anchor=(0.0 if anchor is None else anchor),
                            case_tol=case_tol, point_tol=point_tol, jump_tol=jump_tol)
    if family == "pl":
        raise SigmaNotOne(
            f"bookkeeping product {sig!r} is not 1: a PL conjugator cannot do this")
    if family == "auto":
        family = "pe"
    return reduce_case2(f, conns, ks, family=family, anchor=anchor,
                        case_tol=case_tol, point_tol=point_tol, jump_tol=jump_tol)


def conjugate_to_diffeo(f: MapWord, family: str = "auto", *, strict: bool = True,
                        reduce_tol: float = REDUCE_TOL, case_tol: float = CASE_TOL,
                        point_tol: float = POINT_TOL,
                        jump_tol: float = JUMP_TOL) -> ReductionResult:
    """Conjugate a map with trivial orbit jump products to a numerically
    smooth one.

    Refuses maps with a nontrivial orbit product: for those no piecewise
    smooth conjugation to a diffeomorphism exists.  With ``strict`` the
    result is checked to have every measured jump within ``reduce_tol``
    of 1.
    """
    conns = orbit_connections(f, tol=point_tol, jump_tol=jump_tol)
    ok, sheet = has_d_property(f, conns, jump_tol)
    if not ok:
        bad = ", ".join(f"{p.representative.value:.6f}: {v:.6g}"
                        for p, v in zip(conns, sheet.orbit_products)
                        if abs(v - 1.0) > jump_tol)
        raise DPropertyFails(
            "some orbit carries a nontrivial jump product"
            f" ({bad}); the break count of the iterates grows without bound and"
            " no piecewise-smooth conjugation to a diffeomorphism exists")
    result = reduce_to_prescribed(f, None, family if family != "auto" else "pe",
                                  case_tol=case_tol, point_tol=point_tol,
                                  jump_tol=jump_tol)
    if strict and result.residual > reduce_tol:
        raise InternalMismatch(
            f"reduction residual {result.residual!r} exceeds {reduce_tol!r}")
    return result


def two_break_conjugator(f: MapWord, *, point_tol: float = POINT_TOL,
                         jump_tol: float = JUMP_TOL) -> ReductionResult:
    """Direct one-letter conjugator for a map with breaks at b and f(b).

    The inverted exponential letter with jump equal to the reciprocal of
    the offset-weighted orbit product, centered at f(b), cancels the break
    there and leaves a single possible break at the image of b carrying
    the orbit's plain jump product.
    """
    recs = jumps_report(f, jump_tol, point_tol)
    if len(recs) != 2:
        raise NotTwoBreakForm(f"map has {len(recs)} genuine breaks, need exactly 2")
    p0, p1 = recs[0].point.value, recs[1].point.value
    if circle_dist(f(p0), p1) <= point_tol:
        b, bp = p0, p1
    elif circle_dist(f(p1), p0) <= point_tol:
        b, bp = p1, p0
    else:
        raise NotTwoBreakForm("the two breaks are not a point and its image")

    conn = ConnectionReport(representative=CirclePoint(b), offsets=(0, 1),
                            jumps=(f.jump(b, point_tol), f.jump(bp, point_tol)),
                            points=(b, bp))
    pi = conn.pi_orbit()
    if abs(pi - 1.0) <= jump_tol:
        raise NotTwoBreakForm("the weighted orbit product is 1; the corrective"
                              " letter would be degenerate")
    u = exponential_elementary(1.0 / pi, bp)
    h = MapWord((Letter(u, inverse=True),))
    F = h @ f @ h.inverse()

    predicted = (PredictedBreak(point=CirclePoint(h(b)), jump=conn.pi_s_orbit(),
                                connection=0, offset=0),)
    measured, residual = _measure(F, predicted, point_tol, jump_tol)
    if abs(F.jump(h(bp), point_tol) - 1.0) > REDUCE_TOL:
        raise InternalMismatch("the jump at the image of f(b) did not cancel")
    sheet = invariant_sheet(f, [conn], jump_tol=jump_tol)
    return ReductionResult(
        conjugator=h, reduced=F, predicted=predicted, measured=measured,
        residual=residual, family="pe", case=2, sigma=sheet.sigma, pi=sheet.pi,
        pi_s=sheet.pi_s, d_property=sheet.d_property, k_vector=(0,),
        fixed_point=None)


@dataclass(frozen=True)
class RotationComparison:
    """How close a reduced two-break map is to a rigid rotation."""

    rho_f: RotationEstimate
    rho_F: RotationEstimate
    sup_deriv_deviation: float
    sup_rotation_distance: float
    grid: int


def two_break_to_rotation(f: MapWord, *, n_iter: int = 1_000_000,
                          grid: int = 10_000, point_tol: float = POINT_TOL,
                          jump_tol: float = JUMP_TOL
                          ) -> Tuple[MapWord, RotationComparison]:
    """Conjugate a two-break PL map to (numerically) a rigid rotation.

    Only PL words qualify; the exponential conjugator linearizes them
    exactly, so the reduced map's derivative should be 1 up to float error
    on the whole grid.
    """
    if any(l.map.kind not in ("pl", "rotation") for l in f.letters):
        raise NotTwoBreakForm("only PL words can be conjugated to a rotation this way")
    res = two_break_conjugator(f, point_tol=point_tol, jump_tol=jump_tol)
    F = res.reduced
    rho_f = rotation_number(f, n_iter)
    rho_F = rotation_number(F, n_iter)
    sup_d = 0.0
    sup_dist = 0.0
    for i in range(grid):
        x = i / grid
        dm, dp = F.deriv_pair(x, point_tol)
        sup_d = max(sup_d, abs(dm - 1.0), abs(dp - 1.0))
        sup_dist = max(sup_dist, circle_dist(F(x), x + rho_F.value))
    report = RotationComparison(rho_f=rho_f, rho_F=rho_F,
                                sup_deriv_deviation=sup_d,
                                sup_rotation_distance=sup_dist, grid=grid)
    return res.conjugator, report


def normalize_rotation_zero(f: MapWord, family: str = "auto", *,
                            strict: bool = True, reduce_tol: float = REDUCE_TOL,
                            case_tol: float = CASE_TOL, point_tol: float = POINT_TOL,
                            jump_tol: float = JUMP_TOL) -> ReductionResult:
    """Like :func:`conjugate_to_diffeo`, but the conjugator fixes a point.

    The anchored PL construction already fixes its anchor; on the
    corrective route the anchor is moved to the corrective letter's
    center, which that letter fixes as well, so the whole conjugator has
    rotation number 0.
    """
    result = conjugate_to_diffeo(f, family, strict=strict, reduce_tol=reduce_tol,
                                 case_tol=case_tol, point_tol=point_tol,
                                 jump_tol=jump_tol)
    d = result.fixed_point
    if d is not None:
        drift = circle_dist(result.conjugator(d), d)
        if drift > point_tol:
            raise InternalMismatch(f"conjugator moves its anchor by {drift!r}")
    return result
