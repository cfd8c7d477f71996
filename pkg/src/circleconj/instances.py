"""Bundled instance suite used by the tests, the acceptance run, and the
``sample`` command.

Instances come in three flavors: the two-break PL family, synthesized
conjugates of rotations by known words (for which the correct conjugator
is known by construction), and one-break or multi-orbit maps whose orbit
jump products are deliberately nontrivial.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .builders import (build_pl_from_jumps, exponential_elementary,
                       quadratic_elementary, synthesize_instance, two_break_pl)
from .exact import frac_wrap
from .maps import Rotation
from .words import MapWord, word

#: golden ratio fractional part, the canonical well-behaved angle
PHI = 0.6180339887498949
#: truncated sqrt(2) - 1, exactly representable as a rational
ALPHA_RAT = Fraction(41421356237, 10**11)


@dataclass(frozen=True)
class Instance:
    name: str
    f: MapWord
    d_property: bool
    description: str
    provenance: Optional[Tuple[MapWord, MapWord]] = None  # (h0, F0)
    exact_pl: bool = False  # every letter has an exact rational form


def _golden(name: str, h0: MapWord, f0: MapWord, d_property: bool,
            description: str, exact_pl: bool = False) -> Instance:
    return Instance(name=name, f=synthesize_instance(h0, f0),
                    d_property=d_property, description=description,
                    provenance=(h0, f0), exact_pl=exact_pl)


def _build_suite() -> List[Instance]:
    rot = word(Rotation(PHI))
    out = [Instance("rotation_golden", rot, True,
                    "rigid rotation by the golden ratio; no breaks")]

    for nm, c, s1 in (("tb_c03_s20", Fraction(3, 10), Fraction(2)),
                      ("tb_c05_s15", Fraction(1, 2), Fraction(3, 2)),
                      ("tb_c02_s07", Fraction(1, 5), Fraction(7, 10)),
                      ("tb_c07_s12", Fraction(7, 10), Fraction(6, 5))):
        out.append(Instance(
            nm, word(two_break_pl(c, s1)), True,
            f"two-break PL map, image of 0 at {c}, first slope {s1}",
            exact_pl=True))

    # three breaks on one orbit with jumps (2, 1/4, 2): conjugate a rational
    # rotation-angle map by a two-break PL word placed along the angle orbit
    x0 = Fraction(3, 20)
    x1 = frac_wrap(x0 + ALPHA_RAT)
    x2 = frac_wrap(x1 + ALPHA_RAT)
    pts = sorted([(x1, Fraction(2)), (x2, Fraction(1, 2))])
    m = build_pl_from_jumps([p for p, _ in pts], [j for _, j in pts])
    out.append(_golden(
        "orbit3_2_q2", word(m).inverse(), word(Rotation(float(ALPHA_RAT),
                                                        exact_alpha=ALPHA_RAT)),
        True, "three breaks on one orbit with jumps (2, 1/4, 2); rational data",
        exact_pl=True))

    h_pair = word(build_pl_from_jumps([Fraction(1, 10), Fraction(3, 5)],
                                      [Fraction(3), Fraction(1, 3)]))
    out.append(_golden(
        "golden_pl_pair", h_pair, word(Rotation(PHI)), True,
        "conjugated rotation, PL word with jumps 3 and 1/3: two orbit pairs"))

    out.append(_golden(
        "golden_pe", word(exponential_elementary(2.0, 0.4)), word(Rotation(PHI)),
        True, "conjugated rotation, exponential word with jump 2 at 0.4"))

    out.append(_golden(
        "golden_pq", word(quadratic_elementary(3.0, 0.7)),
        word(Rotation(0.414213562373095)), True,
        "conjugated rotation, quadratic word with jump 3 at 0.7"))

    h_mixed = word(build_pl_from_jumps([0.2, 0.75], [2.0, 0.5]),
                   exponential_elementary(1.5, 0.05))
    out.append(_golden(
        "golden_mixed", h_mixed, word(Rotation(PHI)), True,
        "conjugated rotation, PL-then-exponential word: three orbit pairs"))

    # a lone centered letter fixes its break point, so the non-(D) instances
    # are composed with a rotation to keep break orbits from closing up
    out.append(Instance(
        "exp_single", word(Rotation(PHI), exponential_elementary(3.0, 0.25)),
        False, "one exponential break of jump 3: nontrivial orbit product"))
    out.append(Instance(
        "quad_single", word(Rotation(PHI), quadratic_elementary(2.0, 0.6)),
        False, "one quadratic break of jump 2: nontrivial orbit product"))
    out.append(Instance(
        "pl_two_orbits",
        word(Rotation(float(ALPHA_RAT), exact_alpha=ALPHA_RAT),
             build_pl_from_jumps([Fraction(1, 10), Fraction(7, 10)],
                                 [Fraction(2), Fraction(1, 2)])),
        False, "PL breaks of jumps 2 and 1/2 on distinct orbits: total product 1,"
               " orbit products nontrivial", exact_pl=True))
    out.append(Instance(
        "exp_pair", word(Rotation(PHI), exponential_elementary(2.0, 0.2),
                         exponential_elementary(3.0, 0.55)), False,
        "two exponential breaks on distinct orbits with jumps 2 and 3"))
    return out


_SUITE: Optional[List[Instance]] = None


def suite() -> List[Instance]:
    global _SUITE
    if _SUITE is None:
        _SUITE = _build_suite()
    return list(_SUITE)


def names() -> List[str]:
    return [inst.name for inst in suite()]


def get(name: str) -> Instance:
    for inst in suite():
        if inst.name == name:
            return inst
    raise KeyError(f"unknown instance {name!r}; known: {', '.join(names())}")


def d_instances() -> List[Instance]:
    return [i for i in suite() if i.d_property]


def non_d_instances() -> List[Instance]:
    return [i for i in suite() if not i.d_property]
