"""Algebra of piecewise-smooth circle homeomorphisms with break points:
jump invariants, orbit connections, and constructive conjugation to maps
with prescribed breaks, to diffeomorphisms, and to rigid rotations."""

from .analysis import (BreakRecord, ConnectionReport, InvariantSheet,
                       has_d_property, invariant_sheet, jumps_report,
                       orbit_connections, orbit_jump_product, pi_invariant,
                       sigma_invariant, sigma_ki)
from .builders import (PLSpec, build_pl_from_jumps, exponential_elementary,
                       quadratic_elementary, synthesize_instance, two_break_pl)
from .circle import JUMP_TOL, POINT_TOL, CirclePoint, circle_dist, wrap
from .diagnostics import (GrowthTable, MeasureHistogram, break_growth,
                          invariant_measure_histogram)
from .errors import (AmbiguousMatch, BreakCollision, CircleMapError,
                     DegenerateSigma, DPropertyFails, InternalMismatch,
                     InvalidBreaks, JumpProductNotOne, NotTwoBreakForm,
                     SigmaIsOne, SigmaNotOne, SlopeNotPositive)
from .exact import RationalPL
from .exact import pl_from_jumps as exact_pl_from_jumps
from .maps import ElementaryMap, ExpMap, PLMap, QuadMap, Rotation, pl_from_exact
from .oracle import (OracleReport, exact_connections, exact_reduce_case1,
                     oracle_compare, word_to_rational)
from .reduction import (ReductionResult, RotationComparison, conjugate_to_diffeo,
                        normalize_rotation_zero, reduce_case1, reduce_case2,
                        reduce_to_prescribed, two_break_conjugator,
                        two_break_to_rotation)
from .rotation import (RotationEstimate, continued_fraction, convergents,
                       rotation_number)
from .words import Letter, MapWord, conjugate, word

__version__ = "0.1.0"

__all__ = [
    "AmbiguousMatch", "BreakCollision", "BreakRecord", "CircleMapError",
    "CirclePoint", "ConnectionReport", "DPropertyFails", "DegenerateSigma",
    "ElementaryMap", "ExpMap", "GrowthTable", "InternalMismatch",
    "InvalidBreaks", "InvariantSheet", "JUMP_TOL", "JumpProductNotOne",
    "Letter", "MapWord", "MeasureHistogram", "NotTwoBreakForm", "OracleReport",
    "PLMap", "PLSpec", "POINT_TOL", "QuadMap", "RationalPL", "ReductionResult",
    "Rotation", "RotationComparison", "RotationEstimate", "SigmaIsOne",
    "SigmaNotOne", "SlopeNotPositive", "break_growth", "build_pl_from_jumps",
    "circle_dist", "conjugate", "conjugate_to_diffeo", "continued_fraction",
    "convergents", "exact_connections", "exact_pl_from_jumps",
    "exact_reduce_case1", "exponential_elementary", "has_d_property",
    "invariant_measure_histogram", "invariant_sheet", "jumps_report",
    "normalize_rotation_zero", "oracle_compare", "orbit_connections",
    "orbit_jump_product", "pi_invariant", "pl_from_exact",
    "quadratic_elementary", "reduce_case1", "reduce_case2",
    "reduce_to_prescribed", "rotation_number", "sigma_invariant", "sigma_ki",
    "synthesize_instance", "two_break_conjugator", "two_break_pl",
    "two_break_to_rotation", "word", "word_to_rational", "wrap",
]
