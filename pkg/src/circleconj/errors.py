"""Exception types shared across the package."""


class CircleMapError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidBreaks(CircleMapError):
    """Break list is empty, not strictly increasing, or the lift does not close up."""


class SlopeNotPositive(CircleMapError):
    """A slope required to be positive came out zero or negative."""


class JumpProductNotOne(CircleMapError):
    """Prescribed jumps do not multiply to 1 within tolerance."""


class DegenerateSigma(CircleMapError):
    """Quadratic/exponential parameter is nonpositive or too close to 1."""


class AmbiguousMatch(CircleMapError):
    """Orbit matching could not be resolved at the working tolerance."""


class InternalMismatch(CircleMapError):
    """Two independent evaluations of the same quantity disagree."""


class BreakCollision(CircleMapError):
    """Two prescribed break slots land on the same circle point."""


class SigmaNotOne(CircleMapError):
    """The bookkeeping product differs from 1, so the PL-only path does not apply."""


class SigmaIsOne(CircleMapError):
    """The bookkeeping product equals 1, so no corrective one-break map is needed."""


class NotTwoBreakForm(CircleMapError):
    """Map does not have exactly two breaks at a point and its image."""


class DPropertyFails(CircleMapError):
    """Some orbit carries a nontrivial jump product; no piecewise-smooth
    conjugation to a diffeomorphism exists."""
