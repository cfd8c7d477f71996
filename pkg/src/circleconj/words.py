"""Words of elementary maps: lazy composites of class-P homeomorphisms.

A word is an ordered tuple of letters applied right to left; each letter
is an elementary map used forward or inverted.  Words are immutable and
composition only concatenates: no simplification is attempted, because
the mixed PL/quadratic/exponential family is not closed under it.
Evaluation, lifts, one-sided derivatives and break candidates are all
computed lazily through the chain.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence, Tuple

from .circle import POINT_TOL, PointLike, as_value, dedupe_points, wrap
from .maps import ElementaryMap


@dataclass(frozen=True)
class Letter:
    map: ElementaryMap
    inverse: bool = False

    def apply(self, x: float) -> float:
        return self.map.inv_ev(x) if self.inverse else self.map.ev(x)

    def apply_lift(self, x: float) -> float:
        return self.map.inv_lift(x) if self.inverse else self.map.lift(x)

    def break_points(self) -> Tuple[float, ...]:
        return self.map.image_break_points() if self.inverse else self.map.break_points()

    def inverted(self) -> "Letter":
        return Letter(self.map, not self.inverse)


class MapWord:
    """Composite circle homeomorphism; the empty word is the identity."""

    __slots__ = ("letters", "_pin")

    def __init__(self, letters: Iterable[Letter] = ()):
        object.__setattr__(self, "letters", tuple(letters))
        object.__setattr__(self, "_pin", None)

    def __setattr__(self, name, value):  # immutable by convention
        raise AttributeError("MapWord is immutable")

    @classmethod
    def identity(cls) -> "MapWord":
        return cls(())

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, MapWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        names = [("~" if l.inverse else "") + l.map.kind for l in self.letters]
        return f"MapWord[{' '.join(names) or 'id'}]"

    # -- evaluation ----------------------------------------------------------

    def __call__(self, x: PointLike) -> float:
        """Image of the circle point x, in [0, 1)."""
        v = as_value(x)
        for letter in reversed(self.letters):
            v = letter.apply(v)
        return v

    @property
    def pin(self) -> int:
        """Integer shift making the composite lift of 0 land in [0, 1)."""
        if self._pin is None:
            raw = 0.0
            for letter in reversed(self.letters):
                raw = letter.apply_lift(raw)
            object.__setattr__(self, "_pin", -math.floor(raw))
        return self._pin

    def lift(self, x: float) -> float:
        """Pinned lift: increasing, lift(x + 1) = lift(x) + 1, lift(0) in [0, 1)."""
        v = float(x)
        for letter in reversed(self.letters):
            v = letter.apply_lift(v)
        return v + self.pin

    def lift_fns(self) -> List[Callable[[float], float]]:
        """Per-letter lift callables in application order (for tight loops)."""
        return [l.map.inv_lift if l.inverse else l.map.lift
                for l in reversed(self.letters)]

    # -- derivatives -----------------------------------------------------------

    def deriv_pair(self, x: PointLike, tol: float = POINT_TOL) -> Tuple[float, float]:
        """One-sided derivatives (left, right) at x, by the chain rule.

        Orientation preservation lets sides propagate: the left derivative
        of a composite is the product of the letters' left derivatives along
        the orbit of x through the word.
        """
        dm = dp = 1.0
        v = as_value(x)
        for letter in reversed(self.letters):
            if letter.inverse:
                y = letter.map.inv_ev(v)
                a, b = letter.map.deriv_pair(y, tol)
                dm /= a
                dp /= b
                v = y
            else:
                a, b = letter.map.deriv_pair(v, tol)
                dm *= a
                dp *= b
                v = letter.map.ev(v)
        return dm, dp

    def jump(self, x: PointLike, tol: float = POINT_TOL) -> float:
        """Ratio of left to right derivative at x; 1 away from breaks."""
        dm, dp = self.deriv_pair(x, tol)
        return dm / dp

    # -- algebra -----------------------------------------------------------------

    def __matmul__(self, other: "MapWord") -> "MapWord":
        """Composition ``self @ other``: apply ``other`` first."""
        if not isinstance(other, MapWord):
            return NotImplemented
        return MapWord(self.letters + other.letters)

    def inverse(self) -> "MapWord":
        return MapWord(tuple(l.inverted() for l in reversed(self.letters)))

    def __pow__(self, n: int) -> "MapWord":
        if n == 0:
            return MapWord.identity()
        base = self if n > 0 else self.inverse()
        return MapWord(base.letters * abs(n))

    # -- breaks ---------------------------------------------------------------------

    def candidate_breaks(self, tol: float = POINT_TOL) -> List[float]:
        """Superset of the break set: every letter's breaks pulled back
        through the part of the word applied before it, deduplicated."""
        pts: List[float] = []
        for i, letter in enumerate(self.letters):
            own = letter.break_points()
            if not own:
                continue
            inner_inv = MapWord(self.letters[i + 1:]).inverse()
            pts.extend(inner_inv(b) for b in own)
        return dedupe_points(pts, tol)


def word(*maps: ElementaryMap) -> MapWord:
    """Word of forward letters; ``word(u, v)`` applies v first."""
    return MapWord(tuple(Letter(m) for m in maps))


def conjugate(h: MapWord, f: MapWord) -> MapWord:
    """The conjugate h o f o h^-1."""
    return h @ f @ h.inverse()
