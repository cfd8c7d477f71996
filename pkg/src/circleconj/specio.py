"""Reading and writing the JSON exchange format for map words.

A map file is ``{"word": [letter, ...]}`` with letters applied right to
left.  Letter payloads::

    {"kind": "pl", "breaks": [...], "slopes": [...], "anchor": v, "inverse": false}
    {"kind": "rotation", "alpha": a}
    {"kind": "exp",  "sigma": s, "center": c}
    {"kind": "quad", "sigma": s, "center": c}

Reals are written as decimal strings; exact rationals as ``"p/q"``, and
parsing also accepts plain JSON numbers.  Values written as ``p/q``
round-trip exactly and keep their exact rational payload.  Instance
files may carry a ``provenance`` block with the words the instance was
synthesized from.
"""
from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Any, Optional, Tuple, Union

from .exact import RationalPL
from .maps import ExpMap, PLMap, QuadMap, Rotation, pl_from_exact
from .words import Letter, MapWord

Real = Union[float, Fraction]


class SpecError(ValueError):
    """Raised when a map file does not follow the exchange format."""


def parse_real(v: Any) -> Real:
    """A JSON number, a decimal string, or an exact ``"p/q"`` string."""
    if isinstance(v, bool):
        raise SpecError(f"not a real number: {v!r}")
    if isinstance(v, (int, float)):
        return float(v)
    if isinstance(v, str):
        if "/" in v:
            try:
                return Fraction(v)
            except (ValueError, ZeroDivisionError) as e:
                raise SpecError(f"bad rational literal {v!r}") from e
        try:
            return float(v)
        except ValueError as e:
            raise SpecError(f"bad decimal literal {v!r}") from e
    raise SpecError(f"not a real number: {v!r}")


def emit_real(v: Real) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return repr(float(v))


def _is_exact(*values: Real) -> bool:
    return all(isinstance(v, Fraction) for v in values)


def _letter_from_payload(d: dict) -> Letter:
    if not isinstance(d, dict) or "kind" not in d:
        raise SpecError(f"letter payload must be an object with a kind: {d!r}")
    kind = d["kind"]
    inverse = bool(d.get("inverse", False))
    try:
        if kind == "pl":
            breaks = [parse_real(b) for b in d["breaks"]]
            slopes = [parse_real(s) for s in d["slopes"]]
            anchor = parse_real(d["anchor"])
            if _is_exact(*breaks, *slopes, anchor):
                m = pl_from_exact(RationalPL.from_slopes(breaks, slopes, anchor))
            else:
                m = PLMap(breaks=tuple(float(b) for b in breaks),
                          slopes=tuple(float(s) for s in slopes),
                          anchor=float(anchor))
        elif kind == "rotation":
            alpha = parse_real(d["alpha"])
            m = Rotation(alpha=float(alpha),
                         exact_alpha=alpha if isinstance(alpha, Fraction) else None)
        elif kind == "exp":
            m = ExpMap(sigma=float(parse_real(d["sigma"])),
                       center=float(parse_real(d["center"])))
        elif kind == "quad":
            m = QuadMap(sigma=float(parse_real(d["sigma"])),
                        center=float(parse_real(d["center"])))
        else:
            raise SpecError(f"unknown letter kind {kind!r}")
    except KeyError as e:
        raise SpecError(f"letter of kind {kind!r} is missing field {e}") from e
    return Letter(m, inverse=inverse)


def _letter_payload(letter: Letter) -> dict:
    m = letter.map
    if isinstance(m, PLMap):
        if m.exact is not None:
            r = m.exact
            out = {"kind": "pl",
                   "breaks": [emit_real(b) for b in r.breaks],
                   "slopes": [emit_real(s) for s in r.slopes()],
                   "anchor": emit_real(r.values[0])}
        else:
            out = {"kind": "pl",
                   "breaks": [emit_real(b) for b in m.breaks],
                   "slopes": [emit_real(s) for s in m.slopes],
                   "anchor": emit_real(m.anchor)}
    elif isinstance(m, Rotation):
        alpha = m.exact_alpha if m.exact_alpha is not None else m.alpha
        out = {"kind": "rotation", "alpha": emit_real(alpha)}
    elif isinstance(m, (ExpMap, QuadMap)):
        out = {"kind": m.kind, "sigma": emit_real(m.sigma),
               "center": emit_real(m.center)}
    else:
        raise SpecError(f"cannot serialize letter of kind {m.kind!r}")
    if letter.inverse:
        out["inverse"] = True
    return out


def word_to_payload(w: MapWord) -> dict:
    return {"word": [_letter_payload(l) for l in w.letters]}


def word_from_payload(d: dict) -> MapWord:
    if not isinstance(d, dict) or "word" not in d:
        raise SpecError('a map file must be an object with a "word" list')
    letters = d["word"]
    if not isinstance(letters, list):
        raise SpecError('"word" must be a list of letters')
    return MapWord(tuple(_letter_from_payload(l) for l in letters))


def write_word(path: str, w: MapWord,
               provenance: Optional[Tuple[MapWord, MapWord]] = None,
               meta: Optional[dict] = None) -> None:
    payload = word_to_payload(w)
    if provenance is not None:
        h0, f0 = provenance
        payload["provenance"] = {"h0": word_to_payload(h0),
                                 "F0": word_to_payload(f0)}
    if meta:
        payload["meta"] = meta
    write_json(path, payload)


def read_word(path: str) -> MapWord:
    return word_from_payload(read_json(path))


def read_instance(path: str) -> Tuple[MapWord, Optional[Tuple[MapWord, MapWord]]]:
    payload = read_json(path)
    w = word_from_payload(payload)
    prov = payload.get("provenance")
    if prov is None:
        return w, None
    return w, (word_from_payload(prov["h0"]), word_from_payload(prov["F0"]))


def read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise SpecError(f"cannot read {path}: {e}") from e


def write_json(path: str, payload: dict) -> None:
    """Deterministic, atomic JSON emission."""
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    write_text(path, text)


def write_text(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)
