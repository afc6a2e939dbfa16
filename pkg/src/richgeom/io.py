"""JSON file formats: point sets, line sets, maps, triple systems and reports.

Rationals are written as strings ("3", "-2/5"); integers are accepted on input.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .arrangement import Line
from .exactgeom import (
    AffineMap1,
    AffineMap2,
    Isometry2,
    Mobius1,
    RationalMap1,
    TranslationD,
    rat,
)
from .lemmalab import TripleSystem

__all__ = [
    "ParseError", "fmt_rat", "parse_rat", "dump_points", "load_points", "dump_lines",
    "load_lines", "encode_map", "decode_map", "dump_maps", "load_maps", "dump_triples",
    "load_triples", "to_jsonable", "file_digest", "read_json", "write_json",
]


class ParseError(ValueError):
    pass


def fmt_rat(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (int, str)):
        raise ParseError(f"rational must be a string or integer, got {s!r}")
    try:
        return rat(s.strip() if isinstance(s, str) else s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}: {exc}") from None


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


def write_json(path, obj):
    text = json.dumps(obj, indent=1, sort_keys=True) + "\n"
    Path(path).write_text(text)


def file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# points -----------------------------------------------------------------------


def dump_points(points, meta=None) -> dict:
    points = list(points)
    d = len(points[0]) if points else 0
    out = {"dim": d, "points": [[fmt_rat(c) for c in p] for p in points]}
    if meta:
        out["meta"] = to_jsonable(meta)
    return out


def load_points(obj, allow_duplicates=False) -> list:
    if not isinstance(obj, dict) or "points" not in obj:
        raise ParseError("point-set file needs a 'points' list")
    dim = obj.get("dim")
    pts = []
    for raw in obj["points"]:
        if not isinstance(raw, list):
            raw = [raw]
        p = tuple(parse_rat(c) for c in raw)
        if dim is not None and len(p) != dim:
            raise ParseError(f"point {raw} does not have dimension {dim}")
        pts.append(p)
    if pts and len({len(p) for p in pts}) > 1:
        raise ParseError("points have inconsistent dimensions")
    if not allow_duplicates and len(set(pts)) != len(pts):
        raise ParseError("duplicate points (pass --allow-duplicates to keep them)")
    return pts


# lines ------------------------------------------------------------------------


def dump_lines(lines) -> dict:
    out = []
    for h in lines:
        coeffs = h.as_tuple() if isinstance(h, Line) else h
        out.append([fmt_rat(c) for c in coeffs])
    return {"lines": out}


def load_lines(obj) -> list:
    if not isinstance(obj, dict) or "lines" not in obj:
        raise ParseError("line file needs a 'lines' list")
    out = []
    for raw in obj["lines"]:
        coeffs = [parse_rat(c) for c in raw]
        if len(coeffs) == 3:
            try:
                out.append(Line(*coeffs))
            except ValueError as exc:
                raise ParseError(f"bad line {raw}: {exc}") from None
        elif len(coeffs) >= 2:
            out.append(tuple(coeffs))  # hyperplane in higher dimension
        else:
            raise ParseError(f"bad line {raw}")
    return out


# maps -------------------------------------------------------------------------

_MAP_TYPES = {
    "affine1": (AffineMap1, ("m", "b")),
    "affine2": (AffineMap2, ("a1", "b1", "c1", "a2", "b2", "c2")),
    "mobius1": (Mobius1, ("a", "b", "c", "d")),
    "isometry2": (Isometry2, ("m11", "m12", "m21", "m22", "tx", "ty")),
}


def encode_map(m) -> dict:
    if isinstance(m, TranslationD):
        return {"type": "translation", "vector": [fmt_rat(v) for v in m.vector]}
    if isinstance(m, RationalMap1):
        return {"type": "rational1", "p": [fmt_rat(v) for v in m.p],
                "q": [fmt_rat(v) for v in m.q], "r": m.r}
    for name, (cls, fields) in _MAP_TYPES.items():
        if isinstance(m, cls):
            return {"type": name, "params": [fmt_rat(getattr(m, f)) for f in fields]}
    raise TypeError(f"cannot encode {type(m).__name__}")


def decode_map(obj):
    try:
        kind = obj["type"]
        if kind == "translation":
            return TranslationD(tuple(parse_rat(v) for v in obj["vector"]))
        if kind == "rational1":
            return RationalMap1(tuple(parse_rat(v) for v in obj["p"]),
                                tuple(parse_rat(v) for v in obj["q"]), int(obj["r"]))
        cls, fields = _MAP_TYPES[kind]
        params = [parse_rat(v) for v in obj["params"]]
        if len(params) != len(fields):
            raise ParseError(f"{kind} needs {len(fields)} parameters")
        return cls(*params)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad map record {obj!r}: {exc}") from None


def dump_maps(maps) -> dict:
    return {"maps": [encode_map(m) for m in maps]}


def load_maps(obj) -> list:
    # a generated point set carries its certified family in the metadata
    if isinstance(obj, dict) and "maps" not in obj and "family_maps" in obj.get("meta", {}):
        obj = {"maps": obj["meta"]["family_maps"]}
    if not isinstance(obj, dict) or "maps" not in obj:
        raise ParseError("map file needs a 'maps' list")
    return [decode_map(m) for m in obj["maps"]]


# triple systems ---------------------------------------------------------------


def dump_triples(delta: TripleSystem) -> dict:
    return {"ground": [list(to_jsonable(g)) for g in delta.ground],
            "triples": [list(to_jsonable(t)) for t in delta.triples]}


def _hashable(v):
    return tuple(_hashable(x) for x in v) if isinstance(v, list) else v


def load_triples(obj) -> TripleSystem:
    if not isinstance(obj, dict) or "triples" not in obj:
        raise ParseError("triple file needs a 'triples' list")
    triples = [tuple(_hashable(u) for u in t) for t in obj["triples"]]
    if any(len(t) != 3 for t in triples):
        raise ParseError("every triple needs three entries")
    try:
        if "ground" in obj:
            return TripleSystem([[_hashable(u) for u in g] for g in obj["ground"]], triples)
        return TripleSystem.from_triples(triples)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# generic ----------------------------------------------------------------------


def to_jsonable(v):
    """Recursively convert results to JSON values (rationals become strings)."""
    if isinstance(v, Fraction):
        return fmt_rat(v)
    if isinstance(v, bool) or v is None or isinstance(v, (str, float)):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, bytes):
        return v.decode("ascii")
    if isinstance(v, Line):
        return [fmt_rat(c) for c in v.as_tuple()]
    if isinstance(v, (AffineMap1, AffineMap2, Mobius1, RationalMap1, Isometry2, TranslationD)):
        return encode_map(v)
    if isinstance(v, dict):
        return {str(k): to_jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [to_jsonable(x) for x in v]
    if hasattr(v, "item"):  # numpy scalar
        return v.item()
    raise TypeError(f"cannot serialise {type(v).__name__}")
