"""Exact rational geometry: scalars, points, predicates and transformations.

Scalars are :class:`fractions.Fraction`; a point is a tuple of them.  Every
transformation type is an immutable dataclass in a unique canonical form, so
structural equality is map equality and :func:`canonical_key` is injective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import (
    CoincidentPoints,
    CollinearSource,
    DegenerateMap,
    DimensionMismatch,
    GuardExceeded,
    LengthMismatch,
    NoSolution,
    RepeatedValue,
)

Rat = Fraction
Point = tuple  # tuple[Fraction, ...]

__all__ = [
    "Rat", "Point", "rat", "point", "point_set", "orientation", "collinear",
    "AffineMap1", "AffineMap2", "Mobius1", "RationalMap1", "Isometry2", "TranslationD",
    "affine_from_triples", "mobius_from_triples", "rational_fit",
    "isometries_from_pairs", "canonical_key", "nullspace",
]


def rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass a string or Fraction")
    # numpy integers and the like
    return Fraction(int(x))


def point(*coords) -> Point:
    if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
        coords = tuple(coords[0])
    return tuple(rat(c) for c in coords)


def point_set(points: Iterable) -> list:
    """Convert to a list of exact points, checking the dimension is uniform."""
    out = [point(p) for p in points]
    if out:
        d = len(out[0])
        for p in out:
            if len(p) != d:
                raise DimensionMismatch(f"mixed dimensions {d} and {len(p)}")
    return out


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of det(q - p, r - p): +1 counter-clockwise, -1 clockwise, 0 collinear."""
    if not (len(p) == len(q) == len(r) == 2):
        raise DimensionMismatch("orientation needs three planar points")
    return _sign((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def collinear(p, q, r) -> bool:
    return orientation(p, q, r) == 0


def _frac_key(tag: str, values: Iterable[Fraction]) -> bytes:
    body = ",".join(f"{v.numerator}/{v.denominator}" for v in values)
    return f"{tag}:{body}".encode("ascii")


# ---------------------------------------------------------------------------
# transformation types


@dataclass(frozen=True)
class AffineMap2:
    """(x, y) -> (a1 x + b1 y + c1, a2 x + b2 y + c2), non-degenerate."""

    a1: Fraction
    b1: Fraction
    c1: Fraction
    a2: Fraction
    b2: Fraction
    c2: Fraction

    def __post_init__(self):
        for name in ("a1", "b1", "c1", "a2", "b2", "c2"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.det == 0:
            raise DegenerateMap("affine map with zero determinant")

    @property
    def det(self) -> Fraction:
        return self.a1 * self.b2 - self.a2 * self.b1

    @property
    def params(self) -> tuple:
        return (self.a1, self.b1, self.c1, self.a2, self.b2, self.c2)

    def __call__(self, p):
        x, y = p
        return (self.a1 * x + self.b1 * y + self.c1, self.a2 * x + self.b2 * y + self.c2)

    def compose(self, other: "AffineMap2") -> "AffineMap2":
        """self after other."""
        return AffineMap2(
            self.a1 * other.a1 + self.b1 * other.a2,
            self.a1 * other.b1 + self.b1 * other.b2,
            self.a1 * other.c1 + self.b1 * other.c2 + self.c1,
            self.a2 * other.a1 + self.b2 * other.a2,
            self.a2 * other.b1 + self.b2 * other.b2,
            self.a2 * other.c1 + self.b2 * other.c2 + self.c2,
        )

    def inverse(self) -> "AffineMap2":
        d = self.det
        a1, b1, a2, b2 = self.b2 / d, -self.b1 / d, -self.a2 / d, self.a1 / d
        return AffineMap2(a1, b1, -(a1 * self.c1 + b1 * self.c2),
                          a2, b2, -(a2 * self.c1 + b2 * self.c2))

    @classmethod
    def identity(cls) -> "AffineMap2":
        return cls(1, 0, 0, 0, 1, 0)

    def key(self) -> bytes:
        return _frac_key("affine2", self.params)


@dataclass(frozen=True)
class AffineMap1:
    """x -> m x + b with m != 0."""

    m: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "m", rat(self.m))
        object.__setattr__(self, "b", rat(self.b))
        if self.m == 0:
            raise DegenerateMap("constant affine map")

    def __call__(self, x):
        return self.m * x + self.b

    def key(self) -> bytes:
        return _frac_key("affine1", (self.m, self.b))


@dataclass(frozen=True)
class Mobius1:
    """x -> (a x + b) / (c x + d) with ad - bc != 0.

    Stored scaled so that the first nonzero of (a, b, c, d) equals 1.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        vals = [rat(v) for v in (self.a, self.b, self.c, self.d)]
        if vals[0] * vals[3] - vals[1] * vals[2] == 0:
            raise DegenerateMap("Mobius map with ad - bc = 0")
        lead = next(v for v in vals if v != 0)
        for name, v in zip("abcd", vals):
            object.__setattr__(self, name, v / lead)

    @property
    def params(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __call__(self, x):
        """Image of x, or None when x is the pole."""
        den = self.c * x + self.d
        if den == 0:
            return None
        return (self.a * x + self.b) / den

    def as_rational(self) -> "RationalMap1":
        return RationalMap1((self.b, self.a), (self.d, self.c), 2)

    def key(self) -> bytes:
        return _frac_key("mobius1", self.params)


# polynomial helpers: coefficient tuples, lowest degree first


def _trim(p) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _deg(p) -> int:
    return len(_trim(p)) - 1  # zero polynomial has degree -1


def _poly_eval(p, x):
    acc = Fraction(0)
    for coef in reversed(p):
        acc = acc * x + coef
    return acc


def _poly_divmod(num, den):
    num, den = list(_trim(num)), _trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and num:
        shift = len(num) - len(den)
        f = num[-1] / den[-1]
        quot[shift] = f
        for i, c in enumerate(den):
            num[i + shift] -= f * c
        num = list(_trim(num))
    return _trim(quot), tuple(num)


def _poly_gcd(p, q):
    p, q = _trim(p), _trim(q)
    while q:
        p, q = q, _poly_divmod(p, q)[1]
    if not p:
        return (Fraction(1),)
    return tuple(c / p[-1] for c in p)


@dataclass(frozen=True)
class RationalMap1:
    """x -> p(x) / q(x) with deg p + deg q <= r.

    ``p`` and ``q`` are coefficient tuples, constant term first.  On
    construction the pair is made coprime and scaled to integer coefficients
    with overall content 1 and a positive leading coefficient of q.
    """

    p: tuple
    q: tuple
    r: int

    def __post_init__(self):
        p = _trim(rat(c) for c in self.p)
        q = _trim(rat(c) for c in self.q)
        if not q:
            raise DegenerateMap("denominator is identically zero")
        if not p:
            p = (Fraction(0),)
        g = _poly_gcd(p, q)
        if len(g) > 1:
            p = _poly_divmod(p, g)[0] or (Fraction(0),)
            q = _poly_divmod(q, g)[0]
        coeffs = [c for c in p + q]
        lcm = 1
        for c in coeffs:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in coeffs]
        content = 0
        for v in ints:
            content = math.gcd(content, v)
        scale = Fraction(lcm, content)
        if q[-1] < 0:
            scale = -scale
        p = tuple(c * scale for c in p)
        q = tuple(c * scale for c in q)
        if max(_deg(p), 0) + _deg(q) > self.r:
            raise DegenerateMap(f"total degree exceeds r={self.r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def total_degree(self) -> int:
        return max(_deg(self.p), 0) + _deg(self.q)

    @property
    def is_constant(self) -> bool:
        return _deg(self.p) <= 0 and _deg(self.q) == 0

    def __call__(self, x):
        den = _poly_eval(self.q, x)
        if den == 0:
            return None
        return _poly_eval(self.p, x) / den

    def key(self) -> bytes:
        # r is a budget, not part of the function
        return _frac_key("rational1", (Fraction(len(self.p)),) + self.p + self.q)


@dataclass(frozen=True)
class Isometry2:
    """p -> M p + t with M orthogonal (exact rational entries)."""

    m11: Fraction
    m12: Fraction
    m21: Fraction
    m22: Fraction
    tx: Fraction
    ty: Fraction

    def __post_init__(self):
        for name in ("m11", "m12", "m21", "m22", "tx", "ty"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        m11, m12, m21, m22 = self.m11, self.m12, self.m21, self.m22
        if (m11 * m11 + m21 * m21 != 1 or m12 * m12 + m22 * m22 != 1
                or m11 * m12 + m21 * m22 != 0):
            raise DegenerateMap("matrix is not orthogonal")

    @property
    def orientation(self) -> int:
        """+1 for rotations, -1 for reflections."""
        return _sign(self.m11 * self.m22 - self.m12 * self.m21)

    @property
    def params(self) -> tuple:
        return (self.m11, self.m12, self.m21, self.m22, self.tx, self.ty)

    def __call__(self, p):
        x, y = p
        return (self.m11 * x + self.m12 * y + self.tx, self.m21 * x + self.m22 * y + self.ty)

    def as_affine(self) -> AffineMap2:
        return AffineMap2(self.m11, self.m12, self.tx, self.m21, self.m22, self.ty)

    def key(self) -> bytes:
        return _frac_key("isometry2", self.params)


@dataclass(frozen=True)
class TranslationD:
    vector: tuple

    def __post_init__(self):
        object.__setattr__(self, "vector", point(self.vector))

    @property
    def dim(self) -> int:
        return len(self.vector)

    def __call__(self, p):
        if len(p) != len(self.vector):
            raise DimensionMismatch("translation and point differ in dimension")
        return tuple(a + b for a, b in zip(p, self.vector))

    def key(self) -> bytes:
        return _frac_key(f"translation{self.dim}", self.vector)


def canonical_key(m) -> bytes:
    """Byte key that is equal for equal maps and distinct otherwise."""
    return m.key()


# ---------------------------------------------------------------------------
# constructions


def affine_from_triples(src: Sequence, dst: Sequence) -> AffineMap2:
    """The unique affine map of the plane with src[i] -> dst[i], i = 0, 1, 2."""
    s = [point(p) for p in src]
    t = [point(p) for p in dst]
    if len(s) != 3 or len(t) != 3 or any(len(p) != 2 for p in s + t):
        raise DimensionMismatch("need three planar source and target points")
    u1 = (s[1][0] - s[0][0], s[1][1] - s[0][1])
    u2 = (s[2][0] - s[0][0], s[2][1] - s[0][1])
    det = _cross(u1, u2)
    if det == 0:
        raise CollinearSource("source triple is collinear")
    v1 = (t[1][0] - t[0][0], t[1][1] - t[0][1])
    v2 = (t[2][0] - t[0][0], t[2][1] - t[0][1])
    if _cross(v1, v2) == 0:
        raise DegenerateMap("target triple is collinear")
    # linear part L = [v1 v2] [u1 u2]^{-1}
    i11, i12, i21, i22 = u2[1] / det, -u2[0] / det, -u1[1] / det, u1[0] / det
    a1 = v1[0] * i11 + v2[0] * i21
    b1 = v1[0] * i12 + v2[0] * i22
    a2 = v1[1] * i11 + v2[1] * i21
    b2 = v1[1] * i12 + v2[1] * i22
    c1 = t[0][0] - a1 * s[0][0] - b1 * s[0][1]
    c2 = t[0][1] - a2 * s[0][0] - b2 * s[0][1]
    return AffineMap2(a1, b1, c1, a2, b2, c2)


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of the right nullspace of a rational matrix (Gauss-Jordan)."""
    m = [[rat(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pcol in enumerate(pivots):
            v[pcol] = -m[i][fcol]
        basis.append(v)
    return basis


def mobius_from_triples(src: Sequence, dst: Sequence) -> Mobius1:
    """The Mobius map with src[i] -> dst[i] for three distinct src and dst values."""
    xs = [rat(v) for v in src]
    ys = [rat(v) for v in dst]
    if len(xs) != 3 or len(ys) != 3:
        raise DimensionMismatch("need exactly three correspondences")
    if len(set(xs)) < 3 or len(set(ys)) < 3:
        raise RepeatedValue("source and target values must be distinct")
    # a x + b - y c x - y d = 0
    rows = [[x, 1, -y * x, -y] for x, y in zip(xs, ys)]
    basis = nullspace(rows, 4)
    if len(basis) != 1:
        raise DegenerateMap("correspondences do not determine a Mobius map")
    a, b, c, d = basis[0]
    if a * d - b * c == 0:
        raise DegenerateMap("interpolant is degenerate")
    m = Mobius1(a, b, c, d)
    if any(m(x) != y for x, y in zip(xs, ys)):
        raise DegenerateMap("interpolant has a pole at a source value")
    return m


MAX_RATIONAL_DEGREE = 3


def rational_fit(pairs: Sequence, r: int) -> set:
    """All non-constant p/q with deg p + deg q <= r through the r + 1 pairs.

    Each degree split dp + dq = r gives a homogeneous system y q(x) - p(x) = 0;
    every nonzero nullspace vector of one split describes the same function,
    so each split contributes at most one map.  Candidates that miss a pair
    after cancellation (a pole at a node) are dropped.
    """
    if r > MAX_RATIONAL_DEGREE:
        raise GuardExceeded(f"rational_fit supports r <= {MAX_RATIONAL_DEGREE}")
    pts = [(rat(x), rat(y)) for x, y in pairs]
    if len(pts) != r + 1:
        raise ValueError(f"need exactly r + 1 = {r + 1} pairs")
    if len({x for x, _ in pts}) != len(pts):
        raise RepeatedValue("x values must be distinct")
    found = {}
    for dp in range(r + 1):
        dq = r - dp
        rows = [[-(x ** i) for i in range(dp + 1)] + [y * x ** j for j in range(dq + 1)]
                for x, y in pts]
        basis = nullspace(rows, dp + dq + 2)
        if not basis:
            continue
        v = basis[0]
        p, q = v[: dp + 1], v[dp + 1:]
        if not _trim(q):
            continue
        m = RationalMap1(p, q, r)
        if m.is_constant or any(m(x) != y for x, y in pts):
            continue
        found.setdefault(m.key(), m)
    if not found:
        raise NoSolution("no non-constant interpolant of the requested degree")
    return set(found.values())


def isometries_from_pairs(p1, p2, q1, q2) -> list:
    """The rotation and the reflection mapping p1 -> q1 and p2 -> q2.

    Entries are rational because cos = u.v / |u|^2 and sin = u x v / |u|^2.
    """
    p1, p2, q1, q2 = (point(v) for v in (p1, p2, q1, q2))
    if any(len(v) != 2 for v in (p1, p2, q1, q2)):
        raise DimensionMismatch("isometries_from_pairs is planar")
    if p1 == p2 or q1 == q2:
        raise CoincidentPoints("segment endpoints coincide")
    u = (p2[0] - p1[0], p2[1] - p1[1])
    v = (q2[0] - q1[0], q2[1] - q1[1])
    uu = u[0] * u[0] + u[1] * u[1]
    if uu != v[0] * v[0] + v[1] * v[1]:
        raise LengthMismatch("segments have different lengths")
    cos = (u[0] * v[0] + u[1] * v[1]) / uu
    sin = _cross(u, v) / uu
    rot = (cos, -sin, sin, cos)
    # reflection fixing u, followed by the rotation
    f11 = (u[0] * u[0] - u[1] * u[1]) / uu
    f12 = 2 * u[0] * u[1] / uu
    ref = (cos * f11 - sin * f12, cos * f12 + sin * f11,
           sin * f11 + cos * f12, sin * f12 - cos * f11)
    out = []
    for m11, m12, m21, m22 in (rot, ref):
        tx = q1[0] - m11 * p1[0] - m12 * p1[1]
        ty = q1[1] - m21 * p1[0] - m22 * p1[1]
        out.append(Isometry2(m11, m12, m21, m22, tx, ty))
    return out


def integer_grid(*sides) -> list:
    """{1..s1} x {1..s2} x ... as exact points, first coordinate varying slowest."""
    return [tuple(Fraction(c) for c in cs) for cs in product(*(range(1, s + 1) for s in sides))]
