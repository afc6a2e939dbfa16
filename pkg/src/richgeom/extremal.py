"""Extremal point sets with many rich maps, each shipped with a re-verified family.

Parameter ranges use floors throughout; the asymptotic constants of the
constructions are not asserted, only the exact counts that survive
re-verification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import BadParameters, KTooLarge
from .exactgeom import AffineMap2, TranslationD, integer_grid, point
from .richmaps import match_set

__all__ = [
    "ConstructionOutput", "sidon_set", "multiplicative_sidon", "gen_shift_example",
    "gen_noncollinear_affine_example", "gen_grid_affine_example", "gen_subspace_example",
    "grid_affine_map", "AffineSubspace",
]


@dataclass
class ConstructionOutput:
    points: list
    certified_family: list
    claimed_lower_bound: Fraction
    metadata: dict = field(default_factory=dict)
    # richness of each family member, recomputed independently of the construction
    verified_counts: list = field(default_factory=list)

    @property
    def all_verified(self) -> bool:
        need = self.metadata.get("k", 1)
        return len(self.verified_counts) == len(self.certified_family) and all(
            c >= need for c in self.verified_counts)


def sidon_set(t: int) -> list:
    """Greedy (Mian-Chowla) set of t positive integers with distinct differences."""
    if t < 1:
        raise ValueError("t >= 1")
    out, diffs = [], set()
    y = 0
    while len(out) < t:
        y += 1
        new = {y - x for x in out}
        if len(new) == len(out) and not new & diffs:
            out.append(y)
            diffs |= new
    return out


def multiplicative_sidon(n: int) -> list:
    """Greedy set of n positive integers whose ordered quotients are all distinct."""
    if n < 1:
        raise ValueError("n >= 1")
    out, quots = [], set()
    y = 0
    while len(out) < n:
        y += 1
        new = {Fraction(y, x) for x in out} | {Fraction(x, y) for x in out}
        if len(new) == 2 * len(out) and not new & quots:
            out.append(y)
            quots |= new
    return out


def gen_shift_example(n: int, k: int) -> ConstructionOutput:
    """{1..2k} x Y for a Sidon set Y of t = floor(n / 2k) levels.

    Certified: the t(t-1) pure level-to-level shifts (0, y_j - y_i), each moving
    a whole row of 2k points.  Claimed census bound: t(t-1) k.
    """
    if k < 1:
        raise ValueError("k >= 1")
    t = n // (2 * k)
    if t == 0:
        raise KTooLarge(f"2k = {2 * k} exceeds n = {n}")
    Y = sidon_set(t)
    pts = [point(x, y) for y in Y for x in range(1, 2 * k + 1)]
    family = [TranslationD((0, yj - yi)) for yi in Y for yj in Y if yi != yj]
    counts = [len(match_set(m, pts, pts)) for m in family]
    return ConstructionOutput(
        pts, family, Fraction(t * (t - 1) * k),
        {"family": "shift", "n": len(pts), "requested_n": n, "k": k, "t": t, "Y": Y},
        counts,
    )


def gen_noncollinear_affine_example(n: int) -> ConstructionOutput:
    """n points on the x-axis plus n points (0, y_i) with distinct quotients y_i / y_j.

    Each (x, y) -> (x, (y_i / y_j) y) fixes the x-axis points and sends
    (0, y_j) to (0, y_i): n + 1 matches, n(n - 1) maps.
    """
    if n < 2:
        raise ValueError("n >= 2")
    Y = multiplicative_sidon(n)
    pts = [point(i, 0) for i in range(1, n + 1)] + [point(0, y) for y in Y]
    family = [AffineMap2(1, 0, 0, 0, Fraction(yi, yj), 0)
              for yi in Y for yj in Y if yi != yj]
    counts = [len(match_set(m, pts, pts)) for m in family]
    return ConstructionOutput(
        pts, family, Fraction(n * (n - 1)),
        {"family": "noncollinear", "n": n, "N": 2 * n, "k": n + 1, "Y": Y},
        counts,
    )


def grid_affine_map(a1, b1, c1, a2, b2, c2) -> AffineMap2:
    """The map whose graph is the plane y = a1 x + b1 z + c1, w = a2 x + b2 z + c2.

    Solving the first equation for z (b1 != 0) gives (x, y) -> (z, w).
    """
    a1, b1, c1, a2, b2, c2 = (Fraction(v) for v in (a1, b1, c1, a2, b2, c2))
    if b1 == 0 or a2 == 0:
        raise BadParameters("b1 and a2 must be nonzero")
    return AffineMap2(
        -a1 / b1, 1 / b1, -c1 / b1,
        (a2 * b1 - a1 * b2) / b1, b2 / b1, (c2 * b1 - c1 * b2) / b1,
    )


def gen_grid_affine_example(n: int, k: int) -> ConstructionOutput:
    """The t x (n/t) grid, t = sqrt(k), with its planes through t x t lattices.

    Parameters a1, a2, b1, b2 range over 1..floor(n / 3t^2) and c1, c2 over
    1..floor(n / 3t); tuples with a1 b2 = a2 b1 are discarded.
    """
    t = math.isqrt(k)
    if k < 1 or t * t != k:
        raise BadParameters("k must be a perfect square")
    if n % t or 4 * k > n:
        raise BadParameters("need t | n and k <= n/4")
    rows = n // t
    pts = integer_grid(t, rows)
    A = n // (3 * t * t)
    Cmax = n // (3 * t)
    if A < 1 or Cmax < 1:
        raise BadParameters("parameter ranges are empty")
    tuples = list(product(range(1, A + 1), range(1, A + 1), range(1, Cmax + 1),
                          range(1, A + 1), range(1, A + 1), range(1, Cmax + 1)))
    kept = [(a1, b1, c1, a2, b2, c2) for a1, b1, c1, a2, b2, c2 in tuples if a1 * b2 != a2 * b1]
    family = [grid_affine_map(*tp) for tp in kept]
    counts = [len(match_set(m, pts, pts)) for m in family]
    return ConstructionOutput(
        pts, family, Fraction(n ** 6, 3000 * k ** 5),
        {"family": "grid-affine", "n": n, "k": k, "t": t, "rows": rows, "a_max": A,
         "c_max": Cmax, "tuples": len(tuples), "parameters": kept},
        counts,
    )


@dataclass(frozen=True)
class AffineSubspace:
    """x_j = sum_i a[j][i] x_i + c[j] for the trailing D - r coordinates."""

    r: int
    a: tuple  # one r-tuple per dependent coordinate
    c: tuple

    def contains(self, p) -> bool:
        free = p[: self.r]
        return all(p[self.r + j] == sum(ai * xi for ai, xi in zip(self.a[j], free)) + self.c[j]
                   for j in range(len(self.c)))


def gen_subspace_example(D: int, r: int, t: int, side: int) -> ConstructionOutput:
    """Lattice {1..t}^r x {1..side}^(D-r) with r-flats through t^r lattice points.

    ``side`` plays the role of (N/k)^(1/(D-r)) and must be given as an integer.
    """
    if not (1 <= r < D <= 4):
        raise BadParameters("need 1 <= r < D <= 4")
    if t < 1 or side < 1 or t > side:
        raise BadParameters("need 1 <= t <= side")
    sides = [t] * r + [side] * (D - r)
    pts = integer_grid(*sides)
    k = t ** r
    amax = side // (t * (r + 1))
    cmax = side // (r + 1)
    family = []
    if amax >= 1 and cmax >= 1:
        per_coord = [(a, c) for a in product(range(1, amax + 1), repeat=r)
                     for c in range(1, cmax + 1)]
        for combo in product(per_coord, repeat=D - r):
            family.append(AffineSubspace(r, tuple(a for a, _ in combo), tuple(c for _, c in combo)))
    counts = [sum(1 for p in pts if S.contains(p)) for S in family]
    N = len(pts)
    return ConstructionOutput(
        pts, family, Fraction(N ** (r + 1), k ** (D + 1)),
        {"family": "subspace", "D": D, "r": r, "t": t, "side": side, "N": N, "k": k,
         "a_max": amax, "c_max": cmax},
        counts,
    )
