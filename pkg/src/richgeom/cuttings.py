"""Certificates that a point set is "proper d-dimensional".

A cutting is a family of hyperplanes such that no point lies on any of them and
no two points share a sign vector.  Its quality is reported as the rational
``|H|^d / N`` (the d-th power of |H| / N^(1/d)), so nothing irrational is ever
computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arrangement import Line
from .errors import BudgetExceeded, DimensionMismatch
from .exactgeom import integer_grid, point_set, rat

__all__ = [
    "Cutting", "CuttingCheck", "verify_cutting", "grid_cutting", "lattice_cutting",
    "greedy_cutting", "GREEDY_DIRECTIONS", "hyperplane",
]

# normals of the candidate lines tried by greedy_cutting, in order
GREEDY_DIRECTIONS = ((1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1))


def hyperplane(h) -> tuple:
    """Coefficients (a_1, ..., a_d, c) of a_1 x_1 + ... + a_d x_d + c = 0."""
    if isinstance(h, Line):
        return h.as_tuple()
    coeffs = tuple(rat(v) for v in h)
    if len(coeffs) < 2 or all(v == 0 for v in coeffs[:-1]):
        raise ValueError(f"not a hyperplane: {h!r}")
    return coeffs


@dataclass
class CuttingCheck:
    valid: bool
    constant: Fraction  # |H|^d / N
    on_hyperplane: int  # points lying on some hyperplane
    collisions: int  # pairs of points sharing a sign vector
    dim: int = 2

    @property
    def constant_float(self) -> float:
        """|H| / N^(1/d), for display only."""
        return float(self.constant) ** (1.0 / self.dim)


@dataclass
class Cutting:
    lines: list
    points: list
    dim: int = 2

    @property
    def constant(self) -> Fraction:
        return Fraction(len(self.lines) ** self.dim, len(self.points))

    def check(self) -> CuttingCheck:
        return verify_cutting(self.points, self.lines)


def _signs(points, planes):
    out = []
    for p in points:
        sv = []
        for h in planes:
            v = sum(a * x for a, x in zip(h, p)) + h[-1]
            sv.append((v > 0) - (v < 0))
        out.append(tuple(sv))
    return out


def verify_cutting(points: Sequence, planes: Sequence) -> CuttingCheck:
    """Do the hyperplanes cut the point set into singletons?"""
    pts = point_set(points)
    if not pts:
        raise ValueError("empty point set")
    d = len(pts[0])
    hs = [hyperplane(h) for h in planes]
    for h in hs:
        if len(h) != d + 1:
            raise DimensionMismatch(f"hyperplane {h} does not live in dimension {d}")
    signs = _signs(pts, hs)
    on = sum(1 for sv in signs if 0 in sv)
    counts = {}
    for sv in signs:
        counts[sv] = counts.get(sv, 0) + 1
    collisions = sum(c * (c - 1) // 2 for c in counts.values())
    return CuttingCheck(on == 0 and collisions == 0, Fraction(len(hs) ** d, len(pts)),
                        on, collisions, d)


def lattice_cutting(sides: Sequence[int]) -> Cutting:
    """Axis-parallel half-integer hyperplanes separating {1..s_1} x ... x {1..s_D}."""
    if any(s < 1 for s in sides):
        raise ValueError("lattice sides must be positive")
    D = len(sides)
    planes = []
    for axis, s in enumerate(sides):
        for m in range(1, s):
            coeffs = [Fraction(0)] * D
            coeffs[axis] = Fraction(1)
            planes.append(tuple(coeffs) + (-Fraction(2 * m + 1, 2),))
    return Cutting(planes, integer_grid(*sides), D)


def grid_cutting(rows: int, cols: int) -> Cutting:
    """Cutting of the grid {1..cols} x {1..rows} by cols-1 vertical and rows-1 horizontal lines."""
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be positive")
    lines = [Line.vertical(Fraction(2 * m + 1, 2)) for m in range(1, cols)]
    lines += [Line.horizontal(Fraction(2 * m + 1, 2)) for m in range(1, rows)]
    return Cutting(lines, integer_grid(cols, rows), 2)


def _candidates(pts):
    """Lines between consecutive distinct projections, per fixed direction."""
    cands = []
    for nx, ny in GREEDY_DIRECTIONS:
        vals = sorted({nx * x + ny * y for x, y in pts})
        for u, v in zip(vals, vals[1:]):
            cands.append(Line(nx, ny, -(u + v) / 2))
    return cands


def greedy_cutting(points: Sequence, budget: int) -> Cutting:
    """Greedy set cover: repeatedly add the candidate splitting the most unseparated pairs.

    Raises BudgetExceeded (carrying the partial cutting and the number of still
    unseparated pairs) if the budget runs out or no candidate makes progress.
    Failure is inconclusive; it says nothing about whether a cutting exists.
    """
    pts = point_set(points)
    if pts and len(pts[0]) != 2:
        raise DimensionMismatch("greedy_cutting is planar")
    cands = _candidates(pts)
    chosen = []
    n = len(pts)
    groups = np.zeros(n, dtype=np.int64)
    if cands:
        side = np.array([[h.value(p) > 0 for p in pts] for h in cands], dtype=np.int64)
    else:
        side = np.zeros((0, n), dtype=np.int64)

    def unseparated(g):
        _, counts = np.unique(g, return_counts=True)
        return int((counts * (counts - 1) // 2).sum())

    left = unseparated(groups)
    while left:
        if len(chosen) >= budget:
            break
        ngroups = int(groups.max()) + 1
        onehot = np.zeros((n, ngroups), dtype=np.int64)
        onehot[np.arange(n), groups] = 1
        sizes = onehot.sum(axis=0)
        lcount = side @ onehot
        score = (lcount * (sizes - lcount)).sum(axis=1) if len(cands) else np.zeros(0)
        if not len(score) or score.max() == 0:
            break
        best = int(np.argmax(score))  # first maximum = lowest index
        chosen.append(cands[best])
        groups = groups * 2 + side[best]
        _, groups = np.unique(groups, return_inverse=True)
        left = unseparated(groups)
    cut = Cutting(chosen, pts, 2)
    if left:
        raise BudgetExceeded(f"{left} pairs unseparated after {len(chosen)} lines",
                             partial=cut, unseparated=left)
    return cut


def root_budget(C, N: int, d: int = 2) -> int:
    """Largest integer m with m^d <= C^d N, i.e. floor(C N^(1/d)) computed exactly."""
    C = rat(C)
    target = C ** d * N
    m = math.floor(float(C) * N ** (1.0 / d)) + 2
    while m > 0 and m ** d > target:
        m -= 1
    while (m + 1) ** d <= target:
        m += 1
    return m
