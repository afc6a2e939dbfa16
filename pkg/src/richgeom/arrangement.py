"""Line arrangements in the plane, encoded by sign vectors.

A cell is identified with the sign vector (one +1/-1 per line) shared by all of
its interior points.  The number of lines separating two cells is the Hamming
distance of their sign vectors, so neighbourhood queries reduce to a distance
matrix over cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateLine,
    EmptyInput,
    ForeignCell,
    NotSimple,
    OnLine,
    Unlocated,
)
from .exactgeom import point, rat

__all__ = [
    "Line", "Cell", "Arrangement", "build_arrangement", "is_simple", "locate",
    "cell_distance", "ball_size", "ball_profile", "verify_emo", "EmoReport",
    "filter_low_ball_cells", "sign_vector",
]


@dataclass(frozen=True, order=True)
class Line:
    """a x + b y + c = 0, scaled to coprime integers, first nonzero of (a, b) positive."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        a, b, c = rat(self.a), rat(self.b), rat(self.c)
        if a == 0 and b == 0:
            raise ValueError("a and b cannot both vanish")
        lcm = 1
        for v in (a, b, c):
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        ints = [int(v * lcm) for v in (a, b, c)]
        g = math.gcd(*ints)
        if (ints[0] or ints[1]) < 0:
            g = -g
        for name, v in zip("abc", ints):
            object.__setattr__(self, name, Fraction(v // g))

    @classmethod
    def vertical(cls, x) -> "Line":
        """The line X = x."""
        return cls(1, 0, -rat(x))

    @classmethod
    def horizontal(cls, y) -> "Line":
        return cls(0, 1, -rat(y))

    @classmethod
    def through(cls, p, q) -> "Line":
        p, q = point(p), point(q)
        if p == q:
            raise ValueError("need two distinct points")
        a = q[1] - p[1]
        b = p[0] - q[0]
        return cls(a, b, -(a * p[0] + b * p[1]))

    def value(self, p) -> Fraction:
        return self.a * p[0] + self.b * p[1] + self.c

    def side(self, p) -> int:
        v = self.value(p)
        return (v > 0) - (v < 0)

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c)


def sign_vector(lines: Sequence[Line], p) -> tuple:
    """Per-line side of p; may contain zeros when p lies on a line."""
    if len(p) != 2:
        raise DimensionMismatch("sign vectors are planar")
    return tuple(h.side(p) for h in lines)


@dataclass(frozen=True)
class Cell:
    signs: tuple
    representative: tuple
    index: int


def _parallel(h: Line, g: Line) -> bool:
    return h.a * g.b - h.b * g.a == 0


def _meet(h: Line, g: Line):
    det = h.a * g.b - h.b * g.a
    return ((h.b * g.c - g.b * h.c) / det, (g.a * h.c - h.a * g.c) / det)


def is_simple(lines: Sequence[Line]) -> bool:
    """No two lines parallel and no three through a common point."""
    lines = list(lines)
    for h, g in combinations(lines, 2):
        if _parallel(h, g):
            return False
    for i, j in combinations(range(len(lines)), 2):
        v = _meet(lines[i], lines[j])
        for m in range(j + 1, len(lines)):
            if lines[m].value(v) == 0:
                return False
    return True


@dataclass(eq=False)
class Arrangement:
    lines: tuple
    cells: tuple
    _by_signs: dict = field(repr=False)

    def __len__(self) -> int:
        return len(self.cells)

    @cached_property
    def sign_matrix(self) -> np.ndarray:
        if not self.cells:
            return np.zeros((0, len(self.lines)), dtype=np.int64)
        return np.array([c.signs for c in self.cells], dtype=np.int64).reshape(len(self.cells), len(self.lines))

    @cached_property
    def distances(self) -> np.ndarray:
        """Pairwise separation counts between cells."""
        s = self.sign_matrix
        return (len(self.lines) - s @ s.T) // 2

    def cell_for(self, signs) -> Cell | None:
        return self._by_signs.get(tuple(signs))

    def owns(self, cell: Cell) -> bool:
        return self._by_signs.get(cell.signs) == cell

    def ball_sizes(self, rho: int) -> np.ndarray:
        return (self.distances <= rho).sum(axis=1)


def _shear(lines):
    """Smallest s >= 0 such that no line is vertical in (X, Y) = (x + s y, y)."""
    s = 0
    while any(h.b - h.a * s == 0 for h in lines):
        s += 1
    return s


def build_arrangement(lines: Sequence[Line]) -> Arrangement:
    """Enumerate the faces of the arrangement, one rational interior point each.

    Coordinates are sheared so no line is vertical.  Every cell then projects
    onto an open X-interval bounded by vertex abscissae (or infinite), so a
    vertical sweep through one interior abscissa per slab meets every cell.
    """
    lines = tuple(lines)
    if len(set(lines)) != len(lines):
        raise DuplicateLine("lines must be pairwise distinct")
    if not lines:
        c = Cell((), (Fraction(0), Fraction(0)), 0)
        return Arrangement((), (c,), {(): c})
    s = _shear(lines)
    # in sheared coordinates: a X + (b - a s) Y + c = 0, i.e. Y = -(a X + c)/(b - a s)
    coeffs = [(h.a, h.b - h.a * s, h.c) for h in lines]
    events = set()
    for (a1, b1, c1), (a2, b2, c2) in combinations(coeffs, 2):
        det = a1 * b2 - a2 * b1
        if det != 0:
            events.add((b1 * c2 - b2 * c1) / det)
    events = sorted(events)
    if events:
        xs = [events[0] - 1] + [(u + v) / 2 for u, v in zip(events, events[1:])] + [events[-1] + 1]
    else:
        xs = [Fraction(0)]
    cells = []
    by_signs = {}
    for X in xs:
        ys = sorted({-(a * X + c) / b for a, b, c in coeffs})
        samples = [ys[0] - 1] + [(u + v) / 2 for u, v in zip(ys, ys[1:])] + [ys[-1] + 1]
        for Y in samples:
            p = (X - s * Y, Y)
            sv = sign_vector(lines, p)
            if sv not in by_signs:
                cell = Cell(sv, p, len(cells))
                cells.append(cell)
                by_signs[sv] = cell
    return Arrangement(lines, tuple(cells), by_signs)


def locate(arr: Arrangement, p) -> Cell:
    sv = sign_vector(arr.lines, point(p))
    if 0 in sv:
        raise OnLine(f"point {p} lies on line {arr.lines[sv.index(0)]}")
    cell = arr.cell_for(sv)
    if cell is None:
        raise Unlocated(f"no cell with sign vector {sv}")
    return cell


def _check(arr: Arrangement, *cells: Cell):
    for c in cells:
        if not arr.owns(c):
            raise ForeignCell(f"cell {c.index} does not belong to this arrangement")


def cell_distance(arr: Arrangement, c1: Cell, c2: Cell) -> int:
    """Number of lines separating the two cells."""
    _check(arr, c1, c2)
    return sum(x != y for x, y in zip(c1.signs, c2.signs))


def ball_size(arr: Arrangement, c: Cell, rho: int) -> int:
    """Number of cells within separation distance rho of c, c included."""
    _check(arr, c)
    if rho < 0:
        raise ValueError("rho must be non-negative")
    return int((arr.distances[c.index] <= rho).sum())


def ball_profile(arr: Arrangement, rho: int) -> dict:
    """Sum, max, mean and second moment of the rho-ball sizes over all cells.

    ``constant`` is sum / (rho^2 n^2), the empirical factor in the
    O(rho^2 n^2) bound on the number of rho-close cell pairs.
    """
    n = len(arr.lines)
    if rho > n:
        raise ValueError("rho must not exceed the number of lines")
    sizes = [int(v) for v in arr.ball_sizes(rho)]
    total = sum(sizes)
    return {
        "cells": len(sizes),
        "sum": total,
        "max": max(sizes),
        "mean": Fraction(total, len(sizes)),
        "second_moment": sum(v * v for v in sizes),
        "constant": Fraction(total, rho * rho * n * n) if rho and n else None,
    }


@dataclass
class EmoReport:
    rho: int
    bound: Fraction
    ball_sizes: list
    passed: bool

    @property
    def min_ball(self) -> int:
        return min(self.ball_sizes)


def verify_emo(arr: Arrangement, rho: int) -> EmoReport:
    """Check |B_rho(cell)| > rho^2 / 32 for every cell of a simple arrangement."""
    if not is_simple(arr.lines):
        raise NotSimple("the lower bound is stated for simple arrangements")
    if rho > len(arr.lines):
        raise ValueError("rho must not exceed the number of lines")
    bound = Fraction(rho * rho, 32)
    sizes = [int(v) for v in arr.ball_sizes(rho)]
    return EmoReport(rho, bound, sizes, all(v > bound for v in sizes))


def filter_low_ball_cells(arr: Arrangement, cells: Sequence[Cell], rho: int):
    """Keep the ceil(len/2) cells with the smallest rho-balls (ties by index).

    Returns (kept cells, largest kept ball).  By Markov's inequality the bound
    never exceeds twice the mean ball size of the input.
    """
    cells = list(cells)
    if not cells:
        raise EmptyInput("no cells to filter")
    _check(arr, *cells)
    sizes = arr.ball_sizes(rho)
    ranked = sorted(cells, key=lambda c: (int(sizes[c.index]), c.index))
    kept = ranked[: (len(cells) + 1) // 2]
    return kept, max(int(sizes[c.index]) for c in kept)
