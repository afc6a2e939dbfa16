"""Executable versions of the combinatorial lemmas behind the plane-affine bound.

Triple systems are tripartite: element ``u`` of class ``i`` is the pair
``(i, u)``, so the same point may sit in classes 0 and 1 at once.
"""

from __future__ import annotations

import heapq
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Sequence

from .arrangement import Arrangement, build_arrangement, filter_low_ball_cells, locate
from .cuttings import verify_cutting
from .errors import (
    Collapse,
    DuplicateCell,
    EmptySystem,
    GuardExceeded,
    HypothesisViolated,
    InvariantViolation,
    OnLine,
    PointOnLine,
)
from .exactgeom import AffineMap2, collinear, point_set, rat
from .richmaps import enumerate_rich_affine2, match_set

__all__ = [
    "TripleSystem", "folklore_thresholds", "prune_triple_system", "build_incidence_triples",
    "select_small_triangles", "triangle_selection_radius", "AvgForcingReport",
    "average_forcing", "RichPlane", "graph_plane_embed", "main_theorem_experiment",
]


@dataclass
class TripleSystem:
    """Triples over three ground sets, with ground sets kept in a fixed order."""

    ground: tuple  # three tuples of elements
    triples: tuple

    def __post_init__(self):
        self.ground = tuple(tuple(g) for g in self.ground)
        self.triples = tuple(tuple(t) for t in self.triples)
        if len(self.ground) != 3:
            raise ValueError("need three ground sets")
        if len(set(self.triples)) != len(self.triples):
            raise ValueError("triples must be distinct")
        members = [set(g) for g in self.ground]
        for t in self.triples:
            if any(t[i] not in members[i] for i in range(3)):
                raise ValueError(f"triple {t} uses an element outside the ground sets")

    @classmethod
    def from_triples(cls, triples) -> "TripleSystem":
        triples = [tuple(t) for t in triples]
        ground = [list(dict.fromkeys(t[i] for t in triples)) for i in range(3)]
        return cls(ground, triples)

    def __len__(self) -> int:
        return len(self.triples)

    def degrees(self, cls: int) -> Counter:
        deg = Counter({u: 0 for u in self.ground[cls]})
        deg.update(t[cls] for t in self.triples)
        return deg

    def restrict(self, keep) -> "TripleSystem":
        """Subsystem on the given per-class element sets."""
        keep = [set(k) for k in keep]
        ground = [[u for u in self.ground[i] if u in keep[i]] for i in range(3)]
        triples = [t for t in self.triples if all(t[i] in keep[i] for i in range(3))]
        return TripleSystem(ground, triples)

    def pair_unique(self, a: int, b: int) -> bool:
        c = Counter((t[a], t[b]) for t in self.triples)
        return all(v == 1 for v in c.values())


def folklore_thresholds(delta: TripleSystem) -> tuple:
    """One quarter of the average degree in each class."""
    return tuple(Fraction(len(delta), 4 * len(g)) if g else Fraction(0) for g in delta.ground)


def prune_triple_system(delta: TripleSystem, thresholds=None) -> TripleSystem:
    """Delete elements of degree below their class threshold until none remain.

    Thresholds default to a quarter of the original average degree per class
    and stay fixed during the run.  The surviving system keeps at least a
    quarter of the triples.
    """
    if not len(delta):
        raise EmptySystem("cannot prune an empty triple system")
    thr = folklore_thresholds(delta) if thresholds is None else tuple(rat(v) for v in thresholds)
    deg = [delta.degrees(i) for i in range(3)]
    rank = {(i, u): pos for i in range(3) for pos, u in enumerate(delta.ground[i])}
    incident = {key: [] for key in rank}
    for ti, t in enumerate(delta.triples):
        for i in range(3):
            incident[(i, t[i])].append(ti)
    alive_t = [True] * len(delta.triples)
    dead = set()
    heap = [(i, rank[(i, u)]) for i in range(3) for u in delta.ground[i] if deg[i][u] < thr[i]]
    heapq.heapify(heap)
    while heap:
        i, pos = heapq.heappop(heap)
        u = delta.ground[i][pos]
        if (i, u) in dead:
            continue
        dead.add((i, u))
        for ti in incident[(i, u)]:
            if not alive_t[ti]:
                continue
            alive_t[ti] = False
            for j in range(3):
                v = delta.triples[ti][j]
                if (j, v) in dead:
                    continue
                deg[j][v] -= 1
                if deg[j][v] < thr[j]:
                    heapq.heappush(heap, (j, rank[(j, v)]))
    ground = [[u for u in delta.ground[i] if (i, u) not in dead] for i in range(3)]
    triples = [t for t, a in zip(delta.triples, alive_t) if a]
    if thresholds is None and 4 * len(triples) < len(delta):
        raise Collapse(f"{len(triples)} of {len(delta)} triples survived")
    return TripleSystem(ground, triples)


def build_incidence_triples(P1: Sequence, P2: Sequence, maps: Sequence) -> TripleSystem:
    """(p, phi(p), phi) for every match of every map.

    Each pair (phi, p) and (phi, q) occurs at most once because phi is a bijection.
    """
    P1, P2 = point_set(P1), point_set(P2)
    triples = []
    for m in maps:
        triples.extend((p, q, m) for p, q in match_set(m, P1, P2).pairs)
    delta = TripleSystem((P1, P2, list(maps)), triples)
    if not (delta.pair_unique(2, 0) and delta.pair_unique(2, 1)):
        raise InvariantViolation("a map meets some point in two triples")
    return delta


# ---------------------------------------------------------------------------
# triangle selection


def triangle_selection_radius(K) -> Fraction:
    """rho_0(K) = 2048 K + 1024."""
    return 2048 * rat(K) + 1024


def _cells_of(points, arr):
    cells = []
    for p in points:
        try:
            cells.append(locate(arr, p))
        except OnLine as exc:
            raise PointOnLine(str(exc)) from None
    if len({c.index for c in cells}) != len(cells):
        raise DuplicateCell("two points share a cell")
    return cells


def select_small_triangles(points: Sequence, arr: Arrangement, rho: int) -> list:
    """Non-collinear triangles whose vertices are pairwise within distance rho.

    Point j contributes the first (in index order) non-collinear triple made of
    j and two points whose cells lie within floor(rho/2) of its own cell, if
    there is one.  Triangles are returned as sorted index triples, deduplicated.
    """
    pts = point_set(points)
    cells = _cells_of(pts, arr)
    dist = arr.distances
    half = rho // 2
    out, seen = [], set()
    for j, cj in enumerate(cells):
        near = [i for i, ci in enumerate(cells) if i != j and dist[cj.index, ci.index] <= half]
        for a, b in combinations(near, 2):
            if not collinear(pts[j], pts[a], pts[b]):
                tri = tuple(sorted((j, a, b)))
                if tri not in seen:
                    seen.add(tri)
                    out.append(tri)
                break
    return out


# ---------------------------------------------------------------------------
# average forcing


@dataclass
class AvgForcingReport:
    N: int
    c: Fraction
    C: Fraction
    rho: int
    c_star: Fraction
    P1_star: list
    P2_star: list
    S_star: list
    delta_star: TripleSystem
    steps: list  # (name, |P1|, |P2|, |S|, |Delta|)
    ball_bound_1: int  # achieved filter bounds in A(H1), A(H2)
    ball_bound_2: int
    max_ball: int  # largest rho-ball over the cells of surviving points
    C_star_emp: Fraction  # max_ball / rho^2
    conclusions: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.conclusions.values())


def _filter_class(delta, cls, arr, rho):
    pts = delta.ground[cls]
    cells = {locate(arr, p).index: p for p in pts}
    kept, bound = filter_low_ball_cells(arr, [arr.cells[i] for i in cells], rho)
    keep = [list(g) for g in delta.ground]
    keep[cls] = [cells[c.index] for c in kept]
    return delta.restrict(keep), bound


def average_forcing(P1, P2, S, H1, H2, rho: int, c, C) -> AvgForcingReport:
    """Prune / filter / prune / filter / prune, then re-check the four conclusions.

    Hypotheses checked up front: |P_i| <= N, |H_i|^2 <= C^2 N, H_i cuts P_i
    into singletons, every map of S has degree >= cN, and no map meets a
    point twice.  N is max(|P1|, |P2|).
    """
    P1, P2 = point_set(P1), point_set(P2)
    S = list(S)
    c, C = rat(c), rat(C)
    N = max(len(P1), len(P2))
    if not S:
        raise HypothesisViolated("S is empty")
    if not 0 < c <= 1:
        raise HypothesisViolated("c must lie in (0, 1]")
    for name, P, H in (("H1", P1, H1), ("H2", P2, H2)):
        if len(H) ** 2 > C * C * N:
            raise HypothesisViolated(f"|{name}| = {len(H)} exceeds C sqrt(N)")
        if not verify_cutting(P, H).valid:
            raise HypothesisViolated(f"{name} does not cut its point set into singletons")
    delta = build_incidence_triples(P1, P2, S)
    deg = delta.degrees(2)
    for idx, m in enumerate(S):
        if deg[m] < c * N:
            raise HypothesisViolated(f"map S[{idx}] = {m} has degree {deg[m]} < cN = {c * N}")
    arr1, arr2 = build_arrangement(H1), build_arrangement(H2)

    steps = [("input", *_sizes(delta))]
    d1 = prune_triple_system(delta)
    steps.append(("prune-1", *_sizes(d1)))
    d2, bound1 = _filter_class(d1, 0, arr1, rho)
    steps.append(("filter-H1", *_sizes(d2)))
    d3 = prune_triple_system(d2)
    steps.append(("prune-2", *_sizes(d3)))
    d4, bound2 = _filter_class(d3, 1, arr2, rho)
    steps.append(("filter-H2", *_sizes(d4)))
    d5 = prune_triple_system(d4)
    steps.append(("prune-3", *_sizes(d5)))

    c_star = c ** 4 / 2 ** 16
    S_deg = d5.degrees(2)
    balls = [int(arr1.ball_sizes(rho)[locate(arr1, p).index]) for p in d5.ground[0]]
    balls += [int(arr2.ball_sizes(rho)[locate(arr2, p).index]) for p in d5.ground[1]]
    max_ball = max(balls, default=0)
    conclusions = {
        "S_star_size": len(d5.ground[2]) >= c_star * len(S),
        "S_star_degree": bool(d5.ground[2]) and min(S_deg[m] for m in d5.ground[2]) >= c_star * N,
        "P1_star_size": len(d5.ground[0]) >= c_star * N,
        "P2_star_size": len(d5.ground[1]) >= c_star * N,
        "prune_quarter": all(4 * after[4] >= before[4] for before, after in
                             ((steps[0], steps[1]), (steps[2], steps[3]), (steps[4], steps[5]))),
    }
    return AvgForcingReport(
        N, c, C, rho, c_star, list(d5.ground[0]), list(d5.ground[1]), list(d5.ground[2]), d5,
        steps, bound1, bound2, max_ball,
        Fraction(max_ball, rho * rho) if rho else Fraction(0), conclusions,
    )


def _sizes(delta):
    return (len(delta.ground[0]), len(delta.ground[1]), len(delta.ground[2]), len(delta))


# ---------------------------------------------------------------------------
# graphs of affine maps as planes in R^4


@dataclass(frozen=True)
class RichPlane:
    """{(x, y, phi(x, y))}, the graph of a non-degenerate affine map."""

    map: AffineMap2

    def at(self, x, y) -> tuple:
        return (rat(x), rat(y)) + tuple(self.map((rat(x), rat(y))))

    def contains(self, p, q) -> bool:
        return tuple(q) == self.map(tuple(p))

    def richness(self, P1, P2) -> int:
        """|S cap (P1 x P2)| by testing every pair."""
        return sum(1 for p in P1 for q in P2 if self.contains(p, q))


def graph_plane_embed(m: AffineMap2) -> RichPlane:
    if not isinstance(m, AffineMap2):
        raise TypeError("graph planes are defined for plane affine maps")
    return RichPlane(m)


# ---------------------------------------------------------------------------
# experiment


def _family_instance(family, N):
    from .cuttings import grid_cutting
    from .extremal import gen_noncollinear_affine_example, gen_shift_example

    if family == "grid":
        rows = max(d for d in range(1, math.isqrt(N) + 1) if N % d == 0)
        cut = grid_cutting(rows, N // rows)
        return cut.points, cut
    if family == "shift":
        return gen_shift_example(N, 2).points, None
    if family == "noncollinear":
        if N % 2:
            raise ValueError("noncollinear family needs even N")
        return gen_noncollinear_affine_example(N // 2).points, None
    if family == "collinear":
        return point_set((i, 0) for i in range(1, N + 1)), None
    raise ValueError(f"unknown family {family!r}")


def main_theorem_experiment(family: str, sizes: Sequence[int], c, C=2, guard=None) -> list:
    """Per size: census of affine maps with >= cN matches, properness, lambda = census / N.

    Properness uses the grid's own cutting for the grid family and a greedy
    cutting with budget floor(C sqrt(N)) otherwise.  Collinear sets are
    rejected; other sets failing the certificate are still censused.
    """
    from .cuttings import greedy_cutting, root_budget
    from .errors import BudgetExceeded

    c = rat(c)
    rows = []
    for N in sizes:
        pts, cut = _family_instance(family, N)
        n = len(pts)
        budget = root_budget(C, n)
        if cut is None:
            try:
                cut = greedy_cutting(pts, budget)
            except BudgetExceeded:
                cut = None
        proper = cut is not None and len(cut.lines) <= budget and verify_cutting(pts, cut.lines).valid
        row = {"family": family, "N": n, "c": c, "k": max(3, math.ceil(c * n)),
               "proper": proper, "lines": len(cut.lines) if cut else None,
               "constant_sq": cut.constant if cut else None}
        if all(collinear(pts[0], pts[1], p) for p in pts[2:]):
            row.update(status="rejected-collinear", census=None, lam=None)
        else:
            census = enumerate_rich_affine2(pts, pts, row["k"], guard=guard)
            row.update(status="ok" if proper else "not-proper", census=len(census),
                       lam=Fraction(len(census), n))
        rows.append(row)
    return rows
