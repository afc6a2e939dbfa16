"""Census of rich transformations: maps phi with |phi(P1) & P2| >= k.

Every enumerator follows the same pattern.  A map of the group is fixed by a
few correspondences (two for affine maps of the line, three for Mobius maps
and plane affine maps, ...).  For each source tuple we test all target tuples
at once on an integer-scaled copy of the data, keep only candidates whose
source tuple is the *canonical* one for their matched set (its first few
matched indices), and rebuild the survivors exactly with rationals.  The
canonical-tuple rule means each map is produced once, without hashing.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Sequence

import numpy as np

from .errors import EmptyInput, GuardExceeded, KTooSmall, NoSolution
from .exactgeom import (
    AffineMap1,
    AffineMap2,
    Mobius1,
    TranslationD,
    affine_from_triples,
    isometries_from_pairs,
    mobius_from_triples,
    point_set,
    rat,
    rational_fit,
)

__all__ = [
    "GUARDS", "RichMapRecord", "MatchSet", "match_set", "count_rich_translations",
    "enumerate_rich_affine2", "enumerate_rich_affine1", "enumerate_rich_mobius1",
    "enumerate_rich_rational1", "rational_census", "count_rich_isometries2",
    "count_rich_lines", "rich_line_sizes", "largest_collinear_subset",
    "proper_census",
]

GUARDS = {
    "affine2": 24,
    "affine1": 60,
    "mobius1": 20,
    "rational1": 12,
    "isometry2": 40,
    "rich_lines": 3000,
}

# integer-scaled arithmetic stays in int64 below this magnitude
_INT64_SAFE = 2 ** 62
# membership uses a dense lookup table when the bounding box has at most this many cells
_DENSE_LIMIT = 1 << 22


@dataclass
class RichMapRecord:
    map: object
    matched_pairs: tuple

    @property
    def match_count(self) -> int:
        return len(self.matched_pairs)

    @property
    def key(self) -> bytes:
        return self.map.key()


@dataclass
class MatchSet:
    """Sources whose image lands in the target set.

    ``collisions`` lists the pairs sharing their image with another source;
    only non-injective maps (rational maps of degree >= 2) can have any.
    """

    pairs: list
    collisions: list = field(default_factory=list)

    @property
    def injective(self) -> bool:
        return not self.collisions

    def __len__(self) -> int:
        return len(self.pairs)


def match_set(m, P1: Sequence, P2: Sequence) -> MatchSet:
    """All (p, m(p)) with p in P1 and m(p) in P2; a pole never matches."""
    target = set(P2)
    pairs = []
    for p in P1:
        q = m(p)
        if q is not None and q in target:
            pairs.append((p, q))
    seen = Counter(q for _, q in pairs)
    return MatchSet(pairs, [pq for pq in pairs if seen[pq[1]] > 1])


def _guard(name, n, guard):
    limit = GUARDS[name] if guard is None else guard
    if n > limit:
        raise GuardExceeded(f"{name}: {n} points exceeds the enumeration guard {limit}")


def _sorted_records(records):
    return sorted(records, key=lambda r: r.key)


# ---------------------------------------------------------------------------
# integer scaling and vectorised membership


def _common_denominator(values) -> int:
    L = 1
    for v in values:
        L = L * v.denominator // math.gcd(L, v.denominator)
    return L


def _int_array(rows, dtype):
    shape = (len(rows),) if not rows or not isinstance(rows[0], tuple) else (len(rows), len(rows[0]))
    arr = np.empty(shape, dtype=dtype)
    for i, r in enumerate(rows):
        arr[i] = r
    return arr


class _Members:
    """Vectorised test "is this integer point in the set?" for 1-D or 2-D data."""

    def __init__(self, X):
        self.obj = X.dtype == object
        if X.ndim == 1:
            X = X[:, None]
        self.lo = [min(X[:, c]) for c in range(X.shape[1])]
        self.hi = [max(X[:, c]) for c in range(X.shape[1])]
        self.span = [h - l + 1 for l, h in zip(self.lo, self.hi)]
        raw = self._encode([X[:, c] for c in range(X.shape[1])])
        self.order = np.argsort(raw, kind="stable")
        self.keys = raw[self.order]
        self.table = None
        total = math.prod(int(v) for v in self.span)
        if not self.obj and total <= _DENSE_LIMIT:
            self.table = np.zeros(total, dtype=bool)
            self.table[self.keys.astype(np.int64)] = True

    def _encode(self, cols):
        key = cols[0] - self.lo[0]
        for c in range(1, len(cols)):
            key = key * self.span[c] + (cols[c] - self.lo[c])
        return key

    def __call__(self, *cols):
        inside = np.ones(np.shape(cols[0]), dtype=bool)
        for c, v in enumerate(cols):
            inside &= (v >= self.lo[c]) & (v <= self.hi[c])
        safe = [np.where(inside, v, self.lo[c]) for c, v in enumerate(cols)]
        key = self._encode(safe)
        if self.table is not None:
            return inside & self.table[key]
        idx = np.searchsorted(self.keys, key)
        idx = np.minimum(idx, len(self.keys) - 1)
        return inside & (self.keys[idx] == key)

    def index(self, *cols):
        """Row indices of points known to be members."""
        return self.order[np.searchsorted(self.keys, self._encode(list(cols)))]


def _scaled(values, dims):
    """Integer copies of exact data sharing one denominator, plus a dtype choice."""
    flat = [c for v in values for c in (v if dims else (v,))]
    L = _common_denominator(flat)
    ints = [tuple(int(c * L) for c in v) if dims else int(v * L) for v in values]
    M = max((abs(c) for v in ints for c in (v if dims else (v,))), default=1) or 1
    return ints, M


def _pick_dtype(bound):
    return np.int64 if bound < _INT64_SAFE else object


# ---------------------------------------------------------------------------
# translations


def count_rich_translations(P: Sequence, k: int) -> list:
    """Difference vectors q - p (zero included) realised by at least k ordered pairs.

    Returns ``[(TranslationD, multiplicity), ...]`` sorted by canonical key.
    """
    pts = point_set(P)
    if not pts:
        raise EmptyInput("empty point set")
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    if not 1 <= k <= len(pts):
        raise ValueError("need 1 <= k <= |P|")
    diffs = Counter(tuple(b - a for a, b in zip(p, q)) for p in pts for q in pts)
    out = [(TranslationD(v), c) for v, c in diffs.items() if c >= k]
    return sorted(out, key=lambda vc: vc[0].key())


# ---------------------------------------------------------------------------
# plane affine maps


def _affine2_scan(P1, P2, k):
    ints, M = _scaled(list(P1) + list(P2), True)
    dtype = _pick_dtype(64 * M ** 3)
    X1 = _int_array(ints[: len(P1)], dtype)
    X2 = _int_array(ints[len(P1):], dtype)
    n1, n2 = len(X1), len(X2)
    if n1 < 3 or n2 < 3:
        return
    tri = np.array(list(permutations(range(n2), 3)), dtype=np.int64)
    Q0 = X2[tri[:, 0]]
    E1 = X2[tri[:, 1]] - Q0
    E2 = X2[tri[:, 2]] - Q0
    good = (E1[:, 0] * E2[:, 1] - E1[:, 1] * E2[:, 0]) != 0
    tri, Q0, E1, E2 = tri[good], Q0[good], E1[good], E2[good]
    if not len(tri):
        return
    members = _Members(X2)
    # noncollinear[i, j, l] for source indices
    D = X1[None, :, :] - X1[:, None, :]  # D[i, j] = X1[j] - X1[i]
    nc = (D[:, :, None, 0] * D[:, None, :, 1] - D[:, :, None, 1] * D[:, None, :, 0]) != 0
    for i, j, l in combinations(range(n1), 3):
        if n1 - i < k:
            break
        if not nc[i, j, l]:
            continue
        s0 = X1[i]
        u1, u2 = X1[j] - s0, X1[l] - s0
        det = u1[0] * u2[1] - u1[1] * u2[0]
        V = X1 - s0
        B = V[:, 0] * u2[1] - V[:, 1] * u2[0]
        G = u1[0] * V[:, 1] - u1[1] * V[:, 0]
        NX = det * Q0[:, 0, None] + E1[:, 0, None] * B[None, :] + E2[:, 0, None] * G[None, :]
        NY = det * Q0[:, 1, None] + E1[:, 1, None] * B[None, :] + E2[:, 1, None] * G[None, :]
        hit = (NX % det == 0) & (NY % det == 0)
        hit &= members(NX // det, NY // det)
        canon = ~hit[:, :i].any(axis=1) & ~hit[:, i + 1: j].any(axis=1)
        canon &= ~(hit[:, j + 1: l] & nc[i, j, j + 1: l][None, :]).any(axis=1)
        sel = np.nonzero(canon & (hit.sum(axis=1) >= k))[0]
        for t in sel:
            src = np.nonzero(hit[t])[0]
            img = members.index(NX[t, src] // det, NY[t, src] // det)
            yield (i, j, l), tuple(int(v) for v in tri[t]), src, img


def enumerate_rich_affine2(P1: Sequence, P2: Sequence, k: int, guard: int | None = None) -> list:
    """Non-degenerate affine maps of the plane with >= k matches from P1 into P2.

    Only maps whose matched set spans a non-collinear triple are found: maps
    matching only collinear points come in continuous families.
    """
    if k < 3:
        raise KTooSmall("k >= 3 is needed; use translations or isometries for k < 3")
    P1, P2 = point_set(P1), point_set(P2)
    _guard("affine2", max(len(P1), len(P2)), guard)
    out = []
    for (i, j, l), (a, b, c), src, img in _affine2_scan(P1, P2, k):
        m = affine_from_triples((P1[i], P1[j], P1[l]), (P2[a], P2[b], P2[c]))
        # the scan is exact on the scaled integers, so the matches are read off it
        out.append(RichMapRecord(m, tuple((P1[u], P2[v]) for u, v in zip(src, img))))
    return _sorted_records(out)


# ---------------------------------------------------------------------------
# maps of the line


def _scalars(P):
    vals = [rat(v[0]) if isinstance(v, (tuple, list)) else rat(v) for v in P]
    if len(set(vals)) != len(vals):
        raise ValueError("points must be distinct")
    return vals


def enumerate_rich_affine1(P: Sequence, k: int, guard: int | None = None) -> list:
    """Maps x -> m x + b (m != 0) with at least k matches in P."""
    if k < 2:
        raise KTooSmall("k >= 2 is needed: one correspondence does not fix an affine map")
    xs = _scalars(P)
    n = len(xs)
    _guard("affine1", n, guard)
    if n < 2:
        return []
    ints, M = _scaled(xs, False)
    dtype = _pick_dtype(8 * M ** 2)
    X = _int_array(ints, dtype)
    pairs = np.array(list(permutations(range(n), 2)), dtype=np.int64)
    Ya, Yb = X[pairs[:, 0]], X[pairs[:, 1]]
    dY = Yb - Ya
    members = _Members(X)
    order = np.argsort(X)
    X_sorted = X[order]
    out = []
    for i in range(n - k + 1):
        for j in range(i + 1, n - k + 2):
            D = X[j] - X[i]
            N = D * Ya[:, None] + (X[None, :] - X[i]) * dY[:, None]
            q, rem = np.divmod(N, D)
            hit = (rem == 0) & members(q)
            canon = ~hit[:, :i].any(axis=1) & ~hit[:, i + 1: j].any(axis=1)
            for t in np.nonzero(canon & (hit.sum(axis=1) >= k))[0]:
                a, b = pairs[t]
                slope = (xs[b] - xs[a]) / (xs[j] - xs[i])
                m = AffineMap1(slope, xs[a] - slope * xs[i])
                # the scan is exact on the scaled integers, so read matches off it
                src = np.nonzero(hit[t])[0]
                img = order[np.searchsorted(X_sorted, q[t, src])]
                out.append(RichMapRecord(m, tuple((xs[u], xs[v]) for u, v in zip(src, img))))
    return _sorted_records(out)


def enumerate_rich_mobius1(P: Sequence, k: int, guard: int | None = None) -> list:
    """Mobius maps with at least k finite matches in P (poles never match)."""
    if k < 3:
        raise KTooSmall("k >= 3 is needed: a Mobius map is fixed by three correspondences")
    xs = _scalars(P)
    n = len(xs)
    _guard("mobius1", n, guard)
    if n < 3:
        return []
    ints, M = _scaled(xs, False)
    dtype = _pick_dtype(64 * M ** 4)
    X = _int_array(ints, dtype)
    trip = np.array(list(permutations(range(n), 3)), dtype=np.int64)
    Y1, Y2, Y3 = (X[trip[:, c]][:, None] for c in range(3))
    members = _Members(X)
    out = []
    for i, j, l in combinations(range(n), 3):
        if n - i < k:
            break
        x1, x2, x3 = X[i], X[j], X[l]
        A = ((X - x1) * (x2 - x3))[None, :]
        B = ((X - x3) * (x2 - x1))[None, :]
        num = Y1 * (Y2 - Y3) * B - Y3 * (Y2 - Y1) * A
        den = (Y2 - Y3) * B - (Y2 - Y1) * A
        nz = den != 0
        safe = np.where(nz, den, 1)
        hit = nz & (num % safe == 0)
        hit &= members(num // safe)
        canon = ~hit[:, :i].any(axis=1) & ~hit[:, i + 1: j].any(axis=1) & ~hit[:, j + 1: l].any(axis=1)
        for t in np.nonzero(canon & (hit.sum(axis=1) >= k))[0]:
            a, b, c = trip[t]
            m = mobius_from_triples((xs[i], xs[j], xs[l]), (xs[a], xs[b], xs[c]))
            ms = match_set(m, xs, xs)
            out.append(RichMapRecord(m, tuple(ms.pairs)))
    return _sorted_records(out)


@dataclass
class RationalCensus:
    records: list
    non_injective: list  # RichMapRecord whose matched set has repeated images


def rational_census(P: Sequence, k: int, r: int, guard: int | None = None) -> RationalCensus:
    """Rational maps of total degree <= r with at least k matches in P.

    Maps that send two matched sources to the same image are set aside in
    ``non_injective`` and not counted.
    """
    if r < 1 or r > 3:
        raise GuardExceeded("rational census supports 1 <= r <= 3")
    if k < r + 1:
        raise KTooSmall(f"k >= r + 1 = {r + 1} is needed")
    xs = _scalars(P)
    n = len(xs)
    _guard("rational1", n, guard)
    good, bad = [], []
    for src in combinations(range(n), r + 1):
        if n - src[0] < k:
            break
        sx = [xs[i] for i in src]
        for tgt in product(range(n), repeat=r + 1):
            try:
                fits = rational_fit(list(zip(sx, (xs[t] for t in tgt))), r)
            except NoSolution:
                continue
            for m in fits:
                ms = match_set(m, xs, xs)
                if len(ms) < k:
                    continue
                first = [xs.index(p) for p, _ in ms.pairs[: r + 1]]
                if tuple(first) != src:
                    continue
                rec = RichMapRecord(m, tuple(ms.pairs))
                (good if ms.injective else bad).append(rec)
    return RationalCensus(_sorted_records(good), _sorted_records(bad))


def enumerate_rich_rational1(P: Sequence, k: int, r: int, guard: int | None = None) -> list:
    return rational_census(P, k, r, guard).records


# ---------------------------------------------------------------------------
# isometries


def count_rich_isometries2(P: Sequence, k: int, guard: int | None = None) -> list:
    """Isometries of the plane with at least k (>= 2) matches in P."""
    if k < 2:
        raise KTooSmall("k >= 2 is needed")
    pts = point_set(P)
    n = len(pts)
    _guard("isometry2", n, guard)
    if len(set(pts)) != n:
        raise ValueError("points must be distinct")
    by_len = defaultdict(list)
    for a, b in permutations(range(n), 2):
        d = (pts[a][0] - pts[b][0]) ** 2 + (pts[a][1] - pts[b][1]) ** 2
        by_len[d].append((a, b))
    index = {p: i for i, p in enumerate(pts)}
    out = []
    for i, j in combinations(range(n), 2):
        if n - i < k:
            break
        d = (pts[i][0] - pts[j][0]) ** 2 + (pts[i][1] - pts[j][1]) ** 2
        for a, b in by_len[d]:
            for m in isometries_from_pairs(pts[i], pts[j], pts[a], pts[b]):
                ms = match_set(m, pts, pts)
                if len(ms) < k:
                    continue
                first = tuple(index[p] for p, _ in ms.pairs[:2])
                if first == (i, j):
                    out.append(RichMapRecord(m, tuple(ms.pairs)))
    return _sorted_records(out)


# ---------------------------------------------------------------------------
# rich lines


def rich_line_sizes(P: Sequence, guard: int | None = None) -> list:
    """Number of points on every line spanned by two points of P, sorted descending."""
    pts = point_set(P)
    n = len(pts)
    _guard("rich_lines", n, guard)
    if len(set(pts)) != n:
        raise ValueError("points must be distinct")
    if n < 2:
        return []
    ints, M = _scaled(pts, True)
    if 4 * M * M >= _INT64_SAFE:
        return _rich_line_sizes_exact(pts)
    X = np.array(ints, dtype=np.int64)
    idx = np.arange(n)
    sizes = []
    for i in range(n - 1):
        others = idx[idx != i]
        d = X[others] - X[i]
        g = np.gcd(d[:, 0], d[:, 1])
        d = d // g[:, None]
        flip = (d[:, 0] < 0) | ((d[:, 0] == 0) & (d[:, 1] < 0))
        d[flip] *= -1
        _, inv, counts = np.unique(d, axis=0, return_inverse=True, return_counts=True)
        inv = inv.reshape(-1)
        first = np.full(len(counts), n, dtype=np.int64)
        np.minimum.at(first, inv, others)
        # count each line once, at its lowest-index point
        sizes.extend(int(c) + 1 for c in counts[first > i])
    return sorted(sizes, reverse=True)


def _rich_line_sizes_exact(pts):
    from .arrangement import Line

    lines = defaultdict(set)
    for p, q in combinations(pts, 2):
        h = Line.through(p, q)
        lines[h].update((p, q))
    return sorted((len(s) for s in lines.values()), reverse=True)


def count_rich_lines(P: Sequence, k: int, guard: int | None = None) -> int:
    """Number of distinct lines containing at least k >= 2 points of P."""
    if k < 2:
        raise ValueError("k >= 2")
    return sum(1 for s in rich_line_sizes(P, guard) if s >= k)


def largest_collinear_subset(P: Sequence) -> int:
    """Size of the largest collinear subset of P (diagnostic for the affine census)."""
    pts = point_set(P)
    if len(pts) <= 2:
        return len(pts)
    sizes = rich_line_sizes(pts, guard=len(pts))
    return sizes[0]


def proper_census(records: Sequence[RichMapRecord], budget: int) -> list:
    """Records whose matched image set admits a greedy cutting within the budget."""
    from .cuttings import greedy_cutting
    from .errors import BudgetExceeded

    kept = []
    for rec in records:
        try:
            greedy_cutting([q for _, q in rec.matched_pairs], budget)
        except BudgetExceeded:
            continue
        kept.append(rec)
    return kept
