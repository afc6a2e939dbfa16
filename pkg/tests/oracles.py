"""Brute-force reference implementations, written independently of the library.

They share no code with ``richgeom`` beyond :class:`fractions.Fraction` and
are only meant for small inputs.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations

F = Fraction


def det3(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def solve3(m, rhs):
    """Cramer's rule; None if singular."""
    d = det3(m)
    if d == 0:
        return None
    out = []
    for col in range(3):
        mm = [list(row) for row in m]
        for r in range(3):
            mm[r][col] = rhs[r]
        out.append(det3(mm) / d)
    return out


def affine_maps(P1, P2):
    """{(a1, b1, c1, a2, b2, c2): match count} over all ordered triple pairs."""
    P1 = [tuple(F(c) for c in p) for p in P1]
    P2 = [tuple(F(c) for c in p) for p in P2]
    target = set(P2)
    seen = {}
    for s in permutations(P1, 3):
        m = [(x, y, F(1)) for x, y in s]
        if det3(m) == 0:
            continue
        for t in permutations(P2, 3):
            if det3([(x, y, F(1)) for x, y in t]) == 0:
                continue
            r1 = solve3(m, [q[0] for q in t])
            r2 = solve3(m, [q[1] for q in t])
            key = tuple(r1 + r2)
            if key in seen:
                continue
            a1, b1, c1, a2, b2, c2 = key
            seen[key] = sum((a1 * x + b1 * y + c1, a2 * x + b2 * y + c2) in target for x, y in P1)
    return seen


def _adjugate(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    return [[e * i - f * h, c * h - b * i, b * f - c * e],
            [f * g - d * i, a * i - c * g, c * d - a * f],
            [d * h - e * g, b * g - a * h, a * e - b * d]]


def affine_maps_int(P1, P2):
    """Same census as :func:`affine_maps` for integer points, in integer arithmetic."""
    P1 = [tuple(int(c) for c in p) for p in P1]
    P2 = [tuple(int(c) for c in p) for p in P2]
    target = set(P2)
    seen = {}
    for s in permutations(P1, 3):
        m = [(x, y, 1) for x, y in s]
        d = det3(m)
        if d == 0:
            continue
        adj = _adjugate(m)
        for t in permutations(P2, 3):
            if det3([(x, y, 1) for x, y in t]) == 0:
                continue
            nums = [sum(adj[r][j] * t[j][coord] for j in range(3))
                    for coord in (0, 1) for r in range(3)]
            g = math.gcd(d, *nums) * (1 if d > 0 else -1)
            key = (*(v // g for v in nums), d // g)
            if key in seen:
                continue
            n1, n2, n3, n4, n5, n6, den = key
            hits = 0
            for x, y in P1:
                X, Y = n1 * x + n2 * y + n3, n4 * x + n5 * y + n6
                hits += X % den == 0 and Y % den == 0 and (X // den, Y // den) in target
            seen[key] = hits
    return {tuple(F(v, k[6]) for v in k[:6]): c for k, c in seen.items()}


def affine1_maps(xs):
    """{(m, b): match count} for all x -> m x + b fixed by two correspondences."""
    xs = [F(v) for v in xs]
    S = set(xs)
    out = {}
    for (x1, x2), (y1, y2) in ((s, t) for s in permutations(xs, 2) for t in permutations(xs, 2)):
        m = (y2 - y1) / (x2 - x1)
        b = y1 - m * x1
        if (m, b) not in out:
            out[(m, b)] = sum(m * x + b in S for x in xs)
    return out


def _normalise(v):
    lead = next(x for x in v if x != 0)
    return tuple(x / lead for x in v)


def mobius_maps(xs):
    """{(a, b, c, d): match count} via cross-ratio matrices T_dst^-1 T_src."""
    xs = [F(v) for v in xs]
    S = set(xs)

    def to_standard(x1, x2, x3):
        # x -> (x - x1)(x2 - x3) / ((x - x3)(x2 - x1)) sends x1, x2, x3 to 0, 1, inf
        return ((x2 - x3), -x1 * (x2 - x3), (x2 - x1), -x3 * (x2 - x1))

    out = {}
    for s in permutations(xs, 3):
        a, b, c, d = to_standard(*s)
        for t in permutations(xs, 3):
            p, q, r, u = to_standard(*t)
            # inverse of [[p, q], [r, u]] up to scale is [[u, -q], [-r, p]]
            m = (u * a - q * c, u * b - q * d, -r * a + p * c, -r * b + p * d)
            key = _normalise(m)
            if key in out:
                continue
            A, B, C, D = key
            cnt = 0
            for x in xs:
                den = C * x + D
                if den != 0 and (A * x + B) / den in S:
                    cnt += 1
            out[key] = cnt
    return out


def isometries(P):
    """{(m11, m12, m21, m22, tx, ty): match count} using complex-number formulas."""
    P = [tuple(F(c) for c in p) for p in P]
    S = set(P)
    out = {}
    for (p1, p2) in permutations(P, 2):
        dz = (p2[0] - p1[0], p2[1] - p1[1])
        nz = dz[0] ** 2 + dz[1] ** 2
        for (q1, q2) in permutations(P, 2):
            dw = (q2[0] - q1[0], q2[1] - q1[1])
            if dw[0] ** 2 + dw[1] ** 2 != nz:
                continue
            # rotation: w = q1 + u (z - p1), u = dw / dz
            u = ((dw[0] * dz[0] + dw[1] * dz[1]) / nz, (dw[1] * dz[0] - dw[0] * dz[1]) / nz)
            # reflection: w = q1 + v conj(z - p1), v = dw / conj(dz)
            v = ((dw[0] * dz[0] - dw[1] * dz[1]) / nz, (dw[1] * dz[0] + dw[0] * dz[1]) / nz)
            for mat in ((u[0], -u[1], u[1], u[0]), (v[0], v[1], v[1], -v[0])):
                m11, m12, m21, m22 = mat
                tx = q1[0] - m11 * p1[0] - m12 * p1[1]
                ty = q1[1] - m21 * p1[0] - m22 * p1[1]
                key = (m11, m12, m21, m22, tx, ty)
                if key not in out:
                    out[key] = sum((m11 * x + m12 * y + tx, m21 * x + m22 * y + ty) in S
                                   for x, y in P)
    return out


def translations(P):
    P = [tuple(F(c) for c in p) for p in P]
    return Counter(tuple(b - a for a, b in zip(p, q)) for p in P for q in P)


def line_sizes(P):
    """Points per line through at least two points, via integer normal forms."""
    P = [tuple(F(c) for c in p) for p in P]
    lines = {}
    for p, q in combinations(P, 2):
        a, b = q[1] - p[1], p[0] - q[0]
        c = -(a * p[0] + b * p[1])
        L = math.lcm(a.denominator, b.denominator, c.denominator)
        v = [int(x * L) for x in (a, b, c)]
        g = math.gcd(*v)
        v = [x // g for x in v]
        if v[0] < 0 or (v[0] == 0 and v[1] < 0):
            v = [-x for x in v]
        lines.setdefault(tuple(v), set()).update((p, q))
    return sorted((len(s) for s in lines.values()), reverse=True)


def cell_count(lines):
    """Faces of a line arrangement by incremental insertion.

    Adding a line crossing the earlier ones in j distinct points adds j + 1 faces.
    """
    lines = [tuple(F(c) for c in h) for h in lines]
    faces = 1
    for idx, (a, b, c) in enumerate(lines):
        pts = set()
        for a2, b2, c2 in lines[:idx]:
            det = a * b2 - a2 * b
            if det != 0:
                pts.add(((b * c2 - b2 * c) / det, (c * a2 - c2 * a) / det))
        faces += len(pts) + 1
    return faces


def hamming(u, v):
    return sum(x != y for x, y in zip(u, v))

