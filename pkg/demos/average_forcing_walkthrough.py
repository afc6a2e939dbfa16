"""Prune, filter, prune, filter, prune on the grid-affine instance.

250 affine maps of a 16 x 2 grid each hit four points.  Grid lines cut the
grid into singletons, and the forcing pipeline keeps a dense sub-system whose
points all sit in cells with small neighbourhoods.
"""
from fractions import Fraction

from richgeom import average_forcing, gen_grid_affine_example, grid_cutting

ex = gen_grid_affine_example(32, 4)
cut = grid_cutting(16, 2)
N = len(ex.points)
print(f"{N} points, {len(ex.certified_family)} maps, {len(cut.lines)} cutting lines")

rep = average_forcing(ex.points, ex.points, ex.certified_family, cut.lines, cut.lines,
                      rho=3, c=Fraction(4, N), C=3)

print(f"{'step':10s} {'|P1|':>5s} {'|P2|':>5s} {'|S|':>5s} {'triples':>8s}")
for name, p1, p2, s, t in rep.steps:
    print(f"{name:10s} {p1:5d} {p2:5d} {s:5d} {t:8d}")

print("c* =", rep.c_star)
for key, ok in rep.conclusions.items():
    print(f"  {key}: {'holds' if ok else 'fails'}")
print("largest 3-ball among surviving cells:", rep.max_ball)
