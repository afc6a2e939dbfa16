"""Cells, distances and neighbourhoods of a small line arrangement."""
import random

from richgeom import Line, ball_profile, build_arrangement, verify_emo
from richgeom.arrangement import is_simple

rng = random.Random(3)
lines = []
while len(lines) < 8:
    cand = lines + [Line(rng.randint(-5, 5) or 1, rng.randint(-5, 5), rng.randint(-9, 9))]
    if len(set(cand)) == len(cand) and is_simple(cand):
        lines = cand

arr = build_arrangement(lines)
n = len(lines)
print(f"{n} lines in general position -> {len(arr)} cells (expected {n * (n + 1) // 2 + 1})")

# distance between cells is the number of lines separating them
D = arr.distances
print("diameter:", int(D.max()))

for rho in range(1, n + 1):
    prof = ball_profile(arr, rho)
    emo = verify_emo(arr, rho)
    print(f"rho={rho}  min ball={emo.min_ball:3d}  max ball={prof['max']:3d}  "
          f"bound rho^2/32={float(emo.bound):.2f}  ok={emo.passed}")
