"""Rich translations of the shift construction.

The point set is {1..2k} x Y for a Sidon set Y.  Each pair of levels gives a
translation with 2k matches, and the exhaustive counter finds them all.
"""
from richgeom import count_rich_translations, gen_shift_example, sidon_set

print("greedy Sidon set of size 8:", sidon_set(8))

for n, k in [(40, 4), (80, 8), (160, 8)]:
    ex = gen_shift_example(n, k)
    census = count_rich_translations(ex.points, k)
    nonzero = [(t, m) for t, m in census if any(t.vector)]
    print(f"N={n:4d} k={k}  certified={len(ex.certified_family):4d}  "
          f"census={len(nonzero):5d}  count*k/N^2={len(census) * k / n ** 2:.3f}")

# certified shifts move between levels; short horizontal steps match even more points
ex = gen_shift_example(40, 4)
moving = [(t, m) for t, m in count_rich_translations(ex.points, 4) if any(t.vector)]
best = max(moving, key=lambda tm: (tm[1], tm[0].vector))
print("a richest nonzero translation:", [str(v) for v in best[0].vector], "with", best[1], "matches")
