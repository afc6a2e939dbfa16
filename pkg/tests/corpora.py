"""Seeded input generators shared by the test modules."""

from richgeom.arrangement import Line, is_simple


def random_simple(n, rng):
    """n random lines in general position (rejection sampling on small integers)."""
    while True:
        raw = [(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-20, 20)) for _ in range(n)]
        if any(a == b == 0 for a, b, _ in raw):
            continue
        lines = list(dict.fromkeys(Line(*t) for t in raw))
        if len(lines) == n and is_simple(lines):
            return lines
