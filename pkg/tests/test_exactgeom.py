from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from richgeom.errors import (
    CoincidentPoints,
    CollinearSource,
    DegenerateMap,
    GuardExceeded,
    LengthMismatch,
    NoSolution,
    RepeatedValue,
)
from richgeom.exactgeom import (
    AffineMap1,
    AffineMap2,
    Isometry2,
    Mobius1,
    RationalMap1,
    TranslationD,
    affine_from_triples,
    canonical_key,
    collinear,
    integer_grid,
    isometries_from_pairs,
    mobius_from_triples,
    nullspace,
    orientation,
    point,
    rat,
    rational_fit,
)

small = st.integers(-6, 6)
coords = st.tuples(small, small)
ratio = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def test_rat_refuses_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("3/6") == F(1, 2)
    assert point(1, "2/4") == (F(1), F(1, 2))


@pytest.mark.parametrize("p,q,r,expected", [
    ((0, 0), (1, 0), (0, 1), 1),
    ((0, 0), (1, 1), (2, 2), 0),
    ((0, 0), (0, 1), (1, 0), -1),
])
def test_orientation_examples(p, q, r, expected):
    assert orientation(point(p), point(q), point(r)) == expected


@given(coords, coords, coords)
def test_orientation_antisymmetric(p, q, r):
    p, q, r = point(p), point(q), point(r)
    assert orientation(p, q, r) == -orientation(q, p, r) == orientation(q, r, p)


T = ((0, 0), (1, 0), (0, 1))


def test_affine_from_triples_examples():
    assert affine_from_triples(T, T) == AffineMap2.identity()
    assert affine_from_triples(T, ((1, 1), (2, 1), (1, 2))) == AffineMap2(1, 0, 1, 0, 1, 1)
    assert affine_from_triples(T, ((0, 0), (2, 0), (0, 3))) == AffineMap2(2, 0, 0, 0, 3, 0)


def test_affine_from_triples_errors():
    with pytest.raises(CollinearSource):
        affine_from_triples(((0, 0), (1, 1), (2, 2)), T)
    with pytest.raises(DegenerateMap):
        affine_from_triples(T, ((0, 0), (1, 1), (2, 2)))
    with pytest.raises(DegenerateMap):
        AffineMap2(1, 2, 0, 2, 4, 0)


@given(coords, coords, coords, coords, coords, coords)
def test_affine_from_triples_interpolates(s0, s1, s2, t0, t1, t2):
    src, dst = [point(p) for p in (s0, s1, s2)], [point(p) for p in (t0, t1, t2)]
    assume(not collinear(*src) and not collinear(*dst))
    m = affine_from_triples(src, dst)
    assert [m(p) for p in src] == dst
    inv = m.inverse()
    assert [inv(q) for q in dst] == src
    assert m.compose(inv) == AffineMap2.identity()


def test_mobius_examples():
    assert mobius_from_triples((0, 1, 2), (0, 1, 2)).params == (1, 0, 0, 1)
    assert mobius_from_triples((1, 2, 4), (1, F(1, 2), F(1, 4))).params == (0, 1, 1, 0)
    assert mobius_from_triples((0, 1, 2), (1, 2, 3)).params == (1, 1, 0, 1)
    with pytest.raises(RepeatedValue):
        mobius_from_triples((0, 1, 1), (0, 1, 2))
    with pytest.raises(DegenerateMap):
        Mobius1(1, 2, 2, 4)


def test_mobius_pole_is_none():
    inv = Mobius1(0, 1, 1, 0)
    assert inv(0) is None and inv(2) == F(1, 2)


@settings(max_examples=60)
@given(st.lists(ratio, min_size=3, max_size=3, unique=True),
       st.lists(ratio, min_size=3, max_size=3, unique=True))
def test_mobius_interpolates(xs, ys):
    try:
        m = mobius_from_triples(xs, ys)
    except DegenerateMap:
        return
    assert [m(x) for x in xs] == ys


def test_rational_fit_examples():
    assert RationalMap1((1, 1), (1,), 1) in rational_fit([(0, 1), (1, 2)], 1)
    assert RationalMap1((1,), (0, 1), 1) in rational_fit([(1, 1), (2, F(1, 2))], 1)
    assert RationalMap1((0, 0, 1), (1,), 2) in rational_fit([(0, 0), (1, 1), (2, 4)], 2)


def test_rational_fit_errors():
    with pytest.raises(NoSolution):
        rational_fit([(0, 5), (1, 5)], 1)  # only the constant interpolates
    with pytest.raises(RepeatedValue):
        rational_fit([(1, 1), (1, 2)], 1)
    with pytest.raises(GuardExceeded):
        rational_fit([(i, i) for i in range(5)], 4)


@settings(max_examples=60)
@given(st.integers(1, 3), st.data())
def test_rational_fit_every_candidate_interpolates(r, data):
    xs = data.draw(st.lists(ratio, min_size=r + 1, max_size=r + 1, unique=True))
    ys = data.draw(st.lists(ratio, min_size=r + 1, max_size=r + 1))
    try:
        fits = rational_fit(list(zip(xs, ys)), r)
    except NoSolution:
        return
    for m in fits:
        assert m.total_degree <= r and not m.is_constant
        assert [m(x) for x in xs] == ys


def test_rational_map_canonical_form():
    a = RationalMap1((2, 2), (4,), 1)
    b = RationalMap1((F(1, 2), F(1, 2)), (1,), 3)
    assert a == RationalMap1(b.p, b.q, 1)
    assert a.key() == b.key()
    # common factors cancel: (x^2 - 1)/(x - 1) = x + 1
    assert RationalMap1((-1, 0, 1), (-1, 1), 3).key() == RationalMap1((1, 1), (1,), 1).key()


def test_isometry_examples():
    rot, ref = isometries_from_pairs((0, 0), (1, 0), (0, 0), (1, 0))
    assert rot == Isometry2(1, 0, 0, 1, 0, 0)
    assert ref == Isometry2(1, 0, 0, -1, 0, 0)
    rot, ref = isometries_from_pairs((0, 0), (1, 0), (0, 0), (0, 1))
    assert rot.params[:4] == (0, -1, 1, 0) and ref.orientation == -1
    rot, ref = isometries_from_pairs((0, 0), (3, 4), (0, 0), (5, 0))
    assert (rot.m11, rot.m21) == (F(3, 5), F(-4, 5))
    assert rot(point(3, 4)) == point(5, 0) and ref(point(3, 4)) == point(5, 0)


def test_isometry_errors():
    with pytest.raises(LengthMismatch):
        isometries_from_pairs((0, 0), (1, 0), (0, 0), (2, 0))
    with pytest.raises(CoincidentPoints):
        isometries_from_pairs((0, 0), (0, 0), (0, 0), (0, 0))
    with pytest.raises(DegenerateMap):
        Isometry2(1, 1, 0, 1, 0, 0)


@given(coords, coords, coords, ratio, st.booleans())
def test_isometries_preserve_distances(p1, p2, q1, t, flip):
    p1, p2, q1 = point(p1), point(p2), point(q1)
    assume(p1 != p2)
    # rational rotation by the half-angle tangent t, optionally after a reflection
    cos, sin = (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)
    dx, dy = p2[0] - p1[0], p2[1] - p1[1]
    if flip:
        dy = -dy
    q2 = (q1[0] + cos * dx - sin * dy, q1[1] + sin * dx + cos * dy)
    d = lambda u, v: (u[0] - v[0]) ** 2 + (u[1] - v[1]) ** 2
    maps = isometries_from_pairs(p1, p2, q1, q2)
    assert sorted(m.orientation for m in maps) == [-1, 1]
    for m in maps:
        assert m(p1) == q1 and m(p2) == q2
        assert d(m(point(1, 2)), m(point(-3, 5))) == d(point(1, 2), point(-3, 5))


def test_canonical_key_examples():
    assert canonical_key(AffineMap2.identity()) == canonical_key(affine_from_triples(T, T))
    assert canonical_key(Mobius1(2, 0, 0, 2)) == canonical_key(Mobius1(1, 0, 0, 1))
    assert canonical_key(TranslationD((1, 1))) != canonical_key(TranslationD((1, -1)))


@given(st.tuples(*[st.integers(-3, 3)] * 6), st.tuples(*[st.integers(-3, 3)] * 6))
def test_affine_key_injective(u, v):
    try:
        a, b = AffineMap2(*u), AffineMap2(*v)
    except DegenerateMap:
        return
    assert (canonical_key(a) == canonical_key(b)) == (u == v)


@given(st.tuples(*[st.integers(-3, 3)] * 4), st.tuples(*[st.integers(-3, 3)] * 4))
def test_mobius_key_is_projective(u, v):
    try:
        a, b = Mobius1(*u), Mobius1(*v)
    except DegenerateMap:
        return
    proportional = all(u[i] * v[j] == u[j] * v[i] for i in range(4) for j in range(4))
    assert (canonical_key(a) == canonical_key(b)) == proportional


def test_affine_map1_requires_slope():
    with pytest.raises(DegenerateMap):
        AffineMap1(0, 3)
    assert AffineMap1(2, 1)(F(1, 2)) == 2


def test_nullspace_dimension():
    basis = nullspace([[1, 2, 3], [2, 4, 6]], 3)
    assert len(basis) == 2
    for v in basis:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0


def test_integer_grid_order():
    assert integer_grid(2, 2) == [point(1, 1), point(1, 2), point(2, 1), point(2, 2)]
