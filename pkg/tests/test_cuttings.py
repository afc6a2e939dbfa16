from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from richgeom.arrangement import Line
from richgeom.cuttings import (
    greedy_cutting,
    grid_cutting,
    lattice_cutting,
    root_budget,
    verify_cutting,
)
from richgeom.errors import BudgetExceeded, DimensionMismatch
from richgeom.exactgeom import integer_grid, point


def test_verify_cutting_examples():
    grid = integer_grid(3, 3)
    H = [Line.vertical(F(3, 2)), Line.vertical(F(5, 2)),
         Line.horizontal(F(3, 2)), Line.horizontal(F(5, 2))]
    chk = verify_cutting(grid, H)
    assert chk.valid and chk.constant == F(16, 9)
    assert not verify_cutting([point(0, 0), point(0, 0)], [Line(1, 1, 5)]).valid
    assert verify_cutting([point(0, 0), point(1, 1)], [Line.vertical(F(1, 2))]).valid


def test_verify_cutting_reports_failures():
    # x = 1 passes through two points and leaves the other two on one side
    chk = verify_cutting(integer_grid(2, 2), [Line.vertical(1)])
    assert not chk.valid and chk.on_hyperplane == 2 and chk.collisions == 2
    with pytest.raises(DimensionMismatch):
        verify_cutting([point(0, 0, 0)], [Line(1, 0, 0)])


@pytest.mark.parametrize("rows,cols,lines,const", [
    (3, 3, 4, F(16, 9)),
    (1, 5, 4, F(16, 5)),
    (16, 2, 16, F(8)),
])
def test_grid_cutting_examples(rows, cols, lines, const):
    cut = grid_cutting(rows, cols)
    assert len(cut.lines) == lines and cut.constant == const
    assert cut.check().valid


def test_lattice_cutting_three_dimensional():
    cut = lattice_cutting([2, 3, 4])
    assert len(cut.lines) == 1 + 2 + 3
    chk = cut.check()
    assert chk.valid and chk.dim == 3 and chk.constant == F(6 ** 3, 24)


def test_greedy_examples():
    cut = greedy_cutting(integer_grid(3, 3), 4)
    assert len(cut.lines) == 4 and cut.check().valid
    pts = [point(i, 0) for i in range(6)]
    cut = greedy_cutting(pts, 5)
    assert len(cut.lines) == 5 and cut.check().valid
    with pytest.raises(BudgetExceeded) as err:
        greedy_cutting([point(1, 1), point(1, 1)], 10)
    assert err.value.unseparated == 1


def test_greedy_budget_exceeded_keeps_partial():
    with pytest.raises(BudgetExceeded) as err:
        greedy_cutting(integer_grid(4, 4), 2)
    assert len(err.value.partial.lines) == 2 and err.value.unseparated > 0


@settings(max_examples=40, deadline=None)
@given(st.sets(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=1, max_size=12))
def test_greedy_output_is_a_valid_cutting(raw):
    pts = [point(p) for p in sorted(raw)]
    try:
        cut = greedy_cutting(pts, 20)
    except BudgetExceeded:
        return
    assert verify_cutting(pts, cut.lines).valid


@given(st.integers(1, 5), st.integers(1, 500))
def test_root_budget_is_exact_floor(C, N):
    m = root_budget(C, N)
    assert m * m <= C * C * N < (m + 1) ** 2
