from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from monadkit.exactla import exact_rank
from monadkit.graded import GradedMatrix, LineBundleSum, ShapeError, bott_h, h0_matrix, h3_matrix


def bott_reference(d, i):
    if i == 0:
        return comb(d + 3, 3) if d >= 0 else 0
    if i == 3:
        return comb(-d - 1, 3) if d <= -4 else 0
    return 0


@pytest.mark.parametrize("d", range(-10, 9))
def test_bott_formula(d):
    assert [bott_h(d, i) for i in range(4)] == [bott_reference(d, i) for i in range(4)]


def test_bundle_sum_basics():
    b = LineBundleSum.of((6, 0), (1, -1))
    assert b.rank == 7
    assert str(b) == "6O + O(-1)"
    assert b.dual().twist(1) == LineBundleSum([1] * 6 + [2])
    assert b.c1() == -1
    assert b.h(0, 1) == 6 * 4 + 1


def test_composition_and_degrees():
    a = GradedMatrix.from_strings([-1], [0, 0], [["x"], ["y"]])
    b = GradedMatrix.from_strings([0, 0], [1], [["y", "-x"]])
    assert (b @ a).is_zero()
    with pytest.raises(ShapeError):
        a @ a
    with pytest.raises(ShapeError):
        GradedMatrix.from_strings([-1], [0], [["x"], ["y"]])
    assert a.dual().to_strings() == [["x", "y"]]
    assert a.is_linear() and a.max_degree() == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(-2, 3))
def test_h0_functor_respects_composition(l):
    a = GradedMatrix.from_strings([-2], [-1, -1], [["x"], ["z + w"]])
    b = GradedMatrix.from_strings([-1, -1], [1], [["y^2", "x*w"]])
    assert h0_matrix(b @ a, l) == h0_matrix(b, l) @ h0_matrix(a, l)
    assert h3_matrix(b @ a, -l - 6) == h3_matrix(b, -l - 6) @ h3_matrix(a, -l - 6)


def test_h0_matrix_of_koszul_end():
    beta = GradedMatrix.from_strings([0, 0, 0, 0], [1], [["x", "y", "z", "w"]])
    # surjective on global sections from degree 0 on
    for l in range(0, 3):
        assert exact_rank(h0_matrix(beta, l)) == comb(l + 4, 3)
