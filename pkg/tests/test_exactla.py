from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from monadkit.exactla import (RationalMatrix, Subquotient, WellDefinednessError, block_matrix, determinant,
                              exact_rank, hstack, induced_map, kernel_basis, modular_rank, random_primes, rank,
                              rref, solve, vstack)

small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_rows=7, max_cols=7):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    # sparse-ish entries so rank deficiency shows up often
    vals = draw(st.lists(st.one_of(st.just(0), st.just(0), small), min_size=r * c, max_size=r * c))
    return [[Fraction(vals[i * c + j], 1 + (i + j) % 3) for j in range(c)] for i in range(r)]


def sympy_rank(dense):
    if not dense or not dense[0]:
        return 0
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in dense]).rank()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_strategies_match_sympy(dense):
    m = RationalMatrix.from_dense(dense) if dense else RationalMatrix.zeros(0, 0)
    expected = sympy_rank(dense)
    assert exact_rank(m) == expected
    assert rank(m, "modular") == expected
    assert rank(m, "hybrid", threshold=1) == expected


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_kernel_basis_is_a_basis(dense):
    if not dense or not dense[0]:
        return
    m = RationalMatrix.from_dense(dense)
    K = kernel_basis(m)
    assert K.cols == m.cols - exact_rank(m)
    assert (m @ K).is_zero()
    assert exact_rank(K) == K.cols


def test_large_sparse_rank_uses_elimination():
    # banded 90x90 matrix with a planted dependency in the last row
    n = 90
    ent = {}
    for i in range(n - 1):
        ent[(i, i)] = Fraction(i + 2)
        ent[(i, (i + 1) % n)] = Fraction(-1)
    for j in range(n):
        v = sum((ent.get((i, j), 0) for i in range(0, n - 1, 2)), Fraction(0))
        if v:
            ent[(n - 1, j)] = v
    m = RationalMatrix(n, n, ent)
    assert exact_rank(m) == n - 1
    assert rank(m, "modular") == n - 1


def test_modular_rank_can_undercount_for_divisible_entries():
    p = random_primes(1, seed=3)[0]
    m = RationalMatrix.from_dense([[p, 0], [0, 1]])
    assert modular_rank(m, p) == 1
    assert rank(m, "modular", seed=3, primes=1) == 1
    assert rank(m, "exact") == 2


def test_random_primes_are_deterministic_and_distinct():
    a = random_primes(3, seed=7)
    assert a == random_primes(3, seed=7)
    assert len(set(a)) == 3
    assert all(sympy.isprime(p) and p < 2**61 for p in a)


def test_rref_and_solve():
    m = RationalMatrix.from_dense([[1, 2, 3], [2, 4, 7]])
    rows, piv = rref(m)
    assert piv == [0, 2]
    b = RationalMatrix.from_dense([[1], [3]])
    x = solve(m, b)
    assert (m @ x - b).is_zero()
    assert solve(RationalMatrix.from_dense([[1], [1]]), RationalMatrix.from_dense([[1], [2]])) is None


def test_determinant_and_stacking():
    a = RationalMatrix.from_dense([[2, 1], [1, 1]])
    assert determinant(a) == 1
    assert determinant(RationalMatrix.from_dense([[Fraction(1, 2), 3], [1, 6]])) == 0
    z = RationalMatrix.zeros(2, 2)
    big = block_matrix([[a, None], [None, a]], [2, 2], [2, 2])
    assert big == vstack([hstack([a, z]), hstack([z, a])])
    assert determinant(big) == 1
    with pytest.raises(ValueError):
        determinant(RationalMatrix.zeros(2, 3))


def test_subquotient_coordinates_and_induced_map():
    e = RationalMatrix.identity(3)
    # V = span(e0, e1) / span(e0)
    V = Subquotient(3, e.submatrix(range(3), [0, 1]), e.submatrix(range(3), [0]))
    assert V.dim == 1
    v = RationalMatrix.from_dense([[5], [2], [0]])
    assert V.coordinates(v).to_dense() == [[2]]
    swap = RationalMatrix.from_dense([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    W = Subquotient(3, e.submatrix(range(3), [0, 1]), e.submatrix(range(3), [1]))
    assert induced_map(swap, V, W).to_dense() == [[1]]
    with pytest.raises(WellDefinednessError):
        induced_map(swap, V, V)
