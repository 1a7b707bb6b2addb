import random
from fractions import Fraction

import pytest

from monadkit.cohom import ladder_cohomology
from monadkit.complexes import validate_monad
from monadkit.degeneracy import Everywhere, Witness, fiberwise_full_rank
from monadkit.exactla import RationalMatrix
from monadkit.graded import ShapeError
from monadkit.monadlib import (ExtensionData, LocallyFree, ReflexivePoint, TorsionFreeLine, Unsolvable,
                               ValidationFailed, ZeroForm, build_modified_monad, classify_extension,
                               extract_rank4, make_ein, make_instanton, make_modified, make_null_correlation,
                               make_rank4_charge1, make_rank4_instanton, make_split_rank4, nonsplit_rank4,
                               pfaffian, printed_j, solve_symplectic, verify_cert, verify_q)
from monadkit.polyring import HomogPoly


def test_null_correlation_forms():
    assert make_null_correlation().meta["locally_free"] is True
    nl = make_null_correlation((1, 0, 0, 0, 0, 0))
    assert nl.meta["locally_free"] is False
    assert nl.alpha.to_strings() == [["y"], ["-x"], ["0"], ["0"]]
    assert sorted(nl.meta["line"]) == ["x", "y"]
    assert pfaffian((1, 2, 3, 4, 5, 6)) == 1 * 6 - 2 * 5 + 3 * 4
    with pytest.raises(ZeroForm):
        make_null_correlation((0,) * 6)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_instantons_satisfy_vanishings(k):
    m = make_instanton(k)
    assert ladder_cohomology(m, -1)[0] == 0
    assert ladder_cohomology(m, -2)[1] == 0
    assert ladder_cohomology(m, -2)[2] == 0
    assert ladder_cohomology(m, -3)[3] == 0
    assert ladder_cohomology(m, -1)[1] == k


def test_instanton_params_are_validated():
    with pytest.raises(ValidationFailed):
        make_instanton(1, {"alpha": [["x"], ["y"], ["z"], ["w"]], "beta": [["x", "y", "z", "w"]]})
    with pytest.raises(ValidationFailed):
        make_instanton(1, {"alpha": [["x"]]})


def test_ein_params():
    assert validate_monad(make_ein(), "fiberwise").ok
    with pytest.raises(ValidationFailed):
        make_ein({"g3": "x^2"})
    with pytest.raises(ValidationFailed):
        make_ein({"f5": "x^5", "g3": "x^3", "h3": "x^3"})


def test_extension_cases_match_degeneracy():
    rng = random.Random(11)
    for _ in range(40):
        data = ExtensionData.random(rng)
        verdict = classify_extension(data)
        fib = fiberwise_full_rank(make_rank4_charge1(data).alpha, "groebner")
        assert isinstance(verdict, LocallyFree) == isinstance(fib, Everywhere)
        if isinstance(verdict, ReflexivePoint):
            assert fib.point == verdict.point


def test_three_named_cases():
    assert isinstance(classify_extension(ExtensionData(v3=(1, 0), v4=(0, 1))), LocallyFree)
    assert classify_extension(ExtensionData(v3=(3, 6), v4=(1, 2))) == ReflexivePoint((0, 0, 1, -3))
    assert isinstance(classify_extension(ExtensionData()), TorsionFreeLine)
    assert classify_extension(ExtensionData(v3=(1, 1))) == ReflexivePoint((0, 0, 0, 1))


@pytest.mark.parametrize("factory", [make_split_rank4, nonsplit_rank4])
def test_symplectic_solver(factory):
    m = factory()
    cert = solve_symplectic(m, seed=3)
    assert verify_cert(m, cert).ok
    assert solve_symplectic(m, seed=3).q == cert.q


def test_symplectic_failures(corpus):
    with pytest.raises(ShapeError):
        solve_symplectic(corpus["ein"])
    # a degenerate form admits no invertible skew q
    with pytest.raises(Unsolvable):
        solve_symplectic(corpus["nullcorr_line"], attempts=5)


def test_printed_matrix_verdict():
    m = nonsplit_rank4()
    v = verify_q(m, printed_j())
    assert v["skew"] and v["invertible"] and not v["valid"]
    # flipping the sign of the x,y block repairs it
    J = printed_j().to_dense()
    fixed = [[-J[i][j] if i < 2 and j < 2 else J[i][j] for j in range(6)] for i in range(6)]
    assert verify_q(m, RationalMatrix.from_dense(fixed))["valid"]


def test_modified_round_trip():
    m = make_modified(2, 1, seed=0)
    assert list(m.A) == [-2, -1] and list(m.C) == [1, 2]
    assert validate_monad(m, "fiberwise").ok
    inner = extract_rank4(m)
    assert inner.shape() == make_rank4_instanton(1).shape()


def test_section_outside_kernel_is_rejected():
    inst = make_rank4_instanton(1)
    cert = solve_symplectic(inst)
    s = [HomogPoly.zero(2)] * 5 + [HomogPoly.var(0) ** 2]
    with pytest.raises(ValueError):
        build_modified_monad(inst, cert, s, 2)
