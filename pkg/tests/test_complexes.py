import pytest

from monadkit.complexes import (BoundedComplex, Monad, antisym_part, direct_sum, dual_monad, sym_part,
                                tensor_complex, tensor_total, validate_monad)
from monadkit.graded import GradedMatrix, ShapeError
from monadkit.monadlib import make_null_correlation


def test_monad_shape_checks():
    with pytest.raises(ShapeError):
        Monad.from_strings([-1], [0, 0], [1], [["x"]], [["x", "y"]])


def test_validation_reports(corpus):
    rep = validate_monad(corpus["nullcorr"], "fiberwise")
    assert rep.ok and len(rep.checks) == 3
    bad = Monad.from_strings([-1], [0, 0], [1], [["x"], ["y"]], [["x", "y"]])
    rep = validate_monad(bad)
    assert not rep.ok and rep.failed()[0].name.startswith("beta*alpha")
    rep = validate_monad(corpus["rank4_line"], "fiberwise")
    assert [c.passed for c in rep.checks] == [True, False, True]
    with pytest.raises(ValueError):
        validate_monad(bad, "bogus")


def test_dual_is_involutive(corpus):
    for name in ("nullcorr", "ein", "g21"):
        m = corpus[name]
        assert dual_monad(dual_monad(m)) == m


@pytest.mark.parametrize("name", ["nullcorr", "rank4_split", "ein", "g21"])
def test_tensor_squares_are_complexes(corpus, name):
    m = corpus[name]
    T = tensor_total(m, dual_monad(m))
    assert T.check_d2() == []
    assert T.degrees == [-2, -1, 0, 1, 2]
    r = m.rank
    S, L = sym_part(m), antisym_part(m)
    assert S.check_d2() == [] and L.check_d2() == []
    # the symmetric and exterior pieces split the tensor square termwise
    sq = tensor_total(m, m)
    for p in sq.degrees:
        assert S.term(p).rank + L.term(p).rank == sq.term(p).rank


def test_sym_part_term_sizes():
    m = make_null_correlation()
    S = sym_part(m)
    # graded swap: Λ²A, A⊗B, B⊗B sym part plus A⊗C, B⊗C, Λ²C
    assert S.ranks() == {-1: 4, 0: 11, 1: 4}


def test_tensor_complex_of_one_term_complexes():
    K = BoundedComplex({0: [1]})
    L = BoundedComplex({0: [2, 3]})
    T = tensor_complex(K, L)
    assert list(T.term(0)) == [3, 4]


def test_direct_sum(corpus):
    s = direct_sum([corpus["nullcorr"], corpus["nullcorr"]])
    assert s.rank == 4
    assert validate_monad(s).ok
