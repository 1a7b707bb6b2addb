import pytest

from monadkit.cech import cech_hypercohomology, cech_line_bundle, default_bound
from monadkit.complexes import BoundedComplex, dual_monad, tensor_total
from monadkit.graded import bott_h


@pytest.mark.parametrize("d", [-7, -4, -1, 0, 3])
def test_line_bundle_blocks(d):
    B = max(0, -d - 3)
    assert cech_line_bundle(d, B) == tuple(bott_h(d, i) for i in range(4))


@pytest.mark.parametrize("method", ["morse", "direct"])
def test_single_term_complexes(method):
    T = BoundedComplex({0: [0, -5]})
    r = cech_hypercohomology(T, 0, method=method, strategy="exact")
    assert r.as_list() == [1, 0, 0, 4]


def test_shifted_term_moves_degree():
    T = BoundedComplex({1: [-4]})
    assert cech_hypercohomology(T, 0).as_list(0, 4) == [0, 0, 0, 0, 1]


@pytest.mark.parametrize("name", ["nullcorr", "rank4_point", "ein"])
def test_morse_equals_direct(corpus, name):
    T = corpus[name].as_complex()
    for l in (-5, -2, 0):
        a = cech_hypercohomology(T, l, method="morse", strategy="exact")
        b = cech_hypercohomology(T, l, method="direct", strategy="exact")
        assert a == b


def test_larger_bound_does_not_change_answer(corpus):
    T = corpus["nullcorr"].as_complex()
    base = cech_hypercohomology(T, -3)
    assert base.bound == default_bound(T, -3) == 1
    assert cech_hypercohomology(T, -3, bound=3, method="direct") == base


def test_end_of_null_correlation(corpus):
    m = corpus["nullcorr"]
    r = cech_hypercohomology(tensor_total(m, dual_monad(m)), 0)
    assert r.as_list() == [1, 5, 0, 0]


def test_threads_env(monkeypatch, corpus):
    monkeypatch.setenv("MONADKIT_THREADS", "2")
    m = corpus["nullcorr"]
    r = cech_hypercohomology(tensor_total(m, dual_monad(m)), 0)
    assert r.as_list() == [1, 5, 0, 0]
