from fractions import Fraction

import pytest

from monadkit.degeneracy import (Everywhere, ModeUnsupported, ProbablyEverywhere, Witness, fiberwise_full_rank,
                                 maximal_minors, normalize_point, projective_empty)
from monadkit.graded import GradedMatrix
from monadkit.polyring import parse_poly


def col(*forms, src=-1):
    return GradedMatrix.from_strings([src], [0] * len(forms), [[f] for f in forms])


def test_linear_vector_modes_agree():
    good = col("x", "y", "z", "w")
    bad = col("y", "-x", "0", "0")
    for mode in ("linear_exact", "groebner"):
        assert isinstance(fiberwise_full_rank(good, mode), Everywhere)
        w = fiberwise_full_rank(bad, mode)
        assert isinstance(w, Witness)
        assert w.point[0] == 0 and w.point[1] == 0
    assert isinstance(fiberwise_full_rank(good, "sample", n=20), ProbablyEverywhere)


def test_sampling_finds_hypersurface_loci():
    # det = x*w - y*z vanishes on a quadric, hit with probability about 1/p per point
    m = GradedMatrix.from_strings([-1, -1], [0, 0], [["x", "y"], ["z", "w"]])
    w = fiberwise_full_rank(m, "sample", n=2000, prime=101)
    assert isinstance(w, Witness)
    x, y, z, ww = w.point
    assert (x * ww - y * z) % 101 == 0


def test_linear_exact_refuses_matrices():
    m = GradedMatrix.from_strings([-1, -1], [0, 0, 0], [["x", "y"], ["y", "z"], ["z", "w"]])
    with pytest.raises(ModeUnsupported):
        fiberwise_full_rank(m, "linear_exact")


def test_twisted_cubic_minors():
    # the 2x2 minors of [[x,y,z],[y,z,w]] cut out the twisted cubic: nonempty
    m = GradedMatrix.from_strings([-1, -1, -1], [0, 0], [["x", "y", "z"], ["y", "z", "w"]])
    minors = maximal_minors(m)
    assert sorted(str(f) for f in minors) == sorted(["x*z - y^2", "x*w - y*z", "y*w - z^2"])
    assert not projective_empty(minors)
    w = fiberwise_full_rank(m)
    assert isinstance(w, Witness)
    assert w.point is None or all(f.evaluate(w.point) == 0 for f in minors)


def test_witness_lies_on_the_locus():
    m = col("x", "y", "z - 2*w", "0")
    w = fiberwise_full_rank(m, "groebner")
    assert w.point == (0, 0, 1, Fraction(1, 2))


def test_normalize_point():
    assert normalize_point([0, 0, 2, -4]) == (0, 0, 1, -2)
    assert projective_empty([parse_poly(v) for v in ("x^2", "y^2", "z^2", "w^2")])
