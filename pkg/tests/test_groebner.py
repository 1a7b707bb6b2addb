import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from monadkit.groebner import (from_homog, groebner_basis, has_pure_powers, is_groebner_basis, leading,
                               reduce, spoly)
from monadkit.polyring import parse_poly

GENS = sympy.symbols("x y z w")


def to_sympy(p):
    return sum((c * sympy.prod(g**e for g, e in zip(GENS, m)) for m, c in p.items()), sympy.Integer(0))


def monic_set(polys):
    out = set()
    for f in polys:
        P = sympy.Poly(f, *GENS)
        out.add(sympy.Poly(P.monic(), *GENS).as_expr())
    return out


def random_ideal(rng, n, degree):
    from monadkit.polyring import monomials
    mons = monomials(degree)
    gens = []
    for _ in range(n):
        f = {m: rng.randint(-3, 3) for m in rng.sample(mons, 3)}
        f = {m: c for m, c in f.items() if c}
        if f:
            gens.append(f)
    return gens


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 4), st.integers(1, 2))
def test_reduced_basis_matches_sympy(seed, n, degree):
    gens = random_ideal(random.Random(seed), n, degree)
    if not gens:
        return
    ours = groebner_basis(gens)
    assert is_groebner_basis(ours)
    ref = sympy.groebner([to_sympy(g) for g in gens], *GENS, order="grevlex")
    assert monic_set(to_sympy(g) for g in ours) == monic_set(ref.exprs)


def test_grevlex_leading_term():
    f = from_homog(parse_poly("x*w^2 + y^2*z + 2*y*z^2"))
    # grevlex: among degree 3 monomials, y^2*z beats x*w^2 (w exponent smaller)
    assert leading(f)[0] == (0, 2, 1, 0)


def test_spoly_reduces_to_zero_in_basis():
    f = from_homog(parse_poly("x^2 - y*z"))
    g = from_homog(parse_poly("x*y - z*w"))
    basis = groebner_basis([f, g])
    assert not reduce(spoly(f, g), basis)
    assert not reduce(f, basis) and not reduce(g, basis)


def test_pure_powers_detects_empty_locus():
    maximal = [from_homog(parse_poly(v)) for v in ("x", "y", "z", "w")]
    assert has_pure_powers(groebner_basis(maximal))
    line = [from_homog(parse_poly("x")), from_homog(parse_poly("y"))]
    assert not has_pure_powers(groebner_basis(line))
    squares = [from_homog(parse_poly(v)) for v in ("x^2 - y*z", "y^2", "z^3", "w^2 - x*y")]
    assert has_pure_powers(groebner_basis(squares))


def test_unit_ideal():
    one = {(0, 0, 0, 0): 1}
    assert has_pure_powers(groebner_basis([one, from_homog(parse_poly("x"))]))
