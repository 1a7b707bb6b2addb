"""Where does a graded matrix drop rank?

Three methods decide whether a matrix has maximal rank at every point of P^3:

* ``linear_exact``: vectors of linear forms; their common zeros form the
  kernel of the coefficient array.
* ``sample``: evaluate at random points over a 31-bit prime field.  Loci of
  codimension two or more are almost never hit, so a clean sample is only
  evidence for hypersurface-type degeneracy.
* ``groebner``: the ideal of maximal minors has empty projective locus iff its
  Gröbner basis has a pure power of each variable among its leading terms.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .exactla import RationalMatrix, kernel_basis
from .graded import GradedMatrix
from .groebner import from_homog, groebner_basis, has_pure_powers, leading
from .polyring import HomogPoly

SAMPLE_PRIME = 2**31 - 1
SAMPLE_POINTS = 100
MINOR_CAP = 20000


class ModeUnsupported(ValueError):
    pass


@dataclass(frozen=True)
class Everywhere:
    def __str__(self) -> str:
        return "full rank everywhere"


@dataclass(frozen=True)
class ProbablyEverywhere:
    confidence: float
    points: int

    def __str__(self) -> str:
        return f"full rank at {self.points} random points"


@dataclass(frozen=True)
class Witness:
    point: tuple | None
    note: str = ""

    def __str__(self) -> str:
        if self.point is None:
            return f"rank drops somewhere ({self.note})" if self.note else "rank drops somewhere"
        return "rank drops at [" + ":".join(str(c) for c in self.point) + "]"


@dataclass(frozen=True)
class IdealBasis:
    gens: tuple[HomogPoly, ...]

    def __init__(self, gens: Sequence[HomogPoly]):
        object.__setattr__(self, "gens", tuple(gens))


def normalize_point(v: Sequence) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    v = [Fraction(c) for c in v]
    lead = next(c for c in v if c)
    return tuple(c / lead for c in v)


def coefficient_array(entries: Sequence[HomogPoly]) -> RationalMatrix:
    """Rows = linear forms, columns = x, y, z, w."""
    ent = {}
    for i, f in enumerate(entries):
        if f.is_zero():
            continue
        if f.degree != 1:
            raise ModeUnsupported("linear_exact needs linear entries")
        for m, c in f.items():
            ent[(i, m.index(1))] = c
    return RationalMatrix(len(entries), 4, ent)


def _linear_exact(m: GradedMatrix):
    if not m.is_linear():
        raise ModeUnsupported("linear_exact needs linear entries")
    rows, cols = m.shape
    if cols == 1:
        forms = [m[i, 0] for i in range(rows)]
    elif rows == 1:
        forms = [m[0, j] for j in range(cols)]
    else:
        raise ModeUnsupported("linear_exact handles a single row or column; use groebner")
    K = kernel_basis(coefficient_array(forms))
    if K.cols == 0:
        return Everywhere()
    return Witness(normalize_point([K[i, 0] for i in range(4)]))


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    a = [r[:] for r in rows]
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] % p), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        for i in range(r + 1, len(a)):
            f = a[i][c] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


def _sample(m: GradedMatrix, n: int, p: int, seed: int):
    rng = random.Random(seed)
    target = min(m.shape)
    for _ in range(n):
        pt = [0, 0, 0, 0]
        while not any(pt):
            pt = [rng.randrange(p) for _ in range(4)]
        vals = m.evaluate(pt, p)
        if _rank_mod_p(vals, p) < target:
            return Witness(tuple(pt), f"over GF({p})")
    deg = max(1, m.max_degree()) * target
    conf = 1 - (deg / p) ** n if n else 0.0
    return ProbablyEverywhere(conf, n)


def maximal_minors(m: GradedMatrix) -> list[HomogPoly]:
    """All maximal minors, by Laplace expansion with memoization."""
    rows, cols = m.shape
    tall = rows >= cols
    k = cols if tall else rows
    n = rows if tall else cols
    if comb(n, k) > MINOR_CAP:
        raise ModeUnsupported(f"{comb(n, k)} minors exceed the cap of {MINOR_CAP}; use sampling")

    def entry(r, c):
        return m[r, c] if tall else m[c, r]

    memo: dict[tuple, HomogPoly | None] = {}

    def det(sel: tuple[int, ...]) -> HomogPoly | None:
        # determinant of the lines ``sel`` against the first len(sel) columns
        if sel in memo:
            return memo[sel]
        j = len(sel) - 1
        acc = None
        for pos, r in enumerate(sel):
            e = entry(r, j)
            if not e:
                continue
            sub = det(sel[:pos] + sel[pos + 1:]) if j else HomogPoly.constant(1)
            if sub is None or not sub:
                continue
            term = e * sub
            if (pos + j) % 2:
                term = -term
            acc = term if acc is None else acc + term
        memo[sel] = acc
        return acc

    out = []
    for sel in itertools.combinations(range(n), k):
        d = det(sel)
        if d is not None and d:
            out.append(d)
    return out


def projective_empty(I: IdealBasis | Sequence[HomogPoly]) -> bool:
    gens = I.gens if isinstance(I, IdealBasis) else tuple(I)
    polys = [from_homog(g) for g in gens if g]
    if not polys:
        return False
    return has_pure_powers(groebner_basis(polys))


def _rational_witness(gens: Sequence[HomogPoly], basis) -> Witness:
    """Look for a rational point of the locus inside the span cut out by linear elements."""
    lin = [g for g in basis if sum(leading(g)[0]) == 1]
    forms = [HomogPoly(1, {m: Fraction(v) for m, v in g.items()}) for g in lin]
    if forms:
        K = kernel_basis(coefficient_array(forms))
    else:
        K = RationalMatrix.identity(4)
    vecs = [[K[i, j] for i in range(4)] for j in range(K.cols)]
    candidates = list(vecs)
    for a, b in itertools.combinations(range(len(vecs)), 2):
        for s in (1, -1, 2, -2):
            candidates.append([x + s * y for x, y in zip(vecs[a], vecs[b])])
    for v in candidates:
        if any(v) and all(g.evaluate(v) == 0 for g in gens):
            return Witness(normalize_point(v))
    return Witness(None, "locus certified nonempty by Gröbner basis")


def _groebner(m: GradedMatrix):
    minors = maximal_minors(m)
    if not minors:
        return Witness(None, "all maximal minors vanish")
    basis = groebner_basis([from_homog(f) for f in minors])
    if has_pure_powers(basis):
        return Everywhere()
    return _rational_witness(minors, basis)


def fiberwise_full_rank(m: GradedMatrix, mode: str = "groebner", n: int = SAMPLE_POINTS,
                        prime: int = SAMPLE_PRIME, seed: int = 0):
    """Everywhere, Witness(point) or ProbablyEverywhere(confidence)."""
    if min(m.shape) == 0:
        return Everywhere()
    if mode == "linear_exact":
        return _linear_exact(m)
    if mode == "sample":
        return _sample(m, n, prime, seed)
    if mode == "groebner":
        return _groebner(m)
    raise ValueError(f"unknown mode {mode!r}")
