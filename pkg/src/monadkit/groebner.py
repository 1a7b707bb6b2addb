"""Buchberger's algorithm over Q in graded reverse lexicographic order.

Polynomials are dicts {exponent tuple: int}.  Coefficients are kept integral
and primitive, so reductions are fraction-free.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .polyring import HomogPoly

Poly = dict  # {exponents: int}


def grevlex_key(e: tuple[int, ...]) -> tuple:
    return (sum(e), tuple(-v for v in reversed(e)))


def leading(p: Poly) -> tuple[tuple[int, ...], int]:
    m = max(p, key=grevlex_key)
    return m, p[m]


def primitive(p: Poly) -> Poly:
    if not p:
        return p
    g = 0
    for v in p.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    lead_sign = 1 if leading(p)[1] > 0 else -1
    d = g * lead_sign
    if d == 1:
        return p
    return {m: v // d for m, v in p.items()}


def from_homog(f: HomogPoly) -> Poly:
    den = 1
    for _, c in f.items():
        den = den * c.denominator // math.gcd(den, c.denominator)
    return primitive({m: int(c * den) for m, c in f.items()})


def to_homog(p: Poly) -> HomogPoly:
    if not p:
        return HomogPoly.zero(0)
    d = sum(next(iter(p)))
    return HomogPoly(d, {m: Fraction(v) for m, v in p.items()})


def _divides(a, b) -> bool:
    return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2] and a[3] <= b[3]


def _lcm(a, b):
    return (max(a[0], b[0]), max(a[1], b[1]), max(a[2], b[2]), max(a[3], b[3]))


def _coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _sub_mono(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])


def _axpy(f: Poly, a: int, g: Poly, b: int, shift) -> Poly:
    """a*f - b*x^shift*g."""
    out = {m: a * v for m, v in f.items()} if a != 1 else dict(f)
    for m, v in g.items():
        mm = (m[0] + shift[0], m[1] + shift[1], m[2] + shift[2], m[3] + shift[3])
        nv = out.get(mm, 0) - b * v
        if nv:
            out[mm] = nv
        else:
            out.pop(mm, None)
    return out


def reduce(f: Poly, basis: Sequence[Poly], leads: Sequence | None = None) -> Poly:
    """Fully reduced normal form of ``f`` modulo ``basis`` (up to a unit)."""
    if leads is None:
        leads = [leading(g) for g in basis]
    f = dict(f)
    rem: Poly = {}
    while f:
        m, c = leading(f)
        for g, (lm, lc) in zip(basis, leads):
            if _divides(lm, m):
                k = math.gcd(lc, c)
                a, b = lc // k, c // k
                if a != 1:
                    rem = {t: a * v for t, v in rem.items()}
                f = _axpy(f, a, g, b, _sub_mono(m, lm))
                break
        else:
            rem[m] = c
            del f[m]
            if not f:
                break
    return primitive(rem)


def spoly(f: Poly, g: Poly) -> Poly:
    (mf, cf), (mg, cg) = leading(f), leading(g)
    l = _lcm(mf, mg)
    k = math.gcd(cf, cg)
    # (cg/k) x^(l-mf) f - (cf/k) x^(l-mg) g
    left = {}
    sf = _sub_mono(l, mf)
    for m, v in f.items():
        left[(m[0] + sf[0], m[1] + sf[1], m[2] + sf[2], m[3] + sf[3])] = v * (cg // k)
    return _axpy(left, 1, g, cf // k, _sub_mono(l, mg))


def linear_interreduce(polys: Iterable[Poly]) -> list[Poly]:
    """Basis of the span of ``polys`` degree by degree, in echelon form."""
    by_deg: dict[int, list[Poly]] = {}
    for p in polys:
        if p:
            by_deg.setdefault(sum(next(iter(p))), []).append(p)
    out = []
    for d in sorted(by_deg):
        pivots: dict = {}
        for p in by_deg[d]:
            p = dict(p)
            while p:
                m, c = leading(p)
                if m not in pivots:
                    pivots[m] = primitive(p)
                    break
                q = pivots[m]
                lc = q[m]
                k = math.gcd(lc, c)
                p = _axpy(p, lc // k, q, c // k, (0, 0, 0, 0))
        out.extend(pivots.values())
    return out


def groebner_basis(gens: Iterable[Poly], reduced: bool = True) -> list[Poly]:
    """Gröbner basis by Buchberger with Gebauer–Möller pair management."""
    G: list[Poly] = []
    leads: list = []
    pairs: list[tuple[int, int]] = []
    alive: list[bool] = []

    def add(h: Poly):
        nonlocal pairs
        h = primitive(h)
        lh = leading(h)[0]
        idx = len(G)
        G.append(h)
        leads.append(leading(h))
        alive.append(True)
        cand = [i for i in range(idx) if alive[i]]
        C = list(cand)
        D: list[int] = []
        while C:
            i = C.pop()
            li = leads[i][0]
            lij = _lcm(lh, li)
            if _coprime(lh, li) or not any(_divides(_lcm(lh, leads[j][0]), lij) for j in C + D):
                D.append(i)
        E = [(i, idx) for i in D if not _coprime(lh, leads[i][0])]
        keep = []
        for i, j in pairs:
            lij = _lcm(leads[i][0], leads[j][0])
            if (_divides(lh, lij) and _lcm(leads[i][0], lh) != lij and _lcm(lh, leads[j][0]) != lij):
                continue
            keep.append((i, j))
        pairs = keep + E
        for i in cand:
            if _divides(lh, leads[i][0]):
                alive[i] = False

    for g in linear_interreduce(gens):
        cur = [G[i] for i in range(len(G)) if alive[i]]
        r = reduce(g, cur, [leads[i] for i in range(len(G)) if alive[i]])
        if r:
            add(r)
    while pairs:
        pairs.sort(key=lambda ij: -sum(_lcm(leads[ij[0]][0], leads[ij[1]][0])))
        i, j = pairs.pop()
        s = spoly(G[i], G[j])
        if not s:
            continue
        idx = [k for k in range(len(G)) if alive[k]]
        r = reduce(s, [G[k] for k in idx], [leads[k] for k in idx])
        if r:
            add(r)
    basis = [G[k] for k in range(len(G)) if alive[k]]
    if reduced:
        basis = interreduce(basis)
    return basis


def interreduce(basis: list[Poly]) -> list[Poly]:
    """Reduced Gröbner basis from a Gröbner basis with minimal leading terms."""
    basis = sorted(basis, key=lambda p: grevlex_key(leading(p)[0]))
    out = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1:]
        r = reduce(g, others)
        if r:
            out.append(r)
    return sorted(out, key=lambda p: grevlex_key(leading(p)[0]))


def is_groebner_basis(basis: Sequence[Poly]) -> bool:
    """Every S-polynomial reduces to zero."""
    leads = [leading(g) for g in basis]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = spoly(basis[i], basis[j])
            if s and reduce(s, basis, leads):
                return False
    return True


def has_pure_powers(basis: Sequence[Poly], nvars: int = 4) -> bool:
    found = set()
    for g in basis:
        m = leading(g)[0]
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            found.add(nz[0])
        elif not nz:
            return True  # unit ideal
    return len(found) == nvars
