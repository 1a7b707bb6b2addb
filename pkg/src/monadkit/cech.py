"""Hypercohomology of bounded complexes of line-bundle sums via Čech cochains.

Cochains live on the four standard charts {x_i != 0}.  On the chart
intersection U_I the sections of O(d) are spanned by Laurent monomials x^e of
degree d with e_j >= 0 for j outside I.  We truncate to e_i >= -B.  A cell of
the double complex is (p, k, I, e): term index k of T^p, chart set I and a
Laurent exponent e; its total degree is p + |I| - 1.  The total differential
is D = d_T + (-1)^p δ, with δ the alternating Čech coboundary.

The truncated complex is closed under both differentials and contains every
all-negative exponent vector once B >= -d-3 for each twist d, so it has the
same cohomology as the full Čech complex.

Two evaluation methods are provided.  ``direct`` builds the sparse total
matrices.  ``morse`` (the default) contracts the double complex along the
acyclic matching

    (I, e) <-> (I ∪ {j0}, e),   j0 = min{j : e_j >= 0} not in I,

whose critical cells are ({0}, e >= 0) and ({0,1,2,3}, e <= -1), i.e. exactly
the H^0 and H^3 bases of the terms.  The reduced differential is computed by
zig-zagging along gradient paths, which only move forward in p.
"""

from __future__ import annotations

import itertools
import logging
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache

from .complexes import BoundedComplex
from .exactla import RationalMatrix, rank
from .graded import bott_h

log = logging.getLogger(__name__)

ALL = (0, 1, 2, 3)
SUBSETS = [tuple(s) for r in range(1, 5) for s in itertools.combinations(ALL, r)]


class TruncationUnstable(RuntimeError):
    """The truncated Čech complex failed its self-check after escalation."""


class CechResult(dict):
    """Mapping n -> dim ℍ^n, with the bound and rank strategy that produced it."""

    def __init__(self, dims, bound: int, strategy: str, method: str):
        super().__init__(dims)
        self.bound, self.strategy, self.method = bound, strategy, method

    def as_list(self, lo: int = 0, hi: int = 3) -> list[int]:
        return [self.get(n, 0) for n in range(lo, hi + 1)]


def default_bound(T: BoundedComplex, l: int) -> int:
    """Smallest bound that keeps every H^3 monomial: max(0, -d-3) over twists d."""
    b = 0
    for t in T.terms.values():
        for d in t:
            b = max(b, -(d + l) - 3)
    return b


@lru_cache(maxsize=None)
def laurent_exponents(d: int, I: tuple[int, ...], B: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree d with e_i >= -B on I and e_j >= 0 elsewhere."""
    lows = [(-B if i in I else 0) for i in ALL]
    shift = d - sum(lows)
    if shift < 0:
        return ()
    out = []
    for a in range(shift, -1, -1):
        for b in range(shift - a, -1, -1):
            for c in range(shift - a - b, -1, -1):
                dd = shift - a - b - c
                out.append((a + lows[0], b + lows[1], c + lows[2], dd + lows[3]))
    return tuple(out)


def _j0(e) -> int | None:
    for i in ALL:
        if e[i] >= 0:
            return i
    return None


def _cech_sign(I: tuple[int, ...], j: int) -> int:
    """Coefficient of I in δ applied to I minus j."""
    return -1 if I.index(j) % 2 else 1


# ----------------------------------------------------------------------
# self-check on single line bundles


@lru_cache(maxsize=None)
def cech_line_bundle(d: int, B: int) -> tuple[int, int, int, int]:
    """Cohomology of the truncated Čech complex of O(d), computed block by block.

    The complex splits over exponent vectors e; each block is the cochain
    complex of the chart sets containing the negative support of e.
    """
    per_e: dict[tuple, set] = defaultdict(set)
    for I in SUBSETS:
        for e in laurent_exponents(d, I, B):
            per_e[e].add(I)
    h = [0, 0, 0, 0]
    for e, sets in per_e.items():
        by_q: dict[int, list] = defaultdict(list)
        for I in sorted(sets):
            by_q[len(I) - 1].append(I)
        ranks = {}
        for q in range(3):
            src, dst = by_q.get(q, []), by_q.get(q + 1, [])
            if not src or not dst:
                ranks[q] = 0
                continue
            di = {I: r for r, I in enumerate(dst)}
            ent = {}
            for c, I in enumerate(src):
                for j in ALL:
                    if j in I:
                        continue
                    J = tuple(sorted(I + (j,)))
                    if J in di:
                        ent[(di[J], c)] = _cech_sign(J, j)
            ranks[q] = rank(RationalMatrix(len(dst), len(src), ent), "exact")
        for q in range(4):
            n = len(by_q.get(q, []))
            h[q] += n - ranks.get(q, 0) - ranks.get(q - 1, 0)
    return tuple(h)


def _self_check(T: BoundedComplex, l: int, B: int) -> bool:
    for t in T.terms.values():
        for d in set(t):
            want = tuple(bott_h(d + l, i) for i in range(4))
            if cech_line_bundle(d + l, B) != want:
                return False
    return True


# ----------------------------------------------------------------------
# engines


def _horizontal(T: BoundedComplex, p: int, k: int, e, coeff, out: dict):
    """Add coeff * d_T(x^e in slot k of T^p) into ``out`` keyed by (k', e')."""
    d = T.diffs.get(p)
    if d is None:
        return
    for k2 in range(d.dst.rank):
        poly = d.entries[k2][k]
        if not poly:
            continue
        for f, c in poly.items():
            e2 = (e[0] + f[0], e[1] + f[1], e[2] + f[2], e[3] + f[3])
            key = (k2, e2)
            v = out.get(key, 0) + coeff * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)


def _critical_cells(T: BoundedComplex, l: int, B: int) -> dict[int, list[tuple]]:
    """Critical cells by total degree: (p, k, I, e)."""
    crit: dict[int, list] = defaultdict(list)
    for p in T.degrees:
        for k, t in enumerate(T.term(p)):
            d = t + l
            for e in laurent_exponents(d, (0,), 0):
                crit[p].append((p, k, (0,), e))
            for e in laurent_exponents(d, ALL, B):
                if max(e) < 0:
                    crit[p + 3].append((p, k, ALL, e))
    return crit


def _morse_column(T: BoundedComplex, cell, crit_index: dict) -> dict[int, Fraction]:
    """Reduced differential of a critical cell, as {row index: value}."""
    p, k, I, e = cell
    pmax = max(T.degrees)
    # pending[p] maps (k, I, e) -> coefficient of live cells at complex degree p
    pending: dict[int, dict] = defaultdict(dict)
    layer: dict = {}
    _horizontal(T, p, k, e, Fraction(1), layer)
    for (k2, e2), c in layer.items():
        pending[p + 1][(k2, I, e2)] = c
    # Čech cofaces of a critical cell are either absent (I = ALL) or pair with
    # cells {i}, e >= 0, whose horizontal images are matched upward: no effect.
    out: dict[int, Fraction] = {}
    for q in range(p + 1, pmax + 1):
        cur = pending.pop(q, None)
        if not cur:
            continue
        for (k2, J, e2), c in cur.items():
            key = (q, k2, J, e2)
            if key in crit_index:
                out[crit_index[key]] = out.get(crit_index[key], 0) + c
                continue
            j0 = _j0(e2)
            if j0 is None or j0 not in J:
                continue  # matched upward (or critical elsewhere): projected away
            # x = (q, k2, J, e2) is matched with u = J minus j0
            U = tuple(i for i in J if i != j0)
            s = _cech_sign(J, j0) * (-1 if q % 2 else 1)
            coef = c / s
            layer = {}
            _horizontal(T, q, k2, e2, -coef, layer)
            nxt = pending[q + 1]
            for (k3, e3), v in layer.items():
                key3 = (k3, U, e3)
                nv = nxt.get(key3, 0) + v
                if nv:
                    nxt[key3] = nv
                else:
                    nxt.pop(key3, None)
    return {r: v for r, v in out.items() if v}


def _morse_matrices(T: BoundedComplex, l: int, B: int):
    crit = _critical_cells(T, l, B)
    mats = {}
    for n, cells in crit.items():
        tgt = crit.get(n + 1)
        if not tgt:
            continue
        flat = {c: i for i, c in enumerate(tgt)}
        ent = {}
        for j, c in enumerate(cells):
            for r, v in _morse_column(T, c, flat).items():
                ent[(r, j)] = v
        mats[n] = RationalMatrix(len(tgt), len(cells), ent)
    return {n: len(c) for n, c in crit.items()}, mats


def _direct_matrices(T: BoundedComplex, l: int, B: int):
    cells: dict[int, list] = defaultdict(list)
    for p in T.degrees:
        for k, t in enumerate(T.term(p)):
            for I in SUBSETS:
                for e in laurent_exponents(t + l, I, B):
                    cells[p + len(I) - 1].append((p, k, I, e))
    index = {n: {c: i for i, c in enumerate(cs)} for n, cs in cells.items()}
    mats = {}
    for n, cs in cells.items():
        tgt = index.get(n + 1)
        if not tgt:
            continue
        ent: dict = {}
        for col, (p, k, I, e) in enumerate(cs):
            sgn = -1 if p % 2 else 1
            for j in ALL:
                if j in I:
                    continue
                J = tuple(sorted(I + (j,)))
                r = tgt.get((p, k, J, e))
                if r is not None:
                    ent[(r, col)] = ent.get((r, col), 0) + sgn * _cech_sign(J, j)
            layer: dict = {}
            _horizontal(T, p, k, e, Fraction(1), layer)
            for (k2, e2), v in layer.items():
                r = tgt.get((p + 1, k2, I, e2))
                if r is not None:
                    ent[(r, col)] = ent.get((r, col), 0) + v
        mats[n] = RationalMatrix(len(tgt), len(cs), {key: v for key, v in ent.items() if v})
    return {n: len(c) for n, c in cells.items()}, mats


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MONADKIT_THREADS", "1")))
    except ValueError:
        return 1


def _rank_job(args):
    m, strategy, seed = args
    return rank(m, strategy, seed=seed)


def cech_hypercohomology(T: BoundedComplex, l: int = 0, bound: int | None = None, method: str = "morse",
                         strategy: str = "modular", seed: int = 0) -> CechResult:
    """Dimensions of ℍ^n(T(l)), keyed by n (zero entries omitted)."""
    if method not in ("morse", "direct"):
        raise ValueError(f"unknown method {method!r}")
    B = default_bound(T, l) if bound is None else bound
    for attempt in range(3):
        if _self_check(T, l, B):
            break
        if attempt == 2:
            raise TruncationUnstable(f"self-check failed at bound {B}")
        B = max(1, 2 * B)
        log.warning("truncation self-check failed; escalating bound to %d", B)
    log.info("cech: twist %d, bound %d, method %s, ranks %s", l, B, method, strategy)
    builder = _morse_matrices if method == "morse" else _direct_matrices
    sizes, mats = builder(T, l, B)
    jobs = sorted(mats)
    nthreads = _threads()
    if nthreads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(nthreads) as ex:
            ranks = dict(zip(jobs, ex.map(_rank_job, [(mats[n], strategy, seed) for n in jobs])))
    else:
        ranks = {n: rank(mats[n], strategy, seed=seed) for n in jobs}
    dims = {}
    for n, size in sizes.items():
        h = size - ranks.get(n, 0) - ranks.get(n - 1, 0)
        if h:
            dims[n] = h
    return CechResult(dims, B, strategy, method)
