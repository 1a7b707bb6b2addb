"""Exact linear algebra over the rationals and over prime fields.

Matrices are stored as sparse triplets with :class:`fractions.Fraction`
values.  Ranks are computed either exactly (fraction-free elimination) or
modulo a few random primes close to 2**61.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

log = logging.getLogger(__name__)

DENSE_CUTOFF = 64
HYBRID_THRESHOLD = 500
DEFAULT_PRIMES = 3


class WellDefinednessError(ValueError):
    """A map does not descend to the requested subquotients."""


class RationalMatrix:
    """Sparse rows x cols matrix with exact rational entries.

    Instances are treated as immutable: no public method mutates them.
    """

    __slots__ = ("rows", "cols", "_entries", "_row_cache")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        self.rows = rows
        self.cols = cols
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            v = v if isinstance(v, Fraction) else Fraction(v)
            if v:
                clean[(i, j)] = v
        self._entries = clean
        self._row_cache = None

    @classmethod
    def _trusted(cls, rows, cols, entries):
        # entries already Fractions and nonzero
        m = cls.__new__(cls)
        m.rows, m.cols, m._entries, m._row_cache = rows, cols, entries, None
        return m

    # construction -----------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls._trusted(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]], cols: int | None = None) -> "RationalMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        ent = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                if v:
                    ent[(i, j)] = v
        return cls(rows, cols, ent)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, object]], rows: int) -> "RationalMatrix":
        ent = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    ent[(i, j)] = v
        return cls(rows, len(columns), ent)

    # access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def items(self):
        return self._entries.items()

    def triplets(self) -> list[tuple[int, int, Fraction]]:
        return sorted((i, j, v) for (i, j), v in self._entries.items())

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self._entries.get(key, Fraction(0))

    def row_dicts(self) -> list[dict[int, Fraction]]:
        if self._row_cache is None:
            rows: list[dict[int, Fraction]] = [dict() for _ in range(self.rows)]
            for (i, j), v in self._entries.items():
                rows[i][j] = v
            self._row_cache = rows
        return [dict(r) for r in self._row_cache]

    def col_dicts(self) -> list[dict[int, Fraction]]:
        cols: list[dict[int, Fraction]] = [dict() for _ in range(self.cols)]
        for (i, j), v in self._entries.items():
            cols[j][i] = v
        return cols

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return not self._entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # arithmetic -------------------------------------------------------
    def transpose(self) -> "RationalMatrix":
        return RationalMatrix._trusted(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self._entries.items():
            for j, b in right[k].items():
                key = (i, j)
                acc[key] = acc.get(key, 0) + a * b
        return RationalMatrix._trusted(self.rows, other.cols, {k: v for k, v in acc.items() if v})

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        acc = dict(self._entries)
        for k, v in other._entries.items():
            acc[k] = acc.get(k, 0) + v
        return RationalMatrix._trusted(self.rows, self.cols, {k: v for k, v in acc.items() if v})

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix._trusted(self.rows, self.cols, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        if not c:
            return RationalMatrix(self.rows, self.cols)
        return RationalMatrix._trusted(self.rows, self.cols, {k: v * c for k, v in self._entries.items()})

    def apply(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Multiply by a sparse column vector given as ``{index: value}``."""
        cols = self._col_index()
        out: dict[int, Fraction] = {}
        for j, x in vec.items():
            for i, a in cols.get(j, ()):
                out[i] = out.get(i, 0) + a * x
        return {i: v for i, v in out.items() if v}

    def _col_index(self):
        idx: dict[int, list[tuple[int, Fraction]]] = {}
        for (i, j), v in self._entries.items():
            idx.setdefault(j, []).append((i, v))
        return idx

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        rpos = {r: a for a, r in enumerate(rows)}
        cpos = {c: b for b, c in enumerate(cols)}
        ent = {}
        for (i, j), v in self._entries.items():
            if i in rpos and j in cpos:
                ent[(rpos[i], cpos[j])] = v
        return RationalMatrix._trusted(len(rows), len(cols), ent)

    def columns(self, cols: Sequence[int]) -> "RationalMatrix":
        return self.submatrix(range(self.rows), cols)


def hstack(mats: Sequence[RationalMatrix], rows: int | None = None) -> RationalMatrix:
    if not mats:
        return RationalMatrix(rows or 0, 0)
    r = mats[0].rows
    if any(m.rows != r for m in mats):
        raise ValueError("hstack row mismatch")
    ent, off = {}, 0
    for m in mats:
        for (i, j), v in m.items():
            ent[(i, j + off)] = v
        off += m.cols
    return RationalMatrix._trusted(r, off, ent)


def vstack(mats: Sequence[RationalMatrix], cols: int | None = None) -> RationalMatrix:
    if not mats:
        return RationalMatrix(0, cols or 0)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise ValueError("vstack column mismatch")
    ent, off = {}, 0
    for m in mats:
        for (i, j), v in m.items():
            ent[(i + off, j)] = v
        off += m.rows
    return RationalMatrix._trusted(off, c, ent)


def block_matrix(blocks: Sequence[Sequence[RationalMatrix | None]], row_sizes: Sequence[int],
                 col_sizes: Sequence[int]) -> RationalMatrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    ent = {}
    for a, brow in enumerate(blocks):
        for b, blk in enumerate(brow):
            if blk is None:
                continue
            if blk.shape != (row_sizes[a], col_sizes[b]):
                raise ValueError(f"block ({a},{b}) has shape {blk.shape}, expected {(row_sizes[a], col_sizes[b])}")
            for (i, j), v in blk.items():
                ent[(i + roff[a], j + coff[b])] = v
    return RationalMatrix._trusted(roff[-1], coff[-1], ent)


# ----------------------------------------------------------------------
# rank


def _integer_rows(m: RationalMatrix) -> list[dict[int, int]]:
    """Rows scaled by the lcm of their denominators (rank preserving)."""
    out = []
    for row in m.row_dicts():
        if not row:
            continue
        den = 1
        for v in row.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        out.append({j: int(v * den) for j, v in row.items()})
    return out


def _bareiss_rank(rows: list[list[int]], ncols: int) -> int:
    a = [list(r) for r in rows]
    nrows = len(a)
    rank, prev = 0, 1
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        for r in range(rank + 1, nrows):
            arc = a[r][c]
            row_r, row_p = a[r], a[rank]
            for k in range(c + 1, ncols):
                row_r[k] = (p * row_r[k] - arc * row_p[k]) // prev
            row_r[c] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _sparse_echelon(rows: Iterable[dict[int, int]], modulus: int | None) -> int:
    """Rank by incremental sparse elimination on leading columns.

    With ``modulus`` the arithmetic is over GF(p); otherwise rows are kept
    integral and primitive (fraction-free).  A pivot row is keyed by its
    smallest column, so each reduction step strictly raises the leading
    column of the row being reduced.
    """
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        if modulus:
            row = {j: v % modulus for j, v in row.items() if v % modulus}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                if modulus:
                    inv = pow(row[c], -1, modulus)
                    row = {j: v * inv % modulus for j, v in row.items()}
                pivots[c] = row
                break
            f = row[c]
            if modulus:
                for j, v in prow.items():
                    nv = (row.get(j, 0) - f * v) % modulus
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
            else:
                pv = prow[c]
                g = math.gcd(pv, f)
                mr, mp = pv // g, f // g
                if mr != 1:
                    row = {j: v * mr for j, v in row.items()}
                for j, v in prow.items():
                    nv = row.get(j, 0) - mp * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
                row = _primitive(row)
    return len(pivots)


def exact_rank(m: RationalMatrix) -> int:
    if m.is_zero():
        return 0
    rows = _integer_rows(m)
    if m.rows <= DENSE_CUTOFF and m.cols <= DENSE_CUTOFF:
        dense = []
        for r in rows:
            d = [0] * m.cols
            for j, v in r.items():
                d[j] = v
            dense.append(d)
        return _bareiss_rank(dense, m.cols)
    return _sparse_echelon((_primitive(r) for r in rows), None)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=64)
def random_primes(k: int, seed: int = 0, bits: int = 61) -> tuple[int, ...]:
    """``k`` distinct primes just below ``2**bits``, chosen by a seeded RNG."""
    rng = random.Random(seed)
    found: list[int] = []
    while len(found) < k:
        n = (1 << bits) - rng.randrange(1, 1 << (bits - 8))
        n |= 1
        while not _is_probable_prime(n):
            n -= 2
        if n not in found:
            found.append(n)
    return tuple(found)


def modular_rank(m: RationalMatrix, p: int) -> int:
    """Rank over GF(p); ``p`` must not divide any denominator."""
    rows = []
    for row in m.row_dicts():
        if not row:
            continue
        r = {}
        for j, v in row.items():
            if v.denominator % p == 0:
                raise ZeroDivisionError(f"prime {p} divides a denominator")
            x = v.numerator * pow(v.denominator, -1, p) % p
            if x:
                r[j] = x
        if r:
            rows.append(r)
    return _sparse_echelon(rows, p)


def rank(m: RationalMatrix, strategy: str = "hybrid", primes: int = DEFAULT_PRIMES, seed: int = 0,
         threshold: int = HYBRID_THRESHOLD, certify: bool = False) -> int:
    """Rank of ``m``.

    ``exact`` runs fraction-free elimination.  ``modular`` takes the maximum
    rank over ``primes`` random primes near 2**61 and falls back to the exact
    rank when the primes disagree.  ``hybrid`` is exact up to ``threshold``
    rows/columns and modular above it, unless ``certify`` is set.
    """
    if m.is_zero():
        return 0
    if strategy == "hybrid":
        strategy = "exact" if certify or max(m.rows, m.cols) <= threshold else "modular"
    if strategy == "exact":
        return exact_rank(m)
    if strategy != "modular":
        raise ValueError(f"unknown rank strategy {strategy!r}")
    ranks = []
    for p in random_primes(primes, seed):
        try:
            ranks.append(modular_rank(m, p))
        except ZeroDivisionError:
            continue
    if not ranks or len(set(ranks)) > 1:
        log.info("modular ranks disagree (%s); recomputing exactly", ranks)
        return exact_rank(m)
    return ranks[0]


# ----------------------------------------------------------------------
# row reduction, kernels, solving


def rref(m: RationalMatrix) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Reduced row echelon form as sparse rows plus the pivot columns."""
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in m.row_dicts():
        for c in sorted(set(row) & pivots.keys()):
            if c in row:
                f = row[c]
                for j, v in pivots[c].items():
                    nv = row.get(j, 0) - f * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
        # pivot rows vanish on each other's pivot columns, so one pass suffices
        if not row:
            continue
        c = min(row)
        inv = 1 / row[c]
        row = {j: v * inv for j, v in row.items()}
        for prow in pivots.values():
            f = prow.get(c)
            if f:
                for j, v in row.items():
                    nv = prow.get(j, 0) - f * v
                    if nv:
                        prow[j] = nv
                    else:
                        prow.pop(j, None)
        pivots[c] = row
    cols = sorted(pivots)
    return [pivots[c] for c in cols], cols


def kernel_basis(m: RationalMatrix) -> RationalMatrix:
    """Columns form a basis of the right kernel of ``m``."""
    rows, piv = rref(m)
    pivset = set(piv)
    free = [j for j in range(m.cols) if j not in pivset]
    cols = []
    for f in free:
        vec = {f: Fraction(1)}
        for prow, pc in zip(rows, piv):
            v = prow.get(f)
            if v:
                vec[pc] = -v
        cols.append(vec)
    return RationalMatrix.from_columns(cols, m.cols)


def column_space_basis(m: RationalMatrix) -> RationalMatrix:
    """A subset of the columns of ``m`` forming a basis of its column space."""
    _, piv = rref(m)
    return m.columns(piv)


def solve(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix | None:
    """Some ``x`` with ``a @ x == b``, or ``None`` if inconsistent."""
    aug = hstack([a, b])
    rows, piv = rref(aug)
    n = a.cols
    if any(c >= n for c in piv):
        return None
    ent = {}
    for prow, pc in zip(rows, piv):
        for j, v in prow.items():
            if j >= n:
                ent[(pc, j - n)] = v
    return RationalMatrix(n, b.cols, ent)


def determinant(m: RationalMatrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    a = m.to_dense()
    n = m.rows
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        p = a[c][c]
        det *= p
        for r in range(c + 1, n):
            f = a[r][c] / p
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


# ----------------------------------------------------------------------
# subquotients


@dataclass(frozen=True)
class Subquotient:
    """The space S/D inside a coordinate space of dimension ``ambient_dim``.

    ``sub_basis`` columns span S and ``denom_basis`` columns span D, with
    D contained in S.
    """

    ambient_dim: int
    sub_basis: RationalMatrix
    denom_basis: RationalMatrix

    def __post_init__(self):
        if self.sub_basis.rows != self.ambient_dim or self.denom_basis.rows != self.ambient_dim:
            raise ValueError("basis matrices must live in the ambient space")

    @classmethod
    def whole(cls, n: int) -> "Subquotient":
        return cls(n, RationalMatrix.identity(n), RationalMatrix(n, 0))

    @classmethod
    def quotient(cls, n: int, denom: RationalMatrix) -> "Subquotient":
        return cls(n, RationalMatrix.identity(n), denom)

    @classmethod
    def subspace(cls, sub: RationalMatrix) -> "Subquotient":
        return cls(sub.rows, sub, RationalMatrix(sub.rows, 0))

    @property
    def dim(self) -> int:
        return exact_rank(self.sub_basis) - exact_rank(self.denom_basis)

    def is_consistent(self) -> bool:
        return exact_rank(hstack([self.sub_basis, self.denom_basis])) == exact_rank(self.sub_basis)

    def _bases(self) -> tuple[RationalMatrix, RationalMatrix]:
        """(complement basis Q, denominator basis D') with S = span(Q) + span(D')."""
        d = column_space_basis(self.denom_basis) if self.denom_basis.cols else self.denom_basis
        both = hstack([d, self.sub_basis])
        _, piv = rref(both)
        comp = [c - d.cols for c in piv if c >= d.cols]
        return self.sub_basis.columns(comp), d

    def quotient_basis(self) -> RationalMatrix:
        """Ambient vectors whose classes form the chosen basis of S/D."""
        return self._bases()[0]

    def coordinates(self, vectors: RationalMatrix) -> RationalMatrix:
        """Coordinates in the quotient basis of vectors lying in S."""
        q, d = self._bases()
        sol = solve(hstack([q, d]), vectors)
        if sol is None:
            raise WellDefinednessError("vector does not lie in the subspace")
        return sol.submatrix(range(q.cols), range(vectors.cols))


def induced_map(f: RationalMatrix, src: Subquotient, dst: Subquotient) -> RationalMatrix:
    """Matrix of the map S_src/D_src -> S_dst/D_dst induced by ``f``."""
    if f.cols != src.ambient_dim or f.rows != dst.ambient_dim:
        raise ValueError("map does not match the ambient spaces")
    dq, dd = dst._bases()
    if src.denom_basis.cols:
        if solve(dd, f @ src.denom_basis) is None:
            raise WellDefinednessError("f(D_src) is not contained in D_dst")
    sq, _ = src._bases()
    image = f @ sq
    sol = solve(hstack([dq, dd]), image)
    if sol is None:
        raise WellDefinednessError("f(S_src) is not contained in S_dst")
    return sol.submatrix(range(dq.cols), range(sq.cols))
