"""Monads, bounded complexes of line-bundle sums, duals and tensor products.

Sign convention for tensor products: d(u⊗v) = du⊗v + (-1)^p u⊗dv with p the
degree of u.  The swap on K⊗K is the graded one,
u⊗v -> (-1)^{|u||v|} v⊗u, so that it commutes with d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graded import GradedMatrix, LineBundleSum, ShapeError
from .polyring import HomogPoly


class BoundedComplex:
    """Finite complex ... -> T^p -> T^{p+1} -> ... of line-bundle sums."""

    def __init__(self, terms: Mapping[int, LineBundleSum], diffs: Mapping[int, GradedMatrix] | None = None):
        self.terms: dict[int, LineBundleSum] = {p: LineBundleSum(t) for p, t in terms.items() if len(t)}
        self.diffs: dict[int, GradedMatrix] = {}
        for p, d in (diffs or {}).items():
            if d.src != self.term(p) or d.dst != self.term(p + 1):
                raise ShapeError(f"differential in degree {p} does not match the terms")
            if d.src.rank and d.dst.rank:
                self.diffs[p] = d

    def term(self, p: int) -> LineBundleSum:
        return self.terms.get(p, LineBundleSum(()))

    def diff(self, p: int) -> GradedMatrix:
        d = self.diffs.get(p)
        return d if d is not None else GradedMatrix.zero(self.term(p), self.term(p + 1))

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def ranks(self) -> dict[int, int]:
        return {p: t.rank for p, t in sorted(self.terms.items())}

    def check_d2(self) -> list[int]:
        """Degrees p where d^{p+1} ∘ d^p fails to vanish."""
        bad = []
        for p in self.degrees:
            if p in self.diffs and p + 1 in self.diffs:
                if not (self.diffs[p + 1] @ self.diffs[p]).is_zero():
                    bad.append(p)
        return bad

    def max_entry_degree(self) -> int:
        return max((d.max_degree() for d in self.diffs.values()), default=0)

    def __repr__(self) -> str:
        inner = ", ".join(f"{p}: {t}" for p, t in sorted(self.terms.items()))
        return f"BoundedComplex({{{inner}}})"


class Monad:
    """A -> B -> C with beta∘alpha = 0 (checked by validate_monad, not here)."""

    def __init__(self, A, B, C, alpha: GradedMatrix, beta: GradedMatrix, meta: dict | None = None):
        self.A, self.B, self.C = (x if isinstance(x, LineBundleSum) else LineBundleSum(x) for x in (A, B, C))
        if alpha.src != self.A or alpha.dst != self.B:
            raise ShapeError("alpha must map A to B")
        if beta.src != self.B or beta.dst != self.C:
            raise ShapeError("beta must map B to C")
        self.alpha, self.beta = alpha, beta
        self.meta = dict(meta or {})

    @classmethod
    def from_strings(cls, A, B, C, alpha: Sequence[Sequence[str]], beta: Sequence[Sequence[str]],
                     meta: dict | None = None) -> "Monad":
        A, B, C = LineBundleSum(A), LineBundleSum(B), LineBundleSum(C)
        return cls(A, B, C, GradedMatrix.from_strings(A, B, alpha), GradedMatrix.from_strings(B, C, beta), meta)

    @property
    def rank(self) -> int:
        return self.B.rank - self.A.rank - self.C.rank

    def composite(self) -> GradedMatrix:
        return self.beta @ self.alpha

    def as_complex(self) -> BoundedComplex:
        return BoundedComplex({-1: self.A, 0: self.B, 1: self.C}, {-1: self.alpha, 0: self.beta})

    def shape(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return (tuple(sorted(self.A)), tuple(sorted(self.B)), tuple(sorted(self.C)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Monad):
            return NotImplemented
        return (self.A, self.B, self.C, self.alpha, self.beta) == (other.A, other.B, other.C, other.alpha, other.beta)

    def __repr__(self) -> str:
        return f"Monad({self.A} -> {self.B} -> {self.C})"


def dual_monad(m: Monad) -> Monad:
    """C^v -> B^v -> A^v with transposed maps."""
    meta = dict(m.meta)
    if "name" in meta:
        meta["name"] = f"dual of {meta['name']}"
    return Monad(m.C.dual(), m.B.dual(), m.A.dual(), m.beta.dual(), m.alpha.dual(), meta)


# ----------------------------------------------------------------------
# validation


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = [str(c) for c in self.witness]
        return out


@dataclass
class ValidationReport:
    level: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __str__(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            extra = f" ({c.detail})" if c.detail else ""
            if c.witness is not None:
                extra += " witness [" + ":".join(str(v) for v in c.witness) + "]"
            lines.append(f"{mark} {c.name}{extra}")
        return "\n".join(lines)


def _auto_mode(g: GradedMatrix) -> str:
    if g.is_linear() and min(g.shape) == 1:
        return "linear_exact"
    return "groebner"


def validate_monad(m: Monad, level: str = "algebraic", mode: str | None = None) -> ValidationReport:
    """Check beta∘alpha = 0 and, at the fiberwise level, the rank conditions.

    ``mode`` selects the degeneracy method (linear_exact, sample, groebner);
    by default linear maps use linear_exact and others use groebner.
    """
    if level not in ("algebraic", "fiberwise"):
        raise ValueError(f"unknown validation level {level!r}")
    rep = ValidationReport(level)
    comp = m.composite()
    bad = [(i, j) for i in range(comp.dst.rank) for j in range(comp.src.rank) if comp[i, j]]
    if bad:
        i, j = bad[0]
        rep.checks.append(Check("beta*alpha = 0", False, f"entry ({i},{j}) is {comp[i, j]}"))
    else:
        rep.checks.append(Check("beta*alpha = 0", True))
    if level == "fiberwise":
        from .degeneracy import Witness, fiberwise_full_rank
        for name, g in (("alpha injective on fibers", m.alpha), ("beta surjective on fibers", m.beta)):
            if min(g.shape) == 0:
                rep.checks.append(Check(name, True, "trivial"))
                continue
            md = mode or _auto_mode(g)
            if md == "linear_exact" and _auto_mode(g) != "linear_exact":
                md = "groebner"
            res = fiberwise_full_rank(g, md)
            if isinstance(res, Witness):
                rep.checks.append(Check(name, False, f"rank drops ({md})", res.point))
            else:
                rep.checks.append(Check(name, True, f"{res} ({md})"))
    return rep


# ----------------------------------------------------------------------
# tensor products


def _pair_twists(ta: LineBundleSum, tb: LineBundleSum) -> list[int]:
    return [a + b for a in ta for b in tb]


def tensor_complex(K: BoundedComplex, L: BoundedComplex) -> BoundedComplex:
    """Total complex of K ⊗ L.

    The degree-p term lists the blocks K^i ⊗ L^{p-i} by increasing i; inside
    a block the index of (a, b) is a * rank(L^j) + b.
    """
    kdeg, ldeg = K.degrees, L.degrees
    if not kdeg or not ldeg:
        return BoundedComplex({})
    lo, hi = kdeg[0] + ldeg[0], kdeg[-1] + ldeg[-1]
    layout: dict[int, list[tuple[int, int, int]]] = {}  # p -> [(i, j, offset)]
    terms: dict[int, LineBundleSum] = {}
    for p in range(lo, hi + 1):
        tw: list[int] = []
        blocks = []
        for i in kdeg:
            j = p - i
            if j not in L.terms:
                continue
            blocks.append((i, j, len(tw)))
            tw.extend(_pair_twists(K.term(i), L.term(j)))
        if tw:
            layout[p] = blocks
            terms[p] = LineBundleSum(tw)
    diffs = {}
    for p in terms:
        if p + 1 not in terms:
            continue
        src, dst = terms[p], terms[p + 1]
        rows = [[None] * src.rank for _ in range(dst.rank)]
        tgt = {(i, j): off for i, j, off in layout[p + 1]}
        for i, j, off in layout[p]:
            ki, lj = K.term(i).rank, L.term(j).rank
            if (i + 1, j) in tgt and i in K.diffs:
                dk, toff, lj2 = K.diffs[i], tgt[(i + 1, j)], lj
                for a2 in range(K.term(i + 1).rank):
                    for a in range(ki):
                        e = dk[a2, a]
                        if e:
                            for b in range(lj):
                                rows[toff + a2 * lj2 + b][off + a * lj + b] = e
            if (i, j + 1) in tgt and j in L.diffs:
                dl, toff = L.diffs[j], tgt[(i, j + 1)]
                lj2 = L.term(j + 1).rank
                sign = -1 if i % 2 else 1
                for a in range(ki):
                    for b2 in range(lj2):
                        for b in range(lj):
                            e = dl[b2, b]
                            if e:
                                rows[toff + a * lj2 + b2][off + a * lj + b] = e if sign > 0 else -e
        full = [[rows[r][c] if rows[r][c] is not None else HomogPoly.zero(dst[r] - src[c])
                 for c in range(src.rank)] for r in range(dst.rank)]
        diffs[p] = GradedMatrix(src, dst, full)
    return BoundedComplex(terms, diffs)


def tensor_total(M: Monad, N: Monad) -> BoundedComplex:
    """Total complex of M ⊗ N in degrees -2..2."""
    return tensor_complex(M.as_complex(), N.as_complex())


def _symmetric_piece(K: BoundedComplex, sign: int) -> BoundedComplex:
    """Image of (1 + sign·τ)/2 on K ⊗ K, τ the graded swap.

    A basis vector indexed by (i, a, j, b) with (i, a) < (j, b) is
    e_{a⊗b} + sign·(-1)^{ij} e_{b⊗a}; diagonal vectors e_{a⊗a} appear when
    they are fixed by sign·τ.  Coordinates are read off at e_{a⊗b}.
    """
    T = tensor_complex(K, K)
    kdeg = K.degrees

    def full_index(p):
        pos, off = {}, 0
        for i in kdeg:
            j = p - i
            if j not in K.terms:
                continue
            lj = K.term(j).rank
            for a in range(K.term(i).rank):
                for b in range(lj):
                    pos[(i, a, j, b)] = off + a * lj + b
            off += K.term(i).rank * lj
        return pos

    basis: dict[int, list[tuple[tuple, int | None, int]]] = {}  # p -> [(key, partner index, coef)]
    terms = {}
    for p in T.terms:
        pos = full_index(p)
        vecs = []
        for i in kdeg:
            j = p - i
            if j < i or j not in K.terms:
                continue
            s = sign * (-1 if (i * j) % 2 else 1)
            for a in range(K.term(i).rank):
                for b in range(K.term(j).rank):
                    if i == j and b < a:
                        continue
                    if i == j and a == b:
                        if s == 1:
                            vecs.append(((i, a, j, b), pos[(i, a, j, b)], None, 0))
                        continue
                    vecs.append(((i, a, j, b), pos[(i, a, j, b)], pos[(j, b, i, a)], s))
        if vecs:
            basis[p] = vecs
            terms[p] = LineBundleSum(K.term(v[0][0])[v[0][1]] + K.term(v[0][2])[v[0][3]] for v in vecs)
    diffs = {}
    for p in terms:
        if p + 1 not in terms or p not in T.diffs:
            continue
        d = T.diffs[p]
        src, dst = terms[p], terms[p + 1]
        rows = []
        for r, (_, rpos, _, _) in enumerate(basis[p + 1]):
            row = []
            for c, (_, cpos, cpartner, s) in enumerate(basis[p]):
                e = d[rpos, cpos]
                if cpartner is not None:
                    f = d[rpos, cpartner]
                    if f:
                        e = e + f if s > 0 else e - f
                row.append(e if e else HomogPoly.zero(dst[r] - src[c]))
            rows.append(row)
        diffs[p] = GradedMatrix(src, dst, rows)
    return BoundedComplex(terms, diffs)


def sym_part(M: Monad | BoundedComplex) -> BoundedComplex:
    """Symmetric summand of M ⊗ M; its middle cohomology is S^2 of E_M.

    The outer terms are exterior squares Λ^2 A and Λ^2 C: under the graded
    swap, odd-degree factors anticommute.
    """
    K = M.as_complex() if isinstance(M, Monad) else M
    if isinstance(M, Monad) and M.rank < 0:
        raise ShapeError("not a monad: negative rank")
    return _symmetric_piece(K, 1)


def antisym_part(M: Monad | BoundedComplex) -> BoundedComplex:
    """Antisymmetric summand of M ⊗ M; middle cohomology Λ^2 of E_M."""
    K = M.as_complex() if isinstance(M, Monad) else M
    return _symmetric_piece(K, -1)


def direct_sum(monads: Iterable[Monad]) -> Monad:
    ms = list(monads)
    A = LineBundleSum(sum((list(m.A) for m in ms), []))
    B = LineBundleSum(sum((list(m.B) for m in ms), []))
    C = LineBundleSum(sum((list(m.C) for m in ms), []))
    return Monad(A, B, C, _block_diag([m.alpha for m in ms], A, B), _block_diag([m.beta for m in ms], B, C))


def _block_diag(mats: Sequence[GradedMatrix], src: LineBundleSum, dst: LineBundleSum) -> GradedMatrix:
    rows = [[HomogPoly.zero(b - a) for a in src] for b in dst]
    ro = co = 0
    for g in mats:
        for i in range(g.dst.rank):
            for j in range(g.src.rank):
                if g[i, j]:
                    rows[ro + i][co + j] = g[i, j]
        ro += g.dst.rank
        co += g.src.rank
    return GradedMatrix(src, dst, rows)
