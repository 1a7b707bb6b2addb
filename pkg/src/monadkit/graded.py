"""Sums of line bundles on P^3 and graded polynomial maps between them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .exactla import RationalMatrix, block_matrix
from .polyring import HomogPoly, graded_dim, mult_matrix, parse_poly


class ShapeError(ValueError):
    """Matrix or bundle shapes are incompatible."""


def bott_h(d: int, i: int) -> int:
    """dim H^i(P^3, O(d))."""
    if i == 0:
        return graded_dim(d)
    if i == 3:
        return comb(-d - 1, 3) if d <= -4 else 0
    if i in (1, 2):
        return 0
    raise ValueError(f"cohomological degree {i} out of range")


@dataclass(frozen=True)
class LineBundleSum:
    """O(t_0) + O(t_1) + ... ; the order fixes indexing."""

    twists: tuple[int, ...] = ()

    def __init__(self, twists: Iterable[int] = ()):
        object.__setattr__(self, "twists", tuple(int(t) for t in twists))

    @classmethod
    def of(cls, *parts: tuple[int, int]) -> "LineBundleSum":
        """``of((k, d), ...)`` builds k copies of O(d) for each pair."""
        out: list[int] = []
        for k, d in parts:
            out.extend([d] * k)
        return cls(out)

    @property
    def rank(self) -> int:
        return len(self.twists)

    def __len__(self) -> int:
        return len(self.twists)

    def __iter__(self):
        return iter(self.twists)

    def __getitem__(self, i):
        return self.twists[i]

    def __add__(self, other: "LineBundleSum") -> "LineBundleSum":
        return LineBundleSum(self.twists + other.twists)

    def twist(self, l: int) -> "LineBundleSum":
        return LineBundleSum(t + l for t in self.twists)

    def dual(self) -> "LineBundleSum":
        return LineBundleSum(-t for t in self.twists)

    def h(self, i: int, l: int = 0) -> int:
        return sum(bott_h(t + l, i) for t in self.twists)

    def h0_sizes(self, l: int = 0) -> list[int]:
        return [graded_dim(t + l) for t in self.twists]

    def h3_sizes(self, l: int = 0) -> list[int]:
        return [bott_h(t + l, 3) for t in self.twists]

    def c1(self) -> int:
        return sum(self.twists)

    def __str__(self) -> str:
        if not self.twists:
            return "0"
        groups: list[list[int]] = []
        for t in self.twists:
            if groups and groups[-1][0] == t:
                groups[-1][1] += 1
            else:
                groups.append([t, 1])
        parts = []
        for t, k in groups:
            o = "O" if t == 0 else f"O({t})"
            parts.append(o if k == 1 else f"{k}{o}")
        return " + ".join(parts)


class GradedMatrix:
    """A map src -> dst given by homogeneous polynomials.

    Entry (i, j) has degree ``dst[i] - src[j]``; it must be zero when that
    degree is negative.
    """

    __slots__ = ("src", "dst", "entries")

    def __init__(self, src: LineBundleSum, dst: LineBundleSum, entries: Sequence[Sequence[HomogPoly]]):
        src = src if isinstance(src, LineBundleSum) else LineBundleSum(src)
        dst = dst if isinstance(dst, LineBundleSum) else LineBundleSum(dst)
        if len(entries) != dst.rank:
            raise ShapeError(f"expected {dst.rank} rows, got {len(entries)}")
        rows = []
        for i, row in enumerate(entries):
            if len(row) != src.rank:
                raise ShapeError(f"row {i} has {len(row)} entries, expected {src.rank}")
            new = []
            for j, p in enumerate(row):
                want = dst[i] - src[j]
                if p.is_zero():
                    p = HomogPoly.zero(want)
                elif p.degree != want:
                    raise ShapeError(f"entry ({i},{j}) has degree {p.degree}, expected {want}")
                new.append(p)
            rows.append(tuple(new))
        self.src, self.dst, self.entries = src, dst, tuple(rows)

    @classmethod
    def from_strings(cls, src, dst, rows: Sequence[Sequence[str]]) -> "GradedMatrix":
        src = src if isinstance(src, LineBundleSum) else LineBundleSum(src)
        dst = dst if isinstance(dst, LineBundleSum) else LineBundleSum(dst)
        if len(rows) != dst.rank:
            raise ShapeError(f"expected {dst.rank} rows, got {len(rows)}")
        parsed = []
        for i, row in enumerate(rows):
            if len(row) != src.rank:
                raise ShapeError(f"row {i} has {len(row)} entries, expected {src.rank}")
            parsed.append([parse_poly(s, dst[i] - src[j]) for j, s in enumerate(row)])
        return cls(src, dst, parsed)

    @classmethod
    def zero(cls, src, dst) -> "GradedMatrix":
        src, dst = LineBundleSum(src), LineBundleSum(dst)
        return cls(src, dst, [[HomogPoly.zero(b - a) for a in src] for b in dst])

    @classmethod
    def identity(cls, bundle: LineBundleSum) -> "GradedMatrix":
        one = HomogPoly.constant(1)
        rows = [[one if i == j else HomogPoly.zero(bundle[i] - bundle[j]) for j in range(bundle.rank)]
                for i in range(bundle.rank)]
        return cls(bundle, bundle, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.dst.rank, self.src.rank)

    def __getitem__(self, ij) -> HomogPoly:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self.src == other.src and self.dst == other.dst and self.entries == other.entries

    def __hash__(self):
        return hash((self.src, self.dst, self.entries))

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        """Composition ``self ∘ other``."""
        if self.src != other.dst:
            raise ShapeError("composition of incompatible graded maps")
        rows = []
        for i in range(self.dst.rank):
            row = []
            for j in range(other.src.rank):
                acc = HomogPoly.zero(self.dst[i] - other.src[j])
                for k in range(self.src.rank):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return GradedMatrix(other.src, self.dst, rows)

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        if (self.src, self.dst) != (other.src, other.dst):
            raise ShapeError("sum of maps with different shapes")
        return GradedMatrix(self.src, self.dst, [[a + b for a, b in zip(r, s)]
                                                 for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> "GradedMatrix":
        return GradedMatrix(self.src, self.dst, [[-a for a in r] for r in self.entries])

    def scale(self, c) -> "GradedMatrix":
        return GradedMatrix(self.src, self.dst, [[a * c for a in r] for r in self.entries])

    def dual(self) -> "GradedMatrix":
        """Transpose between the negated twist lists."""
        rows = [[self.entries[i][j] for i in range(self.dst.rank)] for j in range(self.src.rank)]
        return GradedMatrix(self.dst.dual(), self.src.dual(), rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "GradedMatrix":
        return GradedMatrix(LineBundleSum(self.src[j] for j in cols), LineBundleSum(self.dst[i] for i in rows),
                            [[self.entries[i][j] for j in cols] for i in rows])

    def max_degree(self) -> int:
        degs = [p.degree for row in self.entries for p in row if p]
        return max(degs, default=0)

    def is_linear(self) -> bool:
        return all(p.degree == 1 or p.is_zero() for row in self.entries for p in row)

    def to_strings(self) -> list[list[str]]:
        return [[str(p) for p in row] for row in self.entries]

    def evaluate(self, point, modulus: int | None = None) -> list[list]:
        return [[p.evaluate(point, modulus) for p in row] for row in self.entries]

    def __repr__(self) -> str:
        return f"GradedMatrix({self.src} -> {self.dst}, {self.to_strings()})"


def hstack_graded(mats: Sequence[GradedMatrix]) -> GradedMatrix:
    dst = mats[0].dst
    src = LineBundleSum(())
    for m in mats:
        if m.dst != dst:
            raise ShapeError("hstack of maps with different targets")
        src = src + m.src
    rows = [sum((list(m.entries[i]) for m in mats), []) for i in range(dst.rank)]
    return GradedMatrix(src, dst, rows)


def vstack_graded(mats: Sequence[GradedMatrix]) -> GradedMatrix:
    src = mats[0].src
    dst = LineBundleSum(())
    rows = []
    for m in mats:
        if m.src != src:
            raise ShapeError("vstack of maps with different sources")
        dst = dst + m.dst
        rows.extend(m.entries)
    return GradedMatrix(src, dst, rows)


def h0_matrix(m: GradedMatrix, l: int) -> RationalMatrix:
    """H^0(src(l)) -> H^0(dst(l)) as a block matrix of multiplication maps."""
    rs = m.dst.h0_sizes(l)
    cs = m.src.h0_sizes(l)
    blocks = []
    for i, row in enumerate(m.entries):
        brow = []
        for j, p in enumerate(row):
            if p.is_zero() or not rs[i] or not cs[j]:
                brow.append(None)
            else:
                brow.append(mult_matrix(p, m.src[j] + l))
        blocks.append(brow)
    return block_matrix(blocks, rs, cs)


def h3_matrix(m: GradedMatrix, l: int) -> RationalMatrix:
    """H^3(src(l)) -> H^3(dst(l)).

    H^3(O(d)) is identified with the dual of the degree ``-d-4`` piece, basis
    indexed by those monomials; the map is the transpose of the H^0 map of
    the dual at twist ``-l-4``.  Signs from the duality pairing are ignored.
    """
    return h0_matrix(m.dual(), -l - 4).transpose()


def scalar_matrix(values: Sequence[Sequence], bundle_src: LineBundleSum, bundle_dst: LineBundleSum) -> GradedMatrix:
    """Constant matrix between sums of equal twists (entries are rationals)."""
    return GradedMatrix(bundle_src, bundle_dst,
                        [[HomogPoly.constant(Fraction(v)) if v else HomogPoly.zero(bundle_dst[i] - bundle_src[j])
                          for j, v in enumerate(row)] for i, row in enumerate(values)])
