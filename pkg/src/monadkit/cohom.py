"""Cohomology of monads: the ladder engine, cohomology tables, H^1 generators.

The ladder engine splices the long exact sequences of
0 -> K -> B -> C -> 0 and 0 -> A -> K -> E -> 0 with K = ker(beta).  Since
line bundles on P^3 have no H^1 or H^2, everything reduces to ranks of the
H^0 and H^3 matrices of alpha and beta:

    h0 = dim ker M0 - h0(A(l))      h1 = dim coker M0
    h2 = dim ker P3                 h3 = dim ker M3 - rank P3

with M0, M3 the H^0 and H^3 matrices of beta and P0, P3 those of alpha.
The formulas only use that alpha is injective and beta surjective as sheaf
maps, so they also apply to non-locally-free cohomology sheaves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .complexes import Monad
from .exactla import RationalMatrix, Subquotient, block_matrix, hstack, induced_map, kernel_basis, rank
from .graded import h0_matrix, h3_matrix
from .polyring import HomogPoly, mult_matrix


class PreconditionError(ValueError):
    """The input violates an assumption of the engine (invalid monad)."""


class RangeTooSmall(ValueError):
    """The requested twist range does not start below the nonzero H^1 range."""


class EngineDisagreement(RuntimeError):
    """Two cohomology engines returned different answers."""


@dataclass(frozen=True)
class CohomologyPresentation:
    """H^degree(E(twist)) as a subquotient of a named coordinate space."""

    degree: int
    twist: int
    space: str
    model: Subquotient

    @property
    def dim(self) -> int:
        return self.model.dim


@dataclass
class LadderResult:
    twist: int
    dims: tuple[int, int, int, int]
    presentations: dict[int, CohomologyPresentation] = field(default_factory=dict)

    def __iter__(self) -> Iterator[int]:
        return iter(self.dims)

    def __getitem__(self, i: int) -> int:
        return self.dims[i]

    def __len__(self) -> int:
        return 4

    def __eq__(self, other) -> bool:
        if isinstance(other, LadderResult):
            return self.dims == other.dims
        return tuple(self.dims) == tuple(other)


def ladder_cohomology(m: Monad, l: int, presentations: bool = False, strategy: str = "hybrid",
                      check: bool = True) -> LadderResult:
    """(h0, h1, h2, h3) of the cohomology sheaf of ``m`` twisted by ``l``."""
    M0 = h0_matrix(m.beta, l)
    P0 = h0_matrix(m.alpha, l)
    M3 = h3_matrix(m.beta, l)
    P3 = h3_matrix(m.alpha, l)
    hA0 = m.A.h(0, l)
    r_m0 = rank(M0, strategy)
    r_p3 = rank(P3, strategy)
    r_m3 = rank(M3, strategy)
    if check and hA0:
        r_p0 = rank(P0, strategy)
        if r_p0 != hA0:
            raise PreconditionError(f"alpha is not injective on global sections at twist {l}")
    h0 = (M0.cols - r_m0) - hA0
    h1 = M0.rows - r_m0
    h2 = P3.cols - r_p3
    h3 = (M3.cols - r_m3) - r_p3
    if min(h0, h3) < 0:
        raise PreconditionError(f"negative dimension at twist {l}: the maps do not form a monad")
    res = LadderResult(l, (h0, h1, h2, h3))
    if presentations:
        res.presentations = {
            0: CohomologyPresentation(0, l, "H0(B)", Subquotient(M0.cols, kernel_basis(M0), P0)),
            1: CohomologyPresentation(1, l, "H0(C)", Subquotient.quotient(M0.rows, M0)),
            2: CohomologyPresentation(2, l, "H3(A)", Subquotient.subspace(kernel_basis(P3))),
            3: CohomologyPresentation(3, l, "H3(B)", Subquotient(M3.cols, kernel_basis(M3), P3)),
        }
    return res


def h1_presentation(m: Monad, l: int) -> CohomologyPresentation:
    M0 = h0_matrix(m.beta, l)
    return CohomologyPresentation(1, l, "H0(C)", Subquotient.quotient(M0.rows, M0))


def _var_matrix_on(bundle, var: int, l: int) -> RationalMatrix:
    """Multiplication by a coordinate, H^0(bundle(l-1)) -> H^0(bundle(l))."""
    v = HomogPoly.var(var)
    rs = bundle.h0_sizes(l)
    cs = bundle.h0_sizes(l - 1)
    blocks = [[None] * len(cs) for _ in rs]
    for i, t in enumerate(bundle):
        if rs[i] and cs[i]:
            blocks[i][i] = mult_matrix(v, t + l - 1)
    return block_matrix(blocks, rs, cs)


def h1_multiplication(m: Monad, var: int, l: int) -> RationalMatrix:
    """Matrix of H^1(E(l-1)) -> H^1(E(l)) given by multiplication by a coordinate."""
    src = h1_presentation(m, l - 1).model
    dst = h1_presentation(m, l).model
    return induced_map(_var_matrix_on(m.C, var, l), src, dst)


def h1_module_generators(m: Monad, l_min: int | None = None, l_max: int | None = None,
                         strategy: str = "hybrid") -> list[int]:
    """Degrees of a minimal generating set of the module H^1_*(E), with multiplicity.

    H^1_*(E) is a quotient of H^0_*(C), which is generated in degrees -c for
    the twists c of C, so the defaults cover every possible generator.
    """
    if not m.C.rank:
        return []
    if l_max is None:
        l_max = -min(m.C)
    if l_min is None:
        l_min = -max(m.C) - 1
    if ladder_cohomology(m, l_min, strategy=strategy, check=False)[1] != 0:
        raise RangeTooSmall(f"h1(E({l_min})) is nonzero; start the range lower")
    out: list[int] = []
    for l in range(l_min + 1, l_max + 1):
        M0 = h0_matrix(m.beta, l)
        if not M0.rows:
            continue
        spans = [M0] + [_var_matrix_on(m.C, v, l) for v in range(4)]
        count = M0.rows - rank(hstack([s for s in spans if s.cols]), strategy)
        out.extend([l] * count)
    return out


# ----------------------------------------------------------------------
# tables


@dataclass
class CohTable:
    twists: list[int]
    rows: dict[int, list[int]]  # i -> h^i(E(l)) for l in twists
    engine: str = "ladder"

    def column(self, l: int) -> tuple[int, int, int, int]:
        k = self.twists.index(l)
        return tuple(self.rows[i][k] for i in range(4))

    def h(self, i: int, l: int) -> int:
        return self.rows[i][self.twists.index(l)]

    def to_text(self) -> str:
        width = max(4, max((len(str(v)) for r in self.rows.values() for v in r), default=1) + 1,
                    max(len(str(l)) for l in self.twists) + 1)
        head = "i\\l".ljust(5) + "".join(str(l).rjust(width) for l in self.twists)
        lines = [head]
        for i in (3, 2, 1, 0):
            lines.append(f"h{i}".ljust(5) + "".join(str(v).rjust(width) for v in self.rows[i]))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"engine": self.engine, "twists": self.twists,
                "h": {str(i): self.rows[i] for i in range(4)}}

    def __str__(self) -> str:
        return self.to_text()


def cohomology_table(m: Monad, twists: Sequence[int], engine: str = "ladder", **kw) -> CohTable:
    """Cohomology table over ``twists`` with the ``ladder``, ``cech`` or ``both`` engines."""
    twists = list(twists)
    cols = []
    for l in twists:
        if engine == "ladder":
            cols.append(tuple(ladder_cohomology(m, l, strategy=kw.get("strategy", "hybrid"))))
        elif engine == "cech":
            cols.append(tuple(_cech_monad(m, l, **kw)))
        elif engine == "both":
            a = tuple(ladder_cohomology(m, l, strategy=kw.get("strategy", "hybrid")))
            b = tuple(_cech_monad(m, l, **kw))
            if a != b:
                raise EngineDisagreement(f"twist {l}: ladder {a} vs cech {b}")
            cols.append(a)
        else:
            raise ValueError(f"unknown engine {engine!r}")
    rows = {i: [c[i] for c in cols] for i in range(4)}
    return CohTable(twists, rows, engine)


def _cech_monad(m: Monad, l: int, **kw) -> list[int]:
    from .cech import cech_hypercohomology
    dims = cech_hypercohomology(m.as_complex(), l, **kw)
    return [dims.get(n, 0) for n in range(4)]


