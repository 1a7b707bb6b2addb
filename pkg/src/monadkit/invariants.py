"""Chern classes, Euler characteristics, spectra and component data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping

from .cohom import ladder_cohomology
from .complexes import Monad
from .graded import LineBundleSum, ShapeError


class Inconsistent(ValueError):
    pass


class NotCharge5(ValueError):
    pass


class UnknownShape(ValueError):
    pass


class ReportInconsistent(RuntimeError):
    pass


@dataclass(frozen=True)
class ChernData:
    rank: int
    c1: int
    c2: int
    c3: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.rank, self.c1, self.c2, self.c3)


def _series_mul(a: list[Fraction], b: list[Fraction], n: int = 4) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def _total_chern(bundle: LineBundleSum, invert: bool) -> list[Fraction]:
    s = [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]
    for d in bundle:
        # (1 + d t)^{-1} = 1 - d t + d^2 t^2 - d^3 t^3
        f = [Fraction(1), Fraction(-d), Fraction(d * d), Fraction(-d ** 3)] if invert else \
            [Fraction(1), Fraction(d), Fraction(0), Fraction(0)]
        s = _series_mul(s, f)
    return s


def chern(m: Monad) -> ChernData:
    """c(B) / (c(A) c(C)) truncated after degree 3."""
    s = _series_mul(_series_mul(_total_chern(m.B, False), _total_chern(m.A, True)), _total_chern(m.C, True))
    return ChernData(m.rank, int(s[1]), int(s[2]), int(s[3]))


def euler_char(cd: ChernData, l: int) -> int:
    """Riemann-Roch for c1 = 0: r·(l+1)(l+2)(l+3)/6 - c2·(l+2) + c3/2."""
    if cd.c1 != 0:
        raise NotImplementedError("Euler characteristic is only implemented for c1 = 0")
    v = Fraction(cd.rank * (l + 1) * (l + 2) * (l + 3), 6) - cd.c2 * (l + 2) + Fraction(cd.c3, 2)
    if v.denominator != 1:
        raise Inconsistent(f"non-integral Euler characteristic {v}")
    return int(v)


@dataclass(frozen=True)
class Spectrum:
    values: tuple[int, ...]

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def h1(self, l: int) -> int:
        """Model value of h^1(E(l)) for l <= -2."""
        return sum(max(0, k + l + 2) for k in self.values)

    def __str__(self) -> str:
        return "(" + ",".join(str(k) for k in self.values) + ")"


def spectrum_from_h1(h1_values: Mapping[int, int], n: int) -> Spectrum:
    """Recover the symmetric spectrum of size n from h^1(E(l)), l <= -2.

    N_m = h1(-m-1) - h1(-m-2) counts spectrum entries >= m for m >= 1.
    Values not supplied below the lowest given twist are taken as zero.
    """
    vals = {int(l): int(v) for l, v in h1_values.items() if int(l) <= -2}
    if not vals:
        raise Inconsistent("need h1 values at twists <= -2")
    lowest = min(vals)

    def h(l):
        return vals.get(l, 0) if l >= lowest else 0

    N = {}
    m = 1
    while -m - 1 >= lowest - 1:
        N[m] = h(-m - 1) - h(-m - 2)
        m += 1
    N[m] = 0
    mult = {}
    for m in sorted(N):
        if m + 1 in N:
            c = N[m] - N[m + 1]
            if c < 0:
                raise Inconsistent(f"negative multiplicity at {m}")
            if c:
                mult[m] = c
    pos = sum(mult.values())
    zeros = n - 2 * pos
    if zeros < 0:
        raise Inconsistent(f"h1 values need more than {n} spectrum entries")
    values = sorted([-m for m, c in mult.items() for _ in range(c)] + [0] * zeros
                    + [m for m, c in mult.items() for _ in range(c)])
    spec = Spectrum(tuple(values))
    for l, v in vals.items():
        if spec.h1(l) != v:
            raise Inconsistent(f"spectrum {spec} predicts h1({l}) = {spec.h1(l)}, given {v}")
    return spec


def _require_rank2_c1_0(m: Monad) -> ChernData:
    cd = chern(m)
    if cd.rank != 2 or cd.c1 != 0:
        raise ShapeError(f"expected rank 2 with c1 = 0, got rank {cd.rank}, c1 {cd.c1}")
    return cd


def alpha_invariant(m: Monad) -> int:
    """h^1(E(-2)) mod 2."""
    _require_rank2_c1_0(m)
    return ladder_cohomology(m, -2)[1] % 2


def spectrum_of(m: Monad) -> Spectrum:
    cd = _require_rank2_c1_0(m)
    vals = {}
    l = -2
    zeros = 0
    while zeros < 2:
        v = ladder_cohomology(m, l)[1]
        vals[l] = v
        zeros = zeros + 1 if v == 0 else 0
        l -= 1
    return spectrum_from_h1(vals, cd.c2)


@dataclass
class StabilityProbe:
    h0_E: int
    h0_E_minus1: int
    verdict: str

    def to_json(self) -> dict:
        return {"h0_E": self.h0_E, "h0_E_minus1": self.h0_E_minus1, "verdict": self.verdict}


def stability_probe(m: Monad) -> StabilityProbe:
    """Rank 2, c1 = 0: stable iff h0(E) = 0; semistable if h0(E(-1)) = 0."""
    _require_rank2_c1_0(m)
    h0 = ladder_cohomology(m, 0)[0]
    h0m = ladder_cohomology(m, -1)[0]
    if h0 == 0:
        verdict = "stable"
    elif h0m == 0:
        verdict = "semistable"
    else:
        verdict = "undetermined"
    return StabilityProbe(h0, h0m, verdict)


# ----------------------------------------------------------------------
# B(5) components


@dataclass(frozen=True)
class ShapeRow:
    key: str
    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]
    component: str
    dimension: int
    spectra: tuple[tuple[int, ...], ...]
    alpha: int

    def describe(self) -> str:
        return f"{LineBundleSum(self.A)} -> {LineBundleSum(self.B)} -> {LineBundleSum(self.C)}"


B5_SHAPES = (
    ShapeRow("linear-instanton", (-1,) * 5, (0,) * 12, (1,) * 5, "Instanton", 37, ((0, 0, 0, 0, 0),), 0),
    ShapeRow("quadratic-instanton", (-2, -2), (-1, -1, -1, 1, 1, 1), (2, 2), "Instanton", 37,
             ((-1, -1, 0, 1, 1),), 0),
    ShapeRow("ein", (-3,), (-2, 0, 0, 2), (3,), "Ein", 40, ((-2, -1, 0, 1, 2),), 1),
    ShapeRow("modified-a2", (-2, -1), (0,) * 6, (1, 2), "ModifiedInstanton", 37, ((-1, 0, 0, 0, 1),), 1),
    ShapeRow("modified-a2-wide", (-2, -1, -1), (-1,) + (0,) * 6 + (1,), (1, 1, 2), "ModifiedInstanton", 37,
             ((-1, 0, 0, 0, 1),), 1),
)


@dataclass
class ComponentReport:
    shape: str
    shape_key: str
    component: str
    dimension: int
    chern: ChernData
    spectrum: Spectrum
    alpha_invariant: int
    consistent: bool
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"shape": self.shape, "shape_key": self.shape_key, "component": self.component,
                "dimension": self.dimension, "chern": list(self.chern.as_tuple()),
                "spectrum": list(self.spectrum.values), "alpha_invariant": self.alpha_invariant,
                "consistent": self.consistent, "notes": self.notes}

    def __str__(self) -> str:
        return (f"{self.component} component, dimension {self.dimension}\n"
                f"shape {self.shape}\nspectrum {self.spectrum}, alpha-invariant {self.alpha_invariant}")


def match_b5_shape(m: Monad) -> ShapeRow:
    A, B, C = m.shape()
    for row in B5_SHAPES:
        if (tuple(sorted(row.A)), tuple(sorted(row.B)), tuple(sorted(row.C))) == (A, B, C):
            return row
    raise UnknownShape(f"{m} matches none of the five B(5) shapes")


def classify_b5(m: Monad, strict: bool = True) -> ComponentReport:
    """Match the shape, then cross-check spectrum and alpha-invariant."""
    cd = chern(m)
    if cd.as_tuple() != (2, 0, 5, 0):
        raise NotCharge5(f"expected Chern data (2, 0, 5, 0), got {cd.as_tuple()}")
    row = match_b5_shape(m)
    spec = spectrum_of(m)
    alpha = alpha_invariant(m)
    notes = []
    ok = True
    if spec.values not in row.spectra:
        ok = False
        notes.append(f"spectrum {spec} differs from the expected {row.spectra[0]}")
    if alpha != row.alpha:
        ok = False
        notes.append(f"alpha-invariant {alpha} differs from the expected {row.alpha}")
    rep = ComponentReport(row.describe(), row.key, row.component, row.dimension, cd, spec, alpha, ok, notes)
    if strict and not ok:
        raise ReportInconsistent("; ".join(notes))
    return rep


# ----------------------------------------------------------------------
# dimension of G(a, 1)


@dataclass
class DimensionReport:
    a: int
    formula_value: int
    h0_N_a: int
    breakdown: tuple[int, int, int]
    identity_holds: bool
    epsilon: int
    h1_end_prediction: int
    comparison: int
    exceeds_comparison: bool

    def to_json(self) -> dict:
        return dict(self.__dict__, breakdown=list(self.breakdown))


def dim_g_a1(a: int) -> DimensionReport:
    """4·C(a+3,3) - a - 1 against 5 + h0(N(a)) + 2·(C(a+3,3) - 2)."""
    if a < 2:
        raise ValueError("a must be at least 2")
    from .monadlib import make_null_correlation
    n = comb(a + 3, 3)
    formula = 4 * n - a - 1
    h0n = ladder_cohomology(make_null_correlation(), a)[0]
    parts = (5, h0n, 2 * (n - 2))
    eps = 1 if a == 3 else 0
    cmp = 8 * (a * a + 1) - 3
    return DimensionReport(a, formula, h0n, parts, sum(parts) == formula, eps, formula + eps, cmp, formula > cmp)


