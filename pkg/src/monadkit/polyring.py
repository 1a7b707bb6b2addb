"""The graded ring Q[x, y, z, w].

Monomials are exponent 4-tuples.  Bases of graded pieces are listed in
graded lexicographic order with x > y > z > w, largest first; every matrix
in the package indexes its rows and columns this way.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

from .exactla import RationalMatrix

VARS = ("x", "y", "z", "w")
Monomial = tuple  # (e_x, e_y, e_z, e_w)


class PolyError(ValueError):
    """Base class for polynomial input errors."""


class PolySyntaxError(PolyError):
    """Malformed polynomial text."""


class NotHomogeneous(PolyError):
    pass


class DegreeMismatch(PolyError):
    pass


def graded_dim(d: int) -> int:
    """Dimension of the degree-``d`` piece: C(d+3, 3), or 0 for d < 0."""
    return comb(d + 3, 3) if d >= 0 else 0


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple[Monomial, ...]:
    """Degree-``d`` monomials, largest first in grlex order."""
    if d < 0:
        return ()
    out = []
    for a in range(d, -1, -1):
        for b in range(d - a, -1, -1):
            for c in range(d - a - b, -1, -1):
                out.append((a, b, c, d - a - b - c))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials(d))}


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def mono_str(m: Monomial) -> str:
    parts = []
    for v, e in zip(VARS, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


class HomogPoly:
    """Homogeneous polynomial with rational coefficients and explicit degree."""

    __slots__ = ("degree", "_terms", "_hash")

    def __init__(self, degree: int, terms: Mapping[Monomial, object] | None = None):
        self.degree = int(degree)
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != 4 or min(m) < 0:
                raise ValueError(f"bad monomial {m}")
            if sum(m) != self.degree:
                raise NotHomogeneous(f"monomial {m} has degree {sum(m)}, expected {self.degree}")
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, degree: int, terms: dict) -> "HomogPoly":
        p = cls.__new__(cls)
        p.degree, p._terms, p._hash = degree, terms, None
        return p

    @classmethod
    def zero(cls, degree: int) -> "HomogPoly":
        return cls._raw(degree, {})

    @classmethod
    def constant(cls, c) -> "HomogPoly":
        return cls(0, {(0, 0, 0, 0): c})

    @classmethod
    def var(cls, name: str | int) -> "HomogPoly":
        i = VARS.index(name) if isinstance(name, str) else name
        m = [0, 0, 0, 0]
        m[i] = 1
        return cls._raw(1, {tuple(m): Fraction(1)})

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "HomogPoly":
        return cls(sum(m), {m: c})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, HomogPoly):
            return self.degree == other.degree and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if other.degree != self.degree:
            if not other._terms:
                return self
            if not self._terms:
                return other
            raise DegreeMismatch(f"cannot add degrees {self.degree} and {other.degree}")
        t = dict(self._terms)
        for m, c in other._terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return HomogPoly._raw(self.degree, t)

    def __neg__(self) -> "HomogPoly":
        return HomogPoly._raw(self.degree, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        return self + (-other)

    def __mul__(self, other) -> "HomogPoly":
        if isinstance(other, HomogPoly):
            t: dict[Monomial, Fraction] = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = mono_mul(m1, m2)
                    t[m] = t.get(m, 0) + c1 * c2
            return HomogPoly._raw(self.degree + other.degree, {m: c for m, c in t.items() if c})
        c = Fraction(other)
        if not c:
            return HomogPoly.zero(self.degree)
        return HomogPoly._raw(self.degree, {m: v * c for m, v in self._terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HomogPoly":
        out = HomogPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, point: Sequence, modulus: int | None = None):
        """Value at ``point``; reduced mod ``modulus`` when given."""
        total = 0
        if modulus is None:
            for m, c in self._terms.items():
                v = c
                for p, e in zip(point, m):
                    if e:
                        v *= Fraction(p) ** e
                total += v
            return Fraction(total)
        for m, c in self._terms.items():
            v = c.numerator * pow(c.denominator, -1, modulus)
            for p, e in zip(point, m):
                if e:
                    v = v * pow(p, e, modulus)
            total += v
        return total % modulus

    def coefficient_vector(self) -> list[Fraction]:
        return [self._terms.get(m, Fraction(0)) for m in monomials(self.degree)]

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            ms = mono_str(m)
            if ms:
                body = ms if a == 1 else f"{a}*{ms}"
            else:
                body = str(a)
            if k == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"HomogPoly({self.degree}, {str(self)!r})"


def mult_matrix(f: HomogPoly, d: int) -> RationalMatrix:
    """Multiplication by ``f`` from degree ``d`` to degree ``d + deg f``."""
    e = f.degree
    if d < 0 or d + e < 0:
        return RationalMatrix(graded_dim(d + e), graded_dim(d))
    src = monomials(d)
    idx = monomial_index(d + e)
    ent = {}
    terms = list(f.items())
    for j, m in enumerate(src):
        for fm, c in terms:
            ent[(idx[mono_mul(fm, m)], j)] = c
    return RationalMatrix._trusted(len(idx), len(src), ent)


# ----------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyzw])|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        num, var, op = mt.groups()
        if num is not None:
            toks.append(("num", num))
        elif var is not None:
            toks.append(("var", var))
        elif op in "+-*^/()":
            toks.append(("op", op))
        else:
            raise PolySyntaxError(f"unexpected character {op!r} at position {mt.start(3)}")
        pos = mt.end()
    toks.append(("end", ""))
    return toks


class _Parser:
    # Intermediate values are dicts {monomial: Fraction}, possibly inhomogeneous.

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise PolySyntaxError(f"expected {want}, got {got!r}")
        self.i += 1
        return tok

    def parse(self) -> dict:
        if self.peek()[0] == "end":
            raise PolySyntaxError("empty expression")
        v = self.expr()
        if self.peek()[0] != "end":
            raise PolySyntaxError(f"unexpected token {self.peek()[1]!r}")
        return {m: c for m, c in v.items() if c}

    def expr(self) -> dict:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        acc = _scale(self.term(), sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            s = 1 if self.take()[1] == "+" else -1
            acc = _add(acc, _scale(self.term(), s))
        return acc

    def term(self) -> dict:
        if self.peek()[0] == "num":
            val = self.coeff()
        else:
            val = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            val = _mul(val, self.factor())
        return val

    def coeff(self) -> dict:
        n = int(self.take("num")[1])
        if self.peek() == ("op", "/"):
            self.take()
            d = int(self.take("num")[1])
            if d == 0:
                raise PolySyntaxError("zero denominator")
            return {(0, 0, 0, 0): Fraction(n, d)}
        return {(0, 0, 0, 0): Fraction(n)}

    def factor(self) -> dict:
        tok = self.peek()
        if tok[0] == "var":
            self.take()
            m = [0, 0, 0, 0]
            m[VARS.index(tok[1])] = 1
            e = 1
            if self.peek() == ("op", "^"):
                self.take()
                e = int(self.take("num")[1])
            m = [v * e for v in m]
            return {tuple(m): Fraction(1)}
        if tok == ("op", "("):
            self.take()
            v = self.expr()
            self.take("op", ")")
            if self.peek() == ("op", "^"):
                self.take()
                e = int(self.take("num")[1])
                out = {(0, 0, 0, 0): Fraction(1)}
                for _ in range(e):
                    out = _mul(out, v)
                return out
            return v
        if tok[0] == "num":
            raise PolySyntaxError("numeric literal must lead its term (write 2*x, not x*2)")
        raise PolySyntaxError(f"unexpected token {tok[1] or 'end of input'!r}")


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _scale(a: dict, s) -> dict:
    return {m: c * s for m, c in a.items()} if s != 1 else a


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = mono_mul(m1, m2)
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _syntactic_degree(text: str) -> int | None:
    """Degree of the first monomial written in ``text`` (used for zero results)."""
    # Cheap heuristic: degree of the first product of variables before any + or -.
    first = re.split(r"(?<!^)[+-]", text.strip().lstrip("+-"), maxsplit=1)[0]
    if "(" in first:
        return None
    deg = 0
    for mt in re.finditer(r"([xyzw])(?:\s*\^\s*(\d+))?", first):
        deg += int(mt.group(2) or 1)
    return deg


def parse_poly(text: str, expected_degree: int | None = None) -> HomogPoly:
    """Parse ``text`` into a homogeneous polynomial.

    A result that cancels to zero takes ``expected_degree`` when given, else
    the degree of the first written term.
    """
    if not isinstance(text, str):
        raise PolySyntaxError(f"expected a string, got {type(text).__name__}")
    terms = _Parser(text).parse()
    degs = {sum(m) for m in terms}
    if len(degs) > 1:
        raise NotHomogeneous(f"{text!r} mixes degrees {sorted(degs)}")
    if degs:
        deg = degs.pop()
    elif expected_degree is not None:
        deg = expected_degree
    else:
        deg = _syntactic_degree(text) or 0
    if expected_degree is not None and deg != expected_degree:
        raise DegreeMismatch(f"{text!r} has degree {deg}, expected {expected_degree}")
    return HomogPoly._raw(deg, terms)


