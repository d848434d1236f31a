"""Univariate polynomials over Q: exact arithmetic, factorization, cyclotomics.

Polynomials are stored as tuples of Fractions in ascending degree order with
no trailing zero; the empty tuple is the zero polynomial. Factorization over
Q delegates to sympy (squarefree + modular + Hensel machinery); everything
else is self-contained.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import sympy

from .linalg import Q, qstr

_X = sympy.Symbol("x")


class QPoly:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def constant(c) -> "QPoly":
        return QPoly([Fraction(c)])

    @staticmethod
    def x_power(k: int, c=1) -> "QPoly":
        return QPoly([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return QPoly([c / lead for c in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "QPoly") -> "QPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    def __neg__(self) -> "QPoly":
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __mul__(self, other: "QPoly") -> "QPoly":
        if self.is_zero() or other.is_zero():
            return QPoly()
        out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPoly(out)

    def scale(self, c) -> "QPoly":
        c = Fraction(c)
        return QPoly([c * e for e in self.coeffs])

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Q(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.coeffs[-1]
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            f = rem[i] / lead
            quo[i - d] = f
            for j, c in enumerate(other.coeffs):
                rem[i - d + j] -= f * c
        return QPoly(quo), QPoly(rem)

    def __floordiv__(self, other: "QPoly") -> "QPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "QPoly") -> "QPoly":
        return self.divmod(other)[1]

    def __call__(self, value):
        acc = Q(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "QPoly":
        return QPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "QPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(qstr(c))
            else:
                base = "x" if i == 1 else f"x^{i}"
                terms.append(base if c == 1 else f"{qstr(c)}*{base}")
        return "QPoly(" + " + ".join(terms) + ")"

    def to_json(self) -> list[str]:
        return [qstr(c) for c in self.coeffs]


def _to_sympy(f: QPoly):
    return sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)], _X
    )


def _from_sympy(p) -> QPoly:
    return QPoly([Fraction(int(c.numerator), int(c.denominator)) for c in reversed(p.all_coeffs())])


def poly_factor(f: QPoly) -> list[tuple[QPoly, int]]:
    """Monic irreducible factorization over Q, canonically sorted.

    The rational unit (leading coefficient times content) is dropped; the
    product of factors^multiplicities equals f up to that unit. Sorted by
    (degree, coefficient tuple).
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    _, factors = _to_sympy(f).factor_list()
    out = [(_from_sympy(p).monic(), int(m)) for p, m in factors if p.degree() > 0]
    out.sort(key=lambda fm: fm[0].sort_key())
    return out


def is_irreducible(f: QPoly) -> bool:
    if f.degree <= 0:
        return False
    factors = poly_factor(f)
    return len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree == f.degree


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> QPoly:
    """The n-th cyclotomic polynomial, via exact division of x^n - 1."""
    if n < 1:
        raise ValueError("n must be positive")
    num = QPoly.x_power(n) - QPoly.constant(1)
    for d in range(1, n):
        if n % d == 0:
            q, r = num.divmod(cyclotomic(d))
            if not r.is_zero():
                raise AssertionError("cyclotomic division must be exact")
            num = q
    return num


def euler_phi(n: int) -> int:
    return cyclotomic(n).degree


def resultant(f: QPoly, g: QPoly) -> Fraction:
    """Resultant via the Sylvester matrix determinant (exact)."""
    from .linalg import QMatrix

    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return Q(0)
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([Q(0)] * i + fc + [Q(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Q(0)] * i + gc + [Q(0)] * (size - n - 1 - i))
    return QMatrix(rows).det()
