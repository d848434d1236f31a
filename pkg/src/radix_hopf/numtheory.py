"""Exact integer/rational factorization helpers and radical-polynomial tests."""

from __future__ import annotations

from fractions import Fraction

import sympy

from .errors import NotMinimalExponent


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of |n| (sign excluded); {} for n in {1, -1}."""
    if n == 0:
        raise ValueError("cannot factor zero")
    fac = sympy.factorint(abs(int(n)))
    return {int(p): int(e) for p, e in fac.items()}


def exponent_vector(a: Fraction) -> tuple[int, dict[int, int]]:
    """Sign bit (0/1) and prime -> exponent map of a nonzero rational."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("zero has no exponent vector")
    sign = 0 if a > 0 else 1
    vec = dict(factor_int(a.numerator))
    for p, e in factor_int(a.denominator).items():
        vec[p] = vec.get(p, 0) - e
    return sign, {p: e for p, e in sorted(vec.items()) if e != 0}


def vp(a: Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    _, vec = exponent_vector(a)
    return vec.get(p, 0)


def nth_root_rational(a: Fraction, k: int) -> Fraction | None:
    """Exact rational k-th root of a when one exists, else None."""
    a = Fraction(a)
    if k <= 0:
        raise ValueError("k must be positive")
    if k == 1:
        return a
    if a == 0:
        return Fraction(0)
    if a < 0 and k % 2 == 0:
        return None
    sign, vec = exponent_vector(a)
    if any(e % k != 0 for e in vec.values()):
        return None
    root = Fraction(1)
    for p, e in vec.items():
        q = e // k
        root *= Fraction(p) ** q if q >= 0 else Fraction(1, p ** (-q))
    return -root if sign else root


def radical_irreducible(n: int, a: Fraction) -> bool:
    """Irreducibility of x^n - a over Q (power criterion).

    x^n - a is irreducible iff a is not a p-th power for any prime p | n,
    and, when 4 | n, a is not of the form -4 c^4.
    """
    a = Fraction(a)
    if n < 1 or a == 0:
        return False
    if n == 1:
        return True
    for p in factor_int(n):
        if nth_root_rational(a, p) is not None:
            return False
    if n % 4 == 0 and nth_root_rational(a / Fraction(-4), 4) is not None:
        return False
    return True


def minimal_exponent(n: int, a: Fraction) -> tuple[int, Fraction]:
    """Reduce the label "n-th root of a" to its honest degree.

    Extracts the largest d | n with a = b^d exactly and returns (n/d, b),
    so that the canonical n-th root of a equals the canonical (n/d)-th root
    of b and x^(n/d) - b is irreducible. Raises NotMinimalExponent when the
    label cannot describe a degree-(n/d) field (the -4 c^4 degeneracy).
    """
    a = Fraction(a)
    if a == 0:
        raise ValueError("radicand must be nonzero")
    best = (n, a)
    for d in sorted((d for d in range(2, n + 1) if n % d == 0), reverse=True):
        root = nth_root_rational(a, d)
        if root is not None:
            best = (n // d, root)
            break
    ni, b = best
    if not radical_irreducible(ni, b):
        raise NotMinimalExponent(
            f"x^{ni} - {b} is reducible over Q; no simple radical field of degree {ni}"
        )
    return ni, b


def is_prime(p: int) -> bool:
    return bool(sympy.isprime(p))
