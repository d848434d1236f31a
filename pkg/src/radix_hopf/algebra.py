"""Exact model of Q(zeta_m)[y1..yk] / (y_t^{n_t} - a_t) and its arithmetic.

The splitting algebra of a simple radical extension L = Q(n-th root of a)
is the single-radical case with m = n: it contains K = Q, L, M = Q(zeta_n)
and the normal closure as the whole algebra. The same machinery, with m and
the radical factors decoupled, powers compositum-degree certification for
pairs like Q(zeta_m, n-th root of a) and multi-radical towers.

Elements are coordinate vectors over the monomial basis
zeta^i * alpha_1^{j_1} * ... * alpha_k^{j_k} with 0 <= i < phi(m) and
0 <= j_t < n_t, stored j-major (radical indices vary slowest, zeta fastest).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    InvalidDescriptor,
    NotAField,
    NotInvertible,
    RadixHopfError,
    SingularMatrix,
)
from .linalg import Q, QMatrix, qstr
from .numtheory import radical_irreducible
from .polynomials import QPoly, cyclotomic, euler_phi, is_irreducible, poly_factor


class IndeterminateResult(RadixHopfError):
    """No primitive-element candidate certified the requested degree."""


@dataclass(frozen=True)
class RadicalDescriptor:
    """The label "n-th root of a" with x^n - a certified irreducible over Q."""

    n: int
    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        if self.n < 1:
            raise InvalidDescriptor("radical exponent must be >= 1")
        if self.a == 0:
            raise InvalidDescriptor("radicand must be nonzero")
        if not radical_irreducible(self.n, self.a):
            raise InvalidDescriptor(f"x^{self.n} - {self.a} is reducible over Q")

    def to_json(self) -> dict:
        return {"n": self.n, "a": qstr(self.a)}


class CycloRadicalAlgebra:
    """Quotient algebra Q[x, y1..yk]/(Phi_m(x), y_t^{n_t} - a_t)."""

    def __init__(self, m: int, radicals: Sequence[tuple[int, Fraction]]):
        if m < 1:
            raise ValueError("cyclotomic order must be >= 1")
        self.m = m
        self.radicals = tuple((int(n), Fraction(a)) for n, a in radicals)
        self.cyclo: QPoly = cyclotomic(m)
        self.phi = self.cyclo.degree
        self.dim = self.phi
        for n, _ in self.radicals:
            self.dim *= n
        # zeta^e in the power basis, for 0 <= e < m (zeta^m = 1).
        zpow = []
        cur = [Q(1)] + [Q(0)] * (self.phi - 1)
        for _ in range(m):
            zpow.append(tuple(cur))
            shifted = [Q(0)] + cur
            if len(shifted) > self.phi:
                lead = shifted.pop()
                if lead:
                    for i, c in enumerate(self.cyclo.coeffs[:-1]):
                        shifted[i] -= lead * c
            cur = shifted
        self._zpow = tuple(zpow)
        # Flat index = ((j_1 * n_2 + j_2) * ... ) * phi + i.
        decode = []
        for idx in range(self.dim):
            i = idx % self.phi
            rest = idx // self.phi
            js = []
            for n, _ in reversed(self.radicals):
                js.append(rest % n)
                rest //= n
            decode.append((i, tuple(reversed(js))))
        self._decode = tuple(decode)

    def _radical_offset(self, js: Sequence[int]) -> int:
        off = 0
        for (n, _), j in zip(self.radicals, js):
            off = off * n + j
        return off * self.phi

    # -- element constructors -------------------------------------------------

    def elem(self, coords: Iterable) -> "AlgElem":
        return AlgElem(self, tuple(Fraction(c) for c in coords))

    def zero(self) -> "AlgElem":
        return self.elem([0] * self.dim)

    def one(self) -> "AlgElem":
        c = [Q(0)] * self.dim
        c[0] = Q(1)
        return self.elem(c)

    def scalar(self, value) -> "AlgElem":
        c = [Q(0)] * self.dim
        c[0] = Fraction(value)
        return self.elem(c)

    def zeta(self) -> "AlgElem":
        c = [Q(0)] * self.dim
        for i, zc in enumerate(self._zpow[1 % self.m]):
            c[i] = zc
        return self.elem(c)

    def alpha(self, t: int = 0) -> "AlgElem":
        c = [Q(0)] * self.dim
        js = [0] * len(self.radicals)
        n_t = self.radicals[t][0]
        if n_t == 1:
            return self.scalar(self.radicals[t][1])
        js[t] = 1
        c[self._radical_offset(js)] = Q(1)
        return self.elem(c)

    def monomial(self, i: int, js: Sequence[int]) -> "AlgElem":
        c = [Q(0)] * self.dim
        c[self._radical_offset(js) + i] = Q(1)
        return self.elem(c)

    # -- arithmetic kernels ---------------------------------------------------

    def _mul(self, xc: Sequence[Fraction], yc: Sequence[Fraction]) -> tuple[Fraction, ...]:
        acc = [Q(0)] * self.dim
        decode = self._decode
        zpow = self._zpow
        m = self.m
        for idx1, c1 in enumerate(xc):
            if c1 == 0:
                continue
            i1, js1 = decode[idx1]
            for idx2, c2 in enumerate(yc):
                if c2 == 0:
                    continue
                i2, js2 = decode[idx2]
                c = c1 * c2
                js = []
                for (n, a), j1, j2 in zip(self.radicals, js1, js2):
                    j = j1 + j2
                    if j >= n:
                        j -= n
                        c *= a
                    js.append(j)
                e = i1 + i2
                if e >= m:
                    e -= m
                base = self._radical_offset(js)
                for i, zc in enumerate(zpow[e]):
                    if zc:
                        acc[base + i] += c * zc
        return tuple(acc)

    # -- structural queries ---------------------------------------------------

    def multiplication_matrix(self, x: "AlgElem") -> QMatrix:
        """Matrix of y -> x*y acting on coordinate columns."""
        cols = []
        for idx in range(self.dim):
            basis = [Q(0)] * self.dim
            basis[idx] = Q(1)
            cols.append(self._mul(x.coords, basis))
        return QMatrix.from_columns(cols)

    def minimal_poly(self, x: "AlgElem") -> QPoly:
        """Monic least-degree rational polynomial annihilating x.

        Exact kernel of the power stack {1, x, x^2, ...}, maintained as an
        incremental row echelon so the first dependency pops out directly.
        """
        echelon: list[tuple[list[Fraction], list[Fraction]]] = []
        pivots: list[int] = []
        power = self.one()
        for k in range(self.dim + 1):
            vec = list(power.coords)
            combo = [Q(0)] * (self.dim + 2)
            combo[k] = Q(1)
            for (row, rcombo), p in zip(echelon, pivots):
                f = vec[p]
                if f:
                    vec = [a - f * b for a, b in zip(vec, row)]
                    combo = [a - f * b for a, b in zip(combo, rcombo)]
            pivot = next((i for i, c in enumerate(vec) if c != 0), None)
            if pivot is None:
                return QPoly(combo[: k + 1])
            inv = 1 / vec[pivot]
            echelon.append(([c * inv for c in vec], [c * inv for c in combo]))
            pivots.append(pivot)
            power = power * x
        raise AssertionError("power stack exceeded algebra dimension")

    def primitive_candidates(self, limit: int) -> Iterable["AlgElem"]:
        """Deterministic sequence zeta + c*alpha_1 + c^2*alpha_2 + ..."""
        for c in range(1, limit + 1):
            x = self.zeta()
            w = 1
            for t in range(len(self.radicals)):
                w *= c
                x = x + self.alpha(t) * w
            yield x

    def field_certify(self, candidate_limit: Optional[int] = None) -> "FieldCertification":
        """Decide whether the algebra is a field via primitive elements.

        A candidate whose minimal polynomial has full degree settles the
        question (irreducible = field; otherwise the algebra splits and the
        factor degrees are reported). A reducible minimal polynomial of any
        degree already exhibits a zero divisor.
        """
        limit = candidate_limit or max(8, self.dim)
        best: Optional[FieldCertification] = None
        for theta in self.primitive_candidates(limit):
            mp = self.minimal_poly(theta)
            factors = poly_factor(mp)
            reducible = len(factors) > 1 or factors[0][1] > 1
            if mp.degree == self.dim:
                if not reducible:
                    return FieldCertification(
                        status="field",
                        witness=theta,
                        min_poly=mp,
                        factor_degrees=(self.dim,),
                        degree=self.dim,
                    )
                degs = tuple(
                    f.degree for f, mult in factors for _ in range(mult)
                )
                degree = degs[0] if all(d == degs[0] for d in degs) else None
                return FieldCertification(
                    status="not_field",
                    witness=theta,
                    min_poly=mp,
                    factor_degrees=degs,
                    degree=degree,
                    zero_divisor=self._zero_divisor_from(theta, factors),
                )
            if reducible:
                return FieldCertification(
                    status="not_field",
                    witness=theta,
                    min_poly=mp,
                    factor_degrees=tuple(
                        f.degree for f, mult in factors for _ in range(mult)
                    ),
                    degree=None,
                    zero_divisor=self._zero_divisor_from(theta, factors),
                )
        return FieldCertification(status="indeterminate")

    def _zero_divisor_from(self, theta: "AlgElem", factors) -> Optional["AlgElem"]:
        if len(factors) == 1 and factors[0][1] == 1:
            return None
        f = factors[0][0]
        z = self.eval_poly(f, theta)
        return z if not z.is_zero() else None

    def eval_poly(self, f: QPoly, x: "AlgElem") -> "AlgElem":
        acc = self.zero()
        for c in reversed(f.coeffs):
            acc = acc * x + self.scalar(c)
        return acc


@dataclass(frozen=True)
class FieldCertification:
    status: str  # "field" | "not_field" | "indeterminate"
    witness: Optional["AlgElem"] = None
    min_poly: Optional[QPoly] = None
    factor_degrees: tuple[int, ...] = ()
    degree: Optional[int] = None
    zero_divisor: Optional["AlgElem"] = None


class AlgElem:
    """Immutable element of a CycloRadicalAlgebra as a coordinate vector."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: CycloRadicalAlgebra, coords: tuple[Fraction, ...]):
        if len(coords) != algebra.dim:
            raise ValueError("coordinate length mismatch")
        self.algebra = algebra
        self.coords = coords

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgElem)
            and self.algebra is other.algebra
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "AlgElem") -> "AlgElem":
        self._check(other)
        return AlgElem(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        self._check(other)
        return AlgElem(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AlgElem":
        return AlgElem(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            self._check(other)
            return AlgElem(self.algebra, self.algebra._mul(self.coords, other.coords))
        return AlgElem(self.algebra, tuple(Fraction(other) * a for a in self.coords))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "AlgElem":
        if k < 0:
            raise ValueError("use invert() for negative powers")
        acc = self.algebra.one()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def _check(self, other: "AlgElem") -> None:
        if self.algebra is not other.algebra:
            raise ValueError("elements from different algebras")

    def rational_value(self) -> Optional[Fraction]:
        """The element as a rational when it lies in Q, else None."""
        if any(c != 0 for c in self.coords[1:]):
            return None
        return self.coords[0]

    def __repr__(self) -> str:
        terms = []
        for idx, c in enumerate(self.coords):
            if c == 0:
                continue
            i, js = self.algebra._decode[idx]
            parts = []
            if i:
                parts.append("z" if i == 1 else f"z^{i}")
            for t, j in enumerate(js):
                name = "a" if len(js) == 1 else f"a{t + 1}"
                if j:
                    parts.append(name if j == 1 else f"{name}^{j}")
            mono = "*".join(parts) if parts else "1"
            terms.append(mono if c == 1 else f"{qstr(c)}*{mono}")
        return "AlgElem(" + (" + ".join(terms) if terms else "0") + ")"


# ---------------------------------------------------------------------------
# The splitting algebra of one simple radical extension
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Automorphism:
    """sigma_{j,t}: alpha -> zeta^j alpha, zeta -> zeta^t on the splitting algebra."""

    n: int
    j: int
    t: int

    def __post_init__(self):
        from math import gcd

        object.__setattr__(self, "j", self.j % self.n)
        object.__setattr__(self, "t", self.t % self.n)
        if gcd(self.t, self.n) != 1:
            raise ValueError("t must be invertible mod n")

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other: (j1,t1) o (j2,t2) = (j1 + t1 j2, t1 t2)."""
        if self.n != other.n:
            raise ValueError("mismatched moduli")
        return Automorphism(self.n, self.j + self.t * other.j, self.t * other.t)

    def inverse(self) -> "Automorphism":
        t_inv = pow(self.t, -1, self.n)
        return Automorphism(self.n, -t_inv * self.j, t_inv)

    def is_identity(self) -> bool:
        return self.j == 0 and self.t % self.n == 1 % self.n

    def label(self) -> str:
        return f"s[{self.j},{self.t}]"


class SplittingAlgebra(CycloRadicalAlgebra):
    """A = Q(zeta_n)[y]/(y^n - a): the splitting algebra of x^n - a."""

    def __init__(self, descriptor: RadicalDescriptor):
        super().__init__(descriptor.n, [(descriptor.n, descriptor.a)])
        self.descriptor = descriptor
        self.n = descriptor.n
        self.a = descriptor.a
        self._field_cert: Optional[FieldCertification] = None

    @property
    def field_certified(self) -> bool:
        return self._field_cert is not None and self._field_cert.status == "field"

    def certify_field(self) -> FieldCertification:
        if self._field_cert is None:
            if self.dim == 1:
                self._field_cert = FieldCertification(
                    status="field",
                    witness=self.one(),
                    min_poly=QPoly([-1, 1]),
                    factor_degrees=(1,),
                    degree=1,
                )
            else:
                self._field_cert = self.field_certify()
        return self._field_cert

    def automorphisms(self) -> list[Automorphism]:
        from math import gcd

        return [
            Automorphism(self.n, j, t)
            for j in range(self.n)
            for t in range(1, self.n + 1)
            if gcd(t, self.n) == 1
        ]

    def apply_automorphism(self, g: Automorphism, x: AlgElem) -> AlgElem:
        """Image of x under zeta -> zeta^t, alpha -> zeta^j alpha."""
        if g.n != self.n:
            raise ValueError("automorphism modulus mismatch")
        acc = [Q(0)] * self.dim
        for idx, c in enumerate(x.coords):
            if c == 0:
                continue
            i, (j0,) = self._decode[idx]
            e = (g.t * i + g.j * j0) % self.m
            base = j0 * self.phi
            for k, zc in enumerate(self._zpow[e]):
                if zc:
                    acc[base + k] += c * zc
        return AlgElem(self, tuple(acc))

    def invert(self, x: AlgElem) -> AlgElem:
        """Multiplicative inverse via the multiplication-by-x matrix."""
        if x.is_zero():
            raise NotInvertible("zero is not invertible")
        mat = self.multiplication_matrix(x)
        try:
            target = [Q(0)] * self.dim
            target[0] = Q(1)
            return AlgElem(self, mat.solve(target))
        except SingularMatrix as exc:
            raise NotInvertible("element is a zero divisor") from exc

    def member_subfield(self, x: AlgElem, which: str) -> bool:
        """Support test against the sub-basis of K, L = Q(alpha) or M = Q(zeta)."""
        if which not in ("K", "L", "M"):
            raise ValueError("which must be one of K, L, M")
        for idx, c in enumerate(x.coords):
            if c == 0:
                continue
            i, (j,) = self._decode[idx]
            if which == "K" and (i or j):
                return False
            if which == "L" and i:
                return False
            if which == "M" and j:
                return False
        return True

    def l_coordinates(self, x: AlgElem) -> tuple[Fraction, ...]:
        """Coordinates of an element of L over the power basis 1..alpha^(n-1)."""
        from .errors import NotInL

        if not self.member_subfield(x, "L"):
            raise NotInL("element has coordinates outside Q(alpha)")
        return tuple(x.coords[j * self.phi] for j in range(self.n))

    def from_l_coordinates(self, coords: Sequence) -> AlgElem:
        c = [Q(0)] * self.dim
        for j, v in enumerate(coords):
            c[j * self.phi] = Fraction(v)
        return self.elem(c)

    def elem_to_json(self, x: AlgElem) -> dict:
        coords = []
        for idx, c in enumerate(x.coords):
            if c == 0:
                continue
            i, (j,) = self._decode[idx]
            coords.append([i, j, qstr(c)])
        return {"basis": "zeta^i*alpha^j", "coords": coords}

    def to_json(self) -> dict:
        return {"descriptor": self.descriptor.to_json(), "dim": self.dim, "phi": self.phi}


def make_algebra(d: RadicalDescriptor) -> SplittingAlgebra:
    return SplittingAlgebra(d)


def elem_invert(algebra: SplittingAlgebra, x: AlgElem) -> AlgElem:
    return algebra.invert(x)


def apply_automorphism(algebra: SplittingAlgebra, g: Automorphism, x: AlgElem) -> AlgElem:
    return algebra.apply_automorphism(g, x)


def minimal_poly(algebra: CycloRadicalAlgebra, x: AlgElem) -> QPoly:
    return algebra.minimal_poly(x)


def certify_field(algebra: SplittingAlgebra) -> FieldCertification:
    return algebra.certify_field()


def member_subfield(algebra: SplittingAlgebra, x: AlgElem, which: str) -> bool:
    return algebra.member_subfield(x, which)


def require_field(algebra: SplittingAlgebra) -> None:
    cert = algebra.certify_field()
    if cert.status != "field":
        raise NotAField(
            f"Q(zeta_{algebra.n}, {algebra.n}-th root of {algebra.a}) is not a field "
            f"(status: {cert.status})"
        )


def compositum_degree(m: int, n: int, a: Fraction) -> int:
    """[Q(zeta_m, n-th root of a) : Q], via a certified primitive element.

    Since Q(zeta_m)/Q is Galois, the tensor algebra splits into factor
    fields of one common degree, which a full-degree primitive candidate
    exposes as the common degree of its minimal polynomial's irreducible
    factors. Raises IndeterminateResult if no candidate reaches full degree.
    """
    if not radical_irreducible(n, Fraction(a)):
        raise InvalidDescriptor(f"x^{n} - {a} is reducible over Q")
    alg = CycloRadicalAlgebra(m, [(n, Fraction(a))])
    cert = alg.field_certify()
    if cert.status == "field":
        return alg.dim
    if cert.status == "not_field" and cert.degree is not None:
        return cert.degree
    raise IndeterminateResult(
        f"no primitive candidate certified [Q(zeta_{m}, {n}-th root of {a}) : Q]"
    )


def tensor_radical_degree(descriptors: Sequence[RadicalDescriptor], m: int = 1) -> int:
    """[Q(zeta_m, roots...) : Q] for several radicals at once.

    Full-degree certification only: returns the dimension when the tensor
    algebra is a field, the common factor degree when it splits evenly, and
    raises IndeterminateResult otherwise.
    """
    alg = CycloRadicalAlgebra(m, [(d.n, d.a) for d in descriptors])
    cert = alg.field_certify()
    if cert.status == "field":
        return alg.dim
    if cert.status == "not_field" and cert.degree is not None:
        return cert.degree
    raise IndeterminateResult("tensor degree not certified")
