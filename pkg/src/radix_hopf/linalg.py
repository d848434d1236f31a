"""Exact dense linear algebra over Q and integer lattice normal forms.

Everything is built on ``fractions.Fraction``; no floats anywhere. Matrices
are immutable row-major tuples. The Hermite normal form follows the
row-operations-on-the-left convention: ``U . M = [D; 0]`` with ``U``
unimodular and ``D`` upper-triangular with positive pivots, entries above
each pivot reduced into ``[0, pivot)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import SingularMatrix

Q = Fraction


def qstr(x: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(x))


def qparse(s: str) -> Fraction:
    return Fraction(s.strip())


def _as_fraction_rows(rows: Iterable[Iterable]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(e) for e in row) for row in rows)


class QMatrix:
    """Immutable matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows_data: Iterable[Iterable]):
        data = _as_fraction_rows(rows_data)
        self.data = data
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    @staticmethod
    def identity(n: int) -> "QMatrix":
        return QMatrix([[Q(int(i == j)) for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "QMatrix":
        return QMatrix([[Q(0)] * cols for _ in range(rows)])

    @staticmethod
    def from_columns(columns: Sequence[Sequence]) -> "QMatrix":
        cols = [tuple(Fraction(e) for e in c) for c in columns]
        if not cols:
            return QMatrix([])
        n = len(cols[0])
        return QMatrix([[c[i] for c in cols] for i in range(n)])

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(qstr(e) for e in row) for row in self.data)
        return f"QMatrix[{self.rows}x{self.cols}: {body}]"

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.data)

    def transpose(self) -> "QMatrix":
        return QMatrix([self.column(j) for j in range(self.cols)])

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return QMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ]
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + other.scale(Q(-1))

    def scale(self, c) -> "QMatrix":
        c = Fraction(c)
        return QMatrix([[c * e for e in row] for row in self.data])

    def __mul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose().data
        return QMatrix(
            [
                [sum((a * b for a, b in zip(row, col)), Q(0)) for col in ot]
                for row in self.data
            ]
        )

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        v = [Fraction(e) for e in vec]
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum((a * b for a, b in zip(row, v)), Q(0)) for row in self.data)

    def stack(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.cols:
            raise ValueError("shape mismatch")
        return QMatrix(list(self.data) + list(other.data))

    def is_integer(self) -> bool:
        return all(e.denominator == 1 for row in self.data for e in row)

    def denominator_lcm(self) -> int:
        d = 1
        for row in self.data:
            for e in row:
                d = lcm(d, e.denominator)
        return d

    def det(self) -> Fraction:
        """Determinant via fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return Q(1)
        # Clear denominators so the Bareiss recurrence stays integral.
        d = self.denominator_lcm()
        m = [[int(e * d) for e in row] for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return Q(0)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return Q(sign * m[n - 1][n - 1], d**n)

    def rref(self) -> tuple["QMatrix", list[int]]:
        """Reduced row echelon form and pivot column indices."""
        m = [list(row) for row in self.data]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pivot_row = None
            for i in range(r, self.rows):
                if m[i][c] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = 1 / m[r][c]
            m[r] = [e * inv for e in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return QMatrix(m), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """Basis of the right kernel, one vector per free column."""
        red, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for f in free:
            v = [Q(0)] * self.cols
            v[f] = Q(1)
            for r, p in enumerate(pivots):
                v[p] = -red.entry(r, f)
            basis.append(tuple(v))
        return basis

    def inverse(self) -> "QMatrix":
        """Exact inverse; raises SingularMatrix when det = 0."""
        if self.rows != self.cols:
            raise SingularMatrix("non-square matrix")
        n = self.rows
        aug = QMatrix([list(row) + list(QMatrix.identity(n).data[i]) for i, row in enumerate(self.data)])
        red, pivots = aug.rref()
        if pivots != list(range(n)):
            raise SingularMatrix("matrix is singular")
        return QMatrix([row[n:] for row in red.data])

    def solve(self, rhs: Sequence) -> tuple[Fraction, ...]:
        """Solve self . x = rhs for square invertible self."""
        return self.inverse().apply(rhs)

    def kronecker(self, other: "QMatrix") -> "QMatrix":
        out = []
        for r1 in self.data:
            for r2 in other.data:
                out.append([a * b for a in r1 for b in r2])
        return QMatrix(out)

    def to_json(self) -> list[list[str]]:
        return [[qstr(e) for e in row] for row in self.data]


def mat_inverse(m: QMatrix) -> QMatrix:
    return m.inverse()


@dataclass(frozen=True)
class HnfResult:
    transform: QMatrix  # unimodular U, integer entries
    reduced: QMatrix    # top nonzero block D
    rank: int


def hnf_reduce(m: QMatrix) -> HnfResult:
    """Row-style Hermite normal form with recorded unimodular transform.

    Requires integer entries (callers clear denominators first). Returns U
    with U . m = [D; 0], det(U) = +-1, and D in the convention documented in
    the module docstring. Deterministic for a fixed input.
    """
    if not m.is_integer():
        raise ValueError("hnf_reduce requires integer entries")
    rows, cols = m.rows, m.cols
    a = [[int(e) for e in row] for row in m.data]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]

    def row_op(i: int, j: int, q: int) -> None:
        # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    r = 0
    for c in range(cols):
        # Euclidean reduction below the pivot row until one nonzero remains.
        while True:
            live = [i for i in range(r, rows) if a[i][c] != 0]
            if not live:
                break
            pivot = min(live, key=lambda i: abs(a[i][c]))
            if pivot != r:
                swap(r, pivot)
            done = True
            for i in range(r + 1, rows):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    row_op(i, r, q)
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if r < rows and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            # Reduce entries above the pivot into [0, pivot).
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    row_op(i, r, q)
            r += 1
            if r == rows:
                break
    reduced = QMatrix(a[:r]) if r else QMatrix.zero(0, cols)
    return HnfResult(transform=QMatrix(u), reduced=reduced, rank=r)


def fixed_subspace(maps: Sequence[QMatrix]) -> QMatrix:
    """Echelonized basis (as columns) of the common fixed space of the maps.

    Computes ker(F - id) intersected over all maps, returned in a canonical
    form: the basis, viewed as rows, is the RREF of the solution space, and
    columns come out in pivot-ascending order.
    """
    if not maps:
        raise ValueError("need at least one map")
    n = maps[0].rows
    for f in maps:
        if f.rows != n or f.cols != n:
            raise ValueError("maps must be square of equal dimension")
    stacked_rows = []
    ident = QMatrix.identity(n)
    for f in maps:
        stacked_rows.extend((f - ident).data)
    kernel = QMatrix(stacked_rows).nullspace()
    if not kernel:
        return QMatrix.zero(n, 0)
    echelon, _ = QMatrix(kernel).rref()
    basis_rows = [row for row in echelon.data if any(e != 0 for e in row)]
    return QMatrix(basis_rows).transpose()


def smith_invariant_factors(m: QMatrix) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    if not m.is_integer():
        raise ValueError("integer matrix required")
    a = [[int(e) for e in row] for row in m.data]
    rows = len(a)
    cols = len(a[0]) if a else 0
    factors: list[int] = []
    top = 0
    while True:
        # Find a nonzero entry in the remaining block.
        pos = None
        for i in range(top, rows):
            for j in range(top, cols):
                if a[i][j] != 0:
                    pos = (i, j)
                    break
            if pos:
                break
        if pos is None:
            break
        while True:
            i0, j0 = min(
                ((i, j) for i in range(top, rows) for j in range(top, cols) if a[i][j] != 0),
                key=lambda ij: abs(a[ij[0]][ij[1]]),
            )
            a[top], a[i0] = a[i0], a[top]
            for row in a:
                row[top], row[j0] = row[j0], row[top]
            p = a[top][top]
            dirty = False
            for i in range(top + 1, rows):
                q = a[i][top] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                if a[i][top] != 0:
                    dirty = True
            for j in range(top + 1, cols):
                q = a[top][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[top]
                if a[top][j] != 0:
                    dirty = True
            if dirty:
                continue
            # Pivot must divide every remaining entry for true SNF.
            offender = None
            for i in range(top + 1, rows):
                for j in range(top + 1, cols):
                    if a[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            a[top] = [x + y for x, y in zip(a[top], a[offender])]
        factors.append(abs(a[top][top]))
        top += 1
        if top == rows or top == cols:
            break
    return factors


def smith_rank_mod(m: QMatrix, n: int) -> int:
    """Number of invariant factors of m not congruent to 0 mod n."""
    if n <= 0:
        raise ValueError("modulus must be positive")
    return sum(1 for d in smith_invariant_factors(m) if d % n != 0)


# ---------------------------------------------------------------------------
# Lattice utilities (full-rank-free, all exact)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeHNF:
    """Canonical form of a lattice of rational row vectors.

    The lattice is (1/denominator) * rowspan_Z(basis) with `basis` an
    integer HNF block; two lattices are equal iff their LatticeHNFs are.
    """

    denominator: int
    basis: QMatrix

    def to_json(self) -> dict:
        return {"denominator": str(self.denominator), "basis": self.basis.to_json()}


def lattice_hnf(rows: QMatrix) -> LatticeHNF:
    """Canonicalize the Z-span of rational rows."""
    d = rows.denominator_lcm()
    cleared = rows.scale(d)
    res = hnf_reduce(cleared)
    basis = res.reduced
    # Normalize the scale: divide out the content common to d and the basis.
    g = d
    for row in basis.data:
        for e in row:
            g = gcd(g, int(e))
    if g > 1:
        basis = QMatrix([[e / g for e in row] for row in basis.data])
        d //= g
    return LatticeHNF(denominator=d, basis=basis)


def lattice_equal(a: LatticeHNF, b: LatticeHNF) -> bool:
    return a.denominator == b.denominator and a.basis == b.basis


def left_kernel_basis(m: QMatrix) -> list[tuple[int, ...]]:
    """Integer basis of {u : u . m = 0} for an integer matrix m."""
    res = hnf_reduce(m)
    return [tuple(int(e) for e in row) for row in res.transform.data[res.rank:]]


def lattice_intersection(a: QMatrix, b: QMatrix) -> QMatrix:
    """Rows spanning rowspan_Z(a) intersected with rowspan_Z(b)."""
    if a.cols != b.cols:
        raise ValueError("ambient dimensions differ")
    stacked = a.stack(b)
    gens = []
    for u in left_kernel_basis(stacked):
        x = u[: a.rows]
        vec = [
            sum(x[i] * a.entry(i, j) for i in range(a.rows))
            for j in range(a.cols)
        ]
        if any(vec):
            gens.append(vec)
    if not gens:
        return QMatrix.zero(0, a.cols)
    res = hnf_reduce(QMatrix(gens))
    return res.reduced


def quotient_invariant_factors(lattice: QMatrix, sublattice: QMatrix) -> list[int]:
    """Invariant factors of rowspan(lattice) / rowspan(sublattice).

    Requires the sublattice to have finite index in the lattice (same rank);
    zero factors would signal infinite quotient and raise instead.
    """
    lat = hnf_reduce(lattice).reduced
    coords = []
    for row in sublattice.data:
        # Back-substitute against the upper-triangular HNF basis.
        rem = list(row)
        c = [Q(0)] * lat.rows
        for i in range(lat.rows):
            pcol = next(j for j in range(lat.cols) if lat.entry(i, j) != 0)
            q = Fraction(rem[pcol], lat.entry(i, pcol))
            if q.denominator != 1:
                raise ValueError("sublattice not contained in lattice")
            c[i] = q
            rem = [x - q * y for x, y in zip(rem, lat.data[i])]
        if any(rem):
            raise ValueError("sublattice not contained in lattice")
        coords.append(c)
    factors = smith_invariant_factors(QMatrix(coords))
    if len(factors) < lat.rows:
        raise ValueError("quotient is infinite")
    return factors
