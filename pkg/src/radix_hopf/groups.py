"""Finite permutation groups, coset spaces, and regular-subgroup enumeration.

The Galois group of a radical splitting algebra acts on the coset space
X = G/G' through the left translation map; Hopf-Galois structures
correspond to the regular subgroups of Perm(X) normalized by that image.
Enumeration is exhaustive up to |X| = 8.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional, Sequence

from .algebra import Automorphism, SplittingAlgebra, require_field
from .errors import DegreeTooLarge

HARD_DEGREE_CAP = 8


def degree_cap(requested: Optional[int] = None) -> int:
    cap = requested
    if cap is None:
        env = os.environ.get("RADIX_HOPF_CAP")
        cap = int(env) if env else HARD_DEGREE_CAP
    return min(cap, HARD_DEGREE_CAP)


@dataclass(frozen=True)
class Perm:
    """Permutation of 0..d-1 as an image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images must be a bijection on 0..d-1")

    @staticmethod
    def identity(d: int) -> "Perm":
        return Perm(tuple(range(d)))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def compose(self, other: "Perm") -> "Perm":
        """self after other."""
        return Perm(tuple(self.images[other.images[x]] for x in range(len(self.images))))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for x, i in enumerate(self.images))

    def fixed_points(self) -> list[int]:
        return [x for x, y in enumerate(self.images) if x == y]

    def to_json(self) -> list[int]:
        return list(self.images)


class FiniteGroup:
    """Multiplication-table group over element indices 0..order-1."""

    def __init__(self, table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None):
        self.order = len(table)
        self.table = tuple(tuple(row) for row in table)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.order))
        for row in self.table:
            if len(row) != self.order or sorted(row) != list(range(self.order)):
                raise ValueError("rows must be permutations of the element set")
        self.identity = self._find_identity()
        self._inverse = self._find_inverses()
        self._check_associativity()

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(self.order)):
                return e
        raise ValueError("no identity element")

    def _find_inverses(self) -> tuple[int, ...]:
        inv = [-1] * self.order
        for x in range(self.order):
            for y in range(self.order):
                if self.table[x][y] == self.identity and self.table[y][x] == self.identity:
                    inv[x] = y
                    break
            if inv[x] < 0:
                raise ValueError("element without inverse")
        return tuple(inv)

    def _check_associativity(self) -> None:
        for a in range(self.order):
            for b in range(self.order):
                ab = self.table[a][b]
                for c in range(self.order):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("multiplication table is not associative")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    def exponent(self) -> int:
        from math import lcm

        exp = 1
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.mul(x, a)
                k += 1
            exp = lcm(exp, k)
        return exp

    def subgroup_closure(self, gens: Iterable[int]) -> frozenset[int]:
        els = {self.identity}
        frontier = list(set(gens))
        els.update(frontier)
        while frontier:
            nxt = []
            for a in list(els):
                for b in frontier:
                    c = self.mul(a, b)
                    if c not in els:
                        els.add(c)
                        nxt.append(c)
            frontier = nxt
        return frozenset(els)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        return self.identity in s and all(self.mul(a, b) in s for a in s for b in s)

    def is_normal(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        return all(
            self.mul(self.mul(g, h), self.inv(g)) in s for g in range(self.order) for h in s
        )

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        return FiniteGroup(
            [[(i + j) % n for j in range(n)] for i in range(n)],
            labels=[f"g^{i}" for i in range(n)],
        )

    @staticmethod
    def symmetric(n: int) -> "FiniteGroup":
        els = [Perm(p) for p in permutations(range(n))]
        index = {p: i for i, p in enumerate(els)}
        table = [[index[a.compose(b)] for b in els] for a in els]
        return FiniteGroup(table, labels=[str(list(p.images)) for p in els])


class CosetSpace:
    """X = G/G' with canonical representatives and the left translation map."""

    def __init__(self, group: FiniteGroup, subgroup: Iterable[int]):
        self.group = group
        self.subgroup = frozenset(subgroup)
        if not group.is_subgroup(self.subgroup):
            raise ValueError("subgroup is not closed")
        # Cosets keyed by minimal member index; representative = that member.
        coset_of = [-1] * group.order
        reps: list[int] = []
        for g in range(group.order):
            if coset_of[g] >= 0:
                continue
            members = sorted(group.mul(g, h) for h in self.subgroup)
            rep_index = len(reps)
            reps.append(members[0])
            for x in members:
                coset_of[x] = rep_index
        self.reps = tuple(reps)
        self.coset_of = tuple(coset_of)
        self.size = len(reps)
        self.identity_coset = coset_of[group.identity]

    def lam(self, g: int) -> Perm:
        """Left translation lambda(g): hG' -> ghG'."""
        return Perm(
            tuple(self.coset_of[self.group.mul(g, self.reps[x])] for x in range(self.size))
        )

    def lambda_image(self) -> dict[Perm, list[int]]:
        """Map from permutation to the group elements landing on it."""
        image: dict[Perm, list[int]] = {}
        for g in self.group.elements():
            image.setdefault(self.lam(g), []).append(g)
        return image

    def coset_members(self, x: int) -> list[int]:
        return [g for g in self.group.elements() if self.coset_of[g] == x]


@dataclass(frozen=True)
class RegularSubgroup:
    """A regular subgroup of Perm(X) normalized by lambda(G)."""

    elements: frozenset[Perm]
    label: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_perms(perms: Iterable[Perm]) -> "RegularSubgroup":
        els = frozenset(perms)
        return RegularSubgroup(elements=els, label=tuple(sorted(p.images for p in els)))

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list[Perm]:
        return sorted(self.elements, key=lambda p: p.images)

    def is_abelian(self) -> bool:
        els = self.sorted_elements()
        return all(a.compose(b) == b.compose(a) for a in els for b in els)

    def to_json(self) -> list[list[int]]:
        return [list(imgs) for imgs in self.label]


def is_regular(perms: Iterable[Perm], size: int) -> bool:
    """Simply transitive on 0..size-1: the orbit map at 0 is a bijection."""
    seen = set()
    count = 0
    for p in perms:
        seen.add(p(0))
        count += 1
    return count == size and len(seen) == size


def is_closed(perms: frozenset[Perm]) -> bool:
    return all(a.compose(b) in perms for a in perms for b in perms)


def is_normalized_by(perms: frozenset[Perm], conjugators: Iterable[Perm]) -> bool:
    for c in conjugators:
        cinv = c.inverse()
        for p in perms:
            if c.compose(p).compose(cinv) not in perms:
                return False
    return True


def radical_galois_group(algebra: SplittingAlgebra) -> tuple[FiniteGroup, CosetSpace]:
    """G = Gal(closure/Q) with G' the stabilizer of L, as an indexed group.

    Element i of the group corresponds to algebra automorphism sigma_{j,t};
    the multiplication table matches composition of automorphisms.
    """
    require_field(algebra)
    autos = algebra.automorphisms()
    index = {(g.j, g.t): i for i, g in enumerate(autos)}
    table = [
        [index[(a.compose(b).j, a.compose(b).t)] for b in autos]
        for a in autos
    ]
    group = FiniteGroup(table, labels=[g.label() for g in autos])
    group.automorphisms = autos  # type: ignore[attr-defined]
    stabilizer = [i for i, g in enumerate(autos) if g.j == 0]
    return group, CosetSpace(group, stabilizer)


def _candidate_pool(coset_space: CosetSpace) -> list[Perm]:
    """Fixed-point-free permutations of X with order dividing |X|.

    Every non-identity element of a regular subgroup is fixed-point-free
    and has order dividing the group order, so this pool is exhaustive.
    """
    size = coset_space.size
    pool = []
    for images in permutations(range(size)):
        p = Perm(images)
        if p.is_identity():
            continue
        if p.fixed_points():
            continue
        k, q = 1, p
        while not q.is_identity():
            q = q.compose(p)
            k += 1
        if size % k == 0:
            pool.append(p)
    return pool


def enumerate_structures(
    coset_space: CosetSpace, cap: Optional[int] = None
) -> list[RegularSubgroup]:
    """All regular subgroups of Perm(X) normalized by lambda(G), sorted.

    Strategy: candidates are first grouped into orbits of conjugation by
    lambda(G) (a normalized subgroup is a union of whole orbits plus the
    identity); a backtracking search then assembles closed unions of orbits
    of total size |X| - 1 and filters for regularity.
    """
    size = coset_space.size
    if size > degree_cap(cap):
        raise DegreeTooLarge(f"|X| = {size} exceeds the enumeration cap")
    ident = Perm.identity(size)
    if size == 1:
        return [RegularSubgroup.from_perms([ident])]

    lam_perms = sorted({coset_space.lam(g) for g in coset_space.group.elements()},
                       key=lambda p: p.images)
    pool = _candidate_pool(coset_space)
    pool_set = set(pool)

    # Conjugation orbits of lambda(G) on the candidate pool.
    orbit_of: dict[Perm, int] = {}
    orbits: list[frozenset[Perm]] = []
    for p in pool:
        if p in orbit_of:
            continue
        orbit = {p}
        frontier = [p]
        while frontier:
            q = frontier.pop()
            for c in lam_perms:
                conj = c.compose(q).compose(c.inverse())
                if conj not in orbit:
                    if conj not in pool_set:
                        # Orbit escapes the pool: cannot sit inside any
                        # regular subgroup, discard it entirely.
                        orbit = None
                        frontier = []
                        break
                    orbit.add(conj)
                    frontier.append(conj)
            if orbit is None:
                break
        if orbit is None:
            continue
        idx = len(orbits)
        orbits.append(frozenset(orbit))
        for q in orbit:
            orbit_of[q] = idx

    usable = [o for o in orbits if len(o) <= size - 1]
    usable.sort(key=lambda o: tuple(sorted(p.images for p in o)))

    found: set[RegularSubgroup] = set()

    def closure_ok(selection: frozenset[Perm]) -> Optional[frozenset[Perm]]:
        els = selection | {ident}
        if not is_closed(els):
            return None
        return els

    def search(start: int, chosen: list[frozenset[Perm]], total: int) -> None:
        if total == size - 1:
            sel = frozenset().union(*chosen) if chosen else frozenset()
            els = closure_ok(sel)
            if els and is_regular(els, size):
                found.add(RegularSubgroup.from_perms(els))
            return
        for i in range(start, len(usable)):
            o = usable[i]
            if total + len(o) > size - 1:
                continue
            # Partial-closure prune: products within the chosen set must not
            # escape the candidate pool plus identity.
            trial = list(chosen) + [o]
            sel = frozenset().union(*trial)
            ok = True
            for a in sel:
                for b in sel:
                    c = a.compose(b)
                    if not c.is_identity() and c not in pool_set:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                search(i + 1, trial, total + len(o))

    search(0, [], 0)
    return sorted(found, key=lambda n: n.label)


def enumerate_structures_naive(coset_space: CosetSpace) -> list[RegularSubgroup]:
    """Independent oracle: subgroups generated by <= 2 pool elements.

    Valid for |X| <= 5 (groups of order <= 5 need at most two generators;
    in fact one except for the Klein group, which cannot occur below 4).
    """
    size = coset_space.size
    if size > 5:
        raise DegreeTooLarge("naive oracle supports |X| <= 5 only")
    ident = Perm.identity(size)
    if size == 1:
        return [RegularSubgroup.from_perms([ident])]
    lam_perms = [coset_space.lam(g) for g in coset_space.group.elements()]
    all_perms = [Perm(p) for p in permutations(range(size))]

    def mulclose(gens: list[Perm]) -> Optional[frozenset[Perm]]:
        els = {ident, *gens}
        frontier = list(els)
        while frontier:
            nxt = []
            for a in list(els):
                for b in frontier:
                    for c in (a.compose(b), b.compose(a)):
                        if c not in els:
                            els.add(c)
                            nxt.append(c)
                            if len(els) > size:
                                return None
            frontier = nxt
        return frozenset(els)

    found = set()
    for i, g1 in enumerate(all_perms):
        for g2 in all_perms[i:]:
            els = mulclose([g1, g2])
            if els is None or len(els) != size:
                continue
            if not is_regular(els, size):
                continue
            if not is_normalized_by(els, lam_perms):
                continue
            found.add(RegularSubgroup.from_perms(els))
    return sorted(found, key=lambda n: n.label)


def opposite(coset_space: CosetSpace, n: RegularSubgroup) -> RegularSubgroup:
    """The centralizer of N in Perm(X); regular, equal to N when N abelian."""
    size = coset_space.size
    els = n.sorted_elements()
    cent = []
    for images in permutations(range(size)):
        p = Perm(images)
        if all(p.compose(q) == q.compose(p) for q in els):
            cent.append(p)
    opp = RegularSubgroup.from_perms(cent)
    if not is_regular(opp.elements, size):
        raise AssertionError("centralizer of a regular subgroup must be regular")
    return opp


@dataclass(frozen=True)
class AlmostClassicalVerdict:
    almost_classical: bool
    complement: Optional[frozenset[int]] = None  # J as group-element indices
    complement_is_full_group: bool = False
    note: str = ""

    @property
    def has_complement_witness(self) -> bool:
        return self.complement is not None


def almost_classical_test(
    coset_space: CosetSpace, n: RegularSubgroup
) -> AlmostClassicalVerdict:
    """N^opp inside lambda(G)?  With a normal-complement witness when found.

    When N = lambda(J)^opp for a normal complement J of G', returns J; an
    almost classical structure without such a J is still reported, labeled
    "almost classical, no complement witness".
    """
    opp = opposite(coset_space, n)
    image = coset_space.lambda_image()
    if not all(p in image for p in opp.elements):
        return AlmostClassicalVerdict(almost_classical=False)
    group = coset_space.group
    j_set = {g for p in opp.elements for g in image[p]}
    note = "almost classical, no complement witness"
    if (
        group.is_subgroup(j_set)
        and group.is_normal(j_set)
        and len(j_set) == coset_space.size
        and len(j_set & coset_space.subgroup) == 1
    ):
        # Verify N really is lambda(J)^opp.
        lam_j = RegularSubgroup.from_perms(coset_space.lam(g) for g in j_set)
        if opposite(coset_space, lam_j).elements == n.elements:
            if j_set == set(group.elements()):
                return AlmostClassicalVerdict(
                    almost_classical=True,
                    complement=frozenset(j_set),
                    complement_is_full_group=True,
                    note="classical Galois structure",
                )
            return AlmostClassicalVerdict(
                almost_classical=True, complement=frozenset(j_set)
            )
    return AlmostClassicalVerdict(almost_classical=True, note=note)


def canonical_almost_classical(
    algebra: SplittingAlgebra, coset_space: CosetSpace
) -> RegularSubgroup:
    """The structure corresponding to M = Q(zeta_n): N = lambda(J)^opp, J = <sigma>.

    J is the cyclic group of the automorphisms fixing zeta, always a normal
    complement of G' for the radical family; J abelian makes N = lambda(J).
    """
    group = coset_space.group
    autos = group.automorphisms  # type: ignore[attr-defined]
    j_indices = [i for i, g in enumerate(autos) if g.t % algebra.n == 1 % algebra.n]
    lam_j = RegularSubgroup.from_perms(coset_space.lam(g) for g in j_indices)
    n = opposite(coset_space, lam_j)
    verdict = almost_classical_test(coset_space, n)
    if not (verdict.almost_classical and verdict.has_complement_witness):
        raise AssertionError("canonical radical structure must be almost classical")
    return n


# ---------------------------------------------------------------------------
# Product subgroups on compositum coset spaces
# ---------------------------------------------------------------------------


class ProductCosetSpace:
    """Coset space of a compositum, identified with X1 x X2.

    The translation image used for normalization checks is the componentwise
    image of lambda_1(G_1) x lambda_2(G_2); the compositum Galois group embeds
    into the product, so normalization under the product image is sufficient.
    """

    def __init__(self, x1: "CosetSpace | ProductCosetSpace", x2: "CosetSpace | ProductCosetSpace"):
        self.factors = (x1, x2)
        self.size = x1.size * x2.size
        self.identity_coset = self.pair_to_point(x1.identity_coset, x2.identity_coset)

    def pair_to_point(self, p1: int, p2: int) -> int:
        return p1 * self.factors[1].size + p2

    def point_to_pair(self, x: int) -> tuple[int, int]:
        return divmod(x, self.factors[1].size)

    def iota(self, phi1: Perm, phi2: Perm) -> Perm:
        """Componentwise permutation on X1 x X2."""
        n2 = self.factors[1].size
        images = []
        for x in range(self.size):
            p1, p2 = divmod(x, n2)
            images.append(phi1(p1) * n2 + phi2(p2))
        return Perm(tuple(images))

    def translation_image(self) -> list[Perm]:
        x1, x2 = self.factors
        lam1 = self._lam_perms(x1)
        lam2 = self._lam_perms(x2)
        return [self.iota(p1, p2) for p1 in lam1 for p2 in lam2]

    @staticmethod
    def _lam_perms(x) -> list[Perm]:
        if isinstance(x, ProductCosetSpace):
            return x.translation_image()
        return sorted({x.lam(g) for g in x.group.elements()}, key=lambda p: p.images)


def product_subgroup(
    x1, n1: RegularSubgroup, x2, n2: RegularSubgroup
) -> tuple[ProductCosetSpace, RegularSubgroup]:
    """N = iota(N1 x N2) on X1 x X2, verified regular and normalized."""
    product = ProductCosetSpace(x1, x2)
    els = [product.iota(p1, p2) for p1 in n1.sorted_elements() for p2 in n2.sorted_elements()]
    n = RegularSubgroup.from_perms(els)
    if not is_closed(n.elements) or not is_regular(n.elements, product.size):
        raise AssertionError("componentwise product must be a regular subgroup")
    if not is_normalized_by(n.elements, product.translation_image()):
        raise AssertionError("product subgroup must be normalized by the translation image")
    return product, n
