"""Exact arithmetic for finite abelian groups.

A group is a product of cyclic prime-power factors in canonical order
(primes increasing, exponents decreasing within a prime).  Elements are
residue tuples, one residue per factor.  Subgroups are stored as the
Hermite normal form of the lattice spanned by their generators together
with the factor-order relations, which makes equality, membership and
index computations exact and canonical.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .integermat import hermite_normal_form, kernel_basis, smith_diagonal

ORACLE_CAP = 4096


class OracleScaleError(ValueError):
    """Raised when a brute-force oracle is asked to run beyond desk scale."""


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(n):
    return [p for p in range(2, n + 1) if _is_prime(p)]


class FiniteAbelianGroup:
    """Product of Z/p^e factors in canonical form."""

    def __init__(self, primary_decomposition):
        canon = []
        seen = set()
        for p, exponents in sorted(primary_decomposition):
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            if p in seen:
                raise ValueError(f"duplicate prime {p}")
            seen.add(p)
            exps = sorted(exponents, reverse=True)
            if not exps or any(e < 1 for e in exps):
                raise ValueError("exponents must be >= 1")
            canon.append((p, tuple(exps)))
        self.primary_decomposition = tuple(canon)
        self.factor_orders = tuple(
            p ** e for p, exps in self.primary_decomposition for e in exps
        )
        self.factor_primes = tuple(
            p for p, exps in self.primary_decomposition for _ in exps
        )
        self.order = math.prod(self.factor_orders) if self.factor_orders else 1
        self.rank = len(self.factor_orders)

    @classmethod
    def trivial(cls):
        return cls([])

    @classmethod
    def from_cyclic_orders(cls, orders):
        """Group Z/n_1 + ... + Z/n_k given by arbitrary cyclic orders."""
        by_prime: dict[int, list[int]] = {}
        for n in orders:
            if n < 1:
                raise ValueError("cyclic orders must be >= 1")
            m = n
            p = 2
            while p * p <= m:
                if m % p == 0:
                    e = 0
                    while m % p == 0:
                        m //= p
                        e += 1
                    by_prime.setdefault(p, []).append(e)
                p += 1
            if m > 1:
                by_prime.setdefault(m, []).append(1)
        return cls(sorted(by_prime.items()))

    @classmethod
    def from_json(cls, data):
        return cls([(f["p"], list(f["exponents"])) for f in data["primary"]])

    def to_json(self):
        return {
            "primary": [
                {"p": p, "exponents": list(exps)}
                for p, exps in self.primary_decomposition
            ]
        }

    def primes(self):
        return [p for p, _ in self.primary_decomposition]

    def is_p_group(self):
        return len(self.primary_decomposition) <= 1

    def element(self, residues):
        return GroupElement(self, residues)

    def identity(self):
        return GroupElement(self, (0,) * self.rank)

    def generators(self):
        """Canonical cyclic generators, one unit vector per factor."""
        out = []
        for i in range(self.rank):
            res = [0] * self.rank
            res[i] = 1
            out.append(GroupElement(self, res))
        return out

    def elements(self):
        """All elements in lexicographic residue order."""
        for res in itertools.product(*(range(m) for m in self.factor_orders)):
            yield GroupElement(self, res)

    def exponent(self):
        return math.lcm(*self.factor_orders) if self.factor_orders else 1

    def __eq__(self, other):
        return (
            isinstance(other, FiniteAbelianGroup)
            and self.primary_decomposition == other.primary_decomposition
        )

    def __hash__(self):
        return hash(self.primary_decomposition)

    def __repr__(self):
        if not self.factor_orders:
            return "FiniteAbelianGroup(trivial)"
        desc = " + ".join(f"Z/{m}" for m in self.factor_orders)
        return f"FiniteAbelianGroup({desc})"


class GroupElement:
    __slots__ = ("group", "residues")

    def __init__(self, group, residues):
        residues = tuple(residues)
        if len(residues) != group.rank:
            raise ValueError("residue tuple has wrong length")
        self.group = group
        self.residues = tuple(
            r % m for r, m in zip(residues, group.factor_orders)
        )

    def __mul__(self, other):
        if self.group != other.group:
            raise ValueError("elements of different groups")
        return GroupElement(
            self.group, [a + b for a, b in zip(self.residues, other.residues)]
        )

    def __pow__(self, n):
        return GroupElement(self.group, [n * r for r in self.residues])

    def inverse(self):
        return GroupElement(self.group, [-r for r in self.residues])

    def order(self):
        if not self.residues:
            return 1
        return math.lcm(
            *(
                m // math.gcd(r, m)
                for r, m in zip(self.residues, self.group.factor_orders)
            )
        )

    def is_identity(self):
        return all(r == 0 for r in self.residues)

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.group == other.group
            and self.residues == other.residues
        )

    def __lt__(self, other):
        return self.residues < other.residues

    def __hash__(self):
        return hash((self.group, self.residues))

    def __repr__(self):
        return f"GroupElement{self.residues}"


class Subgroup:
    """Subgroup of a FiniteAbelianGroup, canonically represented.

    Internally the subgroup is the lattice L with diag(m) Z^k <= L <= Z^k,
    where m is the tuple of factor orders; ``canonical_basis`` is the
    k x k Hermite normal form of L, so two Subgroup objects are equal iff
    they contain the same elements.
    """

    def __init__(self, parent, generators):
        self.parent = parent
        self.generators = tuple(generators)
        for g in self.generators:
            if g.group != parent:
                raise ValueError("generator from a different group")
        k = parent.rank
        rows = [list(g.residues) for g in self.generators]
        for i, m in enumerate(parent.factor_orders):
            rows.append([m if j == i else 0 for j in range(k)])
        if k == 0:
            self.canonical_basis = ()
            self.index = 1
        else:
            basis = hermite_normal_form(rows, k)
            self.canonical_basis = tuple(basis)
            self.index = math.prod(basis[i][i] for i in range(k))
        self.order = parent.order // self.index

    @classmethod
    def whole(cls, parent):
        return cls(parent, parent.generators())

    @classmethod
    def trivial_subgroup(cls, parent):
        return cls(parent, [])

    @classmethod
    def cyclic(cls, element):
        return cls(element.group, [element])

    @classmethod
    def from_rows(cls, parent, rows):
        gens = [GroupElement(parent, r) for r in rows]
        return cls(parent, [g for g in gens if not g.is_identity()])

    def basis_elements(self):
        """Generating set read off the canonical basis."""
        out = []
        for row in self.canonical_basis:
            g = GroupElement(self.parent, row)
            if not g.is_identity():
                out.append(g)
        return out

    def contains(self, element):
        if element.group != self.parent:
            raise ValueError("element of a different group")
        v = list(element.residues)
        for i, row in enumerate(self.canonical_basis):
            if v[i] % row[i] != 0:
                return False
            q = v[i] // row[i]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return all(a == 0 for a in v)

    def contains_subgroup(self, other):
        return all(self.contains(g) for g in other.basis_elements())

    def elements(self):
        """All elements, by closure over the basis generators."""
        gens = self.basis_elements()
        seen = {self.parent.identity()}
        frontier = [self.parent.identity()]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x * g
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def powers(self, t):
        """The subgroup {x^t : x in self}."""
        rows = [[t * a for a in row] for row in self.canonical_basis]
        return Subgroup.from_rows(self.parent, rows)

    def intersect(self, other):
        return intersect(self, other)

    def join(self, other):
        if other.parent != self.parent:
            raise ValueError("subgroups of different parents")
        return Subgroup(self.parent, self.basis_elements() + other.basis_elements())

    def invariant_factors(self):
        """Cyclic decomposition of the subgroup itself."""
        k = self.parent.rank
        if k == 0 or self.order == 1:
            return []
        # self = L / diag(m).  Solve diag(m) = Q B for the basis B of L,
        # then the subgroup is Z^k / Q-lattice.
        basis = [list(r) for r in self.canonical_basis]
        q_rows = []
        for i, m in enumerate(self.parent.factor_orders):
            v = [m if j == i else 0 for j in range(k)]
            coeffs = [0] * k
            for j in range(k):
                coeffs[j] = v[j] // basis[j][j]
                v = [a - coeffs[j] * b for a, b in zip(v, basis[j])]
            q_rows.append(coeffs)
        entries = {
            (i, j): q_rows[i][j]
            for i in range(k)
            for j in range(k)
            if q_rows[i][j]
        }
        diag = smith_diagonal(entries, k, k)
        return sorted((d for d in diag if d > 1), reverse=True)

    def quotient_invariant_factors(self):
        """Cyclic decomposition of parent / self."""
        k = self.parent.rank
        if k == 0:
            return []
        entries = {
            (i, j): self.canonical_basis[i][j]
            for i in range(k)
            for j in range(k)
            if self.canonical_basis[i][j]
        }
        diag = smith_diagonal(entries, k, k)
        return sorted((d for d in diag if d > 1), reverse=True)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent == other.parent
            and self.canonical_basis == other.canonical_basis
        )

    def __hash__(self):
        return hash((self.parent, self.canonical_basis))

    def __repr__(self):
        return f"Subgroup(order={self.order}, index={self.index})"


class Character:
    """Character of a finite abelian group, given by an exponent vector.

    The value on an element x is exp(2*pi*i * sum_i exponents_i * x_i / m_i)
    where m_i are the factor orders; values are represented exactly as
    rotation numbers in [0, 1).
    """

    def __init__(self, parent, exponents):
        exponents = tuple(exponents)
        if len(exponents) != parent.rank:
            raise ValueError("exponent tuple has wrong length")
        self.parent = parent
        self.exponents = tuple(
            a % m for a, m in zip(exponents, parent.factor_orders)
        )

    def rotation(self, element):
        """Value as an exact rotation number in [0, 1)."""
        if element.group != self.parent:
            raise ValueError("element of a different group")
        total = Fraction(0)
        for a, x, m in zip(self.exponents, element.residues, self.parent.factor_orders):
            total += Fraction(a * x, m)
        return total % 1

    def is_one_at(self, element):
        return self.rotation(element) == 0

    def order(self):
        if not self.exponents:
            return 1
        return math.lcm(
            *(
                m // math.gcd(a, m)
                for a, m in zip(self.exponents, self.parent.factor_orders)
            )
        )

    def is_trivial(self):
        return all(a == 0 for a in self.exponents)

    def is_trivial_on(self, subgroup):
        return all(self.is_one_at(g) for g in subgroup.basis_elements())

    def restricted_order(self, subgroup):
        """Order of the restriction to ``subgroup`` = [H : Ker theta & H]."""
        if subgroup.order == 1:
            return 1
        return math.lcm(
            *(
                self.rotation(g).denominator
                for g in subgroup.basis_elements()
            )
        )

    def restriction_key(self, subgroup):
        """Hashable fingerprint of the restriction to ``subgroup``."""
        return tuple(self.rotation(g) for g in subgroup.basis_elements())

    def __mul__(self, other):
        if other.parent != self.parent:
            raise ValueError("characters of different groups")
        return Character(
            self.parent, [a + b for a, b in zip(self.exponents, other.exponents)]
        )

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and self.parent == other.parent
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.parent, self.exponents))

    def __repr__(self):
        return f"Character{self.exponents}"


def p_part(group, p, parent_subgroup=None):
    """Subgroup of elements of p-power order.

    With ``parent_subgroup`` given, returns its p-part instead of the whole
    group's.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    gens = []
    idx = 0
    for q, exps in group.primary_decomposition:
        for _ in exps:
            if q == p:
                res = [0] * group.rank
                res[idx] = 1
                gens.append(GroupElement(group, res))
            idx += 1
    block = Subgroup(group, gens)
    if parent_subgroup is None:
        return block
    return intersect(block, parent_subgroup)


def power_subgroup(group, n):
    """<g^(p^n)> over the canonical generators of a p-group."""
    if not group.is_p_group():
        raise ValueError("power_subgroup needs a p-group")
    if group.order == 1:
        return Subgroup.whole(group)
    p = group.primary_decomposition[0][0]
    t = p ** n
    gens = [g ** t for g in group.generators()]
    return Subgroup(group, gens)


def kernel(character):
    """Kernel of a character, as a Subgroup."""
    parent = character.parent
    k = parent.rank
    if k == 0:
        return Subgroup.whole(parent)
    big = math.lcm(*parent.factor_orders)
    row = [
        a * (big // m)
        for a, m in zip(character.exponents, parent.factor_orders)
    ] + [big]
    basis = kernel_basis([row], k + 1)
    rows = [v[:k] for v in basis]
    return Subgroup.from_rows(parent, rows)


def intersect(h1, h2):
    """Largest subgroup contained in both arguments."""
    if h1.parent != h2.parent:
        raise ValueError("subgroups of different parent groups")
    k = h1.parent.rank
    if k == 0:
        return h1
    b1 = [list(r) for r in h1.canonical_basis]
    b2 = [list(r) for r in h2.canonical_basis]
    # x in L1 cap L2  <=>  x = a B1 = b B2; solve [B1^T | -B2^T] kernel.
    stacked = [
        [b1[i][j] for i in range(k)] + [-b2[i][j] for i in range(k)]
        for j in range(k)
    ]
    basis = kernel_basis(stacked, 2 * k)
    rows = []
    for v in basis:
        a = v[:k]
        rows.append([sum(a[i] * b1[i][j] for i in range(k)) for j in range(k)])
    return Subgroup.from_rows(h1.parent, rows)


def intersect_all(parent, subgroups):
    """Intersection over a list; the empty intersection is the whole group."""
    result = Subgroup.whole(parent)
    for h in subgroups:
        result = intersect(result, h)
    return result


def crt_power_extract(gamma, p):
    """Exponent e and p-component gamma^e of an element.

    gamma^e has p-power order and the components over all primes dividing
    the order of gamma multiply back to gamma.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    n = gamma.order()
    a = 1
    while n % p == 0:
        n //= p
        a *= p
    # n is now the prime-to-p part, a the p-part of the order.
    if a == 1:
        return 0, gamma.group.identity()
    if n == 1:
        return 1, gamma
    # e = 1 mod a, e = 0 mod n.
    e = (n * pow(n, -1, a)) % (a * n)
    return e, gamma ** e


def subgroups_up_to_order(group, max_order, cap=ORACLE_CAP):
    """All subgroups of order <= max_order, by join closure (oracle)."""
    if group.order > cap:
        raise OracleScaleError(
            f"group of order {group.order} exceeds the oracle cap {cap}; "
            "this brute-force enumeration is meant for desk-scale checks"
        )
    cyclic = {}
    for g in group.elements():
        if g.order() <= max_order:
            h = Subgroup.cyclic(g)
            cyclic[h.canonical_basis] = h
    cyclic_list = list(cyclic.values())
    found = {Subgroup.trivial_subgroup(group).canonical_basis: Subgroup.trivial_subgroup(group)}
    frontier = list(found.values())
    while frontier:
        nxt = []
        for h in frontier:
            for c in cyclic_list:
                j = h.join(c)
                if j.order <= max_order and j.canonical_basis not in found:
                    found[j.canonical_basis] = j
                    nxt.append(j)
        frontier = nxt
    return sorted(found.values(), key=lambda h: (h.order, h.canonical_basis))


def enumerate_subgroups(group, max_index, cap=ORACLE_CAP):
    """All subgroups of index <= max_index (oracle, desk scale only).

    Uses annihilator duality: subgroups of index <= n correspond to
    subgroups of order <= n of the dual group, and the dual of a finite
    abelian group has the same canonical form, so small dual subgroups are
    enumerated directly and mapped to the intersections of the kernels of
    their generating characters.
    """
    if group.order > cap:
        raise OracleScaleError(
            f"group of order {group.order} exceeds the oracle cap {cap}; "
            "this brute-force enumeration is meant for desk-scale checks"
        )
    out = {}
    for dual_sub in subgroups_up_to_order(group, max_index, cap=cap):
        kernels = [
            kernel(Character(group, g.residues)) for g in dual_sub.basis_elements()
        ]
        ann = intersect_all(group, kernels)
        out[ann.canonical_basis] = ann
    return sorted(out.values(), key=lambda h: (h.index, h.canonical_basis))


def all_subgroups(group, cap=ORACLE_CAP):
    return enumerate_subgroups(group, group.order, cap=cap)


def subgroups_of(subgroup, cap=ORACLE_CAP):
    """All subgroups of a Subgroup, in parent coordinates (oracle)."""
    if subgroup.parent.order > cap:
        raise OracleScaleError(
            f"parent order {subgroup.parent.order} exceeds the oracle cap {cap}"
        )
    cyclic = {}
    for g in subgroup.elements():
        h = Subgroup.cyclic(g)
        cyclic[h.canonical_basis] = h
    cyclic_list = list(cyclic.values())
    triv = Subgroup.trivial_subgroup(subgroup.parent)
    found = {triv.canonical_basis: triv}
    frontier = [triv]
    while frontier:
        nxt = []
        for h in frontier:
            for c in cyclic_list:
                j = h.join(c)
                if j.canonical_basis not in found:
                    found[j.canonical_basis] = j
                    nxt.append(j)
        frontier = nxt
    return sorted(found.values(), key=lambda h: (h.order, h.canonical_basis))


def element_from_json(group, residues):
    return GroupElement(group, residues)
