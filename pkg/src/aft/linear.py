"""Exact representation-theoretic disk and sphere models.

A real representation of a finite abelian group splits into trivial
summands, sign summands (character of order 2, dimension 1) and rotation
summands (character of order >= 3, dimension 2).  On the unit disk or
sphere of such a representation every fixed-point set is again a disk or
sphere, so stability, descent and the averaging searches can be run with
exact integer arithmetic only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bounds import chain_bound, f as f_bound
from .groups import (
    Character,
    FiniteAbelianGroup,
    GroupElement,
    Subgroup,
    crt_power_extract,
    intersect,
    intersect_all,
    kernel,
    p_part,
    subgroups_of,
)

TRIVIAL = "trivial"
SIGN = "sign"
ROTATION = "rotation"


@dataclass(frozen=True)
class Summand:
    kind: str
    character: Character | None = None

    def __post_init__(self):
        if self.kind == TRIVIAL:
            if self.character is not None and not self.character.is_trivial():
                raise ValueError("trivial summand with nontrivial character")
        elif self.kind == SIGN:
            if self.character is None or self.character.order() != 2:
                raise ValueError("sign summand needs a character of order 2")
        elif self.kind == ROTATION:
            if self.character is None or self.character.order() < 3:
                raise ValueError("rotation summand needs a character of order >= 3")
        else:
            raise ValueError(f"unknown summand kind {self.kind!r}")

    @property
    def dim(self):
        return 2 if self.kind == ROTATION else 1

    def fixed_dim(self, subgroup):
        """Dimension of the subspace fixed by ``subgroup``."""
        if self.kind == TRIVIAL:
            return 1
        return self.dim if self.character.is_trivial_on(subgroup) else 0


@dataclass(frozen=True)
class RealRepresentation:
    group: FiniteAbelianGroup
    summands: tuple

    def __post_init__(self):
        for s in self.summands:
            if s.character is not None and s.character.parent != self.group:
                raise ValueError("summand character of a different group")

    @property
    def dim(self):
        return sum(s.dim for s in self.summands)

    def fixed_dim(self, subgroup):
        return sum(s.fixed_dim(subgroup) for s in self.summands)


DISK = "disk"
SPHERE = "sphere"


@dataclass(frozen=True)
class LinearActionModel:
    rep: RealRepresentation
    shape: str

    def __post_init__(self):
        if self.shape not in (DISK, SPHERE):
            raise ValueError(f"unknown shape {self.shape!r}")
        if self.shape == SPHERE and self.rep.dim < 1:
            raise ValueError("sphere model needs a representation of dim >= 1")

    @property
    def group(self):
        return self.rep.group

    @property
    def dim_space(self):
        """Dimension of the model manifold."""
        return self.rep.dim if self.shape == DISK else self.rep.dim - 1

    def total_betti(self):
        """Sum of Betti numbers over any field, from the shape formulas."""
        if self.shape == DISK:
            return 1
        return 2  # even-dimensional spheres only, enforced by the drivers

    def euler_characteristic(self):
        return 1 if self.shape == DISK else 1 + (-1) ** self.dim_space

    def whole_subgroup(self):
        return Subgroup.whole(self.group)


def model_from_json(data):
    group = FiniteAbelianGroup.from_json(data["group"])
    summands = []
    for s in data["summands"]:
        kind = s["kind"]
        char = (
            Character(group, s["character"]) if "character" in s else None
        )
        summands.append(Summand(kind, char))
    return LinearActionModel(
        RealRepresentation(group, tuple(summands)), data["shape"]
    )


def model_to_json(model):
    out = {"group": model.group.to_json(), "shape": model.shape, "summands": []}
    for s in model.rep.summands:
        entry = {"kind": s.kind}
        if s.kind != TRIVIAL:
            entry["character"] = list(s.character.exponents)
        out["summands"].append(entry)
    return out


def fixed_subspace_dim(model, subgroup):
    """dim V^H: trivial summands, plus summands whose character kills H."""
    return model.rep.fixed_dim(subgroup)


def chi_fixed(model, subgroup):
    """Euler characteristic of the fixed set, from the shape formulas."""
    d = fixed_subspace_dim(model, subgroup)
    if model.shape == DISK:
        return 1
    if d == 0:
        return 0
    return 1 + (-1) ** (d - 1)


def fixed_point_count(model, subgroup):
    """Number of fixed points; math.inf when the fixed set is positive-dim."""
    d = fixed_subspace_dim(model, subgroup)
    if model.shape == DISK:
        return 1 if d == 0 else math.inf
    if d == 0:
        return 0
    return 2 if d == 1 else math.inf


def normal_characters(model, subgroup):
    """Distinct nontrivial characters of H on the non-fixed summands.

    Conjugate rotation characters give isomorphic real summands and are
    identified.  Returns [(representative parent character, [H : Ker])]
    sorted by (kernel index, exponents).
    """
    found = {}
    for s in sorted(
        model.rep.summands,
        key=lambda s: (() if s.character is None else s.character.exponents),
    ):
        if s.kind == TRIVIAL or s.character.is_trivial_on(subgroup):
            continue
        key_direct = s.character.restriction_key(subgroup)
        inv = Character(model.group, [-a for a in s.character.exponents])
        key = min(key_direct, inv.restriction_key(subgroup))
        if key not in found:
            found[key] = (s.character, s.character.restricted_order(subgroup))
    return sorted(found.values(), key=lambda t: (t[1], t[0].exponents))


def orientation_character(model):
    """Determinant character: product of the sign-summand characters."""
    exps = [0] * model.group.rank
    for s in model.rep.summands:
        if s.kind == SIGN:
            exps = [a + b for a, b in zip(exps, s.character.exponents)]
    return Character(model.group, exps)


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    lam: int
    violations: tuple = ()

    def __bool__(self):
        return self.stable


def _chi_condition_holds(model, subgroup):
    """chi(X^S) = chi(X) for every subgroup S (oracle enumeration)."""
    chi = model.euler_characteristic()
    bad = []
    for sub in subgroups_of(subgroup):
        if chi_fixed(model, sub) != chi:
            bad.append(sub)
    return bad


def is_lambda_stable(model, lam, subgroup=None):
    """Exact lambda-stability check; non-p-groups are checked per p-part."""
    if subgroup is None:
        subgroup = model.whole_subgroup()
    violations = []
    primes = {q for q in model.group.primes()}
    for p in sorted(primes):
        part = p_part(model.group, p, subgroup)
        if part.order == 1:
            continue
        for char, index in normal_characters(model, part):
            if index <= lam:
                violations.append(("kernel_index", p, char, index))
        if model.shape == SPHERE:
            for bad in _chi_condition_holds(model, part):
                violations.append(("chi", p, bad, chi_fixed(model, bad)))
    return StabilityVerdict(not violations, lam, tuple(violations))


@dataclass(frozen=True)
class DescentStep:
    character: Character
    kernel_index: int
    subgroup: Subgroup
    fixed_dim: int


def descent_to_stable(model, lam, start=None, check_chi=True):
    """Kernel-intersection descent to a lambda-stable subgroup.

    Starts from ``start`` (default: the whole group), which must be a
    p-group.  Each step intersects with the kernel of a violating
    character, strictly growing the fixed subspace; terminates in fewer
    than C(m+k+1, m+1) steps with a subgroup of index <= lam^steps.
    """
    group = model.group
    current = start if start is not None else Subgroup.whole(group)
    prime_set = {_prime_of(g) for g in current.basis_elements()}
    if len(prime_set) > 1:
        raise ValueError("descent requires a p-group (restrict to a p-part)")
    if model.shape == SPHERE and check_chi:
        bad = _chi_condition_holds(model, current)
        if bad:
            raise ValueError(
                "descent precondition violated: some subgroup does not "
                f"preserve chi, e.g. {bad[0]}"
            )
    m = model.dim_space
    k = model.total_betti()
    bound = chain_bound(m, k)
    steps = []
    start_index = current.index
    while True:
        violating = [
            (index, char)
            for char, index in normal_characters(model, current)
            if index <= lam
        ]
        if not violating:
            break
        if len(steps) >= bound:
            raise AssertionError(
                f"descent exceeded the chain bound {bound}; this would "
                "contradict the strict-inclusion chain argument"
            )
        index, char = min(violating, key=lambda t: (t[0], t[1].exponents))
        before = fixed_subspace_dim(model, current)
        current = intersect(kernel(char), current)
        after = fixed_subspace_dim(model, current)
        if after <= before:
            raise AssertionError(
                "fixed subspace did not grow strictly during descent"
            )
        steps.append(DescentStep(char, index, current, after))
    if current.index > start_index * lam ** max(len(steps), 0):
        raise AssertionError("descent index exceeds lambda^steps")
    return current, steps


def _prime_of(element):
    n = element.order()
    if n == 1:
        raise ValueError("identity element has no prime")
    p = 2
    while n % p:
        p += 1
    return p


def generic_element(model, lam, subgroup=None):
    """Least element whose fixed set matches the whole group's fixed set.

    Requires a lambda-stable (sub)group with
    lam >= dim X * (sum of Betti numbers); the element is the
    lexicographically least one outside every normal-character kernel.
    """
    if subgroup is None:
        subgroup = model.whole_subgroup()
    if lam < model.dim_space * model.total_betti():
        raise ValueError(
            "generic_element needs lam >= dim X * total Betti number"
        )
    chars = normal_characters(model, subgroup)
    target = fixed_subspace_dim(model, subgroup)
    for g in subgroup.elements():
        if all(not char.is_one_at(g) for char, _ in chars):
            if fixed_subspace_dim(model, Subgroup.cyclic(g)) != target:
                raise AssertionError(
                    "generic element does not reproduce the fixed subspace"
                )
            return g
    raise AssertionError(
        "no generic element exists; the kernel-union counting bound failed"
    )


@dataclass(frozen=True)
class GammaSearchResult:
    gamma: GroupElement
    subgroup: Subgroup
    i_value: int
    r: int
    p: int


def _averaging_search(model, acting, p):
    """Shared averaging argument for the disk and sphere searches.

    Finds the lex-least gamma minimizing I(gamma) = sum of e_j over the
    character kernels containing gamma, then intersects those kernels.
    """
    chars = normal_characters(model, acting)
    r = len(chars)
    best = None
    for g in acting.elements():
        i_val = 0
        for char, index in chars:
            if char.is_one_at(g):
                e_j = round(math.log(index, p))
                if p ** e_j != index:
                    raise AssertionError("kernel index is not a p-power")
                i_val += e_j
        if best is None or i_val < best[0]:
            best = (i_val, g)
        if i_val == 0:
            break
    i_min, gamma = best
    if i_min > r // p:
        raise AssertionError(
            f"averaging bound violated: min I = {i_min} > [r/p] = {r // p}"
        )
    containing = [
        kernel(char) for char, _ in chars if char.is_one_at(gamma)
    ]
    a_prime = intersect_all(model.group, containing)
    a_prime = intersect(a_prime, acting)
    if fixed_subspace_dim(model, Subgroup.cyclic(gamma)) != fixed_subspace_dim(
        model, a_prime
    ):
        raise AssertionError("X^gamma != X^A' on the linear model")
    index = acting.order // a_prime.order
    if p ** (r // p) % index != 0:
        raise AssertionError(
            f"[A:A'] = {index} does not divide p^[r/p] = {p ** (r // p)}"
        )
    return GammaSearchResult(gamma, a_prime, i_min, r, p)


def disk_gamma_search(model, acting=None):
    """Lemma-level search on a disk model for one p-group."""
    if model.shape != DISK:
        raise ValueError("disk_gamma_search needs a disk model")
    if acting is None:
        acting = model.whole_subgroup()
    if acting.order == 1:
        return GammaSearchResult(model.group.identity(), acting, 0, 0, 2)
    p = _prime_of_subgroup(acting)
    return _averaging_search(model, acting, p)


def sphere_gamma_search(model, acting=None):
    """Search on an even-sphere model; asserts the r-bounds first."""
    if model.shape != SPHERE:
        raise ValueError("sphere_gamma_search needs a sphere model")
    if model.dim_space % 2 != 0:
        raise ValueError("even-dimensional spheres only")
    if acting is None:
        acting = model.whole_subgroup()
    if acting.order == 1:
        return GammaSearchResult(model.group.identity(), acting, 0, 0, 2)
    p = _prime_of_subgroup(acting)
    fd = fixed_subspace_dim(model, acting)
    if fd < 3:
        raise ValueError(
            "fixed sphere of dimension < 2: use the two-point branch"
        )
    if fd % 2 == 0:
        raise ValueError("fixed sphere is odd dimensional")
    m = model.dim_space // 2
    l = (fd - 1) // 2
    r = len(normal_characters(model, acting))
    limit = 2 * m - 2 * l if p == 2 else m - l
    if r > limit:
        raise AssertionError(
            f"summand count bound violated: r = {r} > {limit} for p = {p}"
        )
    return _averaging_search(model, acting, p)


def _prime_of_subgroup(subgroup):
    primes = {_prime_of(g) for g in subgroup.basis_elements()}
    if len(primes) != 1:
        raise ValueError("expected a p-group")
    return primes.pop()


def sphere_two_group_reduce(model, acting=None):
    """Orientation/central-involution reduction for 2-groups on even spheres.

    Returns (A0, 2^(m+1)) where A0 has an odd-dimensional fixed subspace
    (even-dimensional fixed sphere) and [A2 : A0] divides 2^(m+1).
    """
    if model.shape != SPHERE or model.dim_space % 2 != 0:
        raise ValueError("needs an even-dimensional sphere model")
    group = model.group
    if acting is None:
        acting = p_part(group, 2)
    m = model.dim_space // 2
    bound = 2 ** (m + 1)
    b = acting
    c = Subgroup.trivial_subgroup(group)
    cuts = 0
    while True:
        w_summands = [
            s
            for s in model.rep.summands
            if s.kind == TRIVIAL or s.character.is_trivial_on(c)
        ]
        if sum(s.dim for s in w_summands) % 2 == 0:
            raise AssertionError("current fixed sphere has odd dimension")
        acting_summands = [
            s
            for s in w_summands
            if s.kind != TRIVIAL and not s.character.is_trivial_on(b)
        ]
        if not acting_summands:
            a0 = b
            break
        # Orientation-preserving subgroup of b on W.
        exps = [0] * group.rank
        for s in w_summands:
            if s.kind == SIGN:
                exps = [x + y for x, y in zip(exps, s.character.exponents)]
        sigma = Character(group, exps)
        a_prime = intersect(kernel(sigma), b)
        if b.order // a_prime.order > 1:
            cuts += 1
        still_acting = [
            s
            for s in acting_summands
            if not s.character.is_trivial_on(a_prime)
        ]
        if not still_acting:
            a0 = a_prime.join(c)
            b = a_prime
            break
        # Central element acting with order exactly 2 on W.
        t = None
        for g in a_prime.elements():
            if g.is_identity():
                continue
            action_order = math.lcm(
                *(
                    s.character.rotation(g).denominator
                    for s in w_summands
                    if s.kind != TRIVIAL
                )
            )
            if action_order == 2:
                t = g
                break
        if t is None:
            raise AssertionError(
                "no involution-like element found in a nontrivially acting "
                "2-group; reduction argument broken"
            )
        c = c.join(Subgroup.cyclic(t))
        b = a_prime
    index = acting.order // a0.order
    if bound % index != 0:
        raise AssertionError(
            f"[A2:A0] = {index} does not divide 2^(m+1) = {bound}"
        )
    fd = fixed_subspace_dim(model, a0)
    if fd % 2 == 0 or fd < 1:
        raise AssertionError("reduced subgroup has no even-sphere fixed set")
    return a0, bound


def assemble_cross_prime(model, parts):
    """Combine per-prime (gamma_p, A'_p) into (gamma, A') with certification.

    ``parts`` maps primes to (gamma_p, A'_p); the per-prime fixed-set
    equalities must already hold.  Certifies X^gamma = X^A' by recovering
    each gamma_p from gamma via CRT power extraction and comparing fixed
    dimensions.
    """
    group = model.group
    gamma = group.identity()
    a_prime = Subgroup.trivial_subgroup(group)
    for p in sorted(parts):
        gamma_p, sub_p = parts[p]
        gamma = gamma * gamma_p
        a_prime = a_prime.join(sub_p)
    for p in sorted(parts):
        gamma_p, sub_p = parts[p]
        _, component = crt_power_extract(gamma, p)
        if component != gamma_p:
            raise AssertionError("CRT component does not recover gamma_p")
        if fixed_subspace_dim(model, Subgroup.cyclic(component)) != (
            fixed_subspace_dim(model, sub_p)
        ):
            raise AssertionError("per-prime fixed-set certification failed")
    if fixed_subspace_dim(model, Subgroup.cyclic(gamma)) != fixed_subspace_dim(
        model, a_prime
    ):
        raise AssertionError("X^gamma != X^A' after assembly")
    return gamma, a_prime


@dataclass(frozen=True)
class TheoremResult:
    subgroup: Subgroup
    gamma: GroupElement | None
    index: int
    divisor_bound: int
    branch: str
    chi: int
    fixed_points: object

    def to_json(self):
        return {
            "index": self.index,
            "divisor_bound": self.divisor_bound,
            "branch": self.branch,
            "chi_of_fixed_set": self.chi,
            "gamma": None if self.gamma is None else list(self.gamma.residues),
            "subgroup_generators": [
                list(g.residues) for g in self.subgroup.basis_elements()
            ],
        }


def disk_theorem(model):
    """Full disk pipeline: A' <= A with [A:A'] | f([(n-3)/2]), chi(X^A') = 1."""
    if model.shape != DISK:
        raise ValueError("disk model required")
    group = model.group
    n = model.rep.dim
    k = (n - 3) // 2  # floor, negative for n <= 2
    bound = f_bound(k)
    whole = model.whole_subgroup()
    primes = group.primes()
    for p in primes:
        part = p_part(group, p)
        if fixed_subspace_dim(model, part) <= 2:
            # Low-dimensional fixed disk: chi(X^A) = 1 already.
            return TheoremResult(
                whole, None, 1, bound, "low-dim-fixed-set", 1,
                fixed_point_count(model, whole),
            )
    parts = {}
    for p in primes:
        part = p_part(group, p)
        result = disk_gamma_search(model, part)
        cap = k if p == 2 else k // p
        index_p = part.order // result.subgroup.order
        if p ** cap % index_p != 0:
            raise AssertionError(
                f"p-part index {index_p} does not divide p^{cap} for p={p}"
            )
        parts[p] = (result.gamma, result.subgroup)
    if not parts:
        return TheoremResult(whole, None, 1, bound, "trivial-group", 1, 1)
    gamma, a_prime = assemble_cross_prime(model, parts)
    index = group.order // a_prime.order
    if bound % index != 0:
        raise AssertionError(f"[A:A'] = {index} does not divide f(k) = {bound}")
    return TheoremResult(
        a_prime, gamma, index, bound, "gamma-search",
        chi_fixed(model, a_prime), fixed_point_count(model, a_prime),
    )


def sphere_theorem(model):
    """Full even-sphere pipeline: [A:A'] | 2^(m+1) f(m-1), |X^A'| >= 2."""
    if model.shape != SPHERE or model.dim_space % 2 != 0:
        raise ValueError("even-dimensional sphere model required")
    group = model.group
    m = model.dim_space // 2
    bound = 2 ** (m + 1) * f_bound(m - 1)
    whole = model.whole_subgroup()
    two_part = p_part(group, 2)
    if two_part.order > 1:
        a20, _ = sphere_two_group_reduce(model, two_part)
    else:
        a20 = two_part
    parts = {2: a20}
    for p in group.primes():
        if p != 2:
            part = p_part(group, p)
            fd = fixed_subspace_dim(model, part)
            if fd % 2 == 0:
                raise AssertionError(
                    "odd p-part has an even-dimensional fixed subspace"
                )
            parts[p] = part
    # Two-point branch: some per-prime fixed sphere is 0-dimensional.
    for p, part in sorted(parts.items()):
        if part.order == 1:
            continue
        if fixed_subspace_dim(model, part) == 1:
            line = [
                s
                for s in model.rep.summands
                if s.fixed_dim(part) == s.dim
            ]
            if len(line) != 1 or line[0].dim != 1:
                raise AssertionError("1-dimensional fixed space is not a line")
            s = line[0]
            if s.kind == TRIVIAL:
                a_prime = whole
            else:
                a_prime = kernel(s.character)
            index = group.order // a_prime.order
            if bound % index != 0:
                raise AssertionError("two-point branch index exceeds bound")
            if fixed_subspace_dim(model, a_prime) < 1:
                raise AssertionError("two-point branch lost the fixed line")
            return TheoremResult(
                a_prime, None, index, bound, "two-point", chi_fixed(model, a_prime),
                fixed_point_count(model, a_prime),
            )
    search_parts = {}
    for p, part in sorted(parts.items()):
        if part.order == 1:
            continue
        result = sphere_gamma_search(model, part)
        search_parts[p] = (result.gamma, result.subgroup)
    if not search_parts:
        # Every per-prime part is trivial (possibly after the 2-group
        # reduction), so A' is the trivial subgroup and gamma = 1.
        a_prime = Subgroup.trivial_subgroup(group)
        index = group.order // a_prime.order
        if bound % index != 0:
            raise AssertionError(
                f"[A:A'] = {index} does not divide 2^(m+1) f(m-1) = {bound}"
            )
        return TheoremResult(
            a_prime, group.identity(), index, bound, "trivial-fixing-subgroup",
            chi_fixed(model, a_prime), fixed_point_count(model, a_prime),
        )
    gamma, a_prime = assemble_cross_prime(model, search_parts)
    index = group.order // a_prime.order
    if bound % index != 0:
        raise AssertionError(
            f"[A:A'] = {index} does not divide 2^(m+1) f(m-1) = {bound}"
        )
    if fixed_subspace_dim(model, a_prime) < 1:
        raise AssertionError("assembled subgroup has empty fixed sphere")
    return TheoremResult(
        a_prime, gamma, index, bound, "gamma-search",
        chi_fixed(model, a_prime), fixed_point_count(model, a_prime),
    )


def mann_su_bound(model, p):
    """Valid Mann-Su input for the faithful linear model."""
    return model.rep.dim if p == 2 else model.rep.dim // 2
