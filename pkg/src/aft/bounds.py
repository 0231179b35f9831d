"""Explicit constants and combinatorial lemmas.

All quantities are exact arbitrary-precision integers: the arithmetic
function f(k), the chain bound C(m+k+1, m+1), the per-prime constants
C_{p,chi}, the prime threshold P_chi, the stability constant C_lambda,
the composite index bound 3^b * C_{lambda_chi}, and the Minkowski mod-3
injectivity check for finite integer matrix groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .groups import FiniteAbelianGroup, Subgroup, primes_up_to


def f(k):
    """f(k) = 2^k * prod over odd primes p of p^[k/p]; 1 for k < 0."""
    if k < 0:
        return 1
    value = 2 ** k
    for p in primes_up_to(max(k, 2)):
        if p > 2:
            value *= p ** (k // p)
    if k >= 0:
        # Divisibility sanity check: f(k) | 2^(k - [k/2]) * k!.
        target = 2 ** (k - k // 2) * _factorial(k)
        if target % value != 0:
            raise AssertionError(f"f({k}) does not divide 2^(k-[k/2]) k!")
    return value


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def chain_bound(m, k):
    """Length bound C(m+k+1, m+1) for strict chains of fixed-set inclusions."""
    if m < 0 or k < 0:
        raise ValueError("m and k must be nonnegative")
    return comb(m + k + 1, m + 1)


def chain_bound_oracle(m, k, cap=12):
    """|{(d_0..d_m) nonnegative, sum <= k}| by exhaustive enumeration."""
    if m + k > cap:
        raise ValueError(f"oracle cap exceeded: m + k = {m + k} > {cap}")

    def count(slots, budget):
        if slots == 0:
            return 1
        return sum(count(slots - 1, budget - d) for d in range(budget + 1))

    return count(m + 1, k)


@dataclass(frozen=True)
class BoundsConfig:
    """Numerical invariants of a space, as inputs to the constants."""

    dim: int
    betti_Z: tuple
    betti_mod_p: dict
    torsion_primes: frozenset
    mu: int

    def __post_init__(self):
        if self.mu < 0:
            raise ValueError("mu must be nonnegative")
        if any(b < 0 for b in self.betti_Z):
            raise ValueError("negative Betti number")
        for bs in self.betti_mod_p.values():
            if any(b < 0 for b in bs):
                raise ValueError("negative mod-p Betti number")

    @classmethod
    def from_json(cls, data):
        return cls(
            dim=data["dim"],
            betti_Z=tuple(data["betti_Z"]),
            betti_mod_p={int(p): tuple(bs) for p, bs in data["betti_mod_p"].items()},
            torsion_primes=frozenset(data.get("torsion_primes", ())),
            mu=data["mu"],
        )

    def to_json(self):
        return {
            "dim": self.dim,
            "betti_Z": list(self.betti_Z),
            "betti_mod_p": {
                str(p): list(bs) for p, bs in sorted(self.betti_mod_p.items())
            },
            "torsion_primes": sorted(self.torsion_primes),
            "mu": self.mu,
        }

    def betti_for(self, p):
        """Mod-p Betti numbers, via universal coefficients when possible."""
        if p in self.betti_mod_p:
            return tuple(self.betti_mod_p[p])
        if p not in self.torsion_primes:
            # No p-torsion, so mod-p and integral Betti numbers agree.
            return tuple(self.betti_Z)
        raise ValueError(f"missing mod-{p} Betti data for a torsion prime")

    def total_betti(self):
        return sum(self.betti_Z)

    def has_odd_cohomology(self):
        if self.torsion_primes:
            return True
        return any(
            b for j, b in enumerate(self.betti_Z) if j % 2 == 1
        )

    def euler(self):
        return sum((-1) ** j * b for j, b in enumerate(self.betti_Z))


def C_p_chi(p, cfg):
    """(n, p^(n mu)): n smallest with p^(n+1) > 2 * sum b_j(X; F_p)."""
    total = sum(cfg.betti_for(p))
    n = 0
    while p ** (n + 1) <= 2 * total:
        n += 1
    return n, p ** (n * cfg.mu)


def P_chi(cfg):
    """max{p_0, 2 * sum b_j + 1}; p_0 is the torsion-clearing prime."""
    return max(_p0(cfg), 2 * cfg.total_betti() + 1)


def _p0(cfg):
    """Smallest prime exceeding every torsion prime.

    Above the torsion primes, universal coefficients gives
    b_j(F_p) = b_j for all j.
    """
    bound = max(cfg.torsion_primes, default=1)
    candidates = primes_up_to(2 * bound + 3)
    for p in candidates:
        if p > bound:
            return p
    raise AssertionError("Bertrand interval contained no prime")


def C_lambda(lam, cfg):
    """(prod over p <= P_chi of C_{p,chi}) * (prod over p <= lam of lam^e).

    Here e = C(m + K + 1, m + 1) with m = dim and
    K = sum over j of max_p b_j(X; F_p).
    """
    p_max = P_chi(cfg)
    relevant = primes_up_to(max(p_max, lam, 2))
    depth = len(cfg.betti_Z)
    per_degree = list(cfg.betti_Z)
    for p in relevant:
        bs = cfg.betti_for(p)
        for j in range(max(depth, len(bs))):
            bj = bs[j] if j < len(bs) else 0
            if j < len(per_degree):
                per_degree[j] = max(per_degree[j], bj)
            else:
                per_degree.append(bj)
    big_k = sum(per_degree)
    e = chain_bound(cfg.dim, big_k)
    value = 1
    for p in relevant:
        if p <= p_max:
            value *= C_p_chi(p, cfg)[1]
    for p in relevant:
        if p <= lam:
            value *= lam ** e
    return value


def composite_bound(cfg):
    """3^b * C_{lambda_chi} with b = sum b_j^2 and lambda_chi = chi * dim."""
    if cfg.has_odd_cohomology():
        raise ValueError(
            "composite bound requires vanishing odd cohomology over Z"
        )
    b = sum(bj ** 2 for bj in cfg.betti_Z)
    lambda_chi = cfg.euler() * cfg.dim
    return 3 ** b * C_lambda(lambda_chi, cfg)


@dataclass(frozen=True)
class ConstantsReport:
    f_values: tuple
    chain_bound_e: int
    C_p_chi: dict
    P_chi: int
    C_lambda: int
    lambda_chi: int
    composite_bound: int | None

    def to_json(self):
        return {
            "f_values": list(self.f_values),
            "chain_bound_e": self.chain_bound_e,
            "C_p_chi": {str(p): list(v) for p, v in sorted(self.C_p_chi.items())},
            "P_chi": self.P_chi,
            "C_lambda": self.C_lambda,
            "lambda_chi": self.lambda_chi,
            "composite_bound": self.composite_bound,
        }


def constants_report(cfg, f_max=10):
    """Evaluate every constant for one configuration."""
    lam = cfg.euler() * cfg.dim
    p_max = P_chi(cfg)
    per_prime = {p: C_p_chi(p, cfg) for p in primes_up_to(p_max)}
    big_k = cfg.total_betti()
    try:
        composite = composite_bound(cfg)
    except ValueError:
        composite = None
    return ConstantsReport(
        f_values=tuple(f(k) for k in range(f_max + 1)),
        chain_bound_e=chain_bound(cfg.dim, big_k),
        C_p_chi=per_prime,
        P_chi=p_max,
        C_lambda=C_lambda(lam, cfg),
        lambda_chi=lam,
        composite_bound=composite,
    )


@dataclass(frozen=True)
class InjectivityVerdict:
    injective: bool
    size: int
    collisions: tuple = ()

    def to_json(self):
        return {
            "injective": self.injective,
            "size": self.size,
            "collisions": [
                [[list(r) for r in a], [list(r) for r in b]]
                for a, b in self.collisions
            ],
        }


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n))
        for i in range(n)
    )


def _mat_mod(a, p):
    return tuple(tuple(v % p for v in row) for row in a)


def minkowski_injectivity_check(matrices):
    """Verify mod-3 reduction is injective on a finite integer matrix group.

    The input must be closed under multiplication (checked); by finiteness
    it is then a group.  A collision would falsify Minkowski's lemma.
    """
    mats = {tuple(tuple(int(v) for v in row) for row in m) for m in matrices}
    if not mats:
        raise ValueError("empty input")
    sizes = {len(m) for m in mats} | {len(r) for m in mats for r in m}
    if len(sizes) != 1:
        raise ValueError("matrices must be square and of equal size")
    for a in mats:
        for b in mats:
            if _mat_mul(a, b) not in mats:
                raise ValueError("input set is not closed under product")
    reductions = {}
    collisions = []
    for m in sorted(mats):
        r = _mat_mod(m, 3)
        if r in reductions:
            collisions.append((reductions[r], m))
        else:
            reductions[r] = m
    return InjectivityVerdict(not collisions, len(mats), tuple(collisions))


def cohomology_trivializing_subgroup(group, matrices_per_generator):
    """Kernel of the homology action reduced mod 3, with its index bound.

    ``matrices_per_generator`` lists, for each canonical generator, a list
    of integer matrices (one per homology degree, size b_j).  The matrices
    must define a homomorphism: generator images commute and have the
    generator's order.  Returns (G, 3^b) with b = sum b_j^2; Minkowski's
    lemma makes the mod-3 kernel act trivially on integral homology, and
    [A:G] <= |prod GL(b_j, F_3)| <= 3^b is certified directly.
    """
    mats = [
        [tuple(tuple(int(v) for v in row) for row in m) for m in per_degree]
        for per_degree in matrices_per_generator
    ]
    if len(mats) != group.rank:
        raise ValueError("need one matrix list per canonical generator")
    degrees = None
    for per_degree in mats:
        shape = tuple(len(m) for m in per_degree)
        if degrees is None:
            degrees = shape
        elif shape != degrees:
            raise ValueError("generators act on different homology shapes")
        for m in per_degree:
            if any(len(row) != len(m) for row in m):
                raise ValueError("homology matrices must be square")
    identities = [
        tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        for n in degrees
    ]
    for gi, per_degree in enumerate(mats):
        order = group.factor_orders[gi]
        for d, m in enumerate(per_degree):
            power = identities[d]
            for _ in range(order):
                power = _mat_mul(power, m)
            if power != identities[d]:
                raise ValueError(
                    f"generator {gi} matrix in degree {d} does not have "
                    f"order dividing {order}"
                )
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            for d in range(len(degrees)):
                a, b = mats[i][d], mats[j][d]
                if _mat_mul(a, b) != _mat_mul(b, a):
                    raise ValueError(
                        f"generator matrices {i} and {j} do not commute"
                    )
    members = []
    for g in group.elements():
        trivial = True
        for d, n in enumerate(degrees):
            image = identities[d]
            for gi, r in enumerate(g.residues):
                power = identities[d]
                for _ in range(r):
                    power = _mat_mul(power, mats[gi][d])
                image = _mat_mul(image, power)
            if _mat_mod(image, 3) != identities[d]:
                trivial = False
                break
        if trivial:
            members.append(g)
    kernel_sub = Subgroup(group, members)
    b = sum(n ** 2 for n in degrees)
    bound = 3 ** b
    if kernel_sub.index > bound:
        raise AssertionError(
            f"[A:G] = {kernel_sub.index} exceeds the Minkowski bound {bound}"
        )
    return kernel_sub, bound
