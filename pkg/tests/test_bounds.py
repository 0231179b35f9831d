"""Explicit constants: f, chain bound, C_{p,chi}, P_chi, composite bound."""

import itertools
import math

import pytest

from aft.bounds import (
    BoundsConfig,
    C_lambda,
    C_p_chi,
    P_chi,
    chain_bound,
    chain_bound_oracle,
    cohomology_trivializing_subgroup,
    composite_bound,
    constants_report,
    f,
    minkowski_injectivity_check,
)
from aft.groups import FiniteAbelianGroup, Subgroup, primes_up_to


def f_accumulated(k):
    """Independent route: multiply prime by prime, factor by factor."""
    if k < 0:
        return 1
    value = 1
    for _ in range(k):
        value *= 2
    for p in primes_up_to(max(k, 2)):
        if p == 2:
            continue
        for _ in range(k // p):
            value *= p
    return value


def test_f_values():
    expected = [1, 1, 2, 4, 24, 48, 480, 2880, 40320, 80640]
    assert [f(k) for k in range(-1, 9)] == expected
    assert f(-7) == 1


def test_f_two_routes_agree():
    for k in range(-2, 31):
        assert f(k) == f_accumulated(k)


def test_f_divisibility_up_to_30():
    for k in range(31):
        assert (2 ** (k - k // 2) * math.factorial(k)) % f(k) == 0


def test_f_odd_prime_divisors_bounded():
    for k in range(1, 31):
        value = f(k)
        for p in primes_up_to(200):
            if p > 2 and value % p == 0:
                assert p <= k


def test_chain_bound_examples():
    assert chain_bound(1, 1) == 3
    assert chain_bound(2, 0) == 1
    assert chain_bound(3, 2) == 15


def test_chain_bound_matches_oracle():
    for m in range(13):
        for k in range(13 - m):
            assert chain_bound(m, k) == chain_bound_oracle(m, k)


def test_chain_bound_oracle_cap():
    with pytest.raises(ValueError):
        chain_bound_oracle(10, 10)


def cfg(dim, betti, mu, torsion=(), mod_p=None):
    return BoundsConfig(
        dim=dim,
        betti_Z=tuple(betti),
        betti_mod_p={} if mod_p is None else mod_p,
        torsion_primes=frozenset(torsion),
        mu=mu,
    )


def test_C_p_chi_examples():
    sphere = cfg(2, (1, 0, 1), 1)
    assert C_p_chi(5, sphere) == (0, 1)  # 5 > 4
    point = cfg(0, (1,), 1)
    assert C_p_chi(3, point) == (0, 1)  # 3 > 2
    assert C_p_chi(2, point) == (1, 2)  # 2 <= 2 < 4
    # p = 2 with total 2: 2, 4 fail the strict inequality, 8 works.
    assert C_p_chi(2, sphere) == (2, 4)


def test_C_p_chi_trivial_above_P_chi():
    sphere = cfg(2, (1, 0, 1), 3)
    p_max = P_chi(sphere)
    for p in primes_up_to(40):
        if p >= p_max:
            assert C_p_chi(p, sphere) == (0, 1)


def test_P_chi_examples():
    assert P_chi(cfg(2, (1, 0, 1), 1)) == 5  # max(2, 2*2+1)
    assert P_chi(cfg(0, (1,), 1)) == 3  # max(2, 3)
    assert P_chi(cfg(3, (1,), 1, torsion=(7,))) == 11


def test_C_lambda_disk_example():
    # Interval: dim 1, one Betti number; lambda = 2 gives e = 3,
    # C_{2,chi} = 2, C_{3,chi} = 1, and one factor 2^3.
    interval = cfg(1, (1, 0), 1)
    assert C_lambda(2, interval) == 16
    # lambda <= 1: the second product is empty.
    assert C_lambda(1, interval) == 2
    assert C_lambda(0, interval) == 2


def test_composite_bound_point():
    point = cfg(0, (1,), 0)
    assert composite_bound(point) == 3


def test_composite_bound_sphere_factor():
    sphere = cfg(2, (1, 0, 1), 1)
    value = composite_bound(sphere)
    assert value % 3 ** 2 == 0
    assert value == 9 * C_lambda(4, sphere)


def test_composite_bound_two_points():
    two = cfg(0, (2,), 0)
    assert composite_bound(two) % 3 ** 4 == 0


def test_composite_bound_rejects_odd_cohomology():
    circle = cfg(1, (1, 1), 1)
    with pytest.raises(ValueError):
        composite_bound(circle)
    torsion = cfg(2, (1, 0, 0), 1, torsion=(2,), mod_p={2: (1, 1, 1)})
    with pytest.raises(ValueError):
        composite_bound(torsion)


def test_composite_bound_triangulation_invariant():
    from aft.corpus import boundary_simplex, octahedron
    from aft.simplicial import homology

    configs = []
    for cx in (boundary_simplex(3), octahedron()):
        profile = homology(cx)
        configs.append(
            BoundsConfig(
                dim=cx.dimension,
                betti_Z=tuple(profile.ranks()),
                betti_mod_p={
                    p: tuple(bs) for p, bs in profile.betti_mod_p.items()
                },
                torsion_primes=frozenset(profile.torsion_primes()),
                mu=3,
            )
        )
    assert composite_bound(configs[0]) == composite_bound(configs[1])


def test_constants_report_shape():
    report = constants_report(cfg(2, (1, 0, 1), 1))
    data = report.to_json()
    assert data["P_chi"] == 5
    assert data["f_values"][0] == 1
    assert data["composite_bound"] == composite_bound(cfg(2, (1, 0, 1), 1))


def signed_permutations(n):
    mats = []
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            mats.append(
                tuple(
                    tuple(signs[i] if perm[i] == j else 0 for j in range(n))
                    for i in range(n)
                )
            )
    return mats


def test_minkowski_injectivity():
    verdict = minkowski_injectivity_check([((1,),)])
    assert verdict.injective and verdict.size == 1
    for n in (2, 3):
        verdict = minkowski_injectivity_check(signed_permutations(n))
        assert verdict.injective
        assert verdict.size == 2 ** n * math.factorial(n)


def test_minkowski_rejects_non_closed_input():
    with pytest.raises(ValueError):
        minkowski_injectivity_check([((0, 1), (1, 0))])  # missing identity


def test_trivializing_subgroup_trivial_action():
    g = FiniteAbelianGroup([(2, [1, 1])])
    identity = [[((1,),), ((1,),)] for _ in range(2)]
    sub, bound = cohomology_trivializing_subgroup(g, identity)
    assert sub == Subgroup.whole(g)
    assert bound == 9


def test_trivializing_subgroup_degree_minus_one():
    g = FiniteAbelianGroup([(2, [1])])
    sub, bound = cohomology_trivializing_subgroup(g, [[((1,),), ((-1,),)]])
    assert sub.order == 1 and sub.index == 2
    assert bound == 9


def test_trivializing_subgroup_rejects_non_homomorphism():
    g = FiniteAbelianGroup([(2, [1])])
    with pytest.raises(ValueError):
        # Order 3 matrix on a Z/2 generator.
        cohomology_trivializing_subgroup(
            g, [[((0, -1), (1, -1))]]
        )


def test_no_order_three_matrix_is_trivial_mod_three():
    """Minkowski at p = 3, size <= 2: exhaustive candidate search.

    An integer matrix of multiplicative order 3 congruent to the
    identity mod 3 would contradict injectivity; none exists among all
    2x2 matrices with entries in [-4, 4].
    """

    def mat_mul(a, b):
        return tuple(
            tuple(
                sum(a[i][t] * b[t][j] for t in range(2)) for j in range(2)
            )
            for i in range(2)
        )

    identity = ((1, 0), (0, 1))
    found = []
    for entries in itertools.product(range(-4, 5), repeat=4):
        m = (entries[:2], entries[2:])
        if any((m[i][j] - identity[i][j]) % 3 for i in range(2) for j in range(2)):
            continue
        if m == identity:
            continue
        if mat_mul(mat_mul(m, m), m) == identity:
            found.append(m)
    assert not found
