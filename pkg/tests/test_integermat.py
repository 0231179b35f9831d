"""Exact linear algebra: Hermite form, kernels, Smith diagonals."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from aft.integermat import (
    hermite_normal_form,
    kernel_basis,
    prime_power_split,
    rank_mod_p,
    smith_diagonal,
)


def rank_over_q(rows, ncols):
    """Independent rational-elimination rank oracle."""
    mat = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                factor = mat[i][col] / mat[rank][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


small_matrix = st.integers(1, 4).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-9, 9), min_size=n, max_size=n),
        min_size=1,
        max_size=4,
    )
)


def test_hnf_known_lattice():
    basis = hermite_normal_form([[2, 1], [0, 2]], 2)
    assert basis == [(2, 1), (0, 2)]
    # The same lattice from messier generators.
    assert hermite_normal_form([[2, 3], [4, 4], [0, 2]], 2) == basis


def test_hnf_pivots_positive_and_reduced():
    basis = hermite_normal_form([[-3, 7], [0, -5]], 2)
    for i, row in enumerate(basis):
        assert row[i] > 0
        for j in range(i):
            assert 0 <= basis[j][i] < row[i]


@given(small_matrix)
@settings(max_examples=100, deadline=None)
def test_hnf_canonical_under_row_shuffle(rows):
    ncols = len(rows[0])
    forward = hermite_normal_form(rows, ncols)
    assert hermite_normal_form(list(reversed(rows)), ncols) == forward
    doubled = rows + [[2 * v for v in rows[0]]]
    assert hermite_normal_form(doubled, ncols) == forward


@given(small_matrix)
@settings(max_examples=100, deadline=None)
def test_kernel_annihilates_and_complements_rank(rows):
    ncols = len(rows[0])
    kernel = kernel_basis(rows, ncols)
    for v in kernel:
        assert all(
            sum(r[j] * v[j] for j in range(ncols)) == 0 for r in rows
        )
    assert len(kernel) == ncols - rank_over_q(rows, ncols)


@given(small_matrix)
@settings(max_examples=100, deadline=None)
def test_smith_rank_matches_rational_rank(rows):
    ncols = len(rows[0])
    entries = {
        (i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v
    }
    diag = smith_diagonal(entries, len(rows), ncols)
    assert len(diag) == rank_over_q(rows, ncols)
    assert all(d > 0 for d in diag)


@given(small_matrix, st.sampled_from([2, 3, 5, 7]))
@settings(max_examples=100, deadline=None)
def test_rank_mod_p_at_most_rational_rank(rows, p):
    ncols = len(rows[0])
    entries = {
        (i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v
    }
    assert rank_mod_p(entries, p) <= rank_over_q(rows, ncols)


def test_smith_torsion_of_known_matrix():
    # Z^2 --(diag 2, 6)--> Z^2 has cokernel Z/2 + Z/6.
    entries = {(0, 0): 2, (1, 1): 6}
    assert smith_diagonal(entries, 2, 2) == [2, 6]
    # A non-diagonal presentation of Z/2: [[1, 1], [1, -1]].
    entries = {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): -1}
    assert smith_diagonal(entries, 2, 2) == [1, 2]


def test_prime_power_split():
    assert prime_power_split(1) == []
    assert prime_power_split(12) == [3, 4]
    assert prime_power_split(360) == [5, 8, 9]
    assert prime_power_split(7) == [7]
