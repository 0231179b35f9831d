"""Exact integer matrix routines: Hermite form, kernels, Smith diagonals.

Everything here works with arbitrary-precision Python ints.  Matrices are
lists of rows (lists/tuples of ints).  The Smith routine uses a sparse
representation because boundary matrices of subdivided complexes are large
but very sparse.
"""

from __future__ import annotations


def hermite_normal_form(rows, ncols):
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows as a list of tuples.  Pivots are positive,
    entries above each pivot are reduced into [0, pivot).  The result is a
    canonical basis of the row lattice, so two generating sets span the
    same lattice iff their HNFs are equal.
    """
    mat = [list(r) for r in rows]
    if any(len(r) != ncols for r in mat):
        raise ValueError("ragged matrix")
    row = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(row, len(mat)):
            if mat[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[row], mat[pivot_row] = mat[pivot_row], mat[row]
        for i in range(row + 1, len(mat)):
            # Euclid on the (row, i) entries of this column.
            while mat[i][col] != 0:
                q = mat[row][col] // mat[i][col]
                mat[row] = [a - q * b for a, b in zip(mat[row], mat[i])]
                mat[row], mat[i] = mat[i], mat[row]
        if mat[row][col] < 0:
            mat[row] = [-a for a in mat[row]]
        for i in range(row):
            q = mat[i][col] // mat[row][col]
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[row])]
        row += 1
    return [tuple(r) for r in mat[:row]]


def kernel_basis(rows, ncols):
    """Basis of the integer kernel {v in Z^ncols : rows @ v = 0}.

    ``rows`` is an r x ncols matrix.  Returns a list of tuples of length
    ``ncols``.
    """
    nr = len(rows)
    # Work on the transpose augmented with an identity block; row-reduce
    # the transpose part, the surviving identity parts of zero rows form a
    # kernel basis.
    aug = [
        [rows[i][j] for i in range(nr)] + [1 if t == j else 0 for t in range(ncols)]
        for j in range(ncols)
    ]
    row = 0
    for col in range(nr):
        pivot_row = None
        for i in range(row, ncols):
            if aug[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        aug[row], aug[pivot_row] = aug[pivot_row], aug[row]
        for i in range(row + 1, ncols):
            while aug[i][col] != 0:
                q = aug[row][col] // aug[i][col]
                aug[row] = [a - q * b for a, b in zip(aug[row], aug[i])]
                aug[row], aug[i] = aug[i], aug[row]
        row += 1
    return [tuple(r[nr:]) for r in aug[row:]]


def smith_diagonal(entries, nrows, ncols):
    """Nontrivial diagonal of a Smith-type diagonalization of a sparse matrix.

    ``entries`` maps (row, col) -> nonzero int.  Returns a sorted list of
    positive integers d_1, ..., d_r (r = rank) such that the cokernel of
    the matrix restricted to its column space is the direct sum of Z/d_i.
    The list is not normalized to a divisibility chain; callers wanting
    canonical torsion should split the d_i into prime powers.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in entries.items():
        if v == 0:
            continue
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)

    def drop(r, c):
        row = rows[r]
        del row[c]
        if not row:
            del rows[r]
        col = cols[c]
        col.discard(r)
        if not col:
            del cols[c]

    def put(r, c, v):
        if v == 0:
            if r in rows and c in rows[r]:
                drop(r, c)
            return
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)

    diagonal = []
    while rows:
        # Pivot on a minimal-magnitude entry; prefer +-1 to avoid growth.
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                a = abs(v)
                if best is None or a < best[0]:
                    best = (a, r, c)
                if a == 1:
                    break
            if best is not None and best[0] == 1:
                break
        _, pr, pc = best
        pv = rows[pr][pc]
        # Clear the pivot column with row operations.
        restart = False
        for r in list(cols[pc]):
            if r == pr:
                continue
            v = rows[r][pc]
            q = v // pv
            if q:
                prow = rows[pr]
                for c, w in list(prow.items()):
                    put(r, c, rows.get(r, {}).get(c, 0) - q * w)
            if r in rows and pc in rows.get(r, {}):
                # Nonzero remainder strictly smaller than |pv|: re-pivot.
                restart = True
                break
        if restart:
            continue
        # Clear the pivot row with column operations; the pivot column now
        # contains only the pivot so a column op touches only row pr.
        prow = rows[pr]
        ok = True
        for c in list(prow):
            if c == pc:
                continue
            v = prow[c]
            q = v // pv
            put(pr, c, v - q * pv)
            if pr in rows and c in rows.get(pr, {}):
                ok = False
                break
        if not ok:
            continue
        diagonal.append(abs(pv))
        drop(pr, pc)
    return sorted(diagonal)


def rank_mod_p(entries, p):
    """Rank over F_p of a sparse integer matrix given as (row, col) -> int."""
    rows: dict[int, dict[int, int]] = {}
    for (r, c), v in entries.items():
        v %= p
        if v:
            rows.setdefault(r, {})[c] = v
    rank = 0
    while rows:
        pr = next(iter(rows))
        prow = rows.pop(pr)
        pc = next(iter(prow))
        pv = prow[pc]
        inv = pow(pv, p - 2, p) if p > 2 else pv
        rank += 1
        for r in list(rows):
            row = rows[r]
            v = row.get(pc)
            if not v:
                continue
            factor = (v * inv) % p
            for c, w in prow.items():
                nv = (row.get(c, 0) - factor * w) % p
                if nv:
                    row[c] = nv
                elif c in row:
                    del row[c]
            if not row:
                del rows[r]
    return rank


def prime_power_split(n):
    """Primary decomposition of ``n`` as a sorted list of prime powers."""
    parts = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            parts.append(q)
        p += 1
    if n > 1:
        parts.append(n)
    return sorted(parts)
