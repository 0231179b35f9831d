"""Finite simplicial complexes with exact homology over Z and F_p.

Boundary matrices use lexicographic vertex order for signs, so results
are deterministic across runs.  Integral homology goes through a sparse
Smith diagonalization with arbitrary-precision integers; mod-p Betti
numbers are computed independently by Gaussian elimination over F_p and
cross-checked against the integral answer through universal coefficients
by the callers that care.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .integermat import prime_power_split, rank_mod_p, smith_diagonal

DEFAULT_PRIMES = (2, 3, 5)


class SimplicialComplex:
    """Immutable face-closed complex.  Vertices are arbitrary hashables."""

    def __init__(self, simplices):
        by_dim: dict[int, set] = {}
        for s in simplices:
            s = tuple(sorted(s, key=_vertex_key))
            if len(set(s)) != len(s):
                raise ValueError(f"repeated vertex in simplex {s}")
            by_dim.setdefault(len(s) - 1, set()).add(s)
        # Face closure check.
        for d in sorted(by_dim, reverse=True):
            if d == 0:
                continue
            for s in by_dim[d]:
                for face in itertools.combinations(s, d):
                    if face not in by_dim.get(d - 1, set()):
                        raise ValueError(f"face {face} of {s} missing")
        self._by_dim = {
            d: tuple(sorted(by_dim[d], key=_simplex_key)) for d in sorted(by_dim)
        }
        self.vertices = tuple(v[0] for v in self._by_dim.get(0, ()))
        self.dimension = max(self._by_dim) if self._by_dim else -1

    def simplices(self, dim=None):
        if dim is not None:
            return self._by_dim.get(dim, ())
        return tuple(
            s for d in sorted(self._by_dim) for s in self._by_dim[d]
        )

    def counts(self):
        return {d: len(ss) for d, ss in self._by_dim.items()}

    def num_simplices(self):
        return sum(len(ss) for ss in self._by_dim.values())

    def euler_characteristic(self):
        return sum((-1) ** d * len(ss) for d, ss in self._by_dim.items())

    def contains(self, simplex):
        s = tuple(sorted(simplex, key=_vertex_key))
        return s in set(self._by_dim.get(len(s) - 1, ()))

    def maximal_simplices(self):
        all_faces = set()
        for d, ss in self._by_dim.items():
            if d == 0:
                continue
            for s in ss:
                for face in itertools.combinations(s, d):
                    all_faces.add(face)
        return tuple(
            s
            for d in sorted(self._by_dim)
            for s in self._by_dim[d]
            if s not in all_faces
        )

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self._by_dim == other._by_dim
        )

    def __hash__(self):
        return hash(tuple(sorted(self._by_dim.items())))

    def __repr__(self):
        return (
            f"SimplicialComplex(dim={self.dimension}, "
            f"simplices={self.num_simplices()})"
        )


def _vertex_key(v):
    # Allow mixed vertex types (ints, tuples after subdivision).
    return (str(type(v).__name__), v if isinstance(v, (int, str)) else str(v))


def _simplex_key(s):
    return tuple(_vertex_key(v) for v in s)


def build_complex(maximal_simplices):
    """Face closure of the given simplices."""
    seen = set()
    closed = []
    for s in maximal_simplices:
        t = tuple(sorted(s, key=_vertex_key))
        if not t:
            raise ValueError("empty simplex")
        if t in seen:
            raise ValueError(f"duplicate maximal simplex {t}")
        seen.add(t)
    for s in maximal_simplices:
        t = tuple(sorted(s, key=_vertex_key))
        for k in range(1, len(t) + 1):
            closed.extend(itertools.combinations(t, k))
    return SimplicialComplex(closed)


def complex_from_json(data):
    return build_complex([tuple(s) for s in data["maximal_simplices"]])


def complex_to_json(complex_):
    dense, _ = relabel_dense(complex_)
    return {"maximal_simplices": [list(s) for s in dense.maximal_simplices()]}


def relabel_dense(complex_):
    """Copy with vertices renamed 0..n-1; returns (complex, old->new map)."""
    mapping = {v: i for i, v in enumerate(complex_.vertices)}
    relabeled = SimplicialComplex(
        [tuple(mapping[v] for v in s) for s in complex_.simplices()]
    )
    return relabeled, mapping


@dataclass(frozen=True)
class HomologyProfile:
    """Betti data over Z and selected F_p, plus the Euler characteristic.

    ``betti_Z`` lists (rank, torsion) per degree where torsion is a sorted
    tuple of prime powers; ``betti_mod_p`` maps a prime to the list of
    F_p-ranks per degree.
    """

    betti_Z: tuple
    betti_mod_p: dict
    euler: int

    def ranks(self):
        return [r for r, _ in self.betti_Z]

    def torsion_primes(self):
        out = set()
        for _, tors in self.betti_Z:
            for q in tors:
                p = 2
                while q % p:
                    p += 1
                out.add(p)
        return out

    def has_no_odd_cohomology(self):
        """Torsion-free homology supported in even degrees."""
        for j, (rank, torsion) in enumerate(self.betti_Z):
            if torsion:
                return False
            if j % 2 == 1 and rank:
                return False
        return True

    def total_betti_mod(self, p):
        return sum(self.betti_mod_p[p])

    def to_json(self):
        return {
            "betti_Z": [
                {"rank": r, "torsion": list(t)} for r, t in self.betti_Z
            ],
            "betti_mod_p": {
                str(p): list(bs) for p, bs in sorted(self.betti_mod_p.items())
            },
            "euler": self.euler,
            "no_odd_cohomology": self.has_no_odd_cohomology(),
        }


def boundary_entries(complex_, dim):
    """Sparse boundary matrix d_dim: C_dim -> C_(dim-1)."""
    rows = {s: i for i, s in enumerate(complex_.simplices(dim - 1))}
    entries = {}
    for j, s in enumerate(complex_.simplices(dim)):
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            entries[(rows[face], j)] = (-1) ** i
    return entries, len(rows), len(complex_.simplices(dim))


def homology(complex_, primes=DEFAULT_PRIMES):
    """Exact homology profile; raises if internal cross-checks fail."""
    if complex_.dimension < 0:
        return HomologyProfile((), {p: [] for p in primes}, 0)
    top = complex_.dimension
    # Smith diagonals of all boundary maps (deg 1 .. top).
    diagonals = {0: []}
    ranks_fp = {p: {0: 0} for p in primes}
    sizes = {d: len(complex_.simplices(d)) for d in range(top + 1)}
    for d in range(1, top + 1):
        entries, _, _ = boundary_entries(complex_, d)
        diagonals[d] = smith_diagonal(entries, sizes[d - 1], sizes[d])
        for p in primes:
            ranks_fp[p][d] = rank_mod_p(entries, p)
    diagonals[top + 1] = []
    for p in primes:
        ranks_fp[p][top + 1] = 0

    betti_z = []
    for d in range(top + 1):
        rank = sizes[d] - len(diagonals[d]) - len(diagonals[d + 1])
        torsion = []
        for v in diagonals[d + 1]:
            if v > 1:
                torsion.extend(prime_power_split(v))
        betti_z.append((rank, tuple(sorted(torsion))))

    betti_p = {}
    for p in primes:
        betti_p[p] = [
            sizes[d] - ranks_fp[p][d] - ranks_fp[p][d + 1]
            for d in range(top + 1)
        ]

    euler = complex_.euler_characteristic()
    alt_z = sum((-1) ** d * r for d, (r, _) in enumerate(betti_z))
    if alt_z != euler:
        raise AssertionError(
            f"Euler cross-check failed over Z: {alt_z} != {euler}"
        )
    for p in primes:
        alt_p = sum((-1) ** d * b for d, b in enumerate(betti_p[p]))
        if alt_p != euler:
            raise AssertionError(
                f"Euler cross-check failed over F_{p}: {alt_p} != {euler}"
            )
    return HomologyProfile(tuple(betti_z), betti_p, euler)


def connected_components(complex_):
    """Vertex-connected subcomplexes, each with its own dimension."""
    parent = {v: v for v in complex_.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s in complex_.simplices(1):
        a, b = find(s[0]), find(s[1])
        if a != b:
            parent[a] = b
    groups: dict = {}
    for v in complex_.vertices:
        groups.setdefault(find(v), []).append(v)
    comps = []
    for root in sorted(groups, key=_vertex_key):
        vs = set(groups[root])
        comps.append(
            SimplicialComplex(
                [s for s in complex_.simplices() if s[0] in vs]
            )
        )
    return comps


def barycentric_subdivision(complex_):
    """Subdivision whose vertices are the simplices of the input.

    Simplices are strictly increasing chains of faces.
    """
    chains = []
    by_dim = {d: complex_.simplices(d) for d in range(complex_.dimension + 1)}

    def extend(chain):
        chains.append(tuple(chain))
        top_s = chain[-1]
        for d in range(len(top_s), complex_.dimension + 1):
            for s in by_dim.get(d, ()):
                if set(top_s) < set(s):
                    chain.append(s)
                    extend(chain)
                    chain.pop()

    for s in complex_.simplices():
        extend([s])
    return SimplicialComplex(chains)
