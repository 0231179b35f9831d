"""Tour of the exact homology engine.

Every Betti number here is computed twice: over Z through a sparse Smith
diagonalization, and over F_p by independent Gaussian elimination.  The
engine cross-checks both against the Euler characteristic before
returning, so a profile you can print is a profile that passed its own
audit.
"""

from aft.corpus import boundary_simplex, projective_plane, simplex
from aft.simplicial import barycentric_subdivision, homology


def show(name, cx):
    profile = homology(cx)
    torsion = [list(t) for _, t in profile.betti_Z if t]
    print(f"{name:24s} chi={profile.euler:+d}  betti={profile.ranks()}", end="")
    if torsion:
        print(f"  torsion={torsion}", end="")
    print()


print("Spheres as simplex boundaries:")
for m in range(4):
    show(f"  boundary of simplex-{2 * m + 1}", boundary_simplex(2 * m + 1))

print("\nDisks (full simplices) are invisible to homology:")
for n in (2, 4, 6):
    show(f"  simplex-{n}", simplex(n))

print("\nThe 6-vertex projective plane carries 2-torsion:")
rp2 = projective_plane()
show("  projective plane", rp2)
profile = homology(rp2)
print(f"  mod-2 Betti numbers: {profile.betti_mod_p[2]} (ranks jump!)")
print(f"  mod-3 Betti numbers: {profile.betti_mod_p[3]} (nothing to see)")

print("\nSubdivision changes the triangulation, never the answer:")
show("  Sd(projective plane)", barycentric_subdivision(rp2))
