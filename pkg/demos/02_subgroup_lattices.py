"""Subgroup lattices and character kernels, exactly.

Subgroups are stored as Hermite normal forms of integer lattices, so two
generating sets describe the same subgroup exactly when their canonical
bases coincide.  Enumeration of all subgroups goes through annihilator
duality: small subgroups of the dual group pull back to small-index
subgroups here.
"""

from aft.groups import (
    Character,
    FiniteAbelianGroup,
    Subgroup,
    all_subgroups,
    crt_power_extract,
    kernel,
)

g = FiniteAbelianGroup([(2, [2, 1])])  # Z/4 + Z/2
print(f"Group: {g} (order {g.order})")

print("\nAll subgroups, by order:")
for h in all_subgroups(g):
    gens = [list(x.residues) for x in h.basis_elements()]
    print(f"  order {h.order}, index {h.index}, basis {gens}")

print("\nTwo messy generating sets, one canonical subgroup:")
h1 = Subgroup(g, [g.element((2, 1)), g.element((0, 1))])
h2 = Subgroup(g, [g.element((2, 0)), g.element((2, 1))])
print(f"  {h1.canonical_basis} == {h2.canonical_basis}: {h1 == h2}")

print("\nA character and its kernel:")
chi = Character(g, (1, 1))
ker = kernel(chi)
print(f"  character {chi.exponents} has order {chi.order()}")
print(f"  kernel has index {ker.index} (always equal to the order)")

print("\nCRT extraction of prime components:")
g6 = FiniteAbelianGroup([(2, [1]), (3, [1])])
x = g6.element((1, 1))
for p in (2, 3):
    e, comp = crt_power_extract(x, p)
    print(f"  {p}-component of {list(x.residues)} is x^{e} = {list(comp.residues)}")
