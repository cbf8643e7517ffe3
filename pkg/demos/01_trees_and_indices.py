"""Build trees, inspect their edge-degree spectra, and evaluate index values.

Every vertex-degree-based index of a tree is determined by its edge-degree
spectrum: the count of edges joining a degree-i vertex to a degree-j vertex.
The exponential variant replaces each edge weight phi(i, j) by e**phi(i, j),
which for integer weights is represented exactly as {exponent: coefficient}.
"""

from zext import (
    approx_log,
    build_tree,
    edge_spectrum,
    exp_vdb_index,
    phi_value,
    vdb_index,
)
from zext.enumeration import double_star

# the path on 4 vertices and a double star with arms (2, 3)
p4 = build_tree([(0, 1), (1, 2), (2, 3)])
s23 = double_star(2, 3)

print("P4 canonical key:", p4.canonical_key)
print("S(2,3) canonical key:", s23.canonical_key)
print()

for name, tree in (("P4", p4), ("S(2,3)", s23)):
    spec = edge_spectrum(tree)
    print(f"{name} spectrum:", dict(sorted(spec.entries.items())))

print()
print("edge weights: M2(3,4) =", phi_value("M2", 3, 4),
      " M1(1,5) =", phi_value("M1", 1, 5),
      " RANDIC(1,4) =", phi_value("RANDIC", 1, 4))
print()

# plain and exponential second Zagreb values
print("M2(P4) =", vdb_index(p4, "M2"))
print("M2(S(2,3)) =", vdb_index(s23, "M2"))

v = exp_vdb_index(s23, "M2")
print("e^M2(S(2,3)) term map:", dict(sorted(v.terms.items())))
print("log of that value:", approx_log(v))

# real-weight indices are evaluated in log space
r = exp_vdb_index(s23, "RANDIC")
print("e^RANDIC(S(2,3)) log value:", r.log_value)
