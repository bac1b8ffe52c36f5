"""Building groups: permutation closure, Cayley tables, group files.

Run:  python demos/01_groups_from_permutations_and_tables.py
"""
from pathlib import Path

import numpy as np

from ncgraph import Permutation, builtin, enumerate_group, from_cayley_table, load_group

# A group given by permutation generators is closed breadth first. Index 0 is
# always the identity and table[i, j] is "apply i, then j".
t = Permutation.from_cycles(4, (0, 1))
c = Permutation.from_cycles(4, (0, 1, 2, 3))
S4 = enumerate_group([t, c], name="S4")
print(S4, "element orders:", np.bincount(S4.element_orders)[1:])

# The same group from the builtin families, and a product of two of them.
print(builtin("symmetric(4)"), builtin("symmetric(4) x cyclic(3)"))

# Dicyclic groups come straight from their Cayley table. Q8 has one involution.
Q8 = builtin("dicyclic(8)")
print(Q8, "involutions:", int(np.sum(Q8.element_orders == 2)))

# Any Latin square with an identity that passes the associativity check is
# accepted; here the integers mod 6 under addition.
C6 = from_cayley_table(np.add.outer(np.arange(6), np.arange(6)) % 6, name="Z/6")
print(C6, "abelian:", C6.is_abelian)

# Group files carry provenance. The fixtures are regular representations
# exported from a small-groups catalog.
fixtures = Path(__file__).resolve().parent.parent / "fixtures"
G = load_group(fixtures / "smallgroup_32_6.json")
print(G, G.metadata["catalog_id"])
