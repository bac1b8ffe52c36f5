"""Subgroup lattices, maximal subgroups, Frattini subgroups and Goursat's lemma.

Run:  python demos/02_subgroup_lattices.py
"""
from ncgraph import all_subgroups, builtin, center, goursat_maximal_subgroups

for sel in ["symmetric(4)", "dihedral(16)", "heisenberg(3)", "symmetric(4) x cyclic(2)"]:
    G = builtin(sel)
    lat = all_subgroups(G)
    print(f"{G.name:10} subgroups={len(lat):3} maximal={len(lat.maximal_ids):2} "
          f"|Frattini|={lat.frattini.order} |Z|={center(G).order}")

# Maximal subgroups of a direct product come in three kinds. Goursat's lemma
# lists them from the factors alone, and the list matches the lattice of the
# product exactly.
S3, C2 = builtin("symmetric(3)"), builtin("cyclic(2)")
P = builtin("symmetric(3) x cyclic(2)")
triples = goursat_maximal_subgroups(S3, C2, all_subgroups(S3), all_subgroups(C2), product=P)
for triple, M in triples:
    print(f"  {triple.kind:8} order {M.order}")
print("same as brute force:",
      {M.key for _, M in triples} == {M.key for M in all_subgroups(P).maximal})
