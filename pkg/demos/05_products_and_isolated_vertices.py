"""Unique maximal membership and isolated vertices in direct products.

Run:  python demos/05_products_and_isolated_vertices.py
"""
from ncgraph import all_subgroups, builtin, classify_nilpotent, unique_maximal_membership
from ncgraph.theorems import Analysis, corollary_isolated

P = builtin("dihedral(8) x cyclic(3)")
D8, C3 = P.factors
A, latD8, latC3 = Analysis(P), all_subgroups(D8), all_subgroups(C3)
count = A.max_members.sum(axis=0)
isolated = set(A.nc.isolated.tolist())
agree_unique = agree_isolated = 0
for g in range(D8.order):
    for h in range(C3.order):
        x = g * C3.order + h  # index of (g, h) in the product
        agree_unique += unique_maximal_membership(D8, C3, latD8, latC3, g, h).unique == (count[x] == 1)
        agree_isolated += corollary_isolated(D8, C3, Analysis(D8), g, h) == (x in isolated)
print(f"criterion vs brute force on {P.name}: unique maximal {agree_unique}/24, "
      f"isolated {agree_isolated}/24")

# The nilpotent classification names the isolated vertices up front.
cls = classify_nilpotent(P)
print(cls.case.value, "predicted isolated:", len(cls.prediction["nc_isolated"]),
      "observed:", len(isolated))
