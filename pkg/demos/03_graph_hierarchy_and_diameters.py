"""Graphs on group elements and the diameter of nc(G).

nc(G) joins two non-central elements when they neither commute nor
generate G. nd(G) drops its isolated vertices.

Run:  python demos/03_graph_hierarchy_and_diameters.py
"""
from ncgraph import GraphKind, build_graph, builtin, component_summary, hierarchy_check

S4 = builtin("symmetric(4)")
for kind in GraphKind:
    g = build_graph(S4, kind)
    print(f"{kind.value:15} vertices={len(g):3} edges={g.edge_count}")

# The five graphs of the hierarchy are nested edge sets.
print(hierarchy_check(S4).relations)

# S4 x C3 keeps the diameter of S4 while S4 x C2 shrinks it.
for sel in ["symmetric(4)", "symmetric(4) x cyclic(3)", "symmetric(4) x cyclic(2)"]:
    s = component_summary(build_graph(builtin(sel), "nc"))
    print(f"nc({sel}): components={s.component_count} diameter={s.diameter}")

# Q8 is minimal non-abelian, so nc(Q8) has no edges at all.
print("nc(Q8) edges:", build_graph(builtin("dicyclic(8)"), "nc").edge_count)
