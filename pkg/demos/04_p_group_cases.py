"""The p-group case analysis on the three catalog fixtures.

Run:  python demos/04_p_group_cases.py
"""
from pathlib import Path

from ncgraph import builtin, classify_p_group, component_summary, fixture_groups, run_check
from ncgraph.theorems import Analysis

fixtures = Path(__file__).resolve().parent.parent / "fixtures"
for G in [builtin("heisenberg(3)"), builtin("dihedral(16)")] + fixture_groups(fixtures):
    A = Analysis(G)
    cls = classify_p_group(G, analysis=A)
    nc, nd = component_summary(A.nc), component_summary(A.nd)
    print(f"{G.name:18} case={cls.case.value:28} nc diameter={nc.diameter!s:13} "
          f"isolated={len(nc.isolated)} nd diameter={nd.diameter}")
    verdict = run_check("T1.2", G, analysis=A)
    print(f"{'':18} T1.2 {verdict.status}: predicted {cls.prediction}")
