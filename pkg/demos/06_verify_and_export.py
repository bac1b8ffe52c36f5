"""Checking every result on a corpus slice and writing the outputs.

Run:  python demos/06_verify_and_export.py [output-dir]
The same run is available as ``ncgraph verify --max-order 24``.
"""
import sys
from collections import Counter
from pathlib import Path

from ncgraph import build_graph, builtin, corpus_selectors, export_dot, export_report
from ncgraph.theorems import verify_with_stats

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
verdicts, stats = [], []
for sel in corpus_selectors(24):
    v, s = verify_with_stats(builtin(sel))
    verdicts += v
    stats.append(s)
print(len(stats), "groups", Counter(v.status for v in verdicts))
export_report(verdicts, stats, out / "report_24.yaml")
export_dot(build_graph(builtin("symmetric(4)"), "nc"), out / "nc_S4.dot")
print("wrote", out / "report_24.yaml", "and", out / "nc_S4.dot")
