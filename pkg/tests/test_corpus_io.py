import json
import re

import numpy as np
import pytest
import yaml
from hypothesis import given, settings
from hypothesis import strategies as st

from ncgraph.core import GroupError, check_group_axioms
from ncgraph.corpus import (builtin, corpus_selectors, dot_text, export_dot, export_report,
                            fixture_groups, load_group, product_selectors, report_text,
                            save_group)
from ncgraph.graphs import build_graph
from ncgraph.theorems import Analysis, group_stats, verify_with_stats

from conftest import group


def exponent(G):
    return int(np.lcm.reduce(G.element_orders))


def involutions(G):
    return int(np.sum(G.element_orders == 2))


def test_builtin_families():
    assert group("dihedral(8)").order == 8 and involutions(group("dihedral(8)")) == 5
    Q8 = group("dicyclic(8)")
    assert Q8.name == "Q8" and involutions(Q8) == 1 and not Q8.is_abelian
    H = group("heisenberg(3)")
    assert H.order == 27 and exponent(H) == 3 and not H.is_abelian
    H2 = group("heisenberg(2)")
    assert H2.order == 8 and involutions(H2) == 5  # dihedral of order 8
    assert group("alternating(4)").order == 12
    assert group("dicyclic(12)").name == "Dic12" and involutions(group("dicyclic(12)")) == 1
    assert group("dicyclic(16)").name == "Q16"
    assert group("dihedral(4)").is_abelian and exponent(group("dihedral(4)")) == 2
    for sel in ("dicyclic(8)", "dicyclic(20)", "heisenberg(2)"):
        check_group_axioms(group(sel))


def test_builtin_products_and_errors():
    G = builtin("symmetric(4) x cyclic(3)")
    assert G.order == 72 and G.name == "S4 x C3"
    assert builtin("dihedral(8)*cyclic(3)*cyclic(3)").name == "D8 x (C3 x C3)"
    for bad in ("", "nonsense(3)", "cyclic(x)", "dihedral(7)", "dicyclic(6)", "heisenberg(4)"):
        with pytest.raises(ValueError):
            builtin(bad)


def test_corpus_shape():
    sels = corpus_selectors()
    assert len(sels) == len(set(sels))
    assert "dihedral(8) x symmetric(4)" in sels  # order 192
    assert "dihedral(10) x symmetric(4)" not in sels  # order 240
    assert corpus_selectors(1) == []
    assert all(s in sels for s in product_selectors())


def test_load_generator_file(tmp_path):
    p = tmp_path / "s3.json"
    p.write_text(json.dumps({"name": "S3", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]],
                             "metadata": {"expected_order": 6}}))
    G = load_group(p)
    assert G.order == 6 and G.name == "S3" and G.metadata["expected_order"] == 6


def test_load_yaml(tmp_path):
    p = tmp_path / "c3.yaml"
    p.write_text("name: C3\norder: 3\ncayley_table: [[0,1,2],[1,2,0],[2,0,1]]\n")
    assert load_group(p).order == 3


@pytest.mark.parametrize("data, match", [
    ({"name": "x", "degree": 3, "generators": [[1, 0, 2]], "metadata": {"expected_order": 6}},
     "expected order"),
    ({"name": "x", "degree": 2, "generators": [[0, 1]], "cayley_table": [[0]]}, "exactly one"),
    ({"name": "x", "generators": [[1, 0]]}, "degree"),
    ({"name": "x", "degree": 3, "generators": [[0, 0, 1]]}, "generator"),
    ({"name": "x", "cayley_table": [[0, 1], [1, 1]]}, "Latin"),
    ({"name": "x", "order": 3, "cayley_table": [[0, 1], [1, 0]]}, "order"),
])
def test_load_rejects(data, match):
    with pytest.raises(GroupError, match=match):
        load_group(data)


def test_fixtures_load(fixtures_dir):
    groups = fixture_groups(fixtures_dir)
    assert [(G.name, G.order) for G in groups] == [
        ("SmallGroup(16,7)", 16), ("SmallGroup(243,3)", 243), ("SmallGroup(32,6)", 32)]
    for G in groups:
        assert list(G.metadata["catalog_id"]) == [G.order, int(G.name.split(",")[1][:-1])]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(corpus_selectors(48)))
def test_cayley_round_trip(tmp_path_factory, sel):
    G = group(sel)
    path = tmp_path_factory.mktemp("rt") / "g.json"
    save_group(G, path)
    H = load_group(path)
    assert np.array_equal(H.table, G.table) and H.name == G.name


DOT_LINE = re.compile(r"^(//.*|graph \w+ \{|  e\d+ \[order=\d+\];|  e\d+ -- e\d+;|\})$")


def _dot_counts(text):
    lines = text.splitlines()
    assert all(DOT_LINE.match(line) for line in lines), lines
    nodes = [line for line in lines if "[order=" in line]
    edges = [line for line in lines if " -- " in line]
    return len(nodes), len(edges)


@pytest.mark.parametrize("sel, nodes, edges", [
    ("dicyclic(8)", 6, 0), ("cyclic(6)", 0, 0), ("symmetric(4)", 23, None)])
def test_dot(tmp_path, sel, nodes, edges):
    G = group(sel)
    graph = build_graph(G, "nc")
    path = tmp_path / "g.dot"
    export_dot(graph, path)
    text = path.read_text()
    assert text.startswith(f"// kind: nc\n// group: {G.name}\ngraph nc {{")
    n, e = _dot_counts(text)
    assert n == nodes and e == graph.edge_count
    if edges is not None:
        assert e == edges


def test_dot_ordering():
    graph = build_graph(group("symmetric(4)"), "nc")
    text = dot_text(graph)
    nodes = [int(m) for m in re.findall(r"^  e(\d+) \[", text, re.M)]
    edges = [tuple(map(int, m)) for m in re.findall(r"^  e(\d+) -- e(\d+);", text, re.M)]
    assert nodes == sorted(nodes) and edges == sorted(edges)
    assert all(u < v for u, v in edges)


def test_dot_unwritable(tmp_path):
    with pytest.raises(OSError):
        export_dot(build_graph(group("symmetric(3)"), "nc"), tmp_path / "missing" / "g.dot")


def test_empty_report(tmp_path):
    path = tmp_path / "r.yaml"
    export_report([], [], path)
    data = yaml.safe_load(path.read_text())
    assert data["groups"] == [] and data["summary"].startswith("0 groups")


def _report_for(sel):
    v, st_ = verify_with_stats(group(sel))
    return report_text(v, [st_])


def test_report_contents():
    s4 = yaml.safe_load(_report_for("symmetric(4)"))
    (section,) = s4["groups"]
    nc = next(g for g in section["graphs"] if g["kind"] == "nc")
    assert nc["diameter"] == 3
    assert "    diameter: 3\n" in _report_for("symmetric(4)")
    d16 = yaml.safe_load(_report_for("dihedral(16)"))["groups"][0]
    nc = next(g for g in d16["graphs"] if g["kind"] == "nc")
    assert nc["isolated"] == 4 and nc["diameter"] == "disconnected"
    assert d16["p_group_case"] == "iiia_abelian_maximal"
    assert [c["id"] for c in d16["checks"]][:3] == ["P2.1", "P2.2", "C2.3"]


def test_report_deterministic():
    assert _report_for("dihedral(8) x cyclic(3)") == _report_for("dihedral(8) x cyclic(3)")


def test_analysis_stats_all_kinds():
    from ncgraph.graphs import GraphKind
    stats = group_stats(Analysis(group("symmetric(3)")), list(GraphKind))
    assert [g["kind"] for g in stats["graphs"]] == [k.value for k in GraphKind]
