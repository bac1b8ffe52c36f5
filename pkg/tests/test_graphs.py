import itertools
from collections import deque

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncgraph.corpus import corpus_selectors
from ncgraph.graphs import (DISCONNECTED, EMPTY, HIERARCHY, UNREACHABLE, GraphKind, VertexError,
                            all_pairs_distances, build_graph, component_summary, distance,
                            hierarchy_check, non_generating_by_closure, non_generating_matrix)
from ncgraph.structure import all_subgroups

from conftest import fixture, group


def _closure(T, gens):
    """Pure-Python closure of element indices under the table ``T`` (lists)."""
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = T[x][g]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def oracle_nc(G):
    """nc(G) edge set straight from the definition, in plain Python."""
    T = G.table.tolist()
    order = len(T)
    central = {a for a in range(order) if all(T[a][b] == T[b][a] for b in range(order))}
    verts = [k for k in range(order) if k not in central]
    edges = set()
    for a, b in itertools.combinations(verts, 2):
        if T[a][b] != T[b][a] and len(_closure(T, [a, b])) < order:
            edges.add((a, b))
    return verts, edges


@pytest.mark.parametrize("sel", ["symmetric(4)", "dihedral(16)", "dicyclic(8)",
                                 "symmetric(3) x cyclic(2)", "alternating(4)", "heisenberg(3)",
                                 "dihedral(8) x cyclic(3)", "dicyclic(8) x cyclic(3)"])
def test_nc_matches_pure_python_oracle(sel):
    G = group(sel)
    verts, edges = oracle_nc(G)
    nc = build_graph(G, "nc", all_subgroups(G))
    assert nc.vertices.tolist() == verts
    assert nc.edge_set() == edges
    assert build_graph(G, "nc").edge_set() == edges  # route without the lattice


def test_s4_nc_diameter_3():
    s = component_summary(build_graph(group("symmetric(4)"), "nc"))
    assert s.connected and s.diameter == 3


def test_q8_nc_edgeless():
    nc = build_graph(group("dicyclic(8)"), "nc")
    assert len(nc) == 6 and nc.edge_count == 0
    s = component_summary(nc)
    assert s.component_count == 6 and s.diameter == DISCONNECTED
    nd = build_graph(group("dicyclic(8)"), "nd")
    assert len(nd) == 0 and component_summary(nd).diameter == EMPTY


def test_d16_isolated_and_nd():
    for G in (group("dihedral(16)"), fixture("smallgroup_16_7")):
        nc = build_graph(G, "nc")
        assert len(nc.isolated) == 4
        s = component_summary(build_graph(G, "nd"))
        assert s.connected and s.diameter == 2


def test_abelian_nc_empty():
    assert component_summary(build_graph(group("cyclic(5)"), "nc")).diameter == EMPTY


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(corpus_selectors(60)))
def test_non_generating_routes_agree(sel):
    G = group(sel)
    assert np.array_equal(non_generating_matrix(G, all_subgroups(G)), non_generating_by_closure(G))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(corpus_selectors(48)))
def test_hierarchy(sel):
    G = group(sel)
    rep = hierarchy_check(G, all_subgroups(G))
    for a, b, ok in rep.relations:
        if (a, b) == ("commuting", "non_generating") and rep.two_generated_abelian:
            continue
        assert ok, (a, b)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(corpus_selectors(48)))
def test_nc_is_intersection(sel):
    G = group(sel)
    lat = all_subgroups(G)
    nc = build_graph(G, "nc", lat)
    nonc = build_graph(G, "non_commuting", lat)
    ng = build_graph(G, "non_generating", lat)
    assert np.array_equal(nc.vertices, nonc.vertices)
    sub = ng.adjacency[np.ix_(nc.vertices - 1, nc.vertices - 1)]  # ng vertices are 1..n-1
    assert np.array_equal(nc.adjacency, nonc.adjacency & sub)
    nd = build_graph(G, "nd", lat)
    assert set(nd.vertices) == set(nc.vertices) - set(nc.isolated)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 14).flatmap(
    lambda n: st.lists(st.booleans(), min_size=n * n, max_size=n * n).map(
        lambda bits: np.array(bits).reshape(n, n))))
def test_all_pairs_distances_vs_single_source(bits):
    adj = bits | bits.T
    np.fill_diagonal(adj, False)
    D = all_pairs_distances(adj)
    G = group("cyclic(14)")
    from ncgraph.graphs import ElementGraph
    graph = ElementGraph(G, GraphKind.COMPLETE, np.arange(len(adj)), adj)
    for x, y in itertools.product(range(len(adj)), repeat=2):
        d = distance(graph, x, y)
        assert D[x, y] == (UNREACHABLE if d is None else d)
    assert np.array_equal(D, D.T)


def test_vertex_error():
    nc = build_graph(group("symmetric(3)"), "nc")
    with pytest.raises(VertexError):
        nc.pos(0)
    assert not nc.has_vertex(0)


def test_every_kind_builds():
    G = group("symmetric(3)")
    sizes = {k: len(build_graph(G, k)) for k in GraphKind}
    assert sizes[GraphKind.COMPLETE] == 5 and sizes[GraphKind.NC] == 5
    assert build_graph(G, "complete").edge_count == 10
    assert [k.value for k in HIERARCHY][0] == "power"
