"""Graphs on the elements of a finite group.

Adjacency is a dense boolean matrix.  All-pairs distances come from a
level-synchronous BFS run for every source at once, where one level is a
boolean matrix product (``float32`` matmul, exact for 0/1 data).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import FiniteGroup
from .structure import (SubgroupLattice, center, cyclic_subgroup, cyclic_subgroups,
                        generates, is_two_generated)

UNREACHABLE = -1
DISCONNECTED = "disconnected"
EMPTY = "empty"


class GraphKind(str, enum.Enum):
    POWER = "power"
    ENHANCED_POWER = "enhanced_power"
    COMMUTING = "commuting"
    NON_GENERATING = "non_generating"
    COMPLETE = "complete"
    GENERATING = "generating"
    NON_COMMUTING = "non_commuting"
    NC = "nc"
    ND = "nd"

    def __str__(self) -> str:
        return self.value


HIERARCHY = (GraphKind.POWER, GraphKind.ENHANCED_POWER, GraphKind.COMMUTING,
             GraphKind.NON_GENERATING, GraphKind.COMPLETE)


class VertexError(KeyError):
    pass


@dataclass(eq=False)
class ElementGraph:
    group: FiniteGroup
    kind: GraphKind
    vertices: np.ndarray  # element indices, ascending
    adjacency: np.ndarray  # adjacency[i, j] between vertices[i] and vertices[j]

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=np.int64)
        self.adjacency = np.asarray(self.adjacency, dtype=bool)
        self.vertices.setflags(write=False)
        self.adjacency.setflags(write=False)

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def position(self) -> dict[int, int]:
        return {int(v): i for i, v in enumerate(self.vertices)}

    def pos(self, v: int) -> int:
        try:
            return self.position[int(v)]
        except KeyError:
            raise VertexError(f"element {v} is not a vertex of {self.kind} graph") from None

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    @property
    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Unordered edges as (u, v) element pairs with u < v, sorted."""
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return [(int(self.vertices[a]), int(self.vertices[b])) for a, b in zip(i, j)]

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges())

    @cached_property
    def isolated(self) -> np.ndarray:
        return self.vertices[self.degrees == 0]

    def has_vertex(self, v: int) -> bool:
        return int(v) in self.position

    def neighbors(self, v: int) -> np.ndarray:
        return self.vertices[self.adjacency[self.pos(v)]]

    def induced(self, vertices, kind: GraphKind | None = None) -> ElementGraph:
        keep = np.array(sorted(int(v) for v in vertices), dtype=np.int64)
        p = np.array([self.pos(v) for v in keep], dtype=np.int64)
        return ElementGraph(self.group, kind or self.kind, keep,
                            self.adjacency[np.ix_(p, p)] if len(p) else np.zeros((0, 0), bool))

    @cached_property
    def distances(self) -> np.ndarray:
        return all_pairs_distances(self.adjacency)


def all_pairs_distances(adjacency: np.ndarray) -> np.ndarray:
    """BFS distances between all vertex pairs; ``UNREACHABLE`` across components."""
    n = len(adjacency)
    dist = np.full((n, n), UNREACHABLE, dtype=np.int64)
    if n == 0:
        return dist
    A = adjacency.astype(np.float32)
    reached = np.eye(n, dtype=bool)
    dist[reached] = 0
    frontier = reached.copy()
    level = 0
    while frontier.any():
        level += 1
        nxt = (frontier.astype(np.float32) @ A) > 0
        nxt &= ~reached
        dist[nxt] = level
        reached |= nxt
        frontier = nxt
    return dist


def _powers_matrix(G: FiniteGroup) -> np.ndarray:
    """P[x, y] is True when y is a power of x."""
    n = G.order
    P = np.zeros((n, n), dtype=bool)
    idx = np.arange(n)
    power = np.zeros(n, dtype=np.int64)
    for _ in range(int(G.element_orders.max())):
        P[idx, power] = True
        power = G.table[power, idx]
    return P


def _cache(G: FiniteGroup) -> dict:
    if not hasattr(G, "_graph_cache"):
        G._graph_cache = {}
    return G._graph_cache


def commuting_matrix(G: FiniteGroup) -> np.ndarray:
    c = _cache(G)
    if "commuting" not in c:
        c["commuting"] = G.table == G.table.T
    return c["commuting"]


def non_generating_matrix(G: FiniteGroup, lattice: SubgroupLattice | None = None) -> np.ndarray:
    """NG[x, y] is True when <x, y> != G.

    With a lattice this is "x and y share a maximal subgroup"; without one,
    each pair of cyclic subgroups is closed explicitly (<x, y> only depends on
    <x> and <y>).
    """
    c = _cache(G)
    key = ("non_generating", lattice is not None)
    if key in c:
        return c[key]
    if lattice is not None:
        if lattice.group is not G:
            raise ValueError("lattice belongs to another group")
        M = lattice.maximal_matrix.astype(np.float32)
        NG = (M.T @ M) > 0
    else:
        NG = non_generating_by_closure(G)
    NG.setflags(write=False)
    c[key] = NG
    return NG


def non_generating_by_closure(G: FiniteGroup) -> np.ndarray:
    cyclics = cyclic_subgroups(G)
    reps = [C.gens[0] if C.gens else 0 for C in cyclics]
    by_key = {C.key: k for k, C in enumerate(cyclics)}
    label = np.array([by_key[cyclic_subgroup(G, x).key] for x in range(G.order)])
    m = len(cyclics)
    gen_pair = np.zeros((m, m), dtype=bool)
    for a in range(m):
        for b in range(a, m):
            gen_pair[a, b] = gen_pair[b, a] = generates(G, reps[a], reps[b])
    return ~gen_pair[np.ix_(label, label)]


def build_graph(G: FiniteGroup, kind: GraphKind | str,
                lattice: SubgroupLattice | None = None) -> ElementGraph:
    """One graph of the hierarchy.

    Vertex sets: G minus the identity for the hierarchy kinds and the
    generating graph; G minus Z(G) for ``non_commuting`` and ``nc``; the
    non-isolated vertices of nc for ``nd``.
    """
    kind = GraphKind(kind)
    n = G.order
    if kind in (GraphKind.NON_COMMUTING, GraphKind.NC, GraphKind.ND):
        verts = np.flatnonzero(~center(G).members)
    else:
        verts = np.arange(1, n)
    if kind is GraphKind.POWER:
        P = _powers_matrix(G)
        full = P | P.T
    elif kind is GraphKind.ENHANCED_POWER:
        C = np.stack([c.members for c in cyclic_subgroups(G)]).astype(np.float32)
        full = (C.T @ C) > 0
    elif kind is GraphKind.COMMUTING:
        full = commuting_matrix(G)
    elif kind is GraphKind.NON_GENERATING:
        full = non_generating_matrix(G, lattice)
    elif kind is GraphKind.COMPLETE:
        full = np.ones((n, n), dtype=bool)
    elif kind is GraphKind.GENERATING:
        full = ~non_generating_matrix(G, lattice)
    elif kind is GraphKind.NON_COMMUTING:
        full = ~commuting_matrix(G)
    else:
        full = ~commuting_matrix(G) & non_generating_matrix(G, lattice)
    adj = full[np.ix_(verts, verts)].copy()
    np.fill_diagonal(adj, False)
    if kind is GraphKind.ND:
        keep = adj.any(axis=1)
        verts, adj = verts[keep], adj[np.ix_(keep, keep)]
    return ElementGraph(G, kind, verts, adj)


@dataclass(frozen=True)
class ComponentSummary:
    component_count: int
    components: tuple[tuple[int, ...], ...]  # element indices per component
    sizes: tuple[int, ...]
    diameters: tuple[int, ...]
    isolated: tuple[int, ...]
    diameter: int | str  # int when connected, else DISCONNECTED or EMPTY

    @property
    def connected(self) -> bool:
        return self.component_count == 1


def component_summary(graph: ElementGraph) -> ComponentSummary:
    n = len(graph)
    if n == 0:
        return ComponentSummary(0, (), (), (), (), EMPTY)
    D = graph.distances
    reach = D != UNREACHABLE
    label = np.argmax(reach, axis=1)  # smallest reachable position
    comps, diams = [], []
    for root in np.unique(label):
        members = np.flatnonzero(label == root)
        comps.append(tuple(int(graph.vertices[i]) for i in members))
        diams.append(int(D[np.ix_(members, members)].max()))
    count = len(comps)
    return ComponentSummary(
        component_count=count,
        components=tuple(comps),
        sizes=tuple(len(c) for c in comps),
        diameters=tuple(diams),
        isolated=tuple(int(v) for v in graph.isolated),
        diameter=diams[0] if count == 1 else DISCONNECTED,
    )


def distance(graph: ElementGraph, x: int, y: int) -> int | None:
    """Shortest-path length between two vertices, ``None`` if unreachable."""
    i, j = graph.pos(x), graph.pos(y)
    if i == j:
        return 0
    A = graph.adjacency
    seen = np.zeros(len(graph), dtype=bool)
    seen[i] = True
    frontier = seen.copy()
    d = 0
    while frontier.any():
        d += 1
        frontier = A[frontier].any(axis=0) & ~seen
        if frontier[j]:
            return d
        seen |= frontier
    return None


@dataclass(frozen=True)
class HierarchyReport:
    relations: tuple[tuple[str, str, bool], ...]  # (smaller, larger, edge subset holds)
    two_generated_abelian: bool

    def holds(self, smaller: str, larger: str) -> bool:
        for a, b, ok in self.relations:
            if a == smaller and b == larger:
                return ok
        raise KeyError((smaller, larger))


def hierarchy_check(G: FiniteGroup, lattice: SubgroupLattice | None = None) -> HierarchyReport:
    """Edge-subset relations between consecutive graphs of the hierarchy.

    The commuting graph can only fail to sit inside the non-generating graph
    when G is 2-generated and abelian; that flag is reported alongside.
    """
    graphs = [build_graph(G, k, lattice) for k in HIERARCHY]
    rels = []
    for a, b in zip(graphs, graphs[1:]):
        ok = not np.any(a.adjacency & ~b.adjacency)
        rels.append((a.kind.value, b.kind.value, bool(ok)))
    return HierarchyReport(tuple(rels), bool(G.is_abelian and is_two_generated(G)))
