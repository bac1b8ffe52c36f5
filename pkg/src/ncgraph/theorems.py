"""Case analyses and brute-force checks of the structural results on nc(G).

Each check evaluates its hypotheses by brute force, then compares a
``predicted`` record against an ``observed`` one.  Predicted values are exact;
a ``frozenset`` value means "any of these".
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable

import numpy as np

from .core import FiniteGroup
from .graphs import (DISCONNECTED, EMPTY, UNREACHABLE, ElementGraph, GraphKind,
                     build_graph, component_summary)
from .structure import (DEFAULT_LATTICE_CAP, HypothesisError, StructuralPredicates,
                        Subgroup, SubgroupLattice, all_subgroups, center,
                        goursat_maximal_subgroups, is_normal, prime_factors,
                        script_L, structural_predicates, subgroup_closure,
                        sylow_subgroup, unique_maximal_membership, whole)

PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "not_applicable"

CHECK_IDS = ("P2.1", "P2.2", "C2.3", "C2.4", "P2.5", "P3.1", "P3.2", "L3.3",
             "T3.5", "T1.1", "L4.1", "T1.2", "L5.1", "P5.2", "L5.3", "T5.4",
             "C5.5", "T1.3")


class PGroupCase(str, enum.Enum):
    I_ABELIAN_OR_MINIMAL = "i_abelian_or_minimal"
    II_NOT_TWO_GENERATED = "ii_not_two_generated"
    IIIA_ABELIAN_MAXIMAL = "iiia_abelian_maximal"
    IIIB_ALL_CENTRES_EQUAL_ZG = "iiib_all_centres_equal_ZG"
    IIIC_SOME_CENTRE_EXCEEDS_ZG = "iiic_some_centre_exceeds_ZG"

    def __str__(self) -> str:
        return self.value


class NilpotentCase(str, enum.Enum):
    I_ABELIAN = "i_abelian"
    II_TWO_NONCYCLIC_SYLOWS = "ii_two_noncyclic_sylows"
    IIIA_P_TIMES_CYCLIC = "iiia_P_times_cyclic"
    IIIB_P_TIMES_CYCLIC = "iiib_P_times_cyclic"

    def __str__(self) -> str:
        return self.value


@dataclass
class Verdict:
    check_id: str
    group_name: str
    status: str
    predicted: dict = field(default_factory=dict)
    observed: dict = field(default_factory=dict)
    detail: str = ""


def _matches(predicted: dict, observed: dict) -> bool:
    if predicted.keys() != observed.keys():
        return False
    for k, want in predicted.items():
        got = observed[k]
        if isinstance(want, frozenset):
            if got not in want:
                return False
        elif want != got:
            return False
    return True


def _verdict(check_id, G, predicted, observed, detail="") -> Verdict:
    ok = _matches(predicted, observed)
    if not ok and not detail:
        diff = {k: (predicted.get(k), observed.get(k)) for k in predicted.keys() | observed.keys()
                if predicted.get(k) != observed.get(k)}
        detail = f"predicted vs observed differ: {diff}"
    return Verdict(check_id, G.name, PASS if ok else FAIL, predicted, observed, detail)


def _na(check_id, G, why: str) -> Verdict:
    return Verdict(check_id, G.name, NOT_APPLICABLE, detail=why)


def _graph_shape(graph: ElementGraph) -> dict:
    s = component_summary(graph)
    return {"connected": s.component_count == 1, "diameter": s.diameter}


class Analysis:
    """Lazily computed facts about one group, shared by all checks."""

    def __init__(self, G: FiniteGroup, lattice: SubgroupLattice | None = None,
                 lattice_cap: int = DEFAULT_LATTICE_CAP):
        self.G = G
        self._lattice = lattice
        self.lattice_cap = lattice_cap

    @property
    def lattice(self) -> SubgroupLattice:
        if self._lattice is None:
            self._lattice = all_subgroups(self.G, cap=self.lattice_cap)
        return self._lattice

    @cached_property
    def predicates(self) -> StructuralPredicates:
        return structural_predicates(self.G, self.lattice)

    @cached_property
    def center(self) -> Subgroup:
        return center(self.G)

    def graph(self, kind: GraphKind | str) -> ElementGraph:
        kind = GraphKind(kind)
        cache = self.__dict__.setdefault("_graphs", {})
        if kind not in cache:
            needs = kind in (GraphKind.NON_GENERATING, GraphKind.GENERATING,
                             GraphKind.NC, GraphKind.ND)
            cache[kind] = build_graph(self.G, kind, self.lattice if needs else None)
        return cache[kind]

    @property
    def nc(self) -> ElementGraph:
        return self.graph(GraphKind.NC)

    @property
    def nd(self) -> ElementGraph:
        return self.graph(GraphKind.ND)

    @cached_property
    def max_members(self) -> np.ndarray:
        return self.lattice.maximal_matrix

    @cached_property
    def max_centres(self) -> np.ndarray:
        if not self.lattice.maximal_ids:
            return np.zeros((0, self.G.order), dtype=bool)
        return np.stack([M.center.members for M in self.lattice.maximal])

    @cached_property
    def max_normal(self) -> np.ndarray:
        return np.array([is_normal(self.G, M) for M in self.lattice.maximal], dtype=bool)

    @cached_property
    def max_abelian(self) -> np.ndarray:
        return np.array([M.is_abelian for M in self.lattice.maximal], dtype=bool)

    def nc_distance(self) -> tuple[np.ndarray, np.ndarray]:
        """(distance matrix of nc, element -> position map, -1 off graph)."""
        pos = np.full(self.G.order, -1, dtype=np.int64)
        pos[self.nc.vertices] = np.arange(len(self.nc))
        return self.nc.distances, pos


# ---------------------------------------------------------------------------
# classifiers


@dataclass
class PGroupClassification:
    case: PGroupCase
    prime: int
    prediction: dict
    abelian_maximal: Subgroup | None = None
    frattini: Subgroup | None = None


def _p_group_case_flags(A: Analysis) -> dict[PGroupCase, bool]:
    """Each case's defining predicate, evaluated independently of the others."""
    pr = A.predicates
    nonab = not pr.is_abelian
    iii = nonab and pr.is_two_generated and not pr.is_minimal_nonabelian
    zg = A.center.members
    centres_equal = all(np.array_equal(z, zg) for z in A.max_centres)
    some_exceeds = any(not np.array_equal(z, zg) and np.all(z[zg]) for z in A.max_centres)
    return {
        PGroupCase.I_ABELIAN_OR_MINIMAL: pr.is_abelian or pr.is_minimal_nonabelian,
        PGroupCase.II_NOT_TWO_GENERATED: nonab and not pr.is_two_generated,
        PGroupCase.IIIA_ABELIAN_MAXIMAL: iii and bool(A.max_abelian.any()),
        PGroupCase.IIIB_ALL_CENTRES_EQUAL_ZG: iii and centres_equal,
        PGroupCase.IIIC_SOME_CENTRE_EXCEEDS_ZG: iii and not A.max_abelian.any() and some_exceeds,
    }


def classify_p_group(G: FiniteGroup, lattice: SubgroupLattice | None = None,
                     analysis: Analysis | None = None) -> PGroupClassification:
    """Case of a non-trivial p-group and the predicted shape of nc(G)."""
    A = analysis or Analysis(G, lattice)
    pr = A.predicates
    if not pr.is_p_group:
        raise HypothesisError(f"{G.name} is not a p-group")
    if pr.is_abelian or pr.is_minimal_nonabelian:
        return PGroupClassification(PGroupCase.I_ABELIAN_OR_MINIMAL, pr.prime, {"nc_edges": 0})
    if not pr.is_two_generated:
        return PGroupClassification(PGroupCase.II_NOT_TWO_GENERATED, pr.prime,
                                    {"nc_connected": True, "nc_diameter": 2})
    phi = A.lattice.frattini
    common = {"abelian_maximal_count": frozenset({0, 1}), "maximals_contain_ZG": True}
    if A.max_abelian.any():
        M = A.lattice.maximal[int(np.flatnonzero(A.max_abelian)[0])]
        iso = tuple(int(g) for g in np.flatnonzero(M.members & ~phi.members))
        return PGroupClassification(
            PGroupCase.IIIA_ABELIAN_MAXIMAL, pr.prime,
            {**common, "nd_connected": True, "nd_diameter": 2, "nc_isolated": iso},
            abelian_maximal=M, frattini=phi)
    zg = A.center.members
    if all(np.array_equal(z, zg) for z in A.max_centres):
        return PGroupClassification(PGroupCase.IIIB_ALL_CENTRES_EQUAL_ZG, pr.prime,
                                    {**common, "nc_connected": True, "nc_diameter": 2},
                                    frattini=phi)
    return PGroupClassification(PGroupCase.IIIC_SOME_CENTRE_EXCEEDS_ZG, pr.prime,
                                {**common, "nc_connected": True, "nc_diameter": 3},
                                frattini=phi)


def observe_p_group(A: Analysis, prediction: dict) -> dict:
    """Measure exactly the quantities a p-group prediction talks about."""
    nc = component_summary(A.nc)
    nd = component_summary(A.nd)
    measured = {
        "nc_edges": A.nc.edge_count,
        "nc_connected": nc.component_count == 1,
        "nc_diameter": nc.diameter,
        "nd_connected": nd.component_count == 1,
        "nd_diameter": nd.diameter,
        "nc_isolated": tuple(int(v) for v in A.nc.isolated),
        "abelian_maximal_count": int(A.max_abelian.sum()),
        "maximals_contain_ZG": bool(np.all(A.max_members[:, A.center.members])),
    }
    return {k: measured[k] for k in prediction}


@dataclass
class NilpotentClassification:
    case: NilpotentCase
    prediction: dict
    sylow: Subgroup | None = None  # P in case (iii)
    complement: Subgroup | None = None  # H in case (iii)
    sylow_nc_diameter: int | str | None = None


def classify_nilpotent(G: FiniteGroup, lattice: SubgroupLattice | None = None,
                       analysis: Analysis | None = None) -> NilpotentClassification:
    """Case of a nilpotent group with at least two prime divisors."""
    A = analysis or Analysis(G, lattice)
    primes = prime_factors(G.order)
    if len(primes) < 2:
        raise HypothesisError(f"{G.name}: order {G.order} has fewer than two prime divisors")
    if not A.predicates.is_nilpotent:
        raise HypothesisError(f"{G.name} is not nilpotent")
    if G.is_abelian:
        return NilpotentClassification(NilpotentCase.I_ABELIAN, {"nc_vertices": 0})
    sylows = {p: sylow_subgroup(G, p) for p in primes}
    noncyclic = [p for p, S in sylows.items() if not S.is_cyclic]
    if len(noncyclic) >= 2:
        return NilpotentClassification(NilpotentCase.II_TWO_NONCYCLIC_SYLOWS,
                                       {"nc_connected": True, "nc_diameter": 2})
    (p,) = noncyclic  # non-abelian G has a non-abelian, hence non-cyclic, Sylow
    P = sylows[p]
    others = [int(g) for q, S in sylows.items() if q != p for g in S.indices]
    H = subgroup_closure(G, others)
    PG, to_parent = P.as_group(name=f"P({G.name})")
    ncP = build_graph(PG, GraphKind.NC, all_subgroups(PG, cap=A.lattice_cap))
    ncP_summary = component_summary(ncP)
    if len(ncP.isolated) == 0:
        return NilpotentClassification(
            NilpotentCase.IIIA_P_TIMES_CYCLIC,
            {"decomposition_ok": True, "nc_connected": True,
             "nc_diameter": ncP_summary.diameter},
            sylow=P, complement=H, sylow_nc_diameter=ncP_summary.diameter)
    gens_H = [int(h) for h in H.indices if G.element_orders[h] == H.order]
    iso = sorted(int(G.table[to_parent[g], h]) for g in ncP.isolated for h in gens_H)
    return NilpotentClassification(
        NilpotentCase.IIIB_P_TIMES_CYCLIC,
        {"decomposition_ok": True, "nd_connected": True, "nd_diameter": 2,
         "nc_isolated": tuple(iso)},
        sylow=P, complement=H, sylow_nc_diameter=ncP_summary.diameter)


def observe_nilpotent(A: Analysis, cls: NilpotentClassification) -> dict:
    nc = component_summary(A.nc)
    nd = component_summary(A.nd)
    measured = {
        "nc_vertices": len(A.nc),
        "nc_connected": nc.component_count == 1,
        "nc_diameter": nc.diameter,
        "nd_connected": nd.component_count == 1,
        "nd_diameter": nd.diameter,
        "nc_isolated": tuple(int(v) for v in A.nc.isolated),
    }
    if cls.sylow is not None:
        P, H = cls.sylow, cls.complement
        measured["decomposition_ok"] = bool(
            P.order * H.order == A.G.order and H.is_cyclic
            and not np.any(P.members & H.members & (np.arange(A.G.order) != 0))
            and is_normal(A.G, P) and is_normal(A.G, H))
    return {k: measured[k] for k in cls.prediction}


# ---------------------------------------------------------------------------
# checks


def _check_p21(A: Analysis) -> Verdict:
    G = A.G
    if len(A.nc) == 0:
        return _na("P2.1", G, "nc(G) has no vertices (G abelian)")
    s = component_summary(A.nc)
    bad = [c for c, d in zip(s.components, s.diameters) if d == 1]
    detail = f"component of diameter 1: {bad[0]}" if bad else ""
    return _verdict("P2.1", G, {"components_of_diameter_1": 0},
                    {"components_of_diameter_1": len(bad)}, detail)


def _check_p22(A: Analysis) -> Verdict:
    G = A.G
    if G.is_abelian:
        return _na("P2.2", G, "G abelian")
    graph = A.graph(GraphKind.NON_COMMUTING)
    predicted = {"connected": True, "diameter": 2 if len(graph) >= 2 else frozenset({0, 1})}
    return _verdict("P2.2", G, predicted, _graph_shape(graph))


def _check_c23(A: Analysis) -> Verdict:
    G = A.G
    if G.is_abelian:
        return _na("C2.3", G, "G abelian, no non-abelian subgroups")
    subs = [H for H in A.lattice.subgroups if H.order < G.order and not H.is_abelian]
    if not subs:
        return _na("C2.3", G, "no proper non-abelian subgroup")
    bad = []
    for H in subs:
        verts = np.flatnonzero(H.members & ~H.center.members)
        shape = _graph_shape(A.nc.induced(verts))
        if shape != {"connected": True, "diameter": 2}:
            bad.append((H.order, shape))
    detail = f"first violation (order, shape): {bad[0]}" if bad else ""
    return _verdict("C2.3", G, {"subgroups": len(subs), "violations": 0},
                    {"subgroups": len(subs), "violations": len(bad)}, detail)


def _check_c24(A: Analysis) -> Verdict:
    G = A.G
    if G.is_abelian or A.predicates.is_two_generated:
        return _na("C2.4", G, "needs G non-abelian and not 2-generated")
    nonc = A.graph(GraphKind.NON_COMMUTING)
    observed = {**_graph_shape(A.nc),
                "nc_equals_non_commuting": bool(np.array_equal(nonc.vertices, A.nc.vertices)
                                                and np.array_equal(nonc.adjacency, A.nc.adjacency))}
    return _verdict("C2.4", G, {"connected": True, "diameter": 2, "nc_equals_non_commuting": True},
                    observed)


def _check_p25(A: Analysis) -> Verdict:
    G = A.G
    if G.is_abelian or not A.predicates.is_two_generated:
        return _na("P2.5", G, "needs G non-abelian and 2-generated")
    Mx, Zx = A.max_members, A.max_centres
    verts = A.nc.vertices
    isolated = np.zeros(G.order, dtype=bool)
    isolated[A.nc.isolated] = True
    count = Mx.sum(axis=0)
    in_centre = np.any(Mx & Zx, axis=0)
    noncentral_somewhere = np.any(Mx & ~Zx, axis=0)
    predicted_iso = (count == 1) & in_centre
    bad_iff = [int(g) for g in verts if isolated[g] != predicted_iso[g]]
    bad_more = [int(g) for g in verts if not isolated[g] and not noncentral_somewhere[g]]
    detail = ""
    if bad_iff or bad_more:
        detail = f"iff violated at {bad_iff[:3]}, 'moreover' violated at {bad_more[:3]}"
    return _verdict("P2.5", G, {"iff_violations": 0, "moreover_violations": 0},
                    {"iff_violations": len(bad_iff), "moreover_violations": len(bad_more)}, detail)


def _check_p31(A: Analysis) -> Verdict:
    G = A.G
    if G.order == 1:
        return _na("P3.1", G, "trivial group")
    zg = A.center.members
    hyp = [k for k, M in enumerate(A.lattice.maximal)
           if A.max_normal[k] and not A.max_abelian[k]
           and A.max_centres[k].sum() > zg.sum() and np.all(A.max_centres[k][zg])]
    if not hyp:
        return _na("P3.1", G, "no normal non-abelian maximal M with Z(G) < Z(M)")
    return _verdict("P3.1", G, {"abelian_maximal_count": 0},
                    {"abelian_maximal_count": int(A.max_abelian.sum())})


def _check_p32(A: Analysis) -> Verdict:
    G = A.G
    if G.order == 1 or not A.predicates.is_two_generated:
        return _na("P3.2", G, "needs G 2-generated and non-trivial")
    Mx, Zx = A.max_members, A.max_centres
    count = Mx.sum(axis=0)
    hits = set()
    for g in np.flatnonzero(count == 1):
        k = int(np.flatnonzero(Mx[:, g])[0])
        if A.max_normal[k] and Zx[k, g]:
            hits.add(k)
    if not hits:
        return _na("P3.2", G, "no g in a unique normal maximal M with g in Z(M)")
    bad = sorted(k for k in hits if not A.max_abelian[k])
    return _verdict("P3.2", G, {"non_abelian_M": 0}, {"non_abelian_M": len(bad)},
                    f"maximal subgroups (lattice positions) {bad}" if bad else "")


def _check_l33(A: Analysis) -> Verdict:
    G = A.G
    if G.order == 1 or not A.predicates.is_two_generated:
        return _na("L3.3", G, "needs G 2-generated")
    ks = [k for k in range(len(A.lattice.maximal)) if A.max_normal[k] and not A.max_abelian[k]]
    if not ks:
        return _na("L3.3", G, "no normal non-abelian maximal subgroup")
    Mx, Zx = A.max_members, A.max_centres
    D, pos = A.nc_distance()
    # S[k, y]: maximal k contains y but does not centralise it
    S = Mx & ~Zx
    s_count = S.sum(axis=0)
    tuples = far = too_far = iff_bad = 0
    witness = ""
    for L in ks:
        X = np.flatnonzero(Mx[L] & ~Zx[L])
        for M in ks:
            Y = np.flatnonzero(Mx[M] & ~Zx[M])
            d = D[np.ix_(pos[X], pos[Y])]
            d = np.where(d == UNREACHABLE, np.iinfo(np.int64).max, d)
            only_M = (s_count[Y] == 1) & S[M, Y]
            only_L = (s_count[X] == 1) & S[L, X]
            c1 = Zx[M, X][:, None] & (~Mx[L, Y] & only_M)[None, :]
            c2 = (~Mx[M, X] & only_L)[:, None] & Zx[L, Y][None, :]
            tuples += d.size
            far_mask = d > 3
            too_far += int(far_mask.sum())
            is3 = d == 3
            far += int(is3.sum())
            mism = is3 != (c1 | c2)
            iff_bad += int(mism.sum())
            if (far_mask.any() or mism.any()) and not witness:
                i, j = np.argwhere(far_mask | mism)[0]
                witness = f"x={X[i]}, y={Y[j]}, d={d[i, j]}, clause_i={c1[i, j]}, clause_ii={c2[i, j]}"
    return _verdict("L3.3", G, {"tuples": tuples, "distance_over_3": 0, "iff_violations": 0},
                    {"tuples": tuples, "distance_over_3": too_far, "iff_violations": iff_bad},
                    witness)


def _nd_theorem(check_id: str, A: Analysis) -> Verdict:
    s = component_summary(A.nd)
    observed = {"nd_connected": s.component_count == 1,
                "nd_diameter": s.diameter,
                "nc_equals_nd_if_diameter_3": s.diameter != 3 or len(A.nc.isolated) == 0}
    return _verdict(check_id, A.G, {"nd_connected": True, "nd_diameter": frozenset({2, 3}),
                                    "nc_equals_nd_if_diameter_3": True}, observed)


def _check_t35(A: Analysis) -> Verdict:
    G = A.G
    if A.nc.edge_count == 0:
        return _na("T3.5", G, "nc(G) has no edge")
    if not A.max_normal.all():
        return _na("T3.5", G, "some maximal subgroup is not normal")
    return _nd_theorem("T3.5", A)


def _check_t11(A: Analysis) -> Verdict:
    G = A.G
    if A.nc.edge_count == 0:
        return _na("T1.1", G, "nc(G) has no edge")
    if not A.predicates.is_nilpotent:
        return _na("T1.1", G, "G not nilpotent")
    return _nd_theorem("T1.1", A)


def _check_l41(A: Analysis) -> Verdict:
    G = A.G
    pr = A.predicates
    if not pr.is_p_group or pr.is_abelian or not pr.is_two_generated:
        return _na("L4.1", G, "needs a non-abelian 2-generated p-group")
    lat = A.lattice
    phi_id = lat.frattini_id
    phi = lat.frattini
    C = lat.containment
    part1 = all(
        C[phi_id, m] and phi_id != m
        and not any(C[phi_id, k] and C[k, m] and k not in (phi_id, m) for k in range(len(lat)))
        for m in lat.maximal_ids)
    count = A.max_members.sum(axis=0)
    part2 = bool(np.all(count[~phi.members] == 1))
    zg = A.center.members
    part3a = bool(np.all(phi.members[zg]))
    part3b = (np.array_equal(zg, phi.members)) == pr.is_minimal_nonabelian
    part4 = pr.is_minimal_nonabelian or int(A.max_abelian.sum()) <= 1
    observed = {"i": bool(part1), "ii": part2, "iii_ZG_in_Frattini": part3a,
                "iii_equality_iff_minimal": bool(part3b), "iv": bool(part4)}
    return _verdict("L4.1", G, {k: True for k in observed}, observed)


def _check_t12(A: Analysis) -> Verdict:
    G = A.G
    if G.order == 1 or not A.predicates.is_p_group:
        return _na("T1.2", G, "not a non-trivial p-group")
    cls = classify_p_group(G, analysis=A)
    flags = _p_group_case_flags(A)
    pr = A.predicates
    # derived invariant: a minimal non-abelian group is 2-generated
    predicted = {"case": cls.case.value, "cases_matching": 1,
                 "minimal_implies_two_generated": True, **cls.prediction}
    observed = {"case": cls.case.value, "cases_matching": sum(flags.values()),
                "minimal_implies_two_generated": (not pr.is_minimal_nonabelian
                                                  or pr.is_two_generated),
                **observe_p_group(A, cls.prediction)}
    return _verdict("T1.2", G, predicted, observed)


def _orientations(G: FiniteGroup):
    """(X, Y, index) with index(x, y) the product index of x in X, y in Y."""
    A, B = G.factors
    nb = B.order

    def ab(a, b):
        return a * nb + b

    def ba(b, a):
        return a * nb + b

    return [(A, B, ab), (B, A, ba)]


def _check_l51(A: Analysis) -> Verdict:
    G = A.G
    if G.factors is None:
        return _na("L5.1", G, "not a constructed direct product")
    X, Y = G.factors
    ok = any(not P.is_abelian and not whole(Q).is_cyclic for P, Q in ((X, Y), (Y, X)))
    if not ok:
        return _na("L5.1", G, "needs one factor non-abelian and the other non-cyclic")
    return _verdict("L5.1", G, {"connected": True, "diameter": 2}, _graph_shape(A.nc))


def _factor_analysis(A: Analysis, X: FiniteGroup) -> Analysis:
    cache = A.__dict__.setdefault("_factor_analyses", {})
    if id(X) not in cache:
        cache[id(X)] = Analysis(X, lattice_cap=A.lattice_cap)
    return cache[id(X)]


def _check_p52(A: Analysis) -> Verdict:
    G = A.G
    if G.factors is None:
        return _na("P5.2", G, "not a constructed direct product")
    runs = [(X, Y, idx) for X, Y, idx in _orientations(G)
            if not X.is_abelian and whole(Y).is_cyclic]
    if not runs:
        return _na("P5.2", G, "needs a non-abelian factor times a cyclic factor")
    Dp, pos_p = A.nc_distance()
    inf = np.iinfo(np.int64).max
    bad1 = bad2 = 0
    rider_ok = True
    witness = ""
    for X, Y, idx in runs:
        FX = _factor_analysis(A, X)
        DX, pos_x = FX.nc_distance()
        V = FX.nc.vertices
        hs = np.arange(Y.order)
        prod_pos = pos_p[idx(V[:, None], hs[None, :])]  # (|V|, |Y|)
        big = Dp[prod_pos[:, :, None, None], prod_pos[None, None, :, :]]
        big = np.where(big == UNREACHABLE, inf, big)
        dx = DX[np.ix_(pos_x[V], pos_x[V])]
        dx = np.where(dx == UNREACHABLE, inf, dx)
        distinct = ~np.eye(len(V), dtype=bool)
        viol1 = (big > dx[:, None, :, None]) & distinct[:, None, :, None]
        bad1 += int(viol1.sum())
        same = big[np.arange(len(V)), :, np.arange(len(V)), :]  # (|V|, |Y|, |Y|)
        nonisolated = FX.nc.degrees > 0
        viol2 = ~np.isin(same, (0, 2)) & nonisolated[:, None, None]
        bad2 += int(viol2.sum())
        sx = component_summary(FX.nc)
        if sx.component_count == 1:
            sp = component_summary(A.nc)
            rider_ok &= sp.component_count == 1 and sp.diameter <= sx.diameter
        if (viol1.any() or viol2.any()) and not witness:
            witness = f"orientation {X.name} x {Y.name}: part (i) {int(viol1.sum())}, part (ii) {int(viol2.sum())}"
    return _verdict("P5.2", G, {"part_i_violations": 0, "part_ii_violations": 0, "diameter_bound": True},
                    {"part_i_violations": bad1, "part_ii_violations": bad2,
                     "diameter_bound": bool(rider_ok)}, witness)


def _check_l53(A: Analysis) -> Verdict:
    G = A.G
    if G.factors is None:
        return _na("L5.3", G, "not a constructed direct product")
    X, Y = G.factors
    FX, FY = _factor_analysis(A, X), _factor_analysis(A, Y)
    goursat = goursat_maximal_subgroups(X, Y, FX.lattice, FY.lattice, product=G)
    mine = {S.key for _, S in goursat}
    brute = {M.key for M in A.lattice.maximal}
    kinds = {k: sum(1 for t, _ in goursat if t.kind == k) for k in ("left", "right", "diagonal")}
    observed = {"maximal": len(brute), "only_goursat": len(mine - brute),
                "only_brute_force": len(brute - mine)}
    return _verdict("L5.3", G, {"maximal": len(brute), "only_goursat": 0, "only_brute_force": 0},
                    observed, f"kinds {kinds}" if mine != brute else "")


def _check_t54(A: Analysis) -> Verdict:
    G = A.G
    if G.factors is None:
        return _na("T5.4", G, "not a constructed direct product")
    runs = [(X, Y, idx) for X, Y, idx in _orientations(G) if not whole(X).is_cyclic]
    if not runs:
        return _na("T5.4", G, "both factors cyclic")
    count = A.max_members.sum(axis=0)
    pairs = bad = 0
    witness = ""
    for X, Y, idx in runs:
        FX, FY = _factor_analysis(A, X), _factor_analysis(A, Y)
        for x in range(X.order):
            for y in range(Y.order):
                got = unique_maximal_membership(X, Y, FX.lattice, FY.lattice, x, y).unique
                truth = bool(count[idx(x, y)] == 1)
                pairs += 1
                if got != truth:
                    bad += 1
                    witness = witness or f"({X.name}: {x}, {Y.name}: {y}) predicate {got}, brute force {truth}"
    return _verdict("T5.4", G, {"pairs": pairs, "mismatches": 0},
                    {"pairs": pairs, "mismatches": bad}, witness)


def corollary_isolated(X: FiniteGroup, Y: FiniteGroup, FX: Analysis, x: int, y: int) -> bool:
    """Three-clause criterion for (x, y) to be isolated in nc(X x Y), X non-abelian."""
    if Y.element_orders[y] != Y.order:
        return False
    if not (FX.nc.has_vertex(x) and FX.nc.degrees[FX.nc.pos(x)] == 0):
        return False
    Ls = script_L(X, FX.lattice, Y.order)
    if len(Ls) > 1:
        return False
    return not Ls or bool(Ls[0].members[x])


def _check_c55(A: Analysis) -> Verdict:
    G = A.G
    if G.factors is None:
        return _na("C5.5", G, "not a constructed direct product")
    runs = [(X, Y, idx) for X, Y, idx in _orientations(G) if not X.is_abelian]
    if not runs:
        return _na("C5.5", G, "both factors abelian")
    isolated = np.zeros(G.order, dtype=bool)
    isolated[A.nc.isolated] = True
    pairs = bad = 0
    witness = ""
    for X, Y, idx in runs:
        FX = _factor_analysis(A, X)
        for x in range(X.order):
            for y in range(Y.order):
                got = corollary_isolated(X, Y, FX, x, y)
                truth = bool(isolated[idx(x, y)])
                pairs += 1
                if got != truth:
                    bad += 1
                    witness = witness or f"({X.name}: {x}, {Y.name}: {y}) predicate {got}, brute force {truth}"
    return _verdict("C5.5", G, {"pairs": pairs, "mismatches": 0},
                    {"pairs": pairs, "mismatches": bad}, witness)


def _check_t13(A: Analysis) -> Verdict:
    G = A.G
    if len(prime_factors(G.order)) < 2:
        return _na("T1.3", G, "order has fewer than two prime divisors")
    if not A.predicates.is_nilpotent:
        return _na("T1.3", G, "G not nilpotent")
    cls = classify_nilpotent(G, analysis=A)
    predicted = {"case": cls.case.value, **cls.prediction}
    observed = {"case": cls.case.value, **observe_nilpotent(A, cls)}
    return _verdict("T1.3", G, predicted, observed)


CHECKS: dict[str, Callable[[Analysis], Verdict]] = {
    "P2.1": _check_p21, "P2.2": _check_p22, "C2.3": _check_c23, "C2.4": _check_c24,
    "P2.5": _check_p25, "P3.1": _check_p31, "P3.2": _check_p32, "L3.3": _check_l33,
    "T3.5": _check_t35, "T1.1": _check_t11, "L4.1": _check_l41, "T1.2": _check_t12,
    "L5.1": _check_l51, "P5.2": _check_p52, "L5.3": _check_l53, "T5.4": _check_t54,
    "C5.5": _check_c55, "T1.3": _check_t13,
}
assert tuple(CHECKS) == CHECK_IDS


def run_check(check_id: str, G: FiniteGroup, lattice: SubgroupLattice | None = None,
              analysis: Analysis | None = None) -> Verdict:
    try:
        check = CHECKS[check_id]
    except KeyError:
        raise KeyError(f"unknown check id {check_id!r}") from None
    return check(analysis or Analysis(G, lattice))


def verify_group(G: FiniteGroup, lattice: SubgroupLattice | None = None,
                 lattice_cap: int = DEFAULT_LATTICE_CAP) -> list[Verdict]:
    """All checks on one group, in catalog order."""
    A = Analysis(G, lattice, lattice_cap=lattice_cap)
    return [CHECKS[c](A) for c in CHECK_IDS]


# ---------------------------------------------------------------------------
# per-group summaries for reports

REPORT_KINDS = (GraphKind.NC, GraphKind.ND)


def graph_stats(graph: ElementGraph) -> dict:
    s = component_summary(graph)
    return {"kind": graph.kind.value, "vertices": len(graph), "edges": graph.edge_count,
            "components": s.component_count, "diameter": s.diameter,
            "isolated": len(s.isolated)}


def group_stats(A: Analysis, kinds=REPORT_KINDS) -> dict:
    """Order, predicates, case labels and per-kind graph stats of one group."""
    G = A.G
    out: dict[str, Any] = {"group": G.name, "order": G.order}
    if "catalog_id" in G.metadata:
        out["catalog_id"] = list(G.metadata["catalog_id"])
    pr = A.predicates
    out["predicates"] = {
        "abelian": pr.is_abelian, "nilpotent": pr.is_nilpotent, "p_group": pr.is_p_group,
        "minimal_nonabelian": pr.is_minimal_nonabelian, "two_generated": pr.is_two_generated,
    }
    p_case = n_case = None
    if pr.is_p_group and G.order > 1:
        p_case = classify_p_group(G, analysis=A).case.value
    if pr.is_nilpotent and len(prime_factors(G.order)) >= 2:
        n_case = classify_nilpotent(G, analysis=A).case.value
    out["p_group_case"] = p_case
    out["nilpotent_case"] = n_case
    out["graphs"] = [graph_stats(A.graph(k)) for k in kinds]
    return out


def verify_with_stats(G: FiniteGroup, lattice_cap: int = DEFAULT_LATTICE_CAP,
                      kinds=REPORT_KINDS) -> tuple[list[Verdict], dict]:
    A = Analysis(G, lattice_cap=lattice_cap)
    verdicts = [CHECKS[c](A) for c in CHECK_IDS]
    return verdicts, group_stats(A, kinds)
