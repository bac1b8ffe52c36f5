import itertools
from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncgraph.corpus import corpus_selectors
from ncgraph.structure import (HypothesisError, LatticeTooLarge, all_subgroups, center,
                               centralizer, cyclic_subgroup, direct_product,
                               goursat_maximal_subgroups, is_nilpotent, is_nilpotent_lcs,
                               is_normal, is_two_generated, normalizer, prime_factors,
                               structural_predicates, subgroup_closure, sylow_subgroup,
                               unique_maximal_membership, whole)

from conftest import fixture, group

# (number of subgroups, number of maximal subgroups, |Frattini|, |centre|),
# computed with GAP 4 (AllSubgroups, MaximalSubgroups, FrattiniSubgroup, Centre)
GAP_ORACLE = {
    "symmetric(3)": (6, 4, 1, 1),
    "dicyclic(8)": (6, 3, 2, 2),
    "dihedral(8)": (10, 3, 2, 2),
    "dihedral(16)": (19, 3, 4, 2),
    "symmetric(4)": (30, 8, 1, 1),
    "symmetric(4) x cyclic(2)": (98, 10, 1, 2),
    "symmetric(4) x cyclic(3)": (70, 9, 1, 3),
    "symmetric(3) x cyclic(2)": (16, 6, 1, 2),
    "dihedral(8) x cyclic(2)": (35, 7, 2, 4),
    "heisenberg(3)": (19, 4, 3, 3),
}
GAP_FIXTURE_ORACLE = {
    "smallgroup_243_3": (207, 4, 27, 9),
    "smallgroup_32_6": (50, 3, 8, 2),
    "smallgroup_16_7": (19, 3, 4, 2),
}


def _lattice_numbers(G):
    lat = all_subgroups(G)
    return len(lat), len(lat.maximal_ids), lat.frattini.order, center(G).order


@pytest.mark.parametrize("sel", sorted(GAP_ORACLE))
def test_lattice_against_gap(sel):
    assert _lattice_numbers(group(sel)) == GAP_ORACLE[sel]


@pytest.mark.parametrize("name", sorted(GAP_FIXTURE_ORACLE))
def test_fixture_lattice_against_gap(name):
    assert _lattice_numbers(fixture(name)) == GAP_FIXTURE_ORACLE[name]


def _brute_force_subgroups(G):
    """Every subset containing 1 that is closed under multiplication."""
    n = G.order
    found = set()
    for bits in range(1 << (n - 1)):
        members = np.zeros(n, dtype=bool)
        members[0] = True
        members[1:] = [(bits >> k) & 1 for k in range(n - 1)]
        idx = np.flatnonzero(members)
        if members[G.table[np.ix_(idx, idx)]].all():
            found.add(np.packbits(members).tobytes())
    return found


@pytest.mark.parametrize("sel", ["symmetric(3)", "dihedral(8)", "dicyclic(8)", "alternating(4)",
                                 "dihedral(12)", "cyclic(2) x cyclic(6)", "dicyclic(12)"])
def test_lattice_is_complete_by_exhaustion(sel):
    G = group(sel)
    assert {S.key for S in all_subgroups(G).subgroups} == _brute_force_subgroups(G)


@pytest.mark.parametrize("sel", ["symmetric(4)", "dihedral(8) x cyclic(3)", "heisenberg(3)",
                                 "alternating(4) x cyclic(2)"])
def test_lattice_invariants(sel):
    G = group(sel)
    lat = all_subgroups(G)
    keys = [S.key for S in lat.subgroups]
    assert len(set(keys)) == len(keys)
    for S in lat.subgroups:
        idx = S.indices
        assert S.members[0] and G.order % S.order == 0
        assert S.members[G.table[np.ix_(idx, idx)]].all()
    # containment and maximality from scratch
    n = len(lat)
    for i, j in itertools.product(range(n), repeat=2):
        assert lat.containment[i, j] == bool(np.all(lat.subgroups[j].members[lat.subgroups[i].members]))
    top = lat.id_of(whole(G).members)
    maximal = [j for j in range(n) if j != top and not any(
        k not in (j, top) and lat.containment[j, k] for k in range(n))]
    assert maximal == sorted(lat.maximal_ids)
    inter = reduce(np.logical_and, [M.members for M in lat.maximal])
    assert np.array_equal(inter, lat.frattini.members)


def test_lattice_cap():
    with pytest.raises(LatticeTooLarge):
        all_subgroups(group("symmetric(4)"), cap=10)


def test_centre_and_centralizer():
    G = group("dihedral(16)")
    Z = center(G)
    assert Z.order == 2
    for g in range(G.order):
        C = centralizer(G, g)
        assert all(G.commutes(g, x) for x in C.indices)
        assert C.order == sum(G.commutes(g, x) for x in range(G.order))
        assert np.all(C.members[Z.members])


def test_normal_and_normalizer():
    G = group("symmetric(4)")
    lat = all_subgroups(G)
    normal_orders = sorted(S.order for S in lat.subgroups if is_normal(G, S))
    assert normal_orders == [1, 4, 12, 24]
    for S in lat.subgroups:
        N = normalizer(G, S)
        assert is_normal(N.as_group()[0], _restrict(S, N))


def _restrict(S, N):
    NG, to_parent = N.as_group()
    return subgroup_closure(NG, [int(np.flatnonzero(to_parent == s)[0]) for s in S.indices])


@pytest.mark.parametrize("sel", ["symmetric(4)", "dihedral(24)", "alternating(4) x cyclic(5)",
                                 "dicyclic(48)", "heisenberg(3) x cyclic(4)"])
def test_sylow_orders(sel):
    G = group(sel)
    for p in prime_factors(G.order):
        P = sylow_subgroup(G, p)
        pp = 1
        while G.order % (pp * p) == 0:
            pp *= p
        assert P.order == pp
        assert all(prime_factors(int(o)) == [p] for o in G.element_orders[P.indices] if o > 1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(corpus_selectors(72)))
def test_nilpotency_tests_agree(sel):
    G = group(sel)
    assert is_nilpotent(G) == is_nilpotent_lcs(G)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(corpus_selectors(48)))
def test_minimal_nonabelian_is_two_generated(sel):
    G = group(sel)
    pr = structural_predicates(G, all_subgroups(G))
    if pr.is_minimal_nonabelian:
        assert pr.is_two_generated


def test_two_generated_examples():
    assert is_two_generated(group("symmetric(4)"))
    assert not is_two_generated(group("cyclic(2) x dihedral(4)"))
    assert not is_two_generated(group("dihedral(8) x dihedral(8)"))
    assert is_two_generated(group("cyclic(1)"))


def test_p_group_rank():
    pr = structural_predicates(fixture("smallgroup_243_3"), all_subgroups(fixture("smallgroup_243_3")))
    assert pr.is_p_group and pr.prime == 3 and pr.generation_rank_if_p_group == 2


small = st.sampled_from(["cyclic(2)", "cyclic(3)", "symmetric(3)", "dicyclic(8)", "dihedral(8)",
                         "cyclic(4)", "alternating(4)"])


@settings(max_examples=30, deadline=None)
@given(small, small)
def test_direct_product_projections(a, b):
    A, B = group(a), group(b)
    P = direct_product(A, B)
    assert P.order == A.order * B.order and P.factors == (A, B)
    x = np.arange(P.order)
    pa, pb = x // B.order, x % B.order
    T = P.table.astype(np.int64)
    assert np.array_equal(T // B.order, A.table[np.ix_(pa, pa)])
    assert np.array_equal(T % B.order, B.table[np.ix_(pb, pb)])
    assert P.is_abelian == (A.is_abelian and B.is_abelian)
    assert subgroup_closure(P, P.generators).order == P.order


@settings(max_examples=30, deadline=None)
@given(small, small)
def test_goursat_matches_brute_force(a, b):
    A, B = group(a), group(b)
    P = direct_product(A, B)
    goursat = goursat_maximal_subgroups(A, B, all_subgroups(A), all_subgroups(B), product=P)
    assert {S.key for _, S in goursat} == {M.key for M in all_subgroups(P).maximal}


def test_goursat_diagonal_kind():
    C2 = group("cyclic(2)")
    triples = [t for t, _ in goursat_maximal_subgroups(C2, C2, all_subgroups(C2), all_subgroups(C2))]
    assert sorted(t.kind for t in triples) == ["diagonal", "left", "right"]


def test_unique_maximal_membership_needs_noncyclic_first_factor():
    C3 = group("cyclic(3)")
    with pytest.raises(HypothesisError):
        unique_maximal_membership(C3, C3, all_subgroups(C3), all_subgroups(C3), 1, 1)


def test_cyclic_subgroup_order_matches_element_order():
    G = group("dicyclic(24)")
    for g in range(G.order):
        assert cyclic_subgroup(G, g).order == G.element_orders[g]
