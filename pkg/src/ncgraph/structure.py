"""Subgroups, the subgroup lattice, and structural predicates.

Subgroups are dense boolean membership arrays over the parent's element
indices.  The lattice is found by adjoining cyclic subgroups to known
subgroups until nothing new appears; every subgroup ``<g1, ..., gk>`` is
reached along ``<g1> <= <g1, g2> <= ...`` so the enumeration is complete.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .core import (DEFAULT_CAP, FiniteGroup, GroupTooLarge, Permutation,
                   _generating_set, generated_closure)

DEFAULT_LATTICE_CAP = 400


class LatticeTooLarge(GroupTooLarge):
    """Group order is above the cap for complete subgroup enumeration."""


class HypothesisError(ValueError):
    """A theorem-level precondition does not hold for the given input."""


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: np.ndarray
    gens: tuple[int, ...] = ()

    def __post_init__(self):
        m = np.asarray(self.members, dtype=bool)
        m.setflags(write=False)
        object.__setattr__(self, "members", m)

    @cached_property
    def order(self) -> int:
        return int(self.members.sum())

    @cached_property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.members).tobytes()

    def __contains__(self, g) -> bool:
        return bool(self.members[g])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.key == other.key

    def __hash__(self) -> int:
        return hash((id(self.parent), self.key))

    def __le__(self, other: Subgroup) -> bool:
        return bool(np.all(other.members[self.members]))

    def __lt__(self, other: Subgroup) -> bool:
        return self.order < other.order and self <= other

    def __repr__(self) -> str:
        return f"<Subgroup of {self.parent.name} order={self.order}>"

    @cached_property
    def is_abelian(self) -> bool:
        idx = self.indices
        block = self.parent.table[np.ix_(idx, idx)]
        return bool(np.array_equal(block, block.T))

    @cached_property
    def center(self) -> Subgroup:
        """Z(H) as a subgroup of the parent."""
        idx = self.indices
        block = self.parent.table[np.ix_(idx, idx)]
        central = np.all(block == block.T, axis=0)
        members = np.zeros(self.parent.order, dtype=bool)
        members[idx[central]] = True
        return Subgroup(self.parent, members)

    @cached_property
    def is_cyclic(self) -> bool:
        return bool(np.any(self.parent.element_orders[self.indices] == self.order))

    def as_group(self, name: str | None = None) -> tuple[FiniteGroup, np.ndarray]:
        """Re-index the subgroup as a group of its own.

        Returns the group and the array mapping its indices to parent indices
        (local index 0 is the identity).
        """
        idx = self.indices  # sorted, so idx[0] == 0
        local = np.full(self.parent.order, -1, dtype=np.int64)
        local[idx] = np.arange(len(idx))
        table = local[self.parent.table[np.ix_(idx, idx)]]
        gens = [int(local[g]) for g in self.gens] or _generating_set(table)
        return FiniteGroup(table, name=name or f"sub({self.parent.name})",
                           generators=gens), idx


def _subgroup(G: FiniteGroup, members, gens: Sequence[int] = ()) -> Subgroup:
    return Subgroup(G, members, tuple(int(g) for g in gens))


def whole(G: FiniteGroup) -> Subgroup:
    return _subgroup(G, np.ones(G.order, dtype=bool), G.generators)


def trivial(G: FiniteGroup) -> Subgroup:
    members = np.zeros(G.order, dtype=bool)
    members[0] = True
    return _subgroup(G, members)


def subgroup_closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``seed``."""
    seed = sorted({int(s) for s in seed} - {0})
    return _subgroup(G, generated_closure(G.table, seed), seed)


def cyclic_subgroup(G: FiniteGroup, g: int) -> Subgroup:
    members = np.zeros(G.order, dtype=bool)
    x = 0
    while True:
        members[x] = True
        x = int(G.table[x, g])
        if x == 0:
            break
    return _subgroup(G, members, [g] if g else [])


def _adjoin(T: np.ndarray, H: Subgroup, c: int) -> np.ndarray:
    """Members of <H, c>.

    The result is closed under right multiplication by H, so every newly
    found element brings its whole coset xH; only c has to be applied.
    """
    members = H.members.copy()
    h_idx = H.indices
    frontier = h_idx
    while frontier.size:
        prods = T[frontier, c]
        new = np.unique(prods[~members[prods]])
        if not new.size:
            break
        coset = np.unique(T[np.ix_(new, h_idx)].ravel())
        coset = coset[~members[coset]]
        members[coset] = True
        frontier = coset
    return members


def generates(G: FiniteGroup, x: int, y: int) -> bool:
    """Whether ``<x, y> = G``.

    A subgroup with more than ``|G|/2`` elements is G itself, so the closure
    stops as soon as that size is passed.
    """
    n = G.order
    if n == 1:
        return True
    gens = np.array(sorted({x, y} - {0}))
    if not gens.size:
        return False
    members = np.zeros(n, dtype=bool)
    members[0] = True
    count = 1
    frontier = np.array([0])
    T = G.table
    while frontier.size:
        prods = T[np.ix_(frontier, gens)].ravel()
        new = np.unique(prods[~members[prods]])
        members[new] = True
        count += new.size
        if 2 * count > n:
            return True
        frontier = new
    return count == n


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    return _subgroup(G, G.table[g, :] == G.table[:, g])


def center(G: FiniteGroup) -> Subgroup:
    return _subgroup(G, np.all(G.table == G.table.T, axis=0))


def conjugation_closed(G: FiniteGroup, members: np.ndarray) -> bool:
    idx = np.flatnonzero(members)
    g = np.arange(G.order)[:, None]
    # g^-1 h g for every g and every member h
    conj = G.table[G.table[G.inverse[g], idx[None, :]], g]
    return bool(members[conj].all())


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return conjugation_closed(G, H.members)


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    idx = H.indices
    g = np.arange(G.order)[:, None]
    conj = G.table[G.table[G.inverse[g], idx[None, :]], g]
    return _subgroup(G, H.members[conj].all(axis=1))


@dataclass(eq=False)
class SubgroupLattice:
    group: FiniteGroup
    subgroups: list[Subgroup]
    containment: np.ndarray  # containment[i, j]: subgroups[i] <= subgroups[j]
    maximal_ids: list[int]
    frattini_id: int
    _by_key: dict[bytes, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._by_key:
            self._by_key = {s.key: i for i, s in enumerate(self.subgroups)}

    def __len__(self) -> int:
        return len(self.subgroups)

    def id_of(self, members: np.ndarray) -> int:
        """Lattice id of the subgroup with this member set (KeyError if absent)."""
        return self._by_key[np.packbits(np.asarray(members, dtype=bool)).tobytes()]

    @cached_property
    def maximal(self) -> list[Subgroup]:
        return [self.subgroups[i] for i in self.maximal_ids]

    @cached_property
    def frattini(self) -> Subgroup:
        return self.subgroups[self.frattini_id]

    @cached_property
    def normal_ids(self) -> list[int]:
        return [i for i, s in enumerate(self.subgroups) if is_normal(self.group, s)]

    @cached_property
    def maximal_normal_ids(self) -> list[int]:
        """Proper normal subgroups not inside a larger proper normal subgroup."""
        n = self.group.order
        proper = [i for i in self.normal_ids if self.subgroups[i].order < n]
        out = []
        for i in proper:
            if not any(j != i and self.containment[i, j] for j in proper):
                out.append(i)
        return out

    @cached_property
    def maximal_matrix(self) -> np.ndarray:
        """Rows: maximal subgroups; columns: elements."""
        if not self.maximal_ids:
            return np.zeros((0, self.group.order), dtype=bool)
        return np.stack([s.members for s in self.maximal])

    def containing_maximal(self, g: int) -> list[int]:
        """Positions (into ``maximal``) of the maximal subgroups containing g."""
        return [k for k, s in enumerate(self.maximal) if s.members[g]]


def cyclic_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Distinct cyclic subgroups, ordered by their smallest generator index."""
    seen: dict[bytes, Subgroup] = {}
    for g in range(G.order):
        C = cyclic_subgroup(G, g)
        seen.setdefault(C.key, C)
    return list(seen.values())


def _is_prime_power(n: int) -> bool:
    return n > 1 and len(_prime_factors(n)) == 1


def all_subgroups(G: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """Complete subgroup lattice by adjoin-and-close to a fixpoint.

    Candidates to adjoin are the cyclic subgroups of prime-power order: every
    element is a product of powers of itself of prime-power order, so these
    generate every subgroup.  ``<H, c> = <H, h c h'>``, hence one candidate
    per double coset HcH suffices.
    """
    if G.order > cap:
        raise LatticeTooLarge(f"{G.name} has order {G.order} > lattice cap {cap}")
    T = G.table
    reps = [int(C.gens[0]) for C in cyclic_subgroups(G)
            if C.gens and _is_prime_power(C.order)]
    start = trivial(G)
    found: dict[bytes, Subgroup] = {start.key: start}
    queue = [start]
    while queue:
        H = queue.pop()
        h_idx = H.indices
        tried = H.members.copy()
        for c in reps:
            if tried[c]:
                continue
            tried[T[np.ix_(T[h_idx, c], h_idx)].ravel()] = True
            members = _adjoin(T, H, c)
            key = np.packbits(members).tobytes()
            if key not in found:
                K = Subgroup(G, members, H.gens + (c,))
                found[key] = K
                queue.append(K)
    subs = sorted(found.values(), key=lambda s: (s.order, tuple(s.indices)))
    S = np.stack([s.members for s in subs]).astype(np.int32)
    sizes = S.sum(axis=1)
    containment = (S @ S.T) == sizes[:, None]
    n = len(subs)
    top = n - 1  # G itself is the unique largest subgroup
    maximal_ids = []
    for i in range(n - 1):
        supers = np.flatnonzero(containment[i])
        if len(supers) == 2 and supers[-1] == top:
            maximal_ids.append(i)
    if maximal_ids:
        inter = np.logical_and.reduce([subs[i].members for i in maximal_ids])
    else:
        inter = np.ones(G.order, dtype=bool)
    lattice = SubgroupLattice(G, subs, containment, maximal_ids, 0)
    lattice.frattini_id = lattice.id_of(inter)
    return lattice


def maximal_subgroups(lattice: SubgroupLattice) -> list[Subgroup]:
    return list(lattice.maximal)


def frattini(lattice: SubgroupLattice) -> Subgroup:
    return lattice.frattini


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def prime_factors(n: int) -> list[int]:
    return _prime_factors(n)


def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """Some Sylow p-subgroup.

    Grows a p-subgroup P one step at a time: while P is not Sylow, p divides
    |N(P) : P|, so N(P) holds some g outside P with g**p in P, and <P, g> has
    order p|P|.
    """
    if p < 2 or G.order % p or len(_prime_factors(p)) != 1 or _prime_factors(p)[0] != p:
        raise ValueError(f"{p} is not a prime dividing |G| = {G.order}")
    target = _p_part(G.order, p)
    P = trivial(G)
    while P.order < target:
        N = normalizer(G, P)
        for g in N.indices:
            if P.members[g]:
                continue
            if P.members[G.power(int(g), p)]:
                P = _subgroup(G, _adjoin(G.table, P, int(g)), P.gens + (int(g),))
                break
        else:  # pragma: no cover - impossible by Sylow's theorems
            raise RuntimeError("failed to extend p-subgroup")
    return P


def commutator_subgroup(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """[A, B] generated by all x^-1 y^-1 x y with x in A, y in B."""
    T, inv = G.table, G.inverse
    a = A.indices[:, None]
    b = B.indices[None, :]
    comms = T[T[inv[a], inv[b]], T[a, b]]
    return subgroup_closure(G, np.unique(comms))


def lower_central_series(G: FiniteGroup, limit: int = 64) -> list[Subgroup]:
    """G = g_1 >= g_2 >= ... until it stabilises."""
    series = [whole(G)]
    Gw = series[0]
    while len(series) < limit:
        nxt = commutator_subgroup(G, series[-1], Gw)
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def is_nilpotent_lcs(G: FiniteGroup) -> bool:
    return lower_central_series(G)[-1].order == 1


def is_nilpotent(G: FiniteGroup) -> bool:
    """For every prime p, the p-elements form a subgroup."""
    orders = G.element_orders
    for p in _prime_factors(G.order):
        pel = np.array([_p_part(int(o), p) == int(o) for o in orders])
        idx = np.flatnonzero(pel)
        if not pel[G.table[np.ix_(idx, idx)]].all():
            return False
    return True


def p_group_prime(G: FiniteGroup) -> int | None:
    ps = _prime_factors(G.order)
    return ps[0] if len(ps) == 1 else None


def is_two_generated(G: FiniteGroup) -> bool:
    """Some pair (x, y) with <x, y> = G, found by closure."""
    if G.order == 1:
        return True
    reps = [C.gens[0] for C in cyclic_subgroups(G) if C.gens]
    if any(G.element_orders[r] == G.order for r in reps):
        return True
    for x, y in itertools.combinations(reps, 2):
        if generates(G, x, y):
            return True
    return False


@dataclass(frozen=True)
class StructuralPredicates:
    is_abelian: bool
    is_nilpotent: bool
    is_p_group: bool
    prime: int | None
    is_minimal_nonabelian: bool
    is_two_generated: bool
    generation_rank_if_p_group: int | None


def structural_predicates(G: FiniteGroup, lattice: SubgroupLattice) -> StructuralPredicates:
    abelian = G.is_abelian
    p = p_group_prime(G)
    minimal = (not abelian) and all(
        s.is_abelian for s in lattice.subgroups if s.order < G.order)
    rank = None
    if p is not None:
        index = G.order // lattice.frattini.order
        rank = round(np.log(index) / np.log(p)) if index > 1 else 0
        assert p ** rank == index
    return StructuralPredicates(
        is_abelian=abelian,
        is_nilpotent=is_nilpotent(G),
        is_p_group=p is not None,
        prime=p,
        is_minimal_nonabelian=minimal,
        is_two_generated=is_two_generated(G),
        generation_rank_if_p_group=rank,
    )


def _product_name(G: FiniteGroup, H: FiniteGroup) -> str:
    def wrap(X):
        return f"({X.name})" if X.factors else X.name
    return f"{wrap(G)} x {wrap(H)}"


def direct_product(G: FiniteGroup, H: FiniteGroup, cap: int = DEFAULT_CAP,
                   name: str | None = None) -> FiniteGroup:
    """G x H with element (g, h) at index ``g * |H| + h``."""
    n, m = G.order, H.order
    if n * m > cap:
        raise GroupTooLarge(f"|{G.name} x {H.name}| = {n * m} exceeds cap {cap}")
    TG = G.table.astype(np.int64)
    TH = H.table.astype(np.int64)
    table = TG[:, None, :, None] * m + TH[None, :, None, :]
    table = table.reshape(n * m, n * m)
    gens = [g * m for g in G.generators] + [h for h in H.generators]
    elements = None
    if G.elements is not None and H.elements is not None:
        dg = G.elements[0].degree
        elements = [Permutation(a.images + tuple(dg + i for i in b.images))
                    for a in G.elements for b in H.elements]
    return FiniteGroup(table, name=name or _product_name(G, H), generators=gens,
                       elements=elements, factors=(G, H))


@dataclass(frozen=True, eq=False)
class GoursatTriple:
    """How a maximal subgroup of G x H arises.

    ``left``: M_G x H.  ``right``: G x M_H.  ``diagonal``: pairs (g, h) with
    theta(N1 g) = N2 h, where ``theta`` maps coset labels of N1 (smallest
    element index in the coset) to coset labels of N2.
    """

    kind: str
    M_G: Subgroup | None = None
    M_H: Subgroup | None = None
    N1: Subgroup | None = None
    N2: Subgroup | None = None
    theta: dict[int, int] | None = None


def coset_labels(G: FiniteGroup, N: Subgroup) -> np.ndarray:
    """Label of each element's coset gN: its smallest member index."""
    return G.table[:, N.indices].min(axis=1).astype(np.int64)


def _quotient(G: FiniteGroup, N: Subgroup):
    labels = coset_labels(G, N)
    reps = np.unique(labels)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[reps] = np.arange(len(reps))
    table = pos[labels[G.table[np.ix_(reps, reps)]]]
    return labels, reps, pos, table


def quotient_isomorphisms(QA: np.ndarray, QB: np.ndarray) -> list[np.ndarray]:
    """All isomorphisms between two small groups given by Cayley tables.

    Each is returned as an array ``phi`` with ``phi[a]`` the image of ``a``.
    A generating set of the source is mapped in every order-compatible way,
    extended along words, and kept when it is a bijective homomorphism.
    """
    n = len(QA)
    if len(QB) != n:
        return []
    A = FiniteGroup(QA)
    B = FiniteGroup(QB)
    gens = _generating_set(QA)
    if not gens:
        return [np.zeros(1, dtype=np.int64)]
    oa, ob = A.element_orders, B.element_orders
    choices = [np.flatnonzero(ob == oa[g]) for g in gens]
    out = []
    for images in itertools.product(*choices):
        phi = np.full(n, -1, dtype=np.int64)
        phi[0] = 0
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, im in zip(gens, images):
                    y = QA[x, g]
                    target = QB[phi[x], im]
                    if phi[y] == -1:
                        phi[y] = target
                        nxt.append(y)
                    elif phi[y] != target:
                        ok = False
                        break
                if not ok:
                    break
            frontier = nxt
        if not ok or len(set(phi.tolist())) != n:
            continue
        if np.array_equal(phi[QA], QB[np.ix_(phi, phi)]):
            out.append(phi)
    return out


def goursat_maximal_subgroups(G: FiniteGroup, H: FiniteGroup,
                              latG: SubgroupLattice, latH: SubgroupLattice,
                              product: FiniteGroup | None = None,
                              cap: int = DEFAULT_CAP) -> list[tuple[GoursatTriple, Subgroup]]:
    """Every maximal subgroup of G x H from the maximal data of the factors."""
    if product is None:
        product = direct_product(G, H, cap=cap)
    n, m = G.order, H.order
    if product.order != n * m:
        raise ValueError("product does not match the factors")
    out: list[tuple[GoursatTriple, Subgroup]] = []
    seen: set[bytes] = set()

    def emit(triple, members):
        S = Subgroup(product, members.ravel())
        if S.key not in seen:
            seen.add(S.key)
            out.append((triple, S))

    ones_g = np.ones(n, dtype=bool)
    ones_h = np.ones(m, dtype=bool)
    for M in latG.maximal:
        emit(GoursatTriple("left", M_G=M), np.outer(M.members, ones_h))
    for M in latH.maximal:
        emit(GoursatTriple("right", M_H=M), np.outer(ones_g, M.members))
    quots_h = []
    for j in latH.maximal_normal_ids:
        N2 = latH.subgroups[j]
        quots_h.append((N2, _quotient(H, N2)))
    for i in latG.maximal_normal_ids:
        N1 = latG.subgroups[i]
        lab1, reps1, pos1, Q1 = _quotient(G, N1)
        for N2, (lab2, reps2, pos2, Q2) in quots_h:
            if len(reps1) != len(reps2):
                continue
            for phi in quotient_isomorphisms(Q1, Q2):
                img = reps2[phi[pos1[lab1]]]  # label of theta(N1 g) for each g
                members = img[:, None] == lab2[None, :]
                theta = {int(reps1[a]): int(reps2[phi[a]]) for a in range(len(reps1))}
                emit(GoursatTriple("diagonal", N1=N1, N2=N2, theta=theta), members)
    return out


@dataclass(frozen=True)
class MembershipResult:
    unique: bool
    witness: Subgroup | None  # M_G, so that M_G x H is the unique maximal subgroup


def script_L(G: FiniteGroup, latG: SubgroupLattice, h_order: int) -> list[Subgroup]:
    """Normal maximal subgroups L of G whose index divides h_order."""
    return [L for L in latG.maximal
            if h_order % (G.order // L.order) == 0 and is_normal(G, L)]


def unique_maximal_membership(G: FiniteGroup, H: FiniteGroup,
                              latG: SubgroupLattice, latH: SubgroupLattice,
                              g: int, h: int) -> MembershipResult:
    """Whether (g, h) lies in exactly one maximal subgroup of G x H.

    Evaluated from the factors alone: h generates H, g lies in a unique
    maximal M_G of G, and every normal maximal L of G with |G:L| dividing |H|
    equals M_G.  Requires G non-cyclic.
    """
    if whole(G).is_cyclic:
        raise HypothesisError(f"{G.name} is cyclic")
    if H.element_orders[h] != H.order:
        return MembershipResult(False, None)
    containing = latG.containing_maximal(g)
    if len(containing) != 1:
        return MembershipResult(False, None)
    M_G = latG.maximal[containing[0]]
    if any(L != M_G for L in script_L(G, latG, H.order)):
        return MembershipResult(False, None)
    return MembershipResult(True, M_G)
