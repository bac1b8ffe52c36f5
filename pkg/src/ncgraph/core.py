"""Permutations and fully enumerated finite groups.

A :class:`FiniteGroup` is a Cayley table over element indices ``0..order-1``
with the identity at index 0.  Everything downstream (subgroups, graphs,
theorem checks) works on indices only.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

DEFAULT_CAP = 10_000
# above this order associativity of an ingested table is sampled, not exhausted
EXHAUSTIVE_ASSOC_LIMIT = 512


class GroupError(ValueError):
    """Malformed group data (bad generators, non-group Cayley table, ...)."""


class GroupTooLarge(RuntimeError):
    """Raised when a construction would exceed the configured order cap."""


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{0, ..., degree-1}`` given by its image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if not images:
            raise GroupError("a permutation needs degree >= 1")
        if sorted(images) != list(range(len(images))):
            raise GroupError(f"not a bijection: {images}")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                images[a] = b
        return cls(tuple(images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(tuple(inv))

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    if p.degree != q.degree:
        raise GroupError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation(tuple(q.images[i] for i in p.images))


def _index_dtype(order: int):
    return np.uint16 if order <= 65_535 else np.uint32


class FiniteGroup:
    """A finite group stored as a full Cayley table.

    ``table[i, j]`` is the index of the product ``i * j``.  For permutation
    groups ``i * j`` means "apply element i, then element j", matching
    :func:`compose`.  Instances are treated as immutable.
    """

    def __init__(self, table: np.ndarray, name: str = "G",
                 generators: Sequence[int] = (),
                 elements: Sequence[Permutation] | None = None,
                 factors: tuple[FiniteGroup, FiniteGroup] | None = None,
                 metadata: dict | None = None):
        table = np.ascontiguousarray(table, dtype=_index_dtype(len(table)))
        table.setflags(write=False)
        self.table = table
        self.order = int(table.shape[0])
        self.name = name
        self.generators = tuple(int(g) for g in generators)
        self.elements = None if elements is None else tuple(elements)
        # set for groups built by direct_product; enables the product checks
        self.factors = factors
        # provenance from a group file (catalog_id, source, ...)
        self.metadata = dict(metadata or {})
        inv = np.argmin(table, axis=1)  # identity is index 0, the unique zero per row
        inv = inv.astype(table.dtype)
        inv.setflags(write=False)
        self.inverse = inv

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name} order={self.order}>"

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def commutes(self, a: int, b: int) -> bool:
        return self.table[a, b] == self.table[b, a]

    @cached_property
    def element_orders(self) -> np.ndarray:
        """Order of every element, computed for all indices at once."""
        orders = np.zeros(self.order, dtype=np.int64)
        idx = np.arange(self.order)
        power = idx.copy()
        k = 1
        while True:
            done = (power == 0) & (orders == 0)
            orders[done] = k
            if orders.all():
                break
            power = self.table[power, idx]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def power(self, g: int, k: int) -> int:
        x = 0
        for _ in range(k % int(self.element_orders[g])):
            x = int(self.table[x, g])
        return x


def element_order(G: FiniteGroup, g: int) -> int:
    """Smallest ``k >= 1`` with ``g**k`` the identity."""
    k, x = 1, g
    while x != 0:
        x = int(G.table[x, g])
        k += 1
    return k


def _table_from_tree(order: int, parent: list[int], via: list[int],
                     right_mult: np.ndarray) -> np.ndarray:
    """Fill the Cayley table column by column along the BFS tree.

    ``x_j = x_parent(j) * s_via(j)``, hence ``x_i * x_j`` is obtained from
    column ``parent(j)`` by one right multiplication with the generator.
    """
    table = np.empty((order, order), dtype=_index_dtype(order))
    table[:, 0] = np.arange(order)
    for j in range(1, order):
        table[:, j] = right_mult[via[j]][table[:, parent[j]]]
    return table


def enumerate_group(generators: Sequence[Permutation], name: str = "G",
                    cap: int = DEFAULT_CAP, degree: int | None = None) -> FiniteGroup:
    """Breadth-first closure of permutation generators.

    Elements are indexed in discovery order starting from the identity, with
    right multiplication by the generators taken in the given order.
    """
    generators = list(generators)
    if degree is None:
        degree = generators[0].degree if generators else 1
    if any(g.degree != degree for g in generators):
        raise GroupError("generators do not share a degree")
    if cap < 1:
        raise ValueError("cap must be positive")
    gen_arrays = [np.asarray(g.images) for g in generators]
    identity = np.arange(degree)
    index = {identity.tobytes(): 0}
    perms = [identity]
    parent, via = [-1], [-1]
    right = [[] for _ in generators]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        x = perms[i]
        for s, g in enumerate(gen_arrays):
            y = g[x]  # x first, then g
            key = y.tobytes()
            j = index.get(key)
            if j is None:
                j = len(perms)
                if j >= cap:
                    raise GroupTooLarge(f"closure of {name} exceeds cap {cap}")
                index[key] = j
                perms.append(y)
                parent.append(i)
                via.append(s)
                queue.append(j)
            right[s].append((i, j))
    order = len(perms)
    right_mult = np.empty((len(generators), order), dtype=np.int64)
    for s, pairs in enumerate(right):
        for i, j in pairs:
            right_mult[s, i] = j
    table = _table_from_tree(order, parent, via, right_mult)
    gen_idx = []
    for g in gen_arrays:
        gen_idx.append(index[g.tobytes()])
    elements = [Permutation(tuple(p.tolist())) for p in perms]
    return FiniteGroup(table, name=name, generators=gen_idx, elements=elements)


def _generating_set(table: np.ndarray) -> list[int]:
    """Greedy generating set: add each element not yet reached."""
    reached = np.zeros(len(table), dtype=bool)
    reached[0] = True
    gens: list[int] = []
    for g in range(1, len(table)):
        if not reached[g]:
            gens.append(g)
            reached = generated_closure(table, gens)
    return gens


def from_cayley_table(table, name: str = "G", seed: int = 0) -> FiniteGroup:
    """Validate a Cayley table and wrap it as a group.

    If the identity is not index 0 the indices 0 and e are swapped so that the
    identity lands at 0.
    """
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise GroupError("Cayley table must be a non-empty square matrix")
    n = t.shape[0]
    if not np.issubdtype(t.dtype, np.integer):
        raise GroupError("Cayley table entries must be integers")
    t = t.astype(np.int64)
    if t.min() < 0 or t.max() >= n:
        raise GroupError("Cayley table entries out of range")
    full = np.arange(n)
    if not (np.all(np.sort(t, axis=1) == full) and np.all(np.sort(t, axis=0) == full[:, None])):
        raise GroupError("Cayley table is not a Latin square")
    ids = [e for e in range(n) if np.array_equal(t[e], full) and np.array_equal(t[:, e], full)]
    if not ids:
        raise GroupError("Cayley table has no identity row/column")
    e = ids[0]
    if e != 0:
        perm = full.copy()
        perm[0], perm[e] = e, 0
        # relabel: new index k stands for old element perm[k]
        t = perm[t[np.ix_(perm, perm)]]
    _check_associative(t, seed)
    return FiniteGroup(t, name=name, generators=_generating_set(t))


def _check_associative(t: np.ndarray, seed: int) -> None:
    n = len(t)
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        for a in range(n):
            # (a*b)*c vs a*(b*c) for all b, c
            if not np.array_equal(t[t[a]], t[a][t]):
                b, c = np.argwhere(t[t[a]] != t[a][t])[0]
                raise GroupError(f"associativity fails at ({a}, {b}, {c})")
        return
    rng = np.random.default_rng(seed)
    samples = 10 * n * n
    chunk = 1 << 20
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        a, b, c = rng.integers(0, n, size=(3, m))
        bad = t[t[a, b], c] != t[a, t[b, c]]
        if bad.any():
            k = int(np.flatnonzero(bad)[0])
            raise GroupError(f"associativity fails at ({a[k]}, {b[k]}, {c[k]})")
        done += m


def check_group_axioms(G: FiniteGroup) -> None:
    """Exhaustive axiom check (identity, inverses, associativity)."""
    t = G.table.astype(np.int64)
    idx = np.arange(G.order)
    if not (np.array_equal(t[0], idx) and np.array_equal(t[:, 0], idx)):
        raise GroupError("index 0 is not the identity")
    if not (np.all(t[idx, G.inverse] == 0) and np.all(t[G.inverse, idx] == 0)):
        raise GroupError("inverse table is wrong")
    _check_associative(t, 0)


def generated_closure(table: np.ndarray, seed: Iterable[int]) -> np.ndarray:
    """Boolean membership of the subgroup generated by ``seed``."""
    n = len(table)
    gens = sorted({int(s) for s in seed} - {0})
    members = np.zeros(n, dtype=bool)
    members[0] = True
    if not gens:
        return members
    frontier = np.array([0])
    gens_arr = np.array(gens)
    while frontier.size:
        prods = table[np.ix_(frontier, gens_arr)].ravel()
        new = np.unique(prods[~members[prods]])
        members[new] = True
        frontier = new
    return members
