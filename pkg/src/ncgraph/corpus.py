"""Builtin group families, the standard corpus, group files and exports."""
from __future__ import annotations

import itertools
import json
import re
from pathlib import Path
from typing import Sequence

import numpy as np
import yaml

from .core import (DEFAULT_CAP, FiniteGroup, GroupError, Permutation,
                   enumerate_group, from_cayley_table)
from .structure import direct_product, prime_factors


def cyclic(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic(n) needs n >= 1")
    gens = [Permutation(tuple((i + 1) % n for i in range(n)))] if n > 1 else []
    return enumerate_group(gens, name=f"C{n}", cap=cap, degree=n)


def dihedral(order: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Symmetries of a regular n-gon, ``order = 2n``."""
    if order < 4 or order % 2:
        raise ValueError("dihedral(order) needs an even order >= 4")
    n = order // 2
    if n == 2:
        # the 2-gon degenerates; use the Klein four-group on 4 points
        gens = [Permutation.from_cycles(4, (0, 1), (2, 3)),
                Permutation.from_cycles(4, (0, 2), (1, 3))]
        return enumerate_group(gens, name="D4", cap=cap)
    r = Permutation(tuple((i + 1) % n for i in range(n)))
    s = Permutation(tuple((-i) % n for i in range(n)))
    return enumerate_group([r, s], name=f"D{order}", cap=cap)


def dicyclic(order: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """<a, b | a^2n = 1, b^2 = a^n, b a b^-1 = a^-1> from its Cayley table.

    Element ``a^i b^j`` has index ``i + 2n j``.
    """
    if order < 4 or order % 4:
        raise ValueError("dicyclic(order) needs order = 4n with n >= 1")
    if order > cap:
        raise ValueError(f"order {order} exceeds cap {cap}")
    n = order // 4
    m = 2 * n
    i = np.arange(order) % m
    j = np.arange(order) // m
    i1, j1 = i[:, None], j[:, None]
    i2, j2 = i[None, :], j[None, :]
    # a^i1 b^j1 a^i2 b^j2 = a^(i1 + (-1)^j1 i2) b^(j1 + j2), and b^2 = a^n
    exp = i1 + np.where(j1 == 1, -i2, i2) + np.where(j1 + j2 == 2, n, 0)
    table = (exp % m) + m * ((j1 + j2) % 2)
    if n & (n - 1) == 0 and n > 1:
        name = f"Q{order}"
    else:
        name = f"Dic{order}"
    G = from_cayley_table(table, name=name)
    return G


def symmetric(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("symmetric(n) needs n >= 1")
    gens = []
    if n >= 2:
        gens = [Permutation.from_cycles(n, (0, 1)), Permutation.from_cycles(n, tuple(range(n)))]
    return enumerate_group(gens, name=f"S{n}", cap=cap, degree=n)


def alternating(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("alternating(n) needs n >= 1")
    gens = [Permutation.from_cycles(n, (0, 1, k)) for k in range(2, n)]
    return enumerate_group(gens, name=f"A{n}", cap=cap, degree=n)


def heisenberg(p: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Unitriangular 3x3 matrices over GF(p) acting on the p^3 column vectors."""
    if p < 2 or prime_factors(p) != [p]:
        raise ValueError("heisenberg(p) needs a prime p")
    vecs = list(itertools.product(range(p), repeat=3))
    index = {v: k for k, v in enumerate(vecs)}

    def act(matrix):
        images = []
        for v in vecs:
            w = tuple(sum(matrix[r][c] * v[c] for c in range(3)) % p for r in range(3))
            images.append(index[w])
        return Permutation(tuple(images))

    x = act([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    y = act([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    return enumerate_group([x, y], name=f"Heis({p})", cap=cap)


FAMILIES = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "dicyclic": dicyclic,
    "symmetric": symmetric,
    "alternating": alternating,
    "heisenberg": heisenberg,
}

_TERM = re.compile(r"^\s*([a-z_]+)\s*\(\s*(\d+)\s*\)\s*$")


def builtin(spec: str, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Build a group from a selector like ``"symmetric(4) x cyclic(3)"``.

    Factors are joined with ``x`` or ``*``; products associate to the right,
    so ``a x b x c`` is ``a x (b x c)``.
    """
    parts = [p for p in re.split(r"\s+x\s+|\*", spec.strip()) if p.strip()]
    if not parts:
        raise ValueError(f"empty group selector {spec!r}")
    groups = []
    for part in parts:
        match = _TERM.match(part)
        if not match or match.group(1) not in FAMILIES:
            raise ValueError(f"unknown group selector {part!r}; families: {sorted(FAMILIES)}")
        groups.append(FAMILIES[match.group(1)](int(match.group(2)), cap=cap))
    G = groups[-1]
    for F in reversed(groups[:-1]):
        G = direct_product(F, G, cap=cap)
    return G


# ---------------------------------------------------------------------------
# the standard corpus

# (family, parameter range) of the base groups
BASE_FAMILIES = (
    ("cyclic", range(1, 25)),
    ("dihedral", range(4, 49, 2)),
    ("dicyclic", range(4, 49, 4)),
    ("symmetric", range(1, 5)),
    ("alternating", range(1, 5)),
    ("heisenberg", (2, 3)),
)

NAMED_PRODUCTS = (
    "dihedral(8) x cyclic(3)",
    "dihedral(8) x cyclic(3) x cyclic(3)",
    "dicyclic(8) x cyclic(3)",
    "dicyclic(8) x cyclic(5)",
    "symmetric(3) x cyclic(2)",
)

# base groups that duplicate another base group element for element (same
# family output up to relabelling), left out of the pairwise products
_PRODUCT_DUPLICATES = {"symmetric(2)", "alternating(3)", "heisenberg(2)", "dicyclic(4)"}

PRODUCT_LIMIT = 200  # pairwise products are taken with |A||B| < PRODUCT_LIMIT


def base_selectors() -> list[str]:
    return [f"{fam}({k})" for fam, ks in BASE_FAMILIES for k in ks]


def _selector_order(sel: str) -> int:
    fam, k = _TERM.match(sel).groups()
    k = int(k)
    if fam == "cyclic":
        return k
    if fam in ("dihedral", "dicyclic"):
        return k
    if fam == "heisenberg":
        return k ** 3
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return fact if fam == "symmetric" else max(1, fact // 2)


def product_selectors(limit: int = PRODUCT_LIMIT) -> list[str]:
    """Unordered pairs of non-trivial base groups with product order below ``limit``."""
    factors = [s for s in base_selectors()
               if _selector_order(s) > 1 and s not in _PRODUCT_DUPLICATES]
    out = []
    for a, b in itertools.combinations_with_replacement(factors, 2):
        if _selector_order(a) * _selector_order(b) < limit:
            out.append(f"{a} x {b}")
    return out


def corpus_selectors(max_order: int | None = None) -> list[str]:
    """Selectors of the standard corpus, in a fixed order, optionally capped by order.

    Order-1 groups (cyclic(1), symmetric(1), alternating(1), alternating(2))
    are left out: every check is vacuous on them.
    """
    sels = base_selectors() + list(NAMED_PRODUCTS) + product_selectors()
    seen, out = set(), []
    for s in sels:
        if s in seen:
            continue
        seen.add(s)
        order = 1
        for part in re.split(r"\s+x\s+", s):
            order *= _selector_order(part)
        if order > 1 and (max_order is None or order <= max_order):
            out.append(s)
    return out


def iter_corpus(max_order: int | None = None, cap: int = DEFAULT_CAP):
    """Yield the corpus groups one at a time (they are cheap to rebuild)."""
    for sel in corpus_selectors(max_order):
        yield builtin(sel, cap=cap)


# ---------------------------------------------------------------------------
# group files


def _read_structured(path: Path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    if Path(path).suffix.lower() in (".yaml", ".yml"):
        return yaml.safe_load(text)
    return json.loads(text)


def load_group(source, cap: int = DEFAULT_CAP, seed: int = 0) -> FiniteGroup:
    """Build a group from a group file (path) or an already parsed mapping.

    Exactly one representation must be present: ``degree`` + ``generators``
    (0-based image lists) or ``order`` + ``cayley_table``.
    """
    data = source if isinstance(source, dict) else _read_structured(source)
    if not isinstance(data, dict):
        raise GroupError("group file must hold a mapping")
    name = str(data.get("name", "G"))
    has_gens = "generators" in data
    has_table = "cayley_table" in data
    if has_gens == has_table:
        raise GroupError(f"{name}: give exactly one of 'generators' or 'cayley_table'")
    meta = data.get("metadata") or {}
    if has_gens:
        if "degree" not in data:
            raise GroupError(f"{name}: generator representation needs 'degree'")
        degree = int(data["degree"])
        try:
            gens = [Permutation(tuple(g)) for g in data["generators"]]
        except (TypeError, ValueError) as exc:
            raise GroupError(f"{name}: bad generator: {exc}") from exc
        G = enumerate_group(gens, name=name, cap=cap, degree=degree)
    else:
        table = np.asarray(data["cayley_table"])
        if "order" in data and int(data["order"]) != len(table):
            raise GroupError(f"{name}: order {data['order']} but table has {len(table)} rows")
        if len(table) > cap:
            raise GroupError(f"{name}: order {len(table)} exceeds cap {cap}")
        G = from_cayley_table(table, name=name, seed=seed)
    expected = meta.get("expected_order")
    if expected is not None and int(expected) != G.order:
        raise GroupError(f"{name}: expected order {expected}, constructed {G.order}")
    G.metadata = dict(meta)
    return G


def group_to_dict(G: FiniteGroup, metadata: dict | None = None) -> dict:
    """Cayley-table group file content for ``G``."""
    out = {"name": G.name, "order": G.order, "cayley_table": G.table.tolist()}
    meta = {**G.metadata, **(metadata or {})}
    if meta:
        out["metadata"] = meta
    return out


def save_group(G: FiniteGroup, path, metadata: dict | None = None) -> None:
    Path(path).write_text(json.dumps(group_to_dict(G, metadata)) + "\n", encoding="utf-8")


def fixture_groups(directory, cap: int = DEFAULT_CAP, seed: int = 0) -> list[FiniteGroup]:
    """All group files in a directory, in file-name order."""
    paths = sorted(p for p in Path(directory).iterdir()
                   if p.suffix.lower() in (".json", ".yaml", ".yml"))
    return [load_group(p, cap=cap, seed=seed) for p in paths]


# ---------------------------------------------------------------------------
# exports


def dot_text(graph) -> str:
    G = graph.group
    lines = [f"// kind: {graph.kind.value}", f"// group: {G.name}", f"graph {graph.kind.value} {{"]
    orders = G.element_orders
    for v in graph.vertices:
        lines.append(f"  e{v} [order={orders[v]}];")
    for u, v in graph.edges():
        lines.append(f"  e{u} -- e{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(graph, path) -> None:
    """Write ``graph`` as undirected DOT, vertices and edges in ascending order."""
    Path(path).write_text(dot_text(graph), encoding="utf-8")


def report_data(verdicts: Sequence, stats: Sequence[dict]) -> dict:
    """Assemble the report mapping: one section per group in ``stats`` order.

    Each stats entry holds ``group`` plus any of ``order``, ``catalog_id``,
    ``predicates``, ``p_group_case``, ``nilpotent_case`` and ``graphs``.
    """
    by_group: dict[str, list] = {}
    for v in verdicts:
        by_group.setdefault(v.group_name, []).append(v)
    groups = []
    counts = {"pass": 0, "fail": 0, "not_applicable": 0}
    for st in stats:
        section = dict(st)
        checks = []
        for v in by_group.get(st["group"], []):
            entry = {"id": v.check_id, "status": v.status}
            if v.status == "fail":
                entry["detail"] = v.detail
            checks.append(entry)
            counts[v.status] += 1
        section["checks"] = checks
        groups.append(section)
    summary = (f"{len(groups)} groups, {sum(counts.values())} checks: "
               f"{counts['pass']} pass, {counts['fail']} fail, "
               f"{counts['not_applicable']} not_applicable")
    return {"groups": groups, "summary": summary}


def report_text(verdicts: Sequence, stats: Sequence[dict]) -> str:
    return yaml.safe_dump(report_data(verdicts, stats), sort_keys=False,
                          default_flow_style=False, allow_unicode=True, width=100)


def export_report(verdicts: Sequence, stats: Sequence[dict], path) -> None:
    Path(path).write_text(report_text(verdicts, stats), encoding="utf-8")
