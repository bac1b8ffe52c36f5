"""Command-line entry point: ``ncgraph {analyze,verify,export-dot,corpus}``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error, 3 an order
or lattice cap was exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import DEFAULT_CAP, GroupError, GroupTooLarge
from .corpus import (PRODUCT_LIMIT, builtin, corpus_selectors, dot_text, fixture_groups,
                     load_group, report_text)
from .graphs import GraphKind
from .structure import DEFAULT_LATTICE_CAP
from .theorems import Analysis, group_stats, verify_with_stats

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_VERIFY_MAX_ORDER = PRODUCT_LIMIT - 1


class UsageError(Exception):
    pass


def resolve_group(selector: str, cap: int = DEFAULT_CAP, seed: int = 0):
    """A group file path if one exists, otherwise a builtin selector."""
    path = Path(selector)
    if path.is_file():
        return load_group(path, cap=cap, seed=seed)
    try:
        return builtin(selector, cap=cap)
    except ValueError as exc:
        if isinstance(exc, GroupError):
            raise
        raise UsageError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    G = resolve_group(args.group, cap=args.max_order or DEFAULT_CAP, seed=args.seed)
    kinds = list(GraphKind) if args.kind == "all" else [GraphKind(args.kind)]
    stats = group_stats(Analysis(G, lattice_cap=DEFAULT_LATTICE_CAP), kinds)
    _emit(report_text([], [stats]), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.group:
        groups = [resolve_group(args.group, seed=args.seed)]
    else:
        max_order = DEFAULT_VERIFY_MAX_ORDER if args.max_order is None else args.max_order
        groups = [builtin(s) for s in corpus_selectors(max_order)]
        if args.fixtures_dir:
            groups += fixture_groups(args.fixtures_dir, seed=args.seed)
    verdicts, stats = [], []
    for G in groups:
        v, st = verify_with_stats(G)
        verdicts += v
        stats.append(st)
    _emit(report_text(verdicts, stats), args.out)
    failed = [v for v in verdicts if v.status == "fail"]
    for v in failed:
        print(f"FAIL {v.check_id} on {v.group_name}: {v.detail}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_export_dot(args) -> int:
    G = resolve_group(args.group, cap=args.max_order or DEFAULT_CAP, seed=args.seed)
    graph = Analysis(G).graph(args.kind)
    _emit(dot_text(graph), args.out)
    return EXIT_OK


def cmd_corpus(args) -> int:
    max_order = DEFAULT_VERIFY_MAX_ORDER if args.max_order is None else args.max_order
    lines = []
    for sel in corpus_selectors(max_order):
        G = builtin(sel)
        lines.append(f"{G.order}\t{G.name}\t{sel}")
    if args.fixtures_dir:
        for G in fixture_groups(args.fixtures_dir, seed=args.seed):
            lines.append(f"{G.order}\t{G.name}\tfile")
    lines.append(f"{len(lines)} groups")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncgraph",
        description="Non-commuting, non-generating graphs of finite groups.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    kinds = [k.value for k in GraphKind]

    def common(p, group_required):
        p.add_argument("--group", required=group_required,
                       help="builtin selector such as 'symmetric(4) x cyclic(3)', or a group file")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for sampled associativity checks of large Cayley tables")

    p = sub.add_parser("analyze", help="graph statistics for one group",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    common(p, True)
    p.add_argument("--kind", default="nc", choices=kinds + ["all"])
    p.add_argument("--max-order", type=int, default=None,
                   help=f"cap on the group order during enumeration (default {DEFAULT_CAP})")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run every check over a group or the corpus",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    common(p, False)
    p.add_argument("--max-order", type=int, default=None,
                   help=f"largest corpus group order (default {DEFAULT_VERIFY_MAX_ORDER})")
    p.add_argument("--fixtures-dir", default=None, help="directory of extra group files")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dot", help="write one graph as DOT",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    common(p, True)
    p.add_argument("--kind", default="nc", choices=kinds)
    p.add_argument("--max-order", type=int, default=None,
                   help=f"cap on the group order during enumeration (default {DEFAULT_CAP})")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("corpus", help="list the standard corpus",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--max-order", type=int, default=None,
                   help=f"largest group order (default {DEFAULT_VERIFY_MAX_ORDER})")
    p.add_argument("--fixtures-dir", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on bad usage
    try:
        return args.func(args)
    except GroupTooLarge as exc:  # includes LatticeTooLarge
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, GroupError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
