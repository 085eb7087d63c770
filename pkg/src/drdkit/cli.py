"""Command-line front end.

Exit codes for `check`: 0 all characterizations agree on yes; 1 they agree on
no; 2 nothing applicable (not strongly connected); 3 internal disagreement
between characterizations (a bug signal, never a property of the input);
4 I/O or parse errors.
"""
from __future__ import annotations

import argparse
import random
import sys
from typing import Optional, Sequence

from .characterize import CHECK_IDS, CheckConfig, GraphContext, check_all
from .corpus import (
    FAMILIES,
    GeneratorSpec,
    all_strongly_connected_digraphs,
    edge_list_text,
    generate,
    random_sc,
)
from .digraph import parse_digraph
from .errors import DrdError, InternalInconsistency, ParseError
from .report import canonical_json, human_summary, report_document, spectral_block

EXIT_YES = 0
EXIT_NO = 1
EXIT_NOT_APPLICABLE = 2
EXIT_DISAGREEMENT = 3
EXIT_ERROR = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drdkit",
        description="Decide distance-regularity of a digraph by running every "
        "characterization independently.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run all characterizations on one digraph")
    p_check.add_argument("path", help="input file ('-' for stdin)")
    p_check.add_argument(
        "--format",
        choices=("edge-list", "adjacency-matrix"),
        default="edge-list",
        help="input format (default edge-list)",
    )
    p_check.add_argument("--json", action="store_true", help="emit the JSON report")
    p_check.add_argument(
        "--tol", type=float, default=1e-6, help="relative tolerance for spectral checks"
    )
    p_check.add_argument(
        "--cluster-tol", type=float, default=1e-7, help="eigenvalue clustering tolerance"
    )
    p_check.add_argument(
        "--char",
        default=None,
        help="comma-separated subset of characterization ids "
        f"(from {','.join(CHECK_IDS)})",
    )
    p_check.add_argument(
        "--max-walk-len", type=int, default=None, help="walk length bound for check E"
    )
    p_check.add_argument(
        "--experimental-nx",
        action="store_true",
        help="also run the experimental weakened variant of check I",
    )

    p_gen = sub.add_parser("gen", help="emit a corpus digraph as an edge list")
    p_gen.add_argument("family", help=f"one of: {', '.join(FAMILIES)}")
    p_gen.add_argument("params", nargs="*", type=int, help="family parameters")
    p_gen.add_argument("--seed", type=int, default=None, help="seed for random-sc")
    p_gen.add_argument("--p", type=float, default=0.5, help="arc probability for random-sc")

    p_fuzz = sub.add_parser(
        "fuzz", help="run the agreement contract over many random or enumerated digraphs"
    )
    p_fuzz.add_argument("n_min", type=int)
    p_fuzz.add_argument("n_max", type=int)
    p_fuzz.add_argument("count", type=int, nargs="?", default=100)
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument(
        "--exhaustive",
        action="store_true",
        help="enumerate every strongly connected digraph in the size range",
    )
    p_fuzz.add_argument("--tol", type=float, default=1e-6)
    p_fuzz.add_argument("--cluster-tol", type=float, default=1e-7)
    return parser


def _cmd_check(args: argparse.Namespace) -> int:
    try:
        if args.path == "-":
            text = sys.stdin.read()
        else:
            with open(args.path, "r", encoding="utf-8") as fh:
                text = fh.read()
        g = parse_digraph(text, args.format)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    chars = tuple(args.char.split(",")) if args.char else None
    config = CheckConfig(
        tol=args.tol,
        cluster_tol=args.cluster_tol,
        max_walk_len=args.max_walk_len,
        chars=chars,
        experimental_nx=args.experimental_nx,
    )
    try:
        report = check_all(g, config)
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except DrdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    if args.json:
        spec = None
        if report.strongly_connected and g.n > 1:
            ctx = GraphContext(g, config)
            spec = spectral_block(ctx.spectrum_or_error, ctx.table)
        sys.stdout.write(canonical_json(report_document(report, spec)))
    else:
        sys.stdout.write(human_summary(report))

    if not report.agreement:
        return EXIT_DISAGREEMENT
    overall = report.overall
    if overall is None:
        return EXIT_NOT_APPLICABLE
    return EXIT_YES if overall == "yes" else EXIT_NO


def _cmd_gen(args: argparse.Namespace) -> int:
    try:
        spec = GeneratorSpec(
            family=args.family, params=tuple(args.params), p=args.p, seed=args.seed
        )
        g = generate(spec)
    except DrdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(edge_list_text(g))
    return EXIT_YES


def _cmd_fuzz(args: argparse.Namespace) -> int:
    if args.n_min < 1 or args.n_max < args.n_min:
        print("error: need 1 <= n_min <= n_max", file=sys.stderr)
        return EXIT_ERROR
    config = CheckConfig(tol=args.tol, cluster_tol=args.cluster_tol)
    tally = {"yes": 0, "no": 0, "not-applicable": 0}
    disagreements = 0

    def run_one(g) -> None:
        nonlocal disagreements
        try:
            report = check_all(g, config)
        except InternalInconsistency as exc:
            disagreements += 1
            print(f"INTERNAL INCONSISTENCY on arcs={g.arcs()}: {exc}", file=sys.stderr)
            return
        if not report.agreement:
            disagreements += 1
            print(f"DISAGREEMENT on n={g.n} arcs={g.arcs()}", file=sys.stderr)
            return
        overall = report.overall
        tally[overall if overall is not None else "not-applicable"] += 1

    if args.exhaustive:
        for n in range(args.n_min, args.n_max + 1):
            for g in all_strongly_connected_digraphs(n):
                run_one(g)
    else:
        rng = random.Random(args.seed)
        for _ in range(args.count):
            n = rng.randint(args.n_min, args.n_max)
            if n == 1:
                from .digraph import Digraph

                run_one(Digraph.from_arcs(1, []))
                continue
            p = rng.uniform(0.2, 0.7)
            run_one(random_sc(n, p, seed=rng.randrange(1 << 30)))

    total = sum(tally.values())
    print(
        f"checked {total} digraphs: {tally['yes']} distance-regular, "
        f"{tally['no']} not, {tally['not-applicable']} not applicable; "
        f"{disagreements} disagreements"
    )
    return EXIT_DISAGREEMENT if disagreements else EXIT_YES


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "check":
        return _cmd_check(args)
    if args.command == "gen":
        return _cmd_gen(args)
    if args.command == "fuzz":
        return _cmd_fuzz(args)
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
