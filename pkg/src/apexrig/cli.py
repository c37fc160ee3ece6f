"""Command-line interface: ``apexrig <command> ...``.

Exit codes: 0 success, 1 usage or input error, 2 a theorem rule met a
counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Iterator, Sequence, TextIO

from .classify import (
    CONJECTURES,
    RULES,
    THEOREM_RULES,
    IncompleteCensusError,
    UnknownRuleError,
    classify_stream,
    hunt,
    tabulate,
    verify_theorem,
)
from .config import RunConfig, default_primes
from .constructions import CATALOG, CatalogError, build, catalog_names
from .graph import Graph, GraphError, enumerate_connected, read_graph6_lines, write_graph6
from .rigidity import generic_rank, rigid_target

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_COUNTEREXAMPLE = 2


class UsageError(Exception):
    pass


def _primes(text: str) -> tuple[int, ...]:
    try:
        primes = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None
    if not primes:
        raise argparse.ArgumentTypeError("at least one prime is required")
    return primes


def _add_run_options(p: argparse.ArgumentParser, dim: bool = True) -> None:
    if dim:
        p.add_argument("--dim", type=int, default=3, help="dimension (default 3)")
    p.add_argument("--seed", type=int, default=0, help="global seed (default 0)")
    p.add_argument("--trials", type=int, default=3, help="random frameworks per prime (default 3)")
    p.add_argument("--primes", type=_primes, default=None, help="comma-separated primes; default from $APEXRIG_PRIMES or built in")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")


def _config(args) -> RunConfig:
    try:
        return RunConfig(
            dim=getattr(args, "dim", 3),
            primes=args.primes or default_primes(),
            seed=args.seed,
            trials=args.trials,
            jobs=args.jobs,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _open_input(path: str | None, stdin: TextIO) -> Iterable[str]:
    if path is None or path == "-":
        return stdin
    try:
        return open(path, encoding="ascii")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _indexed(lines: Iterable[str]) -> Iterator[tuple[int, Graph]]:
    for index, (_, g) in enumerate(read_graph6_lines(lines)):
        yield index, g


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="apexrig", description="Rigidity of apex and edge-apex graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="graph6 records to JSONL classification reports")
    p.add_argument("input", nargs="?", help="graph6 file (default stdin)")
    _add_run_options(p)

    p = sub.add_parser("rank", help="generic rigidity rank of each input graph as CSV")
    p.add_argument("input", nargs="?", help="graph6 file (default stdin)")
    _add_run_options(p)

    p = sub.add_parser("tabulate", help="reproduce one row of a census table as CSV")
    p.add_argument("--table", type=int, required=True, choices=(1, 2, 3))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--census", help="graph6 file with every connected graph on n vertices ('-' for stdin)")
    p.add_argument("--builtin", action="store_true", help="enumerate the census internally (n <= 8)")
    p.add_argument("--no-header", action="store_true")
    _add_run_options(p, dim=False)

    p = sub.add_parser("verify", help="check a theorem rule over a census; JSON report")
    p.add_argument("--theorem", required=True, help="rule id, or 'all' for every theorem rule")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--census", help="graph6 file to check instead of the built-in enumeration")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds in the report")
    _add_run_options(p, dim=False)

    p = sub.add_parser("gen", help="print a catalog graph as graph6")
    p.add_argument("name", nargs="?")
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--list", action="store_true", help="list catalog names")
    p.add_argument("--no-validate", action="store_true", help="skip the expected-property checks")

    p = sub.add_parser("enumerate", help="all connected graphs on n vertices as graph6")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("hunt", help="search a census for counterexamples to a conjecture")
    p.add_argument("--conjecture", required=True, choices=sorted(CONJECTURES))
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--census", help="graph6 file to search instead of the built-in enumeration")
    _add_run_options(p, dim=False)

    p = sub.add_parser("rules", help="list rule ids")
    return parser


def _census_range(lo: int, hi: int) -> Iterator[tuple[int, Graph]]:
    index = 0
    for n in range(lo, hi + 1):
        for g in enumerate_connected(n):
            yield index, g
            index += 1


def _cmd_classify(args, out: TextIO, stdin: TextIO) -> int:
    cfg = _config(args)
    status = EXIT_OK
    for line in classify_stream(_indexed(_open_input(args.input, stdin)), cfg):
        out.write(line + "\n")
        if '"counterexample":true' in line:
            status = EXIT_COUNTEREXAMPLE
    return status


def _cmd_rank(args, out: TextIO, stdin: TextIO) -> int:
    cfg = _config(args)
    out.write("index,graph6,n,m,rank,maxwell_cap,independent,rigid\n")
    for index, g in _indexed(_open_input(args.input, stdin)):
        r = generic_rank(g, cfg.dim, cfg.for_graph(index))
        rigid = r.rank == rigid_target(g.n, cfg.dim)
        out.write(f"{index},{write_graph6(g)},{g.n},{g.m},{r.rank},{r.maxwell_cap},{int(r.rank == g.m)},{int(rigid)}\n")
    return EXIT_OK


def _cmd_tabulate(args, out: TextIO, err: TextIO, stdin: TextIO) -> int:
    cfg = _config(args)
    if args.builtin:
        census: Iterable[tuple[int, Graph]] = enumerate(enumerate_connected(args.n))
    else:
        census = _indexed(_open_input(args.census, stdin))
    result = tabulate(census, args.table, args.n, cfg)
    if not args.no_header:
        out.write(result.header + "\n")
    out.write(result.csv_row() + "\n")
    if result.unstable:
        err.write(f"warning: {result.unstable} rank verdicts differed between primes\n")
    return EXIT_OK


def _cmd_verify(args, out: TextIO, err: TextIO, stdin: TextIO) -> int:
    cfg = _config(args)
    if args.theorem == "all":
        ids = [r.id for r in THEOREM_RULES]
    else:
        if args.theorem not in RULES:
            raise UnknownRuleError(f"unknown rule {args.theorem!r}; known: {', '.join(sorted(RULES))}")
        ids = [args.theorem]
    if args.census:
        census = list(_indexed(_open_input(args.census, stdin)))
        desc = f"file {args.census}"
    else:
        census = list(_census_range(args.min_n, args.max_n))
        desc = f"connected graphs, {args.min_n} <= n <= {args.max_n}"
    status = EXIT_OK
    for rule_id in ids:
        report = verify_theorem(rule_id, census, cfg, desc)
        out.write(json.dumps(report.to_dict(timing=args.timing), sort_keys=True) + "\n")
        err.write(f"{rule_id}: {report.graphs_checked} checked, {len(report.counterexamples)} counterexamples, {report.elapsed:.1f}s\n")
        if not report.passed:
            status = EXIT_COUNTEREXAMPLE
    return status


def _cmd_gen(args, out: TextIO) -> int:
    if args.list or not args.name:
        for name in catalog_names():
            entry = CATALOG[name]
            out.write(f"{name}\t{entry.arity} parameter(s)\t{entry.summary}\n")
        return EXIT_OK
    built = build(args.name, *args.params, validate=not args.no_validate)
    out.write(write_graph6(built.graph) + "\n")
    return EXIT_OK


def _cmd_hunt(args, out: TextIO, err: TextIO, stdin: TextIO) -> int:
    cfg = _config(args)
    census = list(_indexed(_open_input(args.census, stdin))) if args.census else list(_census_range(1, args.max_n))
    found = hunt(args.conjecture, census, cfg)
    for g6 in found:
        out.write(g6 + "\n")
    err.write(f"{args.conjecture}: {len(found)} graphs contradict the conjecture among {len(census)}\n")
    return EXIT_OK


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        if args.command == "classify":
            return _cmd_classify(args, out, stdin)
        if args.command == "rank":
            return _cmd_rank(args, out, stdin)
        if args.command == "tabulate":
            return _cmd_tabulate(args, out, err, stdin)
        if args.command == "verify":
            return _cmd_verify(args, out, err, stdin)
        if args.command == "gen":
            return _cmd_gen(args, out)
        if args.command == "enumerate":
            for g in enumerate_connected(args.n):
                out.write(write_graph6(g) + "\n")
            return EXIT_OK
        if args.command == "hunt":
            return _cmd_hunt(args, out, err, stdin)
        if args.command == "rules":
            for rule in RULES.values():
                out.write(f"{rule.id}\t{rule.kind}\t{rule.summary}\n")
            return EXIT_OK
    except IncompleteCensusError as exc:
        err.write(f"error: incomplete census: {exc}\n")
    except UnknownRuleError as exc:
        err.write(f"error: {exc.args[0]}\n")
    except CatalogError as exc:
        err.write(f"error: {exc}\n")
    except GraphError as exc:
        err.write(f"error: {exc}\n")
    except UsageError as exc:
        err.write(f"error: {exc}\n")
    except BrokenPipeError:
        return EXIT_OK
    return EXIT_ERROR


def entry_point() -> None:
    sys.exit(main())
