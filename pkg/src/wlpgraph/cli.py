"""Command-line entry point.

Exit codes: 0 success / has WLP, 1 negative result or mismatch, 2 usage
error, 3 indeterminate rank.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .graph import Graph, GraphError, cycle, disjoint_union, pan, parse_edge_list, path, tadpole
from .harness import TARGETS, RunConfig, oracle_crosscheck, reproduce
from .indpoly import independence_polynomial, mode_analysis
from .levels import format_matrix_dump, level_map
from .rank import RankIndeterminate
from .wlp import WlpReport, wlp_check

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INDETERMINATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {tok!r}") from None


def parse_graph_spec(tokens: list[str]) -> tuple[Graph, str, list[str]]:
    """Consume one graph spec from ``tokens``; return (graph, name, rest).

    Grammar: --path N | --cycle M | --pan M | --tadpole M N
    | --union SPEC SPEC | --edges FILE
    """
    if not tokens:
        raise UsageError("missing graph spec (--path N | --cycle M | --pan M | --tadpole M N | --union A B | --edges FILE)")
    head, rest = tokens[0], tokens[1:]

    def need(k):
        if len(rest) < k:
            raise UsageError(f"{head} needs {k} argument(s)")

    try:
        if head == "--path":
            need(1)
            n = _int(rest[0], "N")
            return path(n), f"P_{n}", rest[1:]
        if head == "--cycle":
            need(1)
            m = _int(rest[0], "M")
            return cycle(m), f"C_{m}", rest[1:]
        if head == "--pan":
            need(1)
            m = _int(rest[0], "M")
            return pan(m), f"Pan_{m}", rest[1:]
        if head == "--tadpole":
            need(2)
            m, n = _int(rest[0], "M"), _int(rest[1], "N")
            return tadpole(m, n), f"T_{{{m},{n}}}", rest[2:]
        if head == "--union":
            g1, n1, rest = parse_graph_spec(rest)
            g2, n2, rest = parse_graph_spec(rest)
            return disjoint_union(g1, g2), f"({n1} + {n2})", rest
        if head == "--edges":
            need(1)
            try:
                text = Path(rest[0]).read_text()
            except OSError as exc:
                raise UsageError(f"cannot read {rest[0]}: {exc}") from None
            return parse_edge_list(text), rest[0], rest[1:]
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown graph spec token {head!r}")


def _graph_from(extras: list[str]) -> tuple[Graph, str]:
    g, name, rest = parse_graph_spec(extras)
    if rest:
        raise UsageError(f"unexpected arguments: {' '.join(rest)}")
    return g, name


def _config(args) -> RunConfig:
    try:
        return RunConfig.from_env(seed=args.seed, extra_primes=args.extra_primes,
                                  dense_threshold=args.dense_threshold, parallelism=args.parallelism,
                                  format=args.format, budget=args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def render_report(rep: WlpReport, fmt: str) -> str:
    if fmt == "json":
        return canonical_json(rep.to_json())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["j", "h_j", "h_j1", "rank", "maximal", "failure_kind", "evidence"])
        for v in rep.verdicts:
            w.writerow([v.j, v.h_j, v.h_j1, v.rank, v.maximal, v.failure_kind.value if v.failure_kind else "",
                        v.certificate.evidence.value])
        return buf.getvalue().rstrip("\n")
    lines = [f"graph: {rep.graph} ({rep.n} vertices)",
             f"hilbert series: {' '.join(str(h) for h in rep.hilbert.h)}",
             f"unimodal: {rep.mode_report.unimodal}, mode: {rep.mode_report.mode}"]
    for v in rep.verdicts:
        status = "maximal" if v.maximal else f"NOT maximal ({v.failure_kind.value.lower()})"
        lines.append(f"  degree {v.j}: {v.h_j} -> {v.h_j1}, rank {v.rank}, {status} [{v.certificate.evidence.value}]")
    if not rep.complete:
        lines.append("  (stopped at first failure)")
    f = rep.first_failure
    verdict = "has the WLP" if rep.has_wlp else f"fails the WLP ({f.failure_kind.value.lower()} at degree {f.j})"
    lines.append(f"A(G) {verdict}")
    return "\n".join(lines)


def cmd_poly(args, extras) -> int:
    g, name = _graph_from(extras)
    p = independence_polynomial(g)
    mr = mode_analysis(p)
    if args.format == "json":
        print(canonical_json({"graph": name, "n": g.n, "coeffs": p.to_json(),
                              "unimodal": mr.unimodal, "mode": mr.mode}))
    elif args.format == "csv":
        print("k,coefficient")
        for k, a in enumerate(p.coeffs):
            print(f"{k},{a}")
    else:
        print(p)
        print(f"unimodal: {mr.unimodal}, mode: {mr.mode}")
    return EXIT_OK


def cmd_wlp(args, extras) -> int:
    g, name = _graph_from(extras)
    config = _config(args)
    if g.n < 1:
        raise UsageError("graph must have at least one vertex")
    try:
        rep = wlp_check(g, config.policy(), fail_fast=args.fail_fast, name=name)
    except RankIndeterminate as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    out = render_report(rep, config.format)
    if args.output:
        Path(args.output).write_text(out + "\n")
    else:
        print(out)
    return EXIT_OK if rep.has_wlp else EXIT_NEGATIVE


def cmd_reproduce(args, extras) -> int:
    if extras:
        raise UsageError(f"unexpected arguments: {' '.join(extras)}")
    config = _config(args)
    progress = print if config.format == "text" else None
    try:
        results = reproduce(args.target, config, args.extend, progress=progress)
    except RankIndeterminate as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    if config.format == "csv":
        print("family,param,has_wlp,fail_degree,fail_kind,seconds")
        for res in results:
            for fam, row in res.rows:
                print(f"{fam},{row.param},{'' if row.has_wlp is None else row.has_wlp},"
                      f"{'' if row.fail_degree is None else row.fail_degree},"
                      f"{row.fail_kind.value if row.fail_kind else ''},{row.seconds:.3f}")
    elif config.format == "json":
        print(canonical_json([{"target": r.target, "anchor": r.anchor, "ok": r.ok,
                               "mismatches": r.mismatches, "lines": r.lines} for r in results]))
    else:
        for r in results:
            print(f"{r.target}: {'PASS' if r.ok else 'FAIL'} ({r.anchor}; {r.seconds:.1f}s)")
            for mm in r.mismatches:
                print(f"  mismatch: {mm}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_NEGATIVE


def cmd_crosscheck(args, extras) -> int:
    if extras:
        raise UsageError(f"unexpected arguments: {' '.join(extras)}")
    config = _config(args)
    res = oracle_crosscheck(config, max_cols=args.max_cols,
                            progress=print if config.format == "text" else None)
    if config.format == "json":
        print(canonical_json({"graphs": res.graphs, "poly_checks": res.poly_checks,
                              "rank_checks": res.rank_checks, "disagreements": res.disagreements, "ok": res.ok}))
    else:
        print(f"{res.graphs} graphs, {res.poly_checks} polynomial checks, {res.rank_checks} rank checks, "
              f"{len(res.disagreements)} disagreements ({res.seconds:.1f}s)")
        for d in res.disagreements:
            print(f"  {d}")
    return EXIT_OK if res.ok else EXIT_NEGATIVE


def cmd_matrix(args, extras) -> int:
    g, _ = _graph_from(extras)
    try:
        m = level_map(g, args.degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(format_matrix_dump(m))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed for prime selection (env WLPGRAPH_SEED)")
    common.add_argument("--extra-primes", type=int, default=None, help="primes confirming a rank drop")
    common.add_argument("--dense-threshold", type=int, default=None, help="max min-dimension for exact elimination")
    common.add_argument("--parallelism", type=int, default=None, help="worker processes for sweeps (env WLPGRAPH_PARALLELISM)")
    common.add_argument("--budget", type=float, default=None, help="time budget per matrix, seconds")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = argparse.ArgumentParser(prog="wlpgraph", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("poly", parents=[common], allow_abbrev=False, help="independence polynomial and mode")
    s.set_defaults(func=cmd_poly)
    s = sub.add_parser("wlp", parents=[common], allow_abbrev=False, help="decide the WLP of A(G)")
    s.add_argument("--fail-fast", action="store_true", help="stop at the first non-maximal degree")
    s.add_argument("--output", help="write the rendered report here")
    s.set_defaults(func=cmd_wlp)
    s = sub.add_parser("reproduce", parents=[common], allow_abbrev=False, help="rerun a classification and diff it")
    s.add_argument("target", choices=TARGETS)
    s.add_argument("--extend", type=int, default=None, help="spot-check failures up to this parameter")
    s.set_defaults(func=cmd_reproduce)
    s = sub.add_parser("crosscheck", parents=[common], allow_abbrev=False, help="compare against brute-force oracles")
    s.add_argument("--max-cols", type=int, default=500)
    s.set_defaults(func=cmd_crosscheck)
    s = sub.add_parser("matrix", parents=[common], allow_abbrev=False, help="dump a level map")
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(func=cmd_matrix)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args, extras = parser.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, extras)
    except UsageError as exc:
        print(f"wlpgraph {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
