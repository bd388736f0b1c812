"""Command-line surface.

Subcommands: decompose, member, metric-check, facets, optimize, verify.
Exit codes: 0 success / inside; 1 outside or violated; 2 input graph not
Eulerian-connected; 64 usage error; 66 file error. Certificates and
summaries go to standard output, diagnostics to standard error. With
``--format machine`` the output is canonical: identical arguments, files
and seed produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import List, Optional

from .ddfacets import facets_of_Q
from .decompose import NotEulerianError, decompose
from .edgespace import EdgeVector, edge_pairs
from .formats import FormatError, parse_instance, print_certificate
from .membership import (
    ScopeError,
    gtsp_membership,
    metric_cone_check,
    minkowski_membership,
    optimize_metric,
    polar_membership,
    stsp_membership,
)
from .verify import run_verify

EX_OK = 0
EX_RESULT_NEGATIVE = 1
EX_BAD_GRAPH = 2
EX_USAGE = 64
EX_FILE = 66

_ORACLES = {
    "stsp": stsp_membership,
    "polar": polar_membership,
    "minkowski": minkowski_membership,
    "gtsp": gtsp_membership,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="tsppoly", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "machine"), default="text",
        help="output style (machine is canonical and byte-stable)",
    )

    p = sub.add_parser("decompose", parents=[common],
                       help="write a multigraph as cycle + shortcut steps")
    p.add_argument("file")

    p = sub.add_parser("member", parents=[common],
                       help="membership oracle with certificate")
    p.add_argument("--set", required=True, choices=sorted(_ORACLES),
                   dest="set_name")
    p.add_argument("file")

    p = sub.add_parser("metric-check", parents=[common],
                       help="test all triangle inequalities")
    p.add_argument("file")

    p = sub.add_parser("facets", parents=[common],
                       help="facet list of the orthant-restricted sum")
    p.add_argument("--n", required=True, type=int)

    p = sub.add_parser("optimize", parents=[common],
                       help="minimize a metric over all tours")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("file")

    p = sub.add_parser("verify", parents=[common],
                       help="run the bundled verification pipeline")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)

    return parser


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _pretty_inequality(a: EdgeVector, alpha: Fraction) -> str:
    terms = []
    for (u, v), c in zip(edge_pairs(a.space.n), a.coords):
        if c == 0:
            continue
        if c == 1:
            terms.append(f"x[{u},{v}]")
        elif c == -1:
            terms.append(f"-x[{u},{v}]")
        else:
            terms.append(f"{c}*x[{u},{v}]")
    lhs = " + ".join(terms).replace("+ -", "- ") if terms else "0"
    return f"{lhs} >= {alpha}"


def _cmd_decompose(args) -> int:
    g = parse_instance(_read(args.file), kind="multigraph")
    try:
        cert = decompose(g)
    except NotEulerianError as exc:
        print(f"not Eulerian-connected: {exc}", file=sys.stderr)
        return EX_BAD_GRAPH
    sys.stdout.write(print_certificate(cert))
    return EX_OK


def _cmd_member(args) -> int:
    x = parse_instance(_read(args.file), kind="vector")
    answer = _ORACLES[args.set_name](x)
    sys.stdout.write(print_certificate(answer))
    return EX_OK if answer.verdict == "inside" else EX_RESULT_NEGATIVE


def _cmd_metric_check(args) -> int:
    a = parse_instance(_read(args.file), kind="vector")
    violation = metric_cone_check(a)
    if violation is None:
        print("ok")
        return EX_OK
    if args.format == "machine":
        print(
            f"violation {violation.u} {violation.v} {violation.w} "
            f"{violation.lhs} {violation.rhs}"
        )
    else:
        print(f"violation: {violation}")
    return EX_RESULT_NEGATIVE


def _cmd_facets(args) -> int:
    facets = facets_of_Q(args.n)
    if args.format == "machine":
        print(f"n {args.n}")
        print(f"count {len(facets)}")
        for ineq, klass in facets:
            coeffs = " ".join(str(int(c)) for c in ineq.a.coords)
            print(f"facet {klass.value} {ineq.alpha} {coeffs}")
    else:
        for ineq, klass in facets:
            print(f"{_pretty_inequality(ineq.a, ineq.alpha)}  [{klass.value}]")
        print(f"{len(facets)} facets")
    return EX_OK


def _cmd_optimize(args) -> int:
    a = parse_instance(_read(args.file), kind="vector")
    if a.space.n != args.n:
        raise _UsageError(
            f"--n {args.n} does not match the instance (n = {a.space.n})"
        )
    violation = metric_cone_check(a)
    if violation is None:
        value, tour = optimize_metric(a, args.n)
        print(f"optimum {value}")
        print("tour " + " ".join(map(str, tour.order)))
        return EX_OK
    if args.format == "machine":
        print(
            f"violation {violation.u} {violation.v} {violation.w} "
            f"{violation.lhs} {violation.rhs}"
        )
    else:
        print(f"violation: {violation}")
    return EX_RESULT_NEGATIVE


def _cmd_verify(args) -> int:
    results = run_verify(args.n, args.samples, args.seed)
    if args.format == "machine":
        for r in results:
            print(r.line())
        ok = all(r.passed for r in results)
        print(f"result {'pass' if ok else 'FAIL'} checks={len(results)}")
    else:
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"[{mark}] {r.name}: {r.details}")
        ok = all(r.passed for r in results)
        print(
            f"{sum(r.passed for r in results)}/{len(results)} checks passed"
        )
    return EX_OK if ok else EX_RESULT_NEGATIVE


_COMMANDS = {
    "decompose": _cmd_decompose,
    "member": _cmd_member,
    "metric-check": _cmd_metric_check,
    "facets": _cmd_facets,
    "optimize": _cmd_optimize,
    "verify": _cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise _UsageError("missing subcommand")
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        print("run 'tsppoly --help' for usage", file=sys.stderr)
        return EX_USAGE
    except ScopeError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except ValueError as exc:
        if isinstance(exc, FormatError):
            print(f"file error: {exc}", file=sys.stderr)
            return EX_FILE
        # facet scope and similar argument-level misuses
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return EX_FILE


if __name__ == "__main__":
    sys.exit(main())
