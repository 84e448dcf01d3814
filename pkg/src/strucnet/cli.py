"""Command-line front end.

Subcommands operate on JSON files (pattern grids or network objects) and
print reports with machine-checkable certificates. Exit codes: 0 for a
positive verdict (or a consistent audit), 1 for a negative one, 2 for
input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    AssumptionViolated,
    BadShape,
    DimensionMismatch,
    NetworkFormatError,
    PatternParseError,
)
from .graph import build_graph, color_change, export_dot
from .network import (
    analyze,
    assemble,
    extract_topology,
    is_network_controllable,
    load_network,
    topology_necessary_check,
)
from .oracle import AuditConfig, audit_network
from .pattern import hstack, load_pattern

_INPUT_ERRORS = (
    AssumptionViolated,
    BadShape,
    DimensionMismatch,
    NetworkFormatError,
    PatternParseError,
    OSError,
)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"seed must be non-negative, got {value}")
    return value


def _tolerance(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"tolerance must lie in (0, 1), got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strucnet",
        description="Strong structural controllability analysis of structured networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="full controllability analysis of a network file")
    check.add_argument("path", help="network JSON file")
    check.add_argument("--json", action="store_true", help="emit the report as JSON")

    rank = sub.add_parser("rank", help="full-row-rank certificate for a pattern file")
    rank.add_argument("path", help="pattern JSON file (array of token rows)")
    rank.add_argument("--json", action="store_true", help="emit the certificate as JSON")

    topo = sub.add_parser("topo", help="extract and test the interconnection topology")
    topo.add_argument("path", help="network JSON file")
    topo.add_argument("--json", action="store_true", help="emit the report as JSON")

    audit = sub.add_parser("audit", help="numeric sampling audit of the symbolic verdict")
    audit.add_argument("path", help="network JSON file")
    audit.add_argument("--trials", type=_positive_int, default=100)
    audit.add_argument("--seed", type=_seed, default=0)
    audit.add_argument("--tol", type=_tolerance, default=1e-8)

    dot = sub.add_parser("export-dot", help="emit a DOT rendering of one of the graphs")
    dot.add_argument("path", help="network JSON file")
    dot.add_argument(
        "--which",
        choices=["assembled", "assembled-shifted", "interconnection", "topology"],
        default="assembled",
    )
    return parser


def _cmd_check(args) -> int:
    network = load_network(args.path)
    report = analyze(network)
    if not report.valid:
        for violation in report.violations:
            print(f"error: {violation}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.to_text(), end="")
    return 0 if report.controllable else 1


def _cmd_rank(args) -> int:
    pattern = load_pattern(args.path)
    graph = build_graph(pattern)
    result = color_change(graph)
    if args.json:
        print(
            json.dumps(
                {
                    "full_row_rank": result.colorable,
                    "derived_set": sorted(result.derived_set),
                    "forcing_sequence": [list(step) for step in result.forcing_sequence],
                    "uncolored": sorted(result.uncolored(graph.row_count)),
                },
                indent=2,
            )
        )
    else:
        print(f"full row rank: {'yes' if result.colorable else 'no'}")
        print(f"derived set: {sorted(result.derived_set)}")
        print(f"forcing sequence: {[tuple(step) for step in result.forcing_sequence]}")
        if not result.colorable:
            print(f"uncolored vertices: {sorted(result.uncolored(graph.row_count))}")
    return 0 if result.colorable else 1


def _cmd_topo(args) -> int:
    network = load_network(args.path)
    w_tilde, h_tilde = extract_topology(network)
    colorable, coloring = topology_necessary_check(network)
    q = w_tilde.cols + h_tilde.cols
    if args.json:
        print(
            json.dumps(
                {
                    "W": w_tilde.to_tokens(),
                    "H": h_tilde.to_tokens(),
                    "weakly_colorable": colorable,
                    "derived_set": sorted(coloring.derived_set),
                    "forcing_sequence": [list(step) for step in coloring.forcing_sequence],
                    "unreached": sorted(coloring.uncolored(q)),
                },
                indent=2,
            )
        )
    else:
        print("W~:")
        print(w_tilde)
        print("H~:")
        print(h_tilde)
        print(f"weakly colorable: {'yes' if colorable else 'no'}")
        print(f"reachability trace: {[tuple(step) for step in coloring.forcing_sequence]}")
        if not colorable:
            print(f"unreached vertices: {sorted(coloring.uncolored(q))}")
    return 0 if colorable else 1


def _cmd_audit(args) -> int:
    network = load_network(args.path)
    cfg = AuditConfig(trials=args.trials, seed=args.seed, rank_tolerance=args.tol)
    verdict = is_network_controllable(network)
    outcome = audit_network(network, cfg)
    consistent = not (verdict.controllable and outcome.failures > 0)
    print(
        json.dumps(
            {
                "symbolic_controllable": verdict.controllable,
                "audit": outcome.to_dict(),
                "consistent": consistent,
                "note": "sampling is a consistency check, not a proof",
            },
            indent=2,
        )
    )
    return 0 if consistent else 1


def _cmd_export_dot(args) -> int:
    network = load_network(args.path)
    if args.which == "interconnection":
        pattern = hstack(network.W, network.H)
        graph = build_graph(pattern)
    elif args.which == "topology":
        w_tilde, h_tilde = extract_topology(network)
        graph = build_graph(hstack(w_tilde, h_tilde))
    else:
        plain, shifted = assemble(network)
        graph = build_graph(plain if args.which == "assembled" else shifted)
    print(export_dot(graph), end="")
    return 0


_HANDLERS = {
    "check": _cmd_check,
    "rank": _cmd_rank,
    "topo": _cmd_topo,
    "audit": _cmd_audit,
    "export-dot": _cmd_export_dot,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except AssumptionViolated as exc:
        for violation in exc.violations:
            print(f"error: {violation}", file=sys.stderr)
        return 2
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
