"""Command-line entry point.

Exit codes: 0 ok, 2 parse or usage error, 3 singular matrix, 4 size guard,
5 invariant violation (including any failed ``verify`` trial).
Reports are JSON with sorted keys and no timings, so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path

from .cohomology import cohomology_basis_graph, verify_containment
from .errors import GuardError, InvariantViolation, ParseError, SingularMatrixError
from .graphs import MinorOp, SimpleGraph, parse_graph
from .harness import SUITES, run_suite
from .linalg import PrimeField, parse_matrix
from .minors import dumbbell_report, verify_minor_relation
from .presentation import certify_property, parse_presentation, presentation_basis_graph
from .properties import property_report
from .reconstruction import (
    achievable_basis_graphs,
    gamma_prime,
    graphs_from_edge_ideal,
    parse_edge_ideal,
    parse_pairing,
    reconstruct_minimal_edges,
)
from .tracks import find_good_reordering, tracks_report

EXIT_CODES = {ParseError: 2, SingularMatrixError: 3, GuardError: 4, InvariantViolation: 5}


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str) -> SimpleGraph:
    return parse_graph(_read(path))


def _matrix(path: str, p: int | None):
    A = parse_matrix(_read(path))
    if p is not None and A.p != p:
        raise ParseError(f"{path} is over F_{A.p} but --p {p} was given")
    return A


def _cmd_cbg(args):
    G, A = _graph(args.graph), _matrix(args.matrix, args.p)
    GB = cohomology_basis_graph(G, A)
    sigma = find_good_reordering(G, A)
    phi = verify_containment(G, A)
    report = {
        "p": A.p,
        "graph": G.to_json(),
        "basis_graph": GB.to_json(),
        "reordering": list(sigma.images),
        "embedding": phi.to_json(),
    }
    return report, GB


def _cmd_reconstruct(args):
    P = parse_pairing(_read(args.pairing))
    res = reconstruct_minimal_edges(P)
    report = {
        "graph": res.graph.to_json(),
        "witness": res.witness.tolist(),
        "matrices_checked": res.matrices_checked,
    }
    return report, res.graph


def _cmd_achievable(args):
    G = _graph(args.graph)
    classes = achievable_basis_graphs(G)
    report = {
        "graph": G.to_json(),
        "classes": [
            {"graph": c["graph"].to_json(), "bases": c["bases"], "labelled_graphs": c["labelled_graphs"]}
            for c in classes
        ],
    }
    return report, None


def _cmd_properties(args):
    G = _graph(args.graph)
    return {"graph": G.to_json(), **property_report(G)}, G


def _cmd_presentation(args):
    P = parse_presentation(_read(args.presentation))
    p = args.p or 2
    if args.property:
        cert = certify_property(P, args.property, p)
        return cert.to_json(), cert.basis_graph
    bg = presentation_basis_graph(P, p)
    report = {
        "p": p,
        "generators": list(P.generators),
        "relators": [P.word_str(r) for r in P.relators],
        "basis_labels": bg.labels,
        "basis_graph": bg.graph.to_json(),
    }
    return report, bg.graph


def _cmd_tracks(args):
    G, A = _graph(args.graph), _matrix(args.matrix, args.p)
    return tracks_report(G, A), None


def _cmd_dumbbell(args):
    report = dumbbell_report(args.n, args.m, check_minor=not args.no_minor_check)
    return report, None


def _cmd_gamma_prime(args):
    G, A = _graph(args.graph), _matrix(args.matrix, args.p)
    Gp = gamma_prime(G, A, args.rule)
    GB = cohomology_basis_graph(G, A)
    report = {"rule": args.rule, "graph": Gp.to_json(), "basis_graph": GB.to_json(), "agrees": Gp == GB}
    return report, Gp


def _cmd_edge_ideal(args):
    ideal = parse_edge_ideal(_read(args.ideal))
    C = _matrix(args.matrix, args.p)
    res = graphs_from_edge_ideal(ideal, C)
    report = {
        "gamma_i": res.gamma_i.to_json(),
        "gamma_j": res.gamma_j.to_json(),
        "embedding": res.embedding.to_json(),
    }
    return report, res.gamma_j


def _parse_op(text: str) -> MinorOp:
    kind, _, rest = text.strip().partition(" ")
    try:
        nums = [int(x) for x in re.split(r"[\s,-]+", rest.strip()) if x]
    except ValueError:
        nums = []
    if kind == "delete-vertex" and len(nums) == 1:
        return MinorOp.delete_vertex(nums[0])
    if kind in ("delete-edge", "contract-edge") and len(nums) == 2:
        return MinorOp(kind, edge=(nums[0], nums[1]))
    raise ParseError(f"bad minor operation {text!r}; try 'delete-vertex 3' or 'contract-edge 1 2'")


def _cmd_minor_basis(args):
    G, A = _graph(args.graph), _matrix(args.matrix, args.p)
    report = verify_minor_relation(G, A, _parse_op(args.op))
    return report.to_json(), report.minor_basis_graph


def _cmd_verify(args):
    suites = sorted(SUITES) if args.suite == "all" else [args.suite]
    results = [
        run_suite(s, args.trials, seed=args.seed, offset=args.offset, n=args.n, p=args.p) for s in suites
    ]
    for r in results:
        for f in r.failures:
            print(f"FAIL {r.suite} trial {f.index}: {f.error}\n  replay: {f.replay}", file=sys.stderr)
    report = {"passed": all(r.passed for r in results), "suites": [r.to_json() for r in results]}
    return report, None


def _emit(report: dict, graph: SimpleGraph | None, fmt: str) -> None:
    if fmt == "json" or graph is None:
        if fmt != "json":
            logging.getLogger("cbg").warning("this command has no single graph; emitting JSON")
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    elif fmt == "edgelist":
        sys.stdout.write(graph.to_edgelist())
    else:
        sys.stdout.write(graph.to_dot())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=None, help="prime field (default: from the matrix file, else 2)")
    common.add_argument("--format", choices=("json", "edgelist", "dot"), default="json")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="cbg", description="Cohomology basis graphs of right-angled Artin groups."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("cbg", parents=[common], help="basis graph, row reordering and embedding")
    s.add_argument("graph")
    s.add_argument("matrix")
    s.set_defaults(func=_cmd_cbg)

    s = sub.add_parser("reconstruct", parents=[common], help="fewest-edge graph from a pairing (F_2)")
    s.add_argument("pairing")
    s.set_defaults(func=_cmd_reconstruct)

    s = sub.add_parser("achievable", parents=[common], help="all basis graphs over GL_n(F_2), up to isomorphism")
    s.add_argument("graph")
    s.set_defaults(func=_cmd_achievable)

    s = sub.add_parser("properties", parents=[common], help="property ladder verdicts for a graph")
    s.add_argument("graph")
    s.set_defaults(func=_cmd_properties)

    s = sub.add_parser("presentation", parents=[common], help="basis graph and certificate from a presentation")
    s.add_argument("presentation")
    s.add_argument("--property", default=None, help="empty, linear-forest, outerplanar, planar or linkless")
    s.set_defaults(func=_cmd_presentation)

    s = sub.add_parser("tracks", parents=[common], help="blocks, tracks and the determinant partition")
    s.add_argument("graph")
    s.add_argument("matrix")
    s.set_defaults(func=_cmd_tracks)

    s = sub.add_parser("dumbbell", parents=[common], help="the dumbbell contraction example")
    s.add_argument("n", type=int)
    s.add_argument("m", type=int)
    s.add_argument("--no-minor-check", action="store_true", help="skip the minor search")
    s.set_defaults(func=_cmd_dumbbell)

    s = sub.add_parser("gamma-prime", parents=[common], help="auxiliary-graph formulation over F_2")
    s.add_argument("graph")
    s.add_argument("matrix")
    s.add_argument("--rule", choices=("corrected", "literal"), default="corrected")
    s.set_defaults(func=_cmd_gamma_prime)

    s = sub.add_parser("edge-ideal", parents=[common], help="graphs of I and J for a change of variables")
    s.add_argument("ideal")
    s.add_argument("matrix")
    s.set_defaults(func=_cmd_edge_ideal)

    s = sub.add_parser("minor-basis", parents=[common], help="carry a basis along one minor move")
    s.add_argument("graph")
    s.add_argument("matrix")
    s.add_argument("--op", required=True, help="'delete-vertex V', 'delete-edge I J' or 'contract-edge I J'")
    s.set_defaults(func=_cmd_minor_basis)

    s = sub.add_parser("verify", parents=[common], help="randomised verification suites")
    s.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--offset", type=int, default=0)
    s.add_argument("--n", type=int, default=None, help="fix the dimension instead of drawing it")
    s.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.p is not None:
            PrimeField(args.p)
        report, graph = args.func(args)
    except tuple(EXIT_CODES) as exc:
        code = next(c for cls, c in EXIT_CODES.items() if isinstance(exc, cls))
        print(f"error: {exc}", file=sys.stderr)
        return code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(report, graph, args.format)
    if args.command == "verify" and not report["passed"]:
        return 5
    return 0


if __name__ == "__main__":
    sys.exit(main())
