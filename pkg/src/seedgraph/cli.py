"""Command-line interface: explore, quotient, verify, serve.

Outputs are deterministic: JSON is dumped with sorted keys and a fixed
indent, DOT comes straight from the graph writer, so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .explore import BUDGET_ENV, DEFAULT_BUDGET, explore_quivers, explore_seeds
from .quiver import PRESETS, Quiver, preset
from .quotient import (
    PropagationConflict,
    Relation,
    SAME_QUIVER,
    SAME_STABILIZER,
    SIMILAR_QUIVER,
    compute_group,
    quotient_graph,
)
from .verify import (
    DEFAULT_MARKOV_DEPTH,
    DEFAULT_POWER_BOUND,
    check_markov,
    run_lemma_suite,
    run_mainthm_suite,
    run_property_suite,
)


def _load_quiver(source: str) -> Quiver:
    if source in PRESETS:
        return preset(source)
    if os.path.exists(source):
        with open(source) as fh:
            return Quiver.from_json(json.load(fh))
    raise ValueError(
        f"{source!r} is neither a preset ({', '.join(sorted(PRESETS))}) nor a file"
    )


def _dump(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_explore(args: argparse.Namespace) -> int:
    try:
        q = _load_quiver(args.source)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.level == "seed":
        report = explore_seeds(q, budget=args.budget, annotate=args.annotate)
    else:
        report = explore_quivers(q, budget=args.budget, annotate=args.annotate)
    _write(args.out, _dump(report.to_json()))
    if args.dot:
        _write(args.dot, report.graph.to_dot())
    return 0


def cmd_quotient(args: argparse.Namespace) -> int:
    try:
        q = _load_quiver(args.source)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    relation = SIMILAR_QUIVER if args.relation == "similar" else args.relation
    if args.level == "quiver":
        if relation == SAME_STABILIZER:
            print("error: the stabilizer relation needs seed-level data", file=sys.stderr)
            return 1
        report = explore_quivers(q, budget=args.budget, annotate=args.annotate)
    else:
        report = explore_seeds(q, budget=args.budget, annotate=args.annotate)
    if not report.closed:
        print(
            f"error: class did not close within budget ({report.seed_count}"
            f" {report.level}s found); raise --budget or try --level quiver",
            file=sys.stderr,
        )
        return 1
    rel = Relation(relation)
    try:
        graph = quotient_graph(report, rel, annotate=args.annotate)
    except PropagationConflict as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    data = {
        "level": report.level,
        "relation": relation,
        f"{report.level}s": report.seed_count,
        "classes": len(graph.vertices),
        "graph": graph.to_json(),
    }
    if relation != SAME_STABILIZER and args.level == "seed":
        data["group"] = compute_group(report, rel).to_json()
    _write(args.out, _dump(data))
    if args.dot:
        _write(args.dot, graph.to_dot("quotient"))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite == "lemmas":
        report = run_lemma_suite(power_bound=args.power_bound)
    elif args.suite == "markov":
        report = check_markov(depth=args.depth)
    elif args.suite == "mainthm":
        report = run_mainthm_suite()
    else:
        report = run_property_suite(cases=args.cases)
    if args.json:
        _write(args.out, _dump(report.to_json()))
    else:
        _write(args.out, report.render() + "\n")
    return 0 if report.passed else 1


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(classinfo_budget=args.classinfo_budget, debug=args.debug)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seedgraph",
        description="Exact exploration of labelled seeds under mutation and relabelling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("explore", help="close a mutation class and report the graph")
    p.add_argument("source", help="preset name or quiver JSON file")
    p.add_argument(
        "--budget",
        type=int,
        default=None,
        help=f"max vertices to keep (default {DEFAULT_BUDGET}, env {BUDGET_ENV})",
    )
    p.add_argument("--level", choices=("seed", "quiver"), default="seed")
    p.add_argument("--dot", metavar="PATH", help="also write the graph in DOT form")
    p.add_argument("--out", metavar="PATH", help="write JSON here instead of stdout")
    p.add_argument("--annotate", action="store_true", help="label vertices with their contents")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("quotient", help="fold a closed class by an equivalence relation")
    p.add_argument("source", help="preset name or quiver JSON file")
    p.add_argument(
        "--relation",
        choices=(SAME_QUIVER, "similar", SIMILAR_QUIVER, SAME_STABILIZER),
        default=SAME_QUIVER,
    )
    p.add_argument("--level", choices=("seed", "quiver"), default="seed")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--dot", metavar="PATH")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--annotate", action="store_true")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=("lemmas", "markov", "mainthm", "properties"))
    p.add_argument(
        "--power-bound", type=int, default=DEFAULT_POWER_BOUND, dest="power_bound"
    )
    p.add_argument("--depth", type=int, default=DEFAULT_MARKOV_DEPTH)
    p.add_argument("--cases", type=int, default=1000)
    p.add_argument("--json", action="store_true", help="JSON report instead of text")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the JSON session API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument(
        "--classinfo-budget", type=int, default=300, dest="classinfo_budget"
    )
    p.add_argument("--debug", action="store_true", help="enable the consistency endpoint")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
