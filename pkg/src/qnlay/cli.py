"""qnlay command line: layouts, verification, rainbows, partitions,
stack families, generators, the exact oracle, and the game.

Machine-readable JSON goes to stdout or --out; diagnostics go to stderr.
Exit codes: 0 success, 1 verification failure, 2 input or recognition
error, 64 usage error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import jsonio
from .analysis import exact_queue_number, max_rainbow, validate_queue_layout
from .game import GameError, default_round_cap, make_bob, run_game, BUILTIN_BOB_KINDS
from .graph import (
    Graph,
    GraphError,
    build_graph,
    min_ktree_parameter,
    random_ktree,
    recognize_ktree,
    stack_family,
)
from .layout import layout_ktree
from .ordering import LinearOrder
from .partition import build_tree_partition, validate_tree_partition
from .report import Report

log = logging.getLogger("qnlay")

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(data: dict, out: str | None) -> None:
    text = jsonio.dump_json(data, out)
    if out is None:
        print(text)


def _resolve_k(loaded: jsonio.GraphInput, explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    if loaded.k is not None:
        return loaded.k
    return min_ktree_parameter(loaded.graph)


def _report_payload(report: Report) -> dict:
    return {
        "passed": report.passed,
        "checks": [
            {"name": c.name, "ok": c.ok, "witnesses": [repr(w) for w in c.witnesses]}
            for c in report.checks
        ],
    }


def cmd_layout(args) -> int:
    loaded = jsonio.load_graph(args.input)
    k = _resolve_k(loaded, args.k)
    layout = layout_ktree(loaded.graph, k, root=args.root)
    _emit(jsonio.layout_to_dict(layout), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    loaded = jsonio.load_graph(args.graph)
    layout = jsonio.load_layout(args.layout)
    report = validate_queue_layout(loaded.graph, layout, strict=args.strict)
    _emit(_report_payload(report), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_rainbow(args) -> int:
    loaded = jsonio.load_graph(args.graph)
    order = LinearOrder([t.strip() for t in args.order.split(",") if t.strip()])
    if not order.covers(loaded.graph.vertices):
        raise GraphError("order does not cover the graph's vertices")
    size, witness = max_rainbow(order, loaded.graph.edges)
    _emit({"size": size, "witness": [list(e) for e in witness.edges]}, args.out)
    return EXIT_OK


def cmd_partition(args) -> int:
    loaded = jsonio.load_graph(args.input)
    k = _resolve_k(loaded, args.k)
    root = args.root or min(loaded.graph.vertices)
    tp = build_tree_partition(loaded.graph, k, root)
    report = validate_tree_partition(loaded.graph, k, tp)
    payload = jsonio.partition_to_dict(tp)
    payload["valid"] = report.passed
    _emit(payload, args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_stack(args) -> int:
    family = stack_family(args.k, args.iters, max_vertices=args.max_vertices)
    final = family.graphs[-1]
    payload = jsonio.graph_to_dict(final, k=args.k)
    payload["family_sizes"] = [g.n for g in family.graphs]
    _emit(payload, args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    script = random_ktree(args.k, args.n, args.seed)
    _emit(jsonio.script_to_dict(script), args.out)
    return EXIT_OK


def cmd_exact_qn(args) -> int:
    loaded = jsonio.load_graph(args.input)
    qn, order = exact_queue_number(loaded.graph, vertex_cap=args.limit)
    _emit({"queue_number": qn, "order": list(order.sequence)}, args.out)
    return EXIT_OK


def cmd_game_run(args) -> int:
    bob = make_bob(args.bob, seed=args.seed)
    cap = args.cap if args.cap is not None else default_round_cap(args.k)
    trace = run_game(args.k, bob, round_cap=cap)
    if args.trace:
        jsonio.dump_json(jsonio.trace_to_dict(trace), args.trace)
    _emit(jsonio.outcome_to_dict(trace.outcome), args.out)
    return EXIT_OK if trace.outcome.kind == "alice_win" else EXIT_VERIFY


def cmd_game_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(cap=args.cap, trace_dir=args.trace_dir, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="qnlay", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("layout", help="queue layout of a k-tree")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--root")
    p.add_argument("--out")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("verify", help="validate a layout file against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--layout", required=True)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rainbow", help="maximum rainbow of a given order")
    p.add_argument("--graph", required=True)
    p.add_argument("--order", required=True, help="comma-separated vertex tokens")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rainbow)

    p = sub.add_parser("partition", help="tree-partition of a k-tree")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--root")
    p.add_argument("--out")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("stack", help="iterated k-stack family")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--iters", type=int, required=True)
    p.add_argument("--max-vertices", type=int, default=200_000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stack)

    p = sub.add_parser("gen", help="random k-tree script")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("exact-qn", help="exact queue number by branch and bound")
    p.add_argument("--input", required=True)
    p.add_argument("--limit", type=int, default=12)
    p.add_argument("--out")
    p.set_defaults(func=cmd_exact_qn)

    p = sub.add_parser("game", help="the k-queue game")
    game_sub = p.add_subparsers(dest="game_command", required=True)

    q = game_sub.add_parser("run", help="scripted game against a built-in Bob")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--bob", default="greedy_min_rainbow",
                   help=f"one of {', '.join(BUILTIN_BOB_KINDS)} (or 'greedy')")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--cap", type=int)
    q.add_argument("--trace")
    q.add_argument("--out")
    q.set_defaults(func=cmd_game_run)

    q = game_sub.add_parser("serve", help="HTTP game service")
    q.add_argument("--host", default="127.0.0.1")
    q.add_argument("--port", type=int, default=8008)
    q.add_argument("--cap", type=int)
    q.add_argument("--trace-dir")
    q.add_argument("--ui-dir", help="static assets for the game board")
    q.set_defaults(func=cmd_game_serve)

    return parser


def run_cli(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get("QNLAY_LOG", "WARNING").upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (GraphError, GameError) as exc:
        print(f"qnlay: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"qnlay: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    raise SystemExit(run_cli())


if __name__ == "__main__":
    main()
