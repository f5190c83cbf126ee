"""JSON file formats: graphs, layouts, partition dumps, and game traces.

Graph files carry either a construction script
``{"k": int, "script": [{"v": ..., "attach": [...]}]}`` or a raw
``{"vertices": [...], "edges": [[u, v], ...]}``.  Integer tokens are
admitted and normalized to their decimal strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .graph import Graph, GraphError, KTreeScript, build_graph
from .ordering import LinearOrder, QueueAssignment, QueueLayout, RainbowWitness, canonical_edge
from .partition import TreePartition
from . import game as game_mod
from .layout import queue_bound


def _token(value) -> str:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise GraphError(f"vertex token must be a string or integer, got {value!r}")
    return str(value)


@dataclass(frozen=True)
class GraphInput:
    """A parsed graph file: always a graph, with script and k when given."""

    graph: Graph
    k: int | None = None
    script: KTreeScript | None = None


def graph_from_dict(data: dict) -> GraphInput:
    if not isinstance(data, dict):
        raise GraphError("graph file must be a JSON object")
    if "script" in data:
        if "k" not in data:
            raise GraphError("script form requires a 'k' field")
        k = data["k"]
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise GraphError("'k' must be a non-negative integer")
        steps = []
        for entry in data["script"]:
            steps.append(
                (_token(entry["v"]), frozenset(_token(u) for u in entry.get("attach", [])))
            )
        script = KTreeScript(k, tuple(steps))
        return GraphInput(build_graph(script), k, script)
    if "vertices" in data and "edges" in data:
        vertices = [_token(v) for v in data["vertices"]]
        edges = [(_token(u), _token(v)) for u, v in data["edges"]]
        k = data.get("k")
        if k is not None and (not isinstance(k, int) or isinstance(k, bool) or k < 0):
            raise GraphError("'k' must be a non-negative integer")
        return GraphInput(Graph(vertices, edges), k)
    raise GraphError("graph file needs either 'script' or 'vertices'+'edges'")


def load_graph(path) -> GraphInput:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_dict(json.load(fh))


def graph_to_dict(graph: Graph, k: int | None = None) -> dict:
    data: dict = {
        "vertices": sorted(graph.vertices),
        "edges": [list(e) for e in sorted(graph.edges)],
    }
    if k is not None:
        data["k"] = k
    return data


def script_to_dict(script: KTreeScript) -> dict:
    return {
        "k": script.k,
        "script": [{"v": v, "attach": sorted(attach)} for v, attach in script.steps],
    }


def layout_to_dict(layout: QueueLayout) -> dict:
    return {
        "k": layout.k,
        "order": list(layout.order.sequence),
        "queues": [
            {"u": e[0], "v": e[1], "q": q}
            for e, q in sorted(layout.assignment.queue_of.items())
        ],
        "queues_used": layout.used_queue_count(),
        "queue_bound": queue_bound(layout.k),
    }


def layout_from_dict(data: dict) -> QueueLayout:
    k = data["k"]
    order = LinearOrder([_token(v) for v in data["order"]])
    queue_of = {}
    top = 0
    for entry in data["queues"]:
        edge = canonical_edge(_token(entry["u"]), _token(entry["v"]))
        q = entry["q"]
        if not isinstance(q, int) or isinstance(q, bool) or q < 1:
            raise GraphError(f"queue index of {edge} must be a positive integer")
        queue_of[edge] = q
        top = max(top, q)
    count = max(top, data.get("queue_bound", 0))
    return QueueLayout(order, QueueAssignment(queue_of, count), k)


def load_layout(path) -> QueueLayout:
    with open(path, "r", encoding="utf-8") as fh:
        return layout_from_dict(json.load(fh))


def partition_to_dict(tp: TreePartition) -> dict:
    nodes = []
    for x in tp.nodes():
        nodes.append({
            "id": x,
            "parent": tp.parents.get(x),
            "depth": tp.depths[x],
            "bag": sorted(tp.bags[x]),
            "parent_clique": list(tp.parent_cliques.get(x, ())),
        })
    return {"root": tp.root, "nodes": nodes}


def partition_from_dict(data: dict) -> TreePartition:
    bags = {}
    parents = {}
    cliques = {}
    depths = {}
    for entry in data["nodes"]:
        node = str(entry["id"])
        bags[node] = frozenset(_token(v) for v in entry["bag"])
        depths[node] = entry["depth"]
        if entry.get("parent") is not None:
            parents[node] = str(entry["parent"])
            cliques[node] = tuple(_token(v) for v in entry.get("parent_clique", ()))
    return TreePartition(str(data["root"]), bags, parents, cliques, depths)


def outcome_to_dict(outcome: game_mod.Outcome) -> dict:
    data: dict = {"type": outcome.kind, "rounds": outcome.rounds}
    if outcome.witness is not None:
        data["witness"] = [list(e) for e in outcome.witness.edges]
    if outcome.description is not None:
        data["description"] = outcome.description
    return data


def outcome_from_dict(data: dict) -> game_mod.Outcome:
    witness = None
    if "witness" in data:
        witness = RainbowWitness(tuple(tuple(e) for e in data["witness"]))
    return game_mod.Outcome(
        data["type"], data["rounds"], witness=witness,
        description=data.get("description"),
    )


def trace_to_dict(trace: game_mod.GameTrace) -> dict:
    moves = []
    for move in trace.moves:
        if isinstance(move, game_mod.AliceMove):
            moves.append({"alice": {"clique": list(move.clique), "v": move.vertex}})
        else:
            moves.append({"bob": {"pos": move.position}})
    return {
        "k": trace.k,
        "initial_order": list(trace.initial_order),
        "moves": moves,
        "outcome": outcome_to_dict(trace.outcome) if trace.outcome else None,
    }


def trace_from_dict(data: dict) -> game_mod.GameTrace:
    moves = []
    for entry in data["moves"]:
        if "alice" in entry:
            moves.append(game_mod.AliceMove(
                tuple(_token(v) for v in entry["alice"]["clique"]),
                _token(entry["alice"]["v"]),
            ))
        elif "bob" in entry:
            moves.append(game_mod.BobMove(entry["bob"]["pos"]))
        else:
            raise GraphError(f"unknown move record {entry!r}")
    outcome = outcome_from_dict(data["outcome"]) if data.get("outcome") else None
    return game_mod.GameTrace(
        data["k"], tuple(_token(v) for v in data["initial_order"]),
        tuple(moves), outcome,
    )


def load_trace(path) -> game_mod.GameTrace:
    with open(path, "r", encoding="utf-8") as fh:
        return trace_from_dict(json.load(fh))


def dump_json(data: dict, path=None) -> str:
    text = json.dumps(data, indent=2, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text
