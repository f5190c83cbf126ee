"""Rooted tree-partitions of k-trees via BFS layering.

Each node's bag is a connected component of one BFS distance layer; the
parent is the unique previous-layer node joined by an edge, and the parent
clique collects exactly the parent-bag vertices with a neighbour in the
bag.  On genuine k-trees every bag induces a connected (k-1)-tree; the
validator re-checks all of that explicitly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, GraphError, recognize_ktree
from .report import Report, ReportBuilder


class PartitionError(GraphError):
    """The BFS construction cannot produce a valid tree-partition."""

    def __init__(self, reason: str, witness=None):
        super().__init__(reason if witness is None else f"{reason}: {witness}")
        self.reason = reason
        self.witness = witness


@dataclass(frozen=True)
class TreePartition:
    """Rooted tree of bags over a partition of the vertex set."""

    root: str
    bags: dict[str, frozenset[str]]
    parents: dict[str, str]  # nonroot node -> parent node
    parent_cliques: dict[str, tuple[str, ...]]  # nonroot node -> sorted clique
    depths: dict[str, int]

    def nodes(self) -> list[str]:
        return sorted(self.bags, key=lambda x: (self.depths[x], x))

    def children(self) -> dict[str, list[str]]:
        kids: dict[str, list[str]] = {x: [] for x in self.bags}
        for x, p in self.parents.items():
            kids[p].append(x)
        for lst in kids.values():
            lst.sort()
        return kids


def _layer_components(layer: list[str], adj) -> list[list[str]]:
    """Connected components within one BFS layer, ordered by smallest member."""
    layer_set = set(layer)
    seen: set[str] = set()
    comps: list[list[str]] = []
    for start in sorted(layer):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v] & layer_set:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def partition_core(vertices, adj, k: int, root_vertex: str):
    """BFS layering over a vertex subset with a shared adjacency map.

    Returns (node order, bags, parents, parent_cliques, depths) with nodes
    named b0, b1, ... assigned depth by depth.  Raises PartitionError on
    disconnected input, ambiguous parents, or non-clique parent sets.
    """
    vset = set(vertices)
    if root_vertex not in vset:
        raise PartitionError("root vertex not in graph", root_vertex)
    dist: dict[str, int] = {root_vertex: 0}
    queue = deque([root_vertex])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w in vset and w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    if len(dist) != len(vset):
        raise PartitionError(
            "graph is disconnected", tuple(sorted(vset - set(dist)))[:5]
        )
    layers: dict[int, list[str]] = {}
    for v, d in dist.items():
        layers.setdefault(d, []).append(v)

    bags: dict[str, frozenset[str]] = {}
    parents: dict[str, str] = {}
    parent_cliques: dict[str, tuple[str, ...]] = {}
    depths: dict[str, int] = {}
    node_of: dict[str, str] = {}
    order: list[str] = []
    counter = 0
    for d in range(len(layers)):
        for comp in _layer_components(layers[d], adj):
            node = f"b{counter}"
            counter += 1
            bag = frozenset(comp)
            bags[node] = bag
            depths[node] = d
            order.append(node)
            for v in comp:
                node_of[v] = node
            if d == 0:
                continue
            above = {
                node_of[u]
                for v in comp
                for u in adj[v]
                if u in vset and dist[u] == d - 1
            }
            if len(above) != 1:
                raise PartitionError(
                    "bag has multiple parent bags",
                    (tuple(sorted(bag)), tuple(sorted(above))),
                )
            parent = above.pop()
            parents[node] = parent
            clique = sorted(
                u for u in bags[parent] if any(w in bag for w in adj[u])
            )
            for a, b in combinations(clique, 2):
                if b not in adj[a]:
                    raise PartitionError(
                        "parent neighbourhood is not a clique",
                        (tuple(sorted(bag)), (a, b)),
                    )
            parent_cliques[node] = tuple(clique)
    return order, bags, parents, parent_cliques, depths


def build_tree_partition(graph: Graph, k: int, root_vertex: str) -> TreePartition:
    """Tree-partition of a connected k-tree rooted at ``root_vertex``."""
    if k < 1:
        raise PartitionError("tree-partition requires k >= 1")
    adj = graph.adjacency
    order, bags, parents, parent_cliques, depths = partition_core(
        graph.vertices, adj, k, root_vertex
    )
    root = order[0]
    return TreePartition(root, bags, parents, parent_cliques, depths)


def validate_tree_partition(graph: Graph, k: int, tp: TreePartition) -> Report:
    """Full re-check of the tree-partition contract with witnesses."""
    rb = ReportBuilder()
    adj = graph.adjacency
    nodes = set(tp.bags)

    structural = []
    if tp.root not in nodes:
        structural.append(("root_missing", tp.root))
    if set(tp.parents) != nodes - {tp.root}:
        structural.append(("parent_map_domain", tuple(sorted(set(tp.parents) ^ (nodes - {tp.root})))))
    if tp.depths.get(tp.root) != 0:
        structural.append(("root_depth", tp.depths.get(tp.root)))
    for x, p in tp.parents.items():
        if p not in nodes:
            structural.append(("parent_unknown", (x, p)))
        elif tp.depths.get(x) != tp.depths.get(p, -2) + 1:
            structural.append(("depth_mismatch", (x, tp.depths.get(x), p)))
    # Every node must reach the root through the parent map.
    for x in nodes:
        hops = 0
        y = x
        while y != tp.root and hops <= len(nodes):
            y = tp.parents.get(y)
            hops += 1
            if y is None:
                break
        if y != tp.root:
            structural.append(("unreachable_from_root", x))
    rb.add("structure", not structural, tuple(structural[:5]))

    flat = [v for bag in tp.bags.values() for v in bag]
    partition_ok = (
        len(flat) == len(set(flat))
        and set(flat) == set(graph.vertices)
        and all(tp.bags.values())
    )
    rb.add("bags_partition_vertices", partition_ok,
           tuple(sorted(set(flat) ^ set(graph.vertices)))[:5])

    node_of = {v: x for x, bag in tp.bags.items() for v in bag}
    misplaced = []
    if partition_ok:
        for u, v in graph.edges:
            x, y = node_of[u], node_of[v]
            if x == y:
                continue
            if tp.parents.get(x) != y and tp.parents.get(y) != x:
                misplaced.append(((u, v), (x, y)))
    rb.add("edge_locality", not misplaced, tuple(misplaced[:5]))

    bad_bags = []
    if partition_ok:
        for x in sorted(tp.bags):
            bag = tp.bags[x]
            sub = graph.induced(bag)
            if len(sub.components()) != 1:
                bad_bags.append((x, "disconnected"))
                continue
            try:
                recognize_ktree(sub, k - 1)
            except GraphError as exc:
                bad_bags.append((x, str(exc)))
    rb.add("bags_are_connected_lower_ktrees", not bad_bags, tuple(bad_bags[:5]))

    bad_cliques = []
    if partition_ok and not structural:
        for x in sorted(tp.bags):
            if x == tp.root:
                continue
            recorded = tuple(tp.parent_cliques.get(x, ()))
            parent_bag = tp.bags[tp.parents[x]]
            bag = tp.bags[x]
            expected = tuple(sorted(
                u for u in parent_bag if any(w in bag for w in adj[u])
            ))
            if recorded != expected:
                bad_cliques.append((x, "members", recorded, expected))
                continue
            if len(recorded) > k:
                bad_cliques.append((x, "size", recorded))
                continue
            for a, b in combinations(recorded, 2):
                if b not in adj[a]:
                    bad_cliques.append((x, "not_a_clique", (a, b)))
                    break
    rb.add("parent_cliques", not bad_cliques, tuple(bad_cliques[:5]))
    return rb.build()
