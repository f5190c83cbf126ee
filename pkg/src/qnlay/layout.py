"""Queue layouts of k-trees with at most 2^k - 1 queues.

The order is built depth by depth over a BFS tree-partition: nodes at one
depth are sorted by their parent's position and then by the position of
the rightmost parent-clique vertex, and each bag is replaced by a layout
of its own (k-1)-tree obtained recursively.  Intrabag edges reuse the
recursive palette 1..t; an interbag edge uv into the bag below gets
2t + 1 when u is the rightmost parent-clique vertex c, and otherwise
shifts the color of the intrabag edge uc by t.
"""

from __future__ import annotations

from .graph import Graph, GraphError, recognize_ktree
from .ordering import (
    Edge,
    LinearOrder,
    QueueAssignment,
    QueueLayout,
    canonical_edge,
)
from .partition import partition_core


class LayoutAnomaly(GraphError):
    """An internal construction guarantee failed; never expected on k-trees."""


def queue_bound(k: int) -> int:
    """Queue budget for parameter k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return 2 ** k - 1


def track_bound_from(c: int, q: int) -> int:
    """Track budget from an acyclic chromatic number c and queue count q."""
    if c < 1 or q < 0:
        raise ValueError("need c >= 1 and q >= 0")
    return c * (2 * q) ** (c - 1)


def track_bound(k: int) -> int:
    """Track budget for parameter k: (k+1) * (2^(k+1) - 2)^k."""
    return track_bound_from(k + 1, queue_bound(k))


def interbag_color(u_is_cx: bool, color_of_u_cx: int | None, t_prev: int) -> int:
    """Color rule for an edge from a parent bag into a child bag.

    ``t_prev`` is the intrabag palette size 2^(k-1) - 1.
    """
    if t_prev < 0:
        raise ValueError("palette size must be non-negative")
    if u_is_cx:
        return 2 * t_prev + 1
    if color_of_u_cx is None:
        raise ValueError("edge u-c exists in the parent clique; its color is required")
    if not 1 <= color_of_u_cx <= t_prev:
        raise ValueError(f"intrabag color {color_of_u_cx} outside 1..{t_prev}")
    return color_of_u_cx + t_prev


def queues_from_order(graph: Graph, order: LinearOrder) -> QueueAssignment:
    """Assign queue(e) = 1 + max queue over edges strictly nested inside e.

    Innermost edges get queue 1 and the queue count equals the maximum
    rainbow size of the order, which is optimal for this order.
    """
    if not order.covers(graph.vertices):
        raise GraphError("order does not cover the vertex set")
    spans = []
    for e in graph.edges:
        a, b = order.span(e)
        spans.append((a, b, e))
    # Process by left endpoint descending so that everything strictly
    # inside a span is already ranked; a prefix-max tree over right
    # endpoints answers "deepest edge ending before b".
    spans.sort(key=lambda s: (-s[0], s[1]))
    size = len(order) + 1
    tree = [0] * size

    def bump(i: int, value: int) -> None:
        i += 1
        while i < size:
            if tree[i] < value:
                tree[i] = value
            i += i & (-i)

    def best(i: int) -> int:  # max over right endpoints < i
        out = 0
        while i > 0:
            if tree[i] > out:
                out = tree[i]
            i -= i & (-i)
        return out

    queue_of: dict[Edge, int] = {}
    i = 0
    while i < len(spans):
        j = i
        while j < len(spans) and spans[j][0] == spans[i][0]:
            a, b, e = spans[j]
            queue_of[e] = 1 + best(b)
            j += 1
        for t in range(i, j):
            bump(spans[t][1], queue_of[spans[t][2]])
        i = j
    count = max(queue_of.values(), default=0)
    return QueueAssignment(queue_of, count)


def _assert_node_order(node_spans: list[tuple[int, int]]) -> None:
    """Tree edges of the partition must be pairwise non-nested in the node
    order; a violation means the Lex-BFS ordering broke."""
    spans = sorted(node_spans)
    best_right = -1
    idx = 0
    while idx < len(spans):
        j = idx
        while j < len(spans) and spans[j][0] == spans[idx][0]:
            if spans[j][1] < best_right:
                raise LayoutAnomaly("nested tree edges in the node order")
            j += 1
        for t in range(idx, j):
            best_right = max(best_right, spans[t][1])
        idx = j


def _layout_vertices(
    vset: frozenset[str],
    k: int,
    adj: dict[str, set[str]],
    root: str | None,
    trace: list | None,
) -> tuple[list[str], dict[Edge, int]]:
    """Order and color the induced subgraph on ``vset`` with parameter k.

    Components are laid out side by side in order of smallest token and
    share the palette.
    """
    if k == 0:
        seq = sorted(vset)
        for v in seq:
            if adj[v] & vset:
                raise LayoutAnomaly("edges remain at recursion depth 0")
        return seq, {}

    # Split into components within vset.
    seen: set[str] = set()
    comps: list[list[str]] = []
    for start in sorted(vset):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v] & vset:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)

    sequence: list[str] = []
    colors: dict[Edge, int] = {}
    for comp in comps:
        comp_root = root if root is not None and root in comp else min(comp)
        seq, cols = _layout_component(frozenset(comp), k, adj, comp_root, trace)
        sequence.extend(seq)
        colors.update(cols)
    return sequence, colors


def _layout_component(
    vset: frozenset[str],
    k: int,
    adj: dict[str, set[str]],
    root: str,
    trace: list | None,
) -> tuple[list[str], dict[Edge, int]]:
    node_order, bags, parents, parent_cliques, depths = partition_core(
        vset, adj, k, root
    )
    t_prev = queue_bound(k - 1)

    position: dict[str, int] = {}
    sequence: list[str] = []
    colors: dict[Edge, int] = {}
    node_pos: dict[str, int] = {}
    placed_nodes: list[str] = []
    c_of: dict[str, str] = {}
    max_depth = max(depths.values(), default=0)
    by_depth: dict[int, list[str]] = {}
    for x in node_order:
        by_depth.setdefault(depths[x], []).append(x)

    for d in range(max_depth + 1):
        if d == 0:
            ordered = list(by_depth[0])
        else:
            keyed = []
            for x in by_depth[d]:
                cx = max(parent_cliques[x], key=lambda u: position[u])
                c_of[x] = cx
                keyed.append((node_pos[parents[x]], position[cx], min(bags[x]), x))
            keyed.sort()
            ordered = [x for *_, x in keyed]
        for x in ordered:
            node_pos[x] = len(placed_nodes)
            placed_nodes.append(x)
        if trace is not None:
            trace.append({
                "depth": d,
                "nodes": [
                    {"id": x, "bag": sorted(bags[x]), "c": c_of.get(x)}
                    for x in ordered
                ],
            })
        for x in ordered:
            sub_seq, sub_cols = _layout_vertices(bags[x], k - 1, adj, None, None)
            for v in sub_seq:
                position[v] = len(sequence)
                sequence.append(v)
            colors.update(sub_cols)
            if d == 0:
                continue
            cx = c_of[x]
            bag = bags[x]
            for u in parent_cliques[x]:
                if u == cx:
                    color = 2 * t_prev + 1
                else:
                    base = colors.get(canonical_edge(u, cx))
                    if base is None:
                        raise LayoutAnomaly(
                            f"missing intrabag color for {u!r}-{cx!r}"
                        )
                    color = base + t_prev
                for v in adj[u] & bag:
                    edge = canonical_edge(u, v)
                    colors[edge] = color
                    if trace is not None:
                        trace.append({"edge": edge, "color": color, "via": cx})

    # Lex-BFS properties: depth-major and parent-monotone hold by
    # construction; tree edges must additionally be non-nested.
    _assert_node_order(
        [tuple(sorted((node_pos[x], node_pos[parents[x]]))) for x in parents]
    )
    return sequence, colors


def layout_ktree(
    graph: Graph,
    k: int,
    *,
    root: str | None = None,
    collect_trace: bool = False,
) -> QueueLayout:
    """Queue layout of a k-tree using at most 2^k - 1 queues.

    The input is recognized first; recognition failures propagate.  When
    ``root`` is given it seeds the tree-partition of its component.
    """
    recognize_ktree(graph, k)
    if root is not None and root not in graph.vertices:
        raise GraphError(f"root {root!r} is not a vertex")
    trace: list | None = [] if collect_trace else None
    adj = graph.adjacency
    sequence, colors = _layout_vertices(graph.vertices, k, adj, root, trace)
    if len(colors) != graph.m:
        raise LayoutAnomaly("some edges were left uncolored")
    assignment = QueueAssignment(colors, queue_bound(k))
    return QueueLayout(
        LinearOrder(sequence), assignment, k,
        trace=tuple(trace) if trace is not None else (),
    )
