"""Rainbow analytics, layout verification, the exact oracle, and colorings.

The sweep in :func:`max_rainbow` is the production path; the quadratic
dynamic program next to it is deliberately kept as an independent oracle
and is cross-checked in the test suite.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .graph import Graph, GraphError, KTreeScript
from .ordering import Edge, LinearOrder, QueueLayout, RainbowWitness, canonical_edge
from .report import Report, ReportBuilder


def _spans(order: LinearOrder, edges) -> list[tuple[int, int, Edge]]:
    spans = []
    for u, v in edges:
        a, b = order.position[u], order.position[v]
        if a > b:
            a, b = b, a
        spans.append((a, b, canonical_edge(u, v)))
    return spans


def max_rainbow(order: LinearOrder, edges) -> tuple[int, RainbowWitness]:
    """Largest set of pairwise nested edges, with a witness.

    Sort by left endpoint ascending (ties right ascending); a longest
    strictly decreasing subsequence of right endpoints is then exactly a
    maximum nested chain.  O(m log m).
    """
    spans = sorted(_spans(order, edges))
    if not spans:
        return 0, RainbowWitness(())
    # Patience piles over negated right endpoints: strictly decreasing
    # rights become strictly increasing keys.
    pile_keys: list[int] = []
    pile_tops: list[int] = []
    prev = [-1] * len(spans)
    for i, (_, b, _) in enumerate(spans):
        key = -b
        p = bisect_left(pile_keys, key)
        if p > 0:
            prev[i] = pile_tops[p - 1]
        if p == len(pile_keys):
            pile_keys.append(key)
            pile_tops.append(i)
        else:
            pile_keys[p] = key
            pile_tops[p] = i
    chain = []
    i = pile_tops[-1]
    while i != -1:
        chain.append(spans[i][2])
        i = prev[i]
    chain.reverse()
    return len(chain), RainbowWitness(tuple(chain))


def max_rainbow_quadratic(order: LinearOrder, edges) -> int:
    """O(m^2) chain dynamic program; independent oracle for the sweep."""
    spans = sorted(_spans(order, edges), key=lambda s: (s[1] - s[0], s[0]))
    depth = [1] * len(spans)
    for i, (a, b, _) in enumerate(spans):
        for j in range(i):
            aj, bj, _ = spans[j]
            if a < aj and bj < b:
                depth[i] = max(depth[i], depth[j] + 1)
    return max(depth, default=0)


def is_queue(order: LinearOrder, edges) -> tuple[bool, tuple[Edge, Edge] | None]:
    """True iff no two edges are nested; otherwise a violating pair."""
    spans = sorted(_spans(order, edges))
    best_b = -1
    best_edge: Edge | None = None
    i = 0
    while i < len(spans):
        j = i
        while j < len(spans) and spans[j][0] == spans[i][0]:
            if spans[j][1] < best_b:
                return False, (best_edge, spans[j][2])
            j += 1
        for t in range(i, j):
            if spans[t][1] > best_b:
                best_b = spans[t][1]
                best_edge = spans[t][2]
        i = j
    return True, None


def validate_queue_layout(graph: Graph, layout: QueueLayout, strict: bool = False) -> Report:
    """Check a queue layout against its declared parameter.

    (a) every queue is nesting-free, (b) at most 2^k - 1 queues are used,
    and with ``strict`` (c) edges sharing a right endpoint lie in pairwise
    distinct queues.  Coverage of the vertex and edge sets is checked first.
    """
    rb = ReportBuilder()
    order = layout.order
    assignment = layout.assignment
    rb.add("order_covers_vertices", order.covers(graph.vertices),
           tuple(sorted(set(graph.vertices) ^ set(order.position)))[:5])
    assigned = set(assignment.queue_of)
    rb.add("assignment_covers_edges", assigned == set(graph.edges),
           tuple(sorted(assigned ^ set(graph.edges)))[:5])
    in_range = [
        (e, q) for e, q in assignment.queue_of.items()
        if not (1 <= q <= assignment.queue_count)
    ]
    rb.add("indices_in_range", not in_range, tuple(in_range[:5]))

    violations = []
    if order.covers(graph.vertices):
        for q, qedges in sorted(assignment.by_queue().items()):
            ok, pair = is_queue(order, qedges)
            if not ok:
                violations.append((q, pair))
    rb.add("queues_nesting_free", not violations, tuple(violations[:5]))

    bound = 2 ** layout.k - 1
    used = assignment.used_queues()
    rb.add("queue_count_within_bound", len(used) <= bound,
           () if len(used) <= bound else ((len(used), bound),))

    if strict:
        clashes = []
        if order.covers(graph.vertices):
            seen: dict[tuple[str, int], Edge] = {}
            for e, q in assignment.queue_of.items():
                a, b = order.span(e)
                right = order.sequence[b]
                key = (right, q)
                if key in seen:
                    clashes.append((right, seen[key], e))
                else:
                    seen[key] = e
        rb.add("right_endpoints_distinct", not clashes, tuple(clashes[:5]))
    return rb.build()


def exact_queue_number(graph: Graph, vertex_cap: int = 12) -> tuple[int, LinearOrder]:
    """Minimum over all vertex orders of the maximum rainbow size.

    Branch and bound appending vertices left to right; nesting among edges
    with both endpoints placed is final since later vertices only go
    further right, so the partial rainbow prunes.
    """
    if graph.n > vertex_cap:
        raise GraphError(f"exact search capped at {vertex_cap} vertices, got {graph.n}")
    verts = sorted(graph.vertices)
    if graph.n == 0:
        return 0, LinearOrder(())
    adj = graph.adjacency
    identity = LinearOrder(verts)
    best_size, _ = max_rainbow(identity, graph.edges)
    best_order = list(verts)
    complete = graph.m == graph.n * (graph.n - 1) // 2

    placed: list[str] = []
    pos: dict[str, int] = {}
    # Parallel stacks of (left_position, depth) for placed edges.
    edge_left: list[int] = []
    edge_depth: list[int] = []

    def extend(v: str) -> tuple[int, int]:
        """Place v rightmost; returns (#edges added, new max chain depth)."""
        i = len(placed)
        pos[v] = i
        placed.append(v)
        added = 0
        worst = 0
        prior = len(edge_left)  # same-step edges share the right endpoint
        for u in adj[v]:
            if u in pos and u != v and pos[u] < i:
                lu = pos[u]
                d = 1
                for t in range(prior):
                    if edge_left[t] > lu and edge_depth[t] >= d:
                        d = edge_depth[t] + 1
                edge_left.append(lu)
                edge_depth.append(d)
                added += 1
                worst = max(worst, d)
        return added, worst

    def retract(v: str, added: int) -> None:
        del edge_left[len(edge_left) - added:]
        del edge_depth[len(edge_depth) - added:]
        placed.pop()
        del pos[v]

    def dfs(current: int) -> None:
        nonlocal best_size, best_order
        if current >= best_size:
            return
        if len(placed) == graph.n:
            best_size = current
            best_order = list(placed)
            return
        for v in verts:
            if v in pos:
                continue
            added, worst = extend(v)
            dfs(max(current, worst))
            retract(v, added)
            if best_size <= 1:
                return

    if complete:
        added, worst = extend(verts[0])
        dfs(worst)
        retract(verts[0], added)
    else:
        dfs(0)
    return best_size, LinearOrder(best_order)


def acyclic_coloring(script: KTreeScript) -> dict[str, int]:
    """Greedy coloring along the script: smallest color absent from the
    attach clique.  Uses at most k+1 colors and is proper; on chordal
    graphs properness already forces every two color classes to induce a
    forest."""
    colors: dict[str, int] = {}
    for vertex, attach in script.steps:
        taken = {colors[u] for u in attach}
        c = 1
        while c in taken:
            c += 1
        colors[vertex] = c
    return colors


def _bichromatic_cycle(graph: Graph, keep: set[str]) -> tuple[str, ...] | None:
    """A cycle within the induced subgraph on ``keep``, or None."""
    adj = graph.adjacency
    seen: dict[str, str | None] = {}
    for start in sorted(keep):
        if start in seen:
            continue
        stack: list[tuple[str, str | None]] = [(start, None)]
        seen[start] = None
        while stack:
            v, parent = stack.pop()
            for w in sorted(adj[v] & keep):
                if w == parent:
                    continue
                if w in seen:
                    # Walk both ancestor chains to splice the cycle.
                    path_v = [v]
                    while seen[path_v[-1]] is not None:
                        path_v.append(seen[path_v[-1]])
                    path_w = [w]
                    while seen[path_w[-1]] is not None:
                        path_w.append(seen[path_w[-1]])
                    common = set(path_v) & set(path_w)
                    iv = next(i for i, x in enumerate(path_v) if x in common)
                    iw = next(i for i, x in enumerate(path_w) if x in common)
                    if path_v[iv] != path_w[iw]:
                        continue
                    return tuple(path_v[: iv + 1] + path_w[:iw][::-1])
                seen[w] = v
                stack.append((w, v))
    return None


def verify_acyclic_coloring(graph: Graph, coloring: dict[str, int]) -> Report:
    """Check properness and that every two color classes induce a forest."""
    rb = ReportBuilder()
    missing = sorted(graph.vertices - set(coloring))
    rb.add("coloring_covers_vertices", not missing, tuple(missing[:5]))
    improper = [e for e in graph.edges if coloring.get(e[0]) == coloring.get(e[1])]
    rb.add("proper", not improper, tuple(sorted(improper)[:5]))
    cycles = []
    if not missing and not improper:
        classes = sorted(set(coloring.values()))
        for i, a in enumerate(classes):
            for b in classes[i + 1:]:
                keep = {v for v, c in coloring.items() if c in (a, b)}
                cyc = _bichromatic_cycle(graph, keep)
                if cyc is not None:
                    cycles.append(((a, b), cyc))
    rb.add("color_pairs_induce_forests", not cycles, tuple(cycles[:3]))
    return rb.build()


def validate_track_layout(graph: Graph, tracks) -> Report:
    """Check a track assignment: partition into ordered independent sets
    with no X-crossing between any two tracks."""
    rb = ReportBuilder()
    tracks = [list(t) for t in tracks]
    flat = [v for t in tracks for v in t]
    rb.add(
        "tracks_partition_vertices",
        len(flat) == len(set(flat)) and set(flat) == set(graph.vertices),
        tuple(sorted(set(flat) ^ set(graph.vertices)))[:5],
    )
    track_of: dict[str, int] = {}
    pos: dict[str, int] = {}
    for i, t in enumerate(tracks):
        for j, v in enumerate(t):
            track_of[v] = i
            pos[v] = j
    dependent = [
        e for e in graph.edges
        if track_of.get(e[0]) is not None and track_of.get(e[0]) == track_of.get(e[1])
    ]
    rb.add("tracks_independent", not dependent, tuple(sorted(dependent)[:5]))

    crossings = []
    if not dependent and set(flat) == set(graph.vertices):
        between: dict[tuple[int, int], list[tuple[str, str]]] = {}
        for u, v in graph.edges:
            i, j = track_of[u], track_of[v]
            if i > j:
                i, j, u, v = j, i, v, u
            between.setdefault((i, j), []).append((u, v))
        for pair, pedges in sorted(between.items()):
            for x in range(len(pedges)):
                for y in range(x + 1, len(pedges)):
                    (a, b), (c, d) = pedges[x], pedges[y]
                    if (pos[a] - pos[c]) * (pos[b] - pos[d]) < 0:
                        crossings.append((pedges[x], pedges[y]))
    rb.add("no_x_crossing", not crossings, tuple(crossings[:5]))
    return rb.build()
