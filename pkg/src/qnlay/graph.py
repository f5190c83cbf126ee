"""Graphs, construction scripts, recognition, cliques, and stack families.

Vertices are opaque string tokens; integers arriving from JSON are admitted
as their decimal strings.  All containers are immutable after construction
and every enumeration is ordered lexicographically by token, so downstream
constructions are reproducible.
"""

from __future__ import annotations

import heapq
import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .ordering import Edge, canonical_edge


class GraphError(Exception):
    """Base class for graph and script errors."""


class InvalidScriptError(GraphError):
    """A construction script violates its invariants at some step."""

    def __init__(self, step: int, reason: str):
        super().__init__(f"step {step}: {reason}")
        self.step = step
        self.reason = reason


class NotChordalError(GraphError):
    """The graph contains a chordless cycle on more than three vertices."""

    def __init__(self, cycle: tuple[str, ...]):
        super().__init__(f"chordless cycle: {' - '.join(cycle)}")
        self.cycle = cycle


class NotKTreeError(GraphError):
    """Construction order requires attaching to a clique larger than k."""

    def __init__(self, k: int, vertex: str, clique: tuple[str, ...]):
        super().__init__(
            f"vertex {vertex!r} attaches to a clique of size {len(clique)} > k={k}"
        )
        self.k = k
        self.vertex = vertex
        self.clique = clique


class Graph:
    """Immutable undirected simple graph over string tokens."""

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices, edges):
        self.vertices: frozenset[str] = frozenset(vertices)
        canon = set()
        for u, v in edges:
            e = canonical_edge(u, v)
            if e[0] not in self.vertices or e[1] not in self.vertices:
                raise GraphError(f"edge {e} has an endpoint outside the vertex set")
            canon.add(e)
        self.edges: frozenset[Edge] = frozenset(canon)
        self._adj: dict[str, set[str]] | None = None

    @property
    def adjacency(self) -> dict[str, set[str]]:
        """Vertex to neighbour-set map; treated as read-only."""
        if self._adj is None:
            adj: dict[str, set[str]] = {v: set() for v in self.vertices}
            for u, v in self.edges:
                adj[u].add(v)
                adj[v].add(u)
            self._adj = adj
        return self._adj

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: str) -> set[str]:
        return self.adjacency[v]

    def has_edge(self, u: str, v: str) -> bool:
        return canonical_edge(u, v) in self.edges

    def is_clique(self, vertices) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, v) for u, v in combinations(vs, 2))

    def induced(self, vertices) -> "Graph":
        vs = frozenset(vertices)
        if not vs <= self.vertices:
            raise GraphError("induced subgraph on vertices outside the graph")
        return Graph(vs, [e for e in self.edges if e[0] in vs and e[1] in vs])

    def with_stacked_vertex(self, vertex: str, clique) -> "Graph":
        """New graph with ``vertex`` made adjacent to exactly ``clique``."""
        if vertex in self.vertices:
            raise GraphError(f"vertex {vertex!r} already present")
        members = frozenset(clique)
        if not members <= self.vertices:
            raise GraphError("attach set contains unknown vertices")
        if not self.is_clique(members):
            raise GraphError("attach set is not a clique")
        return Graph(
            self.vertices | {vertex},
            list(self.edges) + [canonical_edge(vertex, u) for u in members],
        )

    def components(self) -> list[frozenset[str]]:
        """Connected components, ordered by smallest member token."""
        seen: set[str] = set()
        comps = []
        adj = self.adjacency
        for start in sorted(self.vertices):
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for w in adj[v]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class KTreeScript:
    """Construction sequence: each step adds a vertex attached to a clique
    of at most k earlier vertices."""

    k: int
    steps: tuple[tuple[str, frozenset[str]], ...]

    def __post_init__(self):
        if self.k < 0:
            raise InvalidScriptError(0, "k must be non-negative")

    @property
    def n(self) -> int:
        return len(self.steps)

    def vertices(self) -> list[str]:
        return [v for v, _ in self.steps]


def build_graph(script: KTreeScript) -> Graph:
    """Execute a script, validating every step.

    Raises InvalidScriptError carrying the offending step index.
    """
    adj: dict[str, set[str]] = {}
    edges: list[Edge] = []
    for i, (vertex, attach) in enumerate(script.steps):
        if vertex in adj:
            raise InvalidScriptError(i, f"duplicate vertex token {vertex!r}")
        if len(attach) > script.k:
            raise InvalidScriptError(
                i, f"attach set of size {len(attach)} exceeds k={script.k}"
            )
        if vertex in attach:
            raise InvalidScriptError(i, f"vertex {vertex!r} attaches to itself")
        for u in attach:
            if u not in adj:
                raise InvalidScriptError(i, f"attach vertex {u!r} not introduced yet")
        for u, w in combinations(sorted(attach), 2):
            if w not in adj[u]:
                raise InvalidScriptError(i, f"attach set not a clique: {u!r}-{w!r} missing")
        adj[vertex] = set(attach)
        for u in attach:
            adj[u].add(vertex)
            edges.append(canonical_edge(vertex, u))
    return Graph(adj.keys(), edges)


def _mcs_order(graph: Graph) -> list[tuple[str, frozenset[str]]]:
    """Maximum-cardinality-search visit order with back-neighbourhoods.

    Ties break on the lexicographically smallest token.  Visiting order
    doubles as a construction order: in a chordal graph every vertex's
    earlier neighbourhood is a clique.
    """
    adj = graph.adjacency
    visited: set[str] = set()
    weight = {v: 0 for v in graph.vertices}
    heap: list[tuple[int, str]] = [(0, v) for v in sorted(graph.vertices)]
    heapq.heapify(heap)
    out: list[tuple[str, frozenset[str]]] = []
    while len(visited) < graph.n:
        w, v = heapq.heappop(heap)
        if v in visited or -w != weight[v]:
            continue
        visited.add(v)
        out.append((v, frozenset(adj[v] & visited)))
        for u in adj[v]:
            if u not in visited:
                weight[u] += 1
                heapq.heappush(heap, (-weight[u], u))
    return out


def find_chordless_cycle(graph: Graph) -> tuple[str, ...] | None:
    """Some chordless cycle on at least four vertices, or None.

    For every path u-v-w with uw missing, a shortest u-w path avoiding the
    rest of N[v] closes an induced cycle through v.  Any chordless cycle
    contains such a triple, so the scan is exhaustive.
    """
    adj = graph.adjacency
    for v in sorted(graph.vertices):
        nbrs = sorted(adj[v])
        for u, w in combinations(nbrs, 2):
            if w in adj[u]:
                continue
            blocked = (adj[v] | {v}) - {u, w}
            prev: dict[str, str | None] = {u: None}
            queue = deque([u])
            while queue:
                x = queue.popleft()
                if x == w:
                    break
                for y in sorted(adj[x]):
                    if y not in prev and y not in blocked:
                        prev[y] = x
                        queue.append(y)
            if w in prev:
                path = [w]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                path.reverse()
                return tuple([v] + path)
    return None


def recognize_ktree(graph: Graph, k: int) -> KTreeScript:
    """Recognize ``graph`` as a k-tree, returning a construction script.

    Runs maximum-cardinality search; the graph is accepted iff every
    back-neighbourhood is a clique of size at most k.  On failure raises
    NotChordalError with a chordless-cycle witness, or NotKTreeError with
    the oversized step.
    """
    if k < 0:
        raise GraphError("k must be non-negative")
    order = _mcs_order(graph)
    adj = graph.adjacency
    for v, back in order:
        for u, w in combinations(sorted(back), 2):
            if w not in adj[u]:
                cycle = find_chordless_cycle(graph)
                assert cycle is not None
                raise NotChordalError(cycle)
    for v, back in order:
        if len(back) > k:
            raise NotKTreeError(k, v, tuple(sorted(back)))
    return KTreeScript(k, tuple(order))


def min_ktree_parameter(graph: Graph) -> int:
    """Smallest k for which the graph is a k-tree (max back-degree).

    Raises NotChordalError when the graph is not chordal.
    """
    order = _mcs_order(graph)
    adj = graph.adjacency
    best = 0
    for v, back in order:
        for u, w in combinations(sorted(back), 2):
            if w not in adj[u]:
                cycle = find_chordless_cycle(graph)
                assert cycle is not None
                raise NotChordalError(cycle)
        best = max(best, len(back))
    return best


def enumerate_cliques(graph: Graph, size: int) -> list[tuple[str, ...]]:
    """All cliques of exactly ``size`` vertices, each once, sorted.

    Uses the perfect-elimination structure, so the input must be chordal.
    Every clique is listed via its last vertex in the elimination order.
    """
    if size < 1:
        raise GraphError("clique size must be at least 1")
    order = _mcs_order(graph)
    adj = graph.adjacency
    cliques: list[tuple[str, ...]] = []
    for v, back in order:
        for u, w in combinations(sorted(back), 2):
            if w not in adj[u]:
                cycle = find_chordless_cycle(graph)
                assert cycle is not None
                raise NotChordalError(cycle)
        if len(back) >= size - 1:
            for rest in combinations(sorted(back), size - 1):
                cliques.append(tuple(sorted(rest + (v,))))
    cliques.sort()
    return cliques


def _fresh_names(existing: frozenset[str], count: int) -> list[str]:
    prefix = "s"
    while any(f"{prefix}{i}" in existing for i in range(1, count + 1)):
        prefix += "s"
    return [f"{prefix}{i}" for i in range(1, count + 1)]


def k_stack(
    graph: Graph, k: int, name_prefix: str | None = None
) -> tuple[Graph, dict[str, str]]:
    """Stack one new vertex onto every k-clique simultaneously.

    Returns the stacked graph and the intrinsic-copy map identifying the
    input's vertices inside it.  k must be at least 1: there is no size-0
    clique to stack on.
    """
    if k < 1:
        raise GraphError("k_stack requires k >= 1")
    cliques = enumerate_cliques(graph, k)
    if name_prefix is None:
        names = _fresh_names(graph.vertices, len(cliques))
    else:
        names = [f"{name_prefix}{i}" for i in range(1, len(cliques) + 1)]
        clash = set(names) & graph.vertices
        if clash:
            raise GraphError(f"name prefix collides with existing vertices: {sorted(clash)}")
    edges = list(graph.edges)
    for name, clique in zip(names, cliques):
        edges.extend(canonical_edge(name, u) for u in clique)
    stacked = Graph(graph.vertices | set(names), edges)
    return stacked, {v: v for v in graph.vertices}


@dataclass(frozen=True)
class StackFamily:
    """Iterated k-stacks starting from a (k+1)-clique."""

    k: int
    graphs: tuple[Graph, ...]
    copy_maps: tuple[dict[str, str], ...]  # copy_maps[i] embeds graphs[i] into graphs[i+1]


def stack_family(k: int, iters: int, max_vertices: int = 200_000) -> StackFamily:
    """G_0 .. G_iters where G_0 = K_{k+1} and each G_i stacks its predecessor.

    Rejects once the next graph would exceed ``max_vertices``.
    """
    if k < 1:
        raise GraphError("stack_family requires k >= 1")
    if iters < 0:
        raise GraphError("iters must be non-negative")
    base = [f"v{i}" for i in range(1, k + 2)]
    g = Graph(base, [canonical_edge(u, v) for u, v in combinations(base, 2)])
    graphs = [g]
    maps: list[dict[str, str]] = []
    for i in range(1, iters + 1):
        grow = len(enumerate_cliques(g, k))
        if g.n + grow > max_vertices:
            raise GraphError(
                f"iteration {i} would produce {g.n + grow} vertices, budget {max_vertices}"
            )
        g, cmap = k_stack(g, k, name_prefix=f"w{i}.")
        graphs.append(g)
        maps.append(cmap)
    return StackFamily(k, tuple(graphs), tuple(maps))


def random_ktree(k: int, n: int, seed: int) -> KTreeScript:
    """Deterministic random k-tree script on n vertices.

    The first min(n, k+1) steps build a clique; each later vertex attaches
    to a uniformly chosen k-clique of the graph built so far.
    """
    if k < 0 or n < 0:
        raise GraphError("k and n must be non-negative")
    rng = random.Random(seed)
    steps: list[tuple[str, frozenset[str]]] = []
    tokens = [str(i) for i in range(1, n + 1)]
    head = min(n, k + 1)
    for i in range(head):
        steps.append((tokens[i], frozenset(tokens[:i])))
    if n <= k or k == 0:
        steps.extend((tokens[i], frozenset()) for i in range(head, n))
        return KTreeScript(k, tuple(steps))
    cliques: list[tuple[str, ...]] = [
        tuple(sorted(c)) for c in combinations(tokens[:head], k)
    ]
    cliques.sort()
    for i in range(head, n):
        attach = cliques[rng.randrange(len(cliques))]
        v = tokens[i]
        steps.append((v, frozenset(attach)))
        for rest in combinations(attach, k - 1):
            cliques.append(tuple(sorted(rest + (v,))))
    return KTreeScript(k, tuple(steps))
