"""Shared builders and independent brute-force oracles.

The oracles here deliberately avoid the production code paths they check:
rainbows by subset enumeration, cliques by subset scan, queue numbers by
full permutation search.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations

import pytest

from qnlay.graph import Graph, KTreeScript, build_graph
from qnlay.ordering import LinearOrder, canonical_edge


def script(k, *steps) -> KTreeScript:
    return KTreeScript(k, tuple((v, frozenset(attach)) for v, attach in steps))


def complete_graph(n: int, prefix: str = "") -> Graph:
    tokens = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Graph(tokens, [canonical_edge(u, v) for u, v in combinations(tokens, 2)])


def cycle_graph(n: int) -> Graph:
    tokens = [str(i) for i in range(1, n + 1)]
    return Graph(tokens, [(tokens[i], tokens[(i + 1) % n]) for i in range(n)])


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    tokens = [str(i) for i in range(1, n + 1)]
    edges = [
        (u, v) for u, v in combinations(tokens, 2) if rng.random() < p
    ]
    return Graph(tokens, edges)


def pairwise_nested(order: LinearOrder, edges) -> bool:
    spans = sorted(order.span(e) for e in edges)
    return all(
        spans[i][0] < spans[i + 1][0] and spans[i + 1][1] < spans[i][1]
        for i in range(len(spans) - 1)
    )


def rainbow_by_subsets(order: LinearOrder, edges) -> int:
    """Maximum rainbow by explicit subset enumeration; m must be tiny."""
    edges = list(edges)
    assert len(edges) <= 14
    best = 0
    for size in range(1, len(edges) + 1):
        for subset in combinations(edges, size):
            if pairwise_nested(order, subset):
                best = size
                break
    return best


def cliques_by_subsets(graph: Graph, size: int) -> list[tuple[str, ...]]:
    out = []
    for subset in combinations(sorted(graph.vertices), size):
        if graph.is_clique(subset):
            out.append(subset)
    return out


def qn_by_permutations(graph: Graph):
    """Exact queue number by scanning every vertex order; n must be tiny."""
    from qnlay.analysis import max_rainbow

    assert graph.n <= 7
    best = None
    best_order = None
    for perm in permutations(sorted(graph.vertices)):
        size, _ = max_rainbow(LinearOrder(perm), graph.edges)
        if best is None or size < best:
            best, best_order = size, perm
    return best, best_order


@pytest.fixture
def triangle() -> Graph:
    return build_graph(script(2, ("a", ()), ("b", ("a",)), ("c", ("a", "b"))))


@pytest.fixture
def path3() -> Graph:
    return build_graph(script(1, ("a", ()), ("b", ("a",)), ("c", ("b",))))


@pytest.fixture
def two_tree_5() -> Graph:
    """The 5-vertex 2-tree a, b:{a}, c:{a,b}, d:{b,c}, e:{c,d}."""
    return build_graph(script(
        2, ("a", ()), ("b", ("a",)), ("c", ("a", "b")),
        ("d", ("b", "c")), ("e", ("c", "d")),
    ))
