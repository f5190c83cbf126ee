"""Linear vertex orders, the strict nesting predicate, and layout containers.

Nesting is strict on both sides: edges sharing an endpoint are never
nested.  Every module that reasons about nesting goes through
:func:`nested` so the convention lives in exactly one place.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Edge = tuple[str, str]


def canonical_edge(u: str, v: str) -> Edge:
    """Return the endpoints as a sorted pair; self-loops are rejected."""
    if u == v:
        raise ValueError(f"self-loop at {u!r}")
    return (u, v) if u < v else (v, u)


class LinearOrder:
    """A permutation of vertex tokens with O(1) position lookup."""

    __slots__ = ("sequence", "position")

    def __init__(self, sequence):
        self.sequence: tuple[str, ...] = tuple(sequence)
        self.position: dict[str, int] = {v: i for i, v in enumerate(self.sequence)}
        if len(self.position) != len(self.sequence):
            raise ValueError("order contains a duplicate vertex")

    def __len__(self) -> int:
        return len(self.sequence)

    def __iter__(self):
        return iter(self.sequence)

    def __contains__(self, vertex) -> bool:
        return vertex in self.position

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearOrder) and self.sequence == other.sequence

    def __repr__(self) -> str:
        return f"LinearOrder({list(self.sequence)!r})"

    def span(self, edge: Edge) -> tuple[int, int]:
        """Positions of the edge's endpoints as (left, right)."""
        a, b = self.position[edge[0]], self.position[edge[1]]
        return (a, b) if a < b else (b, a)

    def covers(self, vertices) -> bool:
        return set(self.position) == set(vertices)


def nested(e: Edge, f: Edge, order: LinearOrder) -> bool:
    """True iff one edge lies strictly inside the other in the order."""
    a1, b1 = order.span(e)
    a2, b2 = order.span(f)
    return (a1 < a2 and b2 < b1) or (a2 < a1 and b1 < b2)


@dataclass(frozen=True)
class RainbowWitness:
    """Pairwise nested edges, outermost first.

    With spans (a_i, b_i) in the reference order the edges satisfy
    a_1 < ... < a_s < b_s < ... < b_1.
    """

    edges: tuple[Edge, ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    def is_valid(self, order: LinearOrder) -> bool:
        spans = [order.span(e) for e in self.edges]
        return all(
            spans[i][0] < spans[i + 1][0] and spans[i + 1][1] < spans[i][1]
            for i in range(len(spans) - 1)
        )


@dataclass(frozen=True)
class QueueAssignment:
    """Edge to queue-index map.

    ``queue_count`` is the size of the index space, so all indices lie in
    1..queue_count.  Indices need not be contiguous: a layout built from a
    palette may leave some of them unused.  ``used_queues`` reports the
    indices that actually occur.
    """

    queue_of: dict[Edge, int]
    queue_count: int

    def used_queues(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.queue_of.values())))

    def by_queue(self) -> dict[int, list[Edge]]:
        buckets: dict[int, list[Edge]] = {}
        for edge, q in self.queue_of.items():
            buckets.setdefault(q, []).append(edge)
        return buckets


@dataclass(frozen=True)
class QueueLayout:
    """A linear order plus a queue assignment for a declared parameter k."""

    order: LinearOrder
    assignment: QueueAssignment
    k: int
    trace: tuple = field(default=(), compare=False)

    def used_queue_count(self) -> int:
        return len(self.assignment.used_queues())
