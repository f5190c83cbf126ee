"""The k-queue game: Alice stacks vertices onto k-cliques, Bob inserts
them into the linear order, and Alice wins once a (k+1)-rainbow appears.

The controller walks four phases.  It forces Bob outside a target clique
(insides shrink the target and push strictly nested cover edges), collects
2k+1 one-sided placements on a stable clique, extends a chain of forced
vertices by repeated median selection, and finally exploits the resulting
configuration where any 2k-1 one-sided placements complete a rainbow.
The engine checks the global rainbow after every insertion, so each phase
only needs to keep stacking legally; if a phase's guarantee fails to
materialize the game ends as an anomaly instead of silently looping.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import Graph
from .ordering import Edge, LinearOrder, RainbowWitness, canonical_edge
from .analysis import max_rainbow


class GameError(Exception):
    pass


class IllegalMoveError(GameError):
    pass


class GameAnomaly(GameError):
    """A strategy guarantee failed; surfaces as an anomaly outcome."""


class GameState:
    """Evolving state of one game; single-threaded by contract."""

    def __init__(self, k: int, order: list[str], adj: dict[str, set[str]]):
        self.k = k
        self.order: list[str] = list(order)
        self.adj: dict[str, set[str]] = adj
        self.round = 0
        self.pending: tuple[str, tuple[str, ...]] | None = None
        self.last_placed: tuple[str, tuple[str, ...]] | None = None
        self._counter = len(order) + 1

    @property
    def n(self) -> int:
        return len(self.order)

    def position(self, v: str) -> int:
        return self.order.index(v)

    def positions(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.order)}

    def edges(self) -> list[Edge]:
        return [
            canonical_edge(u, v)
            for u in self.adj
            for v in self.adj[u]
            if u < v
        ]

    @property
    def graph(self) -> Graph:
        return Graph(self.adj.keys(), self.edges())

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.adj.get(u, ())

    def is_clique(self, vertices) -> bool:
        vs = list(vertices)
        return all(
            vs[j] in self.adj.get(vs[i], ())
            for i in range(len(vs))
            for j in range(i + 1, len(vs))
        )

    def copy(self) -> "GameState":
        dup = GameState(self.k, self.order, {v: set(ns) for v, ns in self.adj.items()})
        dup.round = self.round
        dup.pending = self.pending
        dup.last_placed = self.last_placed
        dup._counter = self._counter
        return dup


def new_game(k: int, initial_order=None) -> GameState:
    """Start from a (k+1)-clique; the order defaults to token order."""
    if k < 1:
        raise GameError("the game needs k >= 1")
    tokens = [f"v{i}" for i in range(1, k + 2)]
    adj = {t: set(tokens) - {t} for t in tokens}
    if initial_order is None:
        order = sorted(tokens)
    else:
        order = [str(v) for v in initial_order]
        if sorted(order) != sorted(tokens):
            raise GameError(f"initial order must permute {tokens}")
    return GameState(k, order, adj)


def apply_alice_move(state: GameState, clique) -> GameState:
    """Introduce a pending vertex stacked on ``clique``."""
    if state.pending is not None:
        raise IllegalMoveError("it is Bob's turn: a vertex is already pending")
    members = tuple(sorted(set(clique)))
    if len(members) != state.k:
        raise IllegalMoveError(f"need a clique of exactly k={state.k} vertices")
    for v in members:
        if v not in state.adj:
            raise IllegalMoveError(f"unknown vertex {v!r}")
    if not state.is_clique(members):
        raise IllegalMoveError(f"{members} is not a clique")
    vertex = f"v{state._counter}"
    while vertex in state.adj:
        state._counter += 1
        vertex = f"v{state._counter}"
    state.pending = (vertex, members)
    return state


def apply_bob_move(state: GameState, position: int) -> GameState:
    """Insert the pending vertex at ``position`` in [0..n]."""
    if state.pending is None:
        raise IllegalMoveError("no pending vertex: it is Alice's turn")
    if not isinstance(position, int) or isinstance(position, bool):
        raise IllegalMoveError("position must be an integer")
    if not 0 <= position <= state.n:
        raise IllegalMoveError(f"position {position} outside [0..{state.n}]")
    vertex, members = state.pending
    state.order.insert(position, vertex)
    state.adj[vertex] = set(members)
    for u in members:
        state.adj[u].add(vertex)
    state.pending = None
    state.last_placed = (vertex, members)
    state.round += 1
    state._counter += 1
    return state


def detect_rainbow(state: GameState, target: int) -> RainbowWitness | None:
    """A rainbow of exactly ``target`` nested edges, if one exists."""
    size, witness = max_rainbow(LinearOrder(state.order), state.edges())
    if size >= target:
        return RainbowWitness(witness.edges[:target])
    return None


# ---------------------------------------------------------------------------
# Bob strategies


class BobStrategy:
    """Chooses insertion positions; every choice must lie in [0..n]."""

    kind = "abstract"

    def choose(self, state: GameState) -> int:
        raise NotImplementedError


class LeftmostBob(BobStrategy):
    kind = "leftmost"

    def choose(self, state: GameState) -> int:
        return 0


class RightmostBob(BobStrategy):
    kind = "rightmost"

    def choose(self, state: GameState) -> int:
        return state.n


class RandomBob(BobStrategy):
    kind = "random"

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._rng = random.Random(seed)

    def choose(self, state: GameState) -> int:
        return self._rng.randrange(state.n + 1)


class InsideBiasedBob(BobStrategy):
    """Prefers a uniformly random gap strictly inside the chosen clique."""

    kind = "inside_biased"

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._rng = random.Random(seed)

    def choose(self, state: GameState) -> int:
        _, members = state.pending
        pos = state.positions()
        lo = min(pos[u] for u in members)
        hi = max(pos[u] for u in members)
        if hi > lo:
            return self._rng.randrange(lo + 1, hi + 1)
        return self._rng.randrange(state.n + 1)


def _chain_depths(spans: list[tuple[int, int]], n: int) -> list[int]:
    """depth[e] = longest nested chain of existing edges ending at e from
    the inside; computed by left-descending sweep with a prefix-max tree."""
    idx = sorted(range(len(spans)), key=lambda i: (-spans[i][0], spans[i][1]))
    depth = [0] * len(spans)
    tree = [0] * (n + 1)

    def bump(i: int, value: int) -> None:
        i += 1
        while i <= n:
            if tree[i] < value:
                tree[i] = value
            i += i & (-i)

    def best(i: int) -> int:
        out = 0
        while i > 0:
            if tree[i] > out:
                out = tree[i]
            i -= i & (-i)
        return out

    at = 0
    while at < len(idx):
        j = at
        while j < len(idx) and spans[idx[j]][0] == spans[idx[at]][0]:
            depth[idx[j]] = 1 + best(spans[idx[j]][1])
            j += 1
        for t in range(at, j):
            bump(spans[idx[t]][1], depth[idx[t]])
        at = j
    return depth


def _chain_heights(spans: list[tuple[int, int]], n: int) -> list[int]:
    """height[e] = longest nested chain starting at e and growing outward.

    Containment reverses under negating both coordinates, so heights are
    depths of the pointwise-negated (shifted) spans.
    """
    flipped = [(n - 1 - l, n - 1 - r) for l, r in spans]
    return _chain_depths(flipped, n)


def greedy_best_position(state: GameState) -> int:
    """Position minimizing the post-insertion maximum rainbow, leftmost tie.

    Inserting a vertex cannot shrink the rainbow and its new edges share an
    endpoint, so the new maximum is the old one or a chain threaded through
    a single new edge; per neighbour the inside/outside chain maxima over
    all gaps come from four linear sweeps.
    """
    if state.pending is None:
        raise IllegalMoveError("no pending vertex")
    _, members = state.pending
    pos = state.positions()
    n = state.n
    spans = []
    for u, v in state.edges():
        a, b = pos[u], pos[v]
        spans.append((a, b) if a < b else (b, a))
    depth = _chain_depths(spans, n)
    height = _chain_heights(spans, n)
    old_max = max(depth, default=0)

    best_gap = 0
    best_value = None
    candidate = [old_max] * (n + 1)
    for u in sorted(members):
        p = pos[u]
        by_r_inside: dict[int, int] = {}
        by_r_cover: dict[int, int] = {}
        by_l_inside: dict[int, int] = {}
        by_l_cover: dict[int, int] = {}
        for i, (l, r) in enumerate(spans):
            if l > p:
                by_r_inside[r] = max(by_r_inside.get(r, 0), depth[i])
            if l < p:
                by_r_cover[r] = max(by_r_cover.get(r, 0), height[i])
            if r < p:
                by_l_inside[l] = max(by_l_inside.get(l, 0), depth[i])
            if r > p:
                by_l_cover[l] = max(by_l_cover.get(l, 0), height[i])
        # gap g right of u: inside needs l > p, r < g; cover needs l < p, r >= g
        inside_right = [0] * (n + 2)
        run = 0
        for g in range(n + 1):
            if g >= 1:
                run = max(run, by_r_inside.get(g - 1, 0))
            inside_right[g] = run
        cover_right = [0] * (n + 2)
        run = 0
        for g in range(n, -1, -1):
            if g <= n - 1:
                run = max(run, by_r_cover.get(g, 0))
            cover_right[g] = run
        # gap g at or left of u: inside needs l >= g, r < p; cover l < g, r > p
        inside_left = [0] * (n + 2)
        run = 0
        for g in range(n, -1, -1):
            if g <= n - 1:
                run = max(run, by_l_inside.get(g, 0))
            inside_left[g] = run
        cover_left = [0] * (n + 2)
        run = 0
        for g in range(n + 1):
            if g >= 1:
                run = max(run, by_l_cover.get(g - 1, 0))
            cover_left[g] = run
        for g in range(n + 1):
            if g > p:
                through = inside_right[g] + 1 + cover_right[g]
            else:
                through = inside_left[g] + 1 + cover_left[g]
            if through > candidate[g]:
                candidate[g] = through
    for g in range(n + 1):
        if best_value is None or candidate[g] < best_value:
            best_value = candidate[g]
            best_gap = g
    return best_gap


class GreedyMinRainbowBob(BobStrategy):
    kind = "greedy_min_rainbow"

    def choose(self, state: GameState) -> int:
        return greedy_best_position(state)


class ReplayBob(BobStrategy):
    """Reproduces the positions recorded in a trace, verbatim."""

    kind = "replay"

    def __init__(self, trace: "GameTrace"):
        self._positions = [m.position for m in trace.moves if isinstance(m, BobMove)]
        self._at = 0

    def choose(self, state: GameState) -> int:
        if self._at >= len(self._positions):
            raise IllegalMoveError("replay exhausted")
        p = self._positions[self._at]
        self._at += 1
        return p


BUILTIN_BOB_KINDS = (
    "random",
    "greedy_min_rainbow",
    "leftmost",
    "rightmost",
    "inside_biased",
)


def make_bob(kind: str, seed: int | None = None, trace: "GameTrace | None" = None) -> BobStrategy:
    aliases = {"greedy": "greedy_min_rainbow"}
    kind = aliases.get(kind, kind)
    if kind == "leftmost":
        return LeftmostBob()
    if kind == "rightmost":
        return RightmostBob()
    if kind == "random":
        return RandomBob(seed or 0)
    if kind == "inside_biased":
        return InsideBiasedBob(seed or 0)
    if kind == "greedy_min_rainbow":
        return GreedyMinRainbowBob()
    if kind == "replay":
        if trace is None:
            raise GameError("replay strategy needs a trace")
        return ReplayBob(trace)
    raise GameError(f"unknown bob strategy {kind!r}")


# ---------------------------------------------------------------------------
# Alice


class AliceController:
    """Phase machine realizing Alice's winning strategy for k >= 2.

    All sidedness is evaluated in a virtual orientation: once 2k+1
    placements accumulate on the left instead of the right, the controller
    flips ``mirrored`` and continues with reflected comparisons, which makes
    the play reflection-equivariant.
    """

    def __init__(self, k: int):
        if k < 2:
            raise GameError("the scripted strategy needs k >= 2")
        self.k = k
        self.phase = "force_outside"
        self.chain_iteration = 0
        self.mirrored = False
        self.target: tuple[str, ...] | None = None
        self.descent_stage = 0
        self.cover_chain: list[Edge] = []
        self.pool_left: list[str] = []
        self.pool_right: list[str] = []
        self.registry: list[str] = []
        self.config: dict[str, Edge] | None = None
        self._descent_cover: Edge | None = None
        self._last_seen: str | None = None

    # -- virtual orientation helpers

    def _before(self, pos: dict[str, int], a: str, b: str) -> bool:
        return (pos[a] > pos[b]) if self.mirrored else (pos[a] < pos[b])

    def _vsorted(self, pos: dict[str, int], vs) -> list[str]:
        return sorted(vs, key=lambda v: pos[v], reverse=self.mirrored)

    # -- phase machinery

    def _reset_pools(self) -> None:
        self.pool_left = []
        self.pool_right = []

    def _descend(self, state: GameState, pos: dict[str, int], v: str) -> None:
        members = self._vsorted(pos, self.target)
        if self.descent_stage == 0:
            self._descent_cover = canonical_edge(members[0], members[-1])
            self.target = tuple(sorted(set(self.target) - {members[0]} | {v}))
            self.descent_stage = 1
        else:
            self.target = tuple(sorted(set(self.target) - {members[-1]} | {v}))
            self.descent_stage = 0
            self.cover_chain.append(self._descent_cover)
            self._descent_cover = None
            if len(self.cover_chain) >= self.k:
                raise GameAnomaly(
                    "nested cover edges reached a rainbow that went undetected"
                )
        self._reset_pools()
        if self.phase == "side_accumulate":
            self.phase = "force_outside"
        if self.phase == "exploit":
            lo, hi = self.config["left"], self.config["right"]
            inner_l = self._vsorted(pos, lo)[-1]
            inner_r = self._vsorted(pos, hi)[0]
            for t in self.target:
                if not (self._before(pos, inner_l, t) and self._before(pos, t, inner_r)):
                    raise GameAnomaly("descent escaped the winning configuration")

    def _select(self, state: GameState, pos: dict[str, int]) -> None:
        if not self.registry:
            self.registry = self._vsorted(pos, self.target)
        pool = self._vsorted(pos, self.pool_right)
        median = pool[self.k]
        if not self._before(pos, self.registry[-1], median):
            raise GameAnomaly("median not beyond the previous chain vertex")
        self.registry.append(median)
        members = self._vsorted(pos, self.target)
        self.target = tuple(sorted(members[:1] + members[2:] + [median]))
        self._reset_pools()
        self.cover_chain = []
        self.descent_stage = 0
        self._descent_cover = None
        self.chain_iteration += 1
        if self.chain_iteration >= 4:
            self._enter_exploit(state, pos)
        else:
            self.phase = "chain_extend"

    def _enter_exploit(self, state: GameState, pos: dict[str, int]) -> None:
        reg = self.registry
        if len(reg) != self.k + 4:
            raise GameAnomaly(f"chain registry has {len(reg)} entries, wanted k+4")
        for a, b in zip(reg, reg[1:]):
            if not self._before(pos, a, b):
                raise GameAnomaly("chain registry out of order")
        outer = canonical_edge(reg[0], reg[-1])
        left = canonical_edge(reg[0], reg[1])
        right = canonical_edge(reg[-2], reg[-1])
        for u, v in (outer, left, right):
            if not state.has_edge(u, v):
                raise GameAnomaly(f"configuration edge {u}-{v} missing")
        target = tuple(sorted(reg[2:self.k + 2]))
        if not state.is_clique(target):
            raise GameAnomaly("configuration clique is not a clique")
        self.config = {"outer": outer, "left": left, "right": right}
        self.target = target
        self.phase = "exploit"
        self._reset_pools()
        self.cover_chain = []
        self.descent_stage = 0
        self._descent_cover = None

    def _observe(self, state: GameState) -> None:
        if state.last_placed is None:
            return
        vertex, members = state.last_placed
        if vertex == self._last_seen:
            return
        self._last_seen = vertex
        if tuple(sorted(members)) != self.target:
            raise GameAnomaly("observed a placement on a foreign clique")
        pos = state.positions()
        tsorted = self._vsorted(pos, self.target)
        lo, hi = tsorted[0], tsorted[-1]
        inside = self._before(pos, lo, vertex) and self._before(pos, vertex, hi)
        if inside:
            if self.phase == "chain_extend":
                raise GameAnomaly(
                    "insertion left of the chain clique should have lost"
                )
            self._descend(state, pos, vertex)
            return
        went_right = self._before(pos, hi, vertex)
        if self.phase == "chain_extend" and not went_right:
            raise GameAnomaly("insertion left of the chain clique should have lost")
        if went_right:
            self.pool_right.append(vertex)
        else:
            self.pool_left.append(vertex)
        if self.phase == "force_outside":
            self.phase = "side_accumulate"
        if self.phase == "side_accumulate" or self.phase == "chain_extend":
            goal = 2 * self.k + 1
            if len(self.pool_right) >= goal:
                self._select(state, pos)
            elif len(self.pool_left) >= goal:
                if self.phase == "chain_extend":
                    raise GameAnomaly("left pool grew during chain extension")
                self.mirrored = not self.mirrored
                self.pool_left, self.pool_right = self.pool_right, self.pool_left
                self._select(state, pos)
        elif self.phase == "exploit":
            goal = 2 * self.k - 1
            if len(self.pool_left) >= goal or len(self.pool_right) >= goal:
                raise GameAnomaly(
                    "one-sided placements complete a rainbow that went undetected"
                )

    def next_clique(self, state: GameState) -> tuple[str, ...]:
        """Observe Bob's last placement, advance the phase, emit the stack."""
        if self.target is None:
            initial = sorted(state.adj)
            self.target = tuple(initial[: self.k])
            # Seed the virtual orientation from the initial order so that
            # play commutes with reflection: reversing the initial order
            # flips it, and every later decision is side-relative.
            pos = state.positions()
            self.mirrored = pos[initial[0]] > pos[initial[-1]]
        self._observe(state)
        if not state.is_clique(self.target):
            raise GameAnomaly(f"target {self.target} is not a clique")
        return self.target


def alice_next(controller: AliceController, state: GameState) -> tuple[str, ...]:
    """Alice's next k-clique; the controller updates in place."""
    return controller.next_clique(state)


def bob_next(strategy: BobStrategy, state: GameState) -> int:
    """The strategy's insertion position for the pending vertex."""
    if state.pending is None:
        raise IllegalMoveError("no pending vertex")
    return strategy.choose(state)


# ---------------------------------------------------------------------------
# Full games


@dataclass(frozen=True)
class AliceMove:
    clique: tuple[str, ...]
    vertex: str


@dataclass(frozen=True)
class BobMove:
    position: int


@dataclass(frozen=True)
class Outcome:
    kind: str  # alice_win | cap_exceeded | anomaly
    rounds: int
    witness: RainbowWitness | None = None
    description: str | None = None


@dataclass(frozen=True)
class GameTrace:
    k: int
    initial_order: tuple[str, ...]
    moves: tuple = ()
    outcome: Outcome | None = None
    final_state: GameState | None = field(default=None, compare=False)


def default_round_cap(k: int) -> int:
    return 10_000 if k <= 2 else 50_000


def run_game(
    k: int,
    bob: BobStrategy,
    *,
    round_cap: int | None = None,
    initial_order=None,
    observer=None,
) -> GameTrace:
    """Drive the scripted Alice against ``bob`` until a (k+1)-rainbow, the
    round cap, or an anomaly.  ``observer(state, controller)`` runs after
    every Alice move, before Bob places."""
    cap = default_round_cap(k) if round_cap is None else round_cap
    if cap < 1:
        raise GameError("round cap must be positive")
    state = new_game(k, initial_order)
    controller = AliceController(k)
    init = tuple(state.order)
    moves: list = []
    outcome: Outcome | None = None
    while state.round < cap:
        try:
            clique = alice_next(controller, state)
        except GameAnomaly as exc:
            outcome = Outcome("anomaly", state.round, description=str(exc))
            break
        apply_alice_move(state, clique)
        moves.append(AliceMove(clique, state.pending[0]))
        if observer is not None:
            observer(state, controller)
        position = bob_next(bob, state)
        apply_bob_move(state, position)
        moves.append(BobMove(position))
        witness = detect_rainbow(state, k + 1)
        if witness is not None:
            outcome = Outcome("alice_win", state.round, witness=witness)
            break
    if outcome is None:
        outcome = Outcome("cap_exceeded", state.round)
    return GameTrace(k, init, tuple(moves), outcome, state)


def replay_trace(trace: GameTrace) -> GameState:
    """Re-apply a trace's moves mechanically, returning the final state."""
    state = new_game(trace.k, trace.initial_order)
    for move in trace.moves:
        if isinstance(move, AliceMove):
            apply_alice_move(state, move.clique)
            if state.pending[0] != move.vertex:
                raise GameError(
                    f"replay drift: expected vertex {move.vertex}, got {state.pending[0]}"
                )
        else:
            apply_bob_move(state, move.position)
    return state
