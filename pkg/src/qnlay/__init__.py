"""Queue layouts of k-trees, rainbow analytics, and the k-queue game."""

from .graph import (
    Graph,
    GraphError,
    InvalidScriptError,
    KTreeScript,
    NotChordalError,
    NotKTreeError,
    StackFamily,
    build_graph,
    enumerate_cliques,
    k_stack,
    min_ktree_parameter,
    random_ktree,
    recognize_ktree,
    stack_family,
)
from .ordering import (
    Edge,
    LinearOrder,
    QueueAssignment,
    QueueLayout,
    RainbowWitness,
    canonical_edge,
    nested,
)
from .analysis import (
    acyclic_coloring,
    exact_queue_number,
    is_queue,
    max_rainbow,
    max_rainbow_quadratic,
    validate_queue_layout,
    validate_track_layout,
    verify_acyclic_coloring,
)
from .partition import (
    PartitionError,
    TreePartition,
    build_tree_partition,
    validate_tree_partition,
)
from .layout import (
    LayoutAnomaly,
    interbag_color,
    layout_ktree,
    queue_bound,
    queues_from_order,
    track_bound,
    track_bound_from,
)
from .game import (
    AliceController,
    BobStrategy,
    GameAnomaly,
    GameError,
    GameState,
    GameTrace,
    IllegalMoveError,
    Outcome,
    alice_next,
    apply_alice_move,
    apply_bob_move,
    bob_next,
    default_round_cap,
    detect_rainbow,
    make_bob,
    new_game,
    replay_trace,
    run_game,
    BUILTIN_BOB_KINDS,
)
from .report import Check, Report

__version__ = "0.1.0"
