import random

import pytest

from qnlay.analysis import (
    acyclic_coloring,
    exact_queue_number,
    is_queue,
    max_rainbow,
    max_rainbow_quadratic,
    validate_queue_layout,
    validate_track_layout,
    verify_acyclic_coloring,
)
from qnlay.graph import Graph, GraphError, build_graph, random_ktree
from qnlay.ordering import LinearOrder, QueueAssignment, QueueLayout
from conftest import (
    complete_graph,
    cycle_graph,
    qn_by_permutations,
    rainbow_by_subsets,
    random_graph,
)

O4 = LinearOrder(["1", "2", "3", "4"])


class TestMaxRainbow:
    def test_nested_pair(self):
        size, witness = max_rainbow(O4, [("1", "4"), ("2", "3")])
        assert size == 2
        assert witness.edges == (("1", "4"), ("2", "3"))
        assert witness.is_valid(O4)

    def test_crossing_pair(self):
        size, _ = max_rainbow(O4, [("1", "3"), ("2", "4")])
        assert size == 1

    def test_k6_witness(self):
        g = complete_graph(6)
        order = LinearOrder([str(i) for i in range(1, 7)])
        size, witness = max_rainbow(order, g.edges)
        assert size == 3
        assert witness.edges == (("1", "6"), ("2", "5"), ("3", "4"))

    def test_empty(self):
        size, witness = max_rainbow(O4, [])
        assert size == 0 and witness.size == 0

    def test_shared_endpoints_never_nest(self):
        size, _ = max_rainbow(O4, [("1", "2"), ("1", "3"), ("1", "4")])
        assert size == 1

    def test_matches_subset_oracle_small(self):
        rng = random.Random(42)
        for _ in range(60):
            g = random_graph(7, 0.5, rng)
            edges = sorted(g.edges)[:10]
            seq = [str(i) for i in range(1, 8)]
            rng.shuffle(seq)
            order = LinearOrder(seq)
            expected = rainbow_by_subsets(order, edges)
            assert max_rainbow(order, edges)[0] == expected
            assert max_rainbow_quadratic(order, edges) == expected

    def test_sweep_matches_quadratic_oracle(self):
        rng = random.Random(7)
        for _ in range(120):
            n = rng.randrange(5, 30)
            g = random_graph(n, rng.uniform(0.1, 0.8), rng)
            seq = sorted(g.vertices)
            rng.shuffle(seq)
            order = LinearOrder(seq)
            size, witness = max_rainbow(order, g.edges)
            assert size == max_rainbow_quadratic(order, g.edges)
            assert witness.size == size and witness.is_valid(order)


class TestIsQueue:
    def test_crossing_ok(self):
        ok, pair = is_queue(O4, [("1", "3"), ("2", "4")])
        assert ok and pair is None

    def test_nested_pair_reported(self):
        ok, pair = is_queue(O4, [("1", "4"), ("2", "3")])
        assert not ok
        assert set(pair) == {("1", "4"), ("2", "3")}

    def test_shared_endpoint_ok(self):
        ok, _ = is_queue(O4, [("1", "2"), ("1", "3")])
        assert ok


class TestValidateQueueLayout:
    def test_mixed_queue_fails(self):
        g = Graph(["1", "2", "3", "4"], [("1", "4"), ("2", "3")])
        layout = QueueLayout(O4, QueueAssignment({("1", "4"): 1, ("2", "3"): 1}, 1), 2)
        report = validate_queue_layout(g, layout)
        assert not report.passed
        assert any(c.name == "queues_nesting_free" and not c.ok for c in report.checks)

    def test_strict_right_endpoint(self):
        g = Graph(["1", "2", "3"], [("1", "3"), ("2", "3")])
        layout = QueueLayout(
            LinearOrder(["1", "2", "3"]),
            QueueAssignment({("1", "3"): 1, ("2", "3"): 1}, 1), 2,
        )
        assert validate_queue_layout(g, layout).passed
        strict = validate_queue_layout(g, layout, strict=True)
        assert not strict.passed
        assert any(c.name == "right_endpoints_distinct" and not c.ok
                   for c in strict.checks)

    def test_missing_edge_fails_coverage(self, triangle):
        layout = QueueLayout(
            LinearOrder(["a", "b", "c"]),
            QueueAssignment({("a", "b"): 1}, 1), 2,
        )
        report = validate_queue_layout(triangle, layout)
        assert any(c.name == "assignment_covers_edges" and not c.ok
                   for c in report.checks)


class TestExactQueueNumber:
    @pytest.mark.parametrize(
        "n,expected", [(3, 1), (4, 2), (5, 2), (6, 3), (7, 3), (8, 4)]
    )
    def test_complete_graphs(self, n, expected):
        qn, order = exact_queue_number(complete_graph(n))
        assert qn == expected
        assert max_rainbow(order, complete_graph(n).edges)[0] == qn

    def test_c5(self):
        assert exact_queue_number(cycle_graph(5))[0] == 1

    def test_matches_permutation_oracle(self):
        rng = random.Random(12)
        for _ in range(15):
            g = random_graph(6, 0.5, rng)
            assert exact_queue_number(g)[0] == qn_by_permutations(g)[0]

    def test_isomorphism_invariant(self):
        g = complete_graph(4)
        relabeled = Graph(
            ["w", "x", "y", "z"],
            [("w", "x"), ("w", "y"), ("w", "z"), ("x", "y"), ("x", "z"), ("y", "z")],
        )
        assert exact_queue_number(g)[0] == exact_queue_number(relabeled)[0]
        c5 = cycle_graph(5)
        shifted = Graph(
            [str(i) for i in range(1, 6)],
            [(str(i), str((i + 1) % 5 + 1)) for i in range(1, 6)],
        )
        assert exact_queue_number(c5)[0] == exact_queue_number(shifted)[0]

    def test_cap(self):
        with pytest.raises(GraphError):
            exact_queue_number(complete_graph(13))


class TestAcyclicColoring:
    def test_triangle_needs_three(self):
        from conftest import script
        sc = script(2, ("a", ()), ("b", ("a",)), ("c", ("a", "b")))
        colors = acyclic_coloring(sc)
        assert sorted(colors.values()) == [1, 2, 3]

    def test_path_alternates(self):
        from conftest import script
        sc = script(1, ("a", ()), ("b", ("a",)), ("c", ("b",)))
        assert acyclic_coloring(sc) == {"a": 1, "b": 2, "c": 1}

    def test_random_ktrees(self):
        for k in (1, 2, 3):
            for seed in range(4):
                sc = random_ktree(k, 150, seed)
                g = build_graph(sc)
                colors = acyclic_coloring(sc)
                assert max(colors.values()) <= k + 1
                assert verify_acyclic_coloring(g, colors).passed

    def test_verifier_catches_bichromatic_cycle(self):
        g = cycle_graph(4)
        coloring = {"1": 1, "2": 2, "3": 1, "4": 2}
        report = verify_acyclic_coloring(g, coloring)
        assert not report.passed
        assert any(c.name == "color_pairs_induce_forests" and not c.ok
                   for c in report.checks)

    def test_verifier_catches_improper(self, triangle):
        report = verify_acyclic_coloring(triangle, {"a": 1, "b": 1, "c": 2})
        assert any(c.name == "proper" and not c.ok for c in report.checks)


class TestValidateTrackLayout:
    def test_order_preserving_ok(self):
        g = Graph(["a1", "a2", "b1", "b2"], [("a1", "b1"), ("a2", "b2")])
        report = validate_track_layout(g, [["a1", "a2"], ["b1", "b2"]])
        assert report.passed

    def test_x_crossing_reported(self):
        g = Graph(["a1", "a2", "b1", "b2"], [("a1", "b2"), ("a2", "b1")])
        report = validate_track_layout(g, [["a1", "a2"], ["b1", "b2"]])
        assert not report.passed
        assert any(c.name == "no_x_crossing" and not c.ok for c in report.checks)

    def test_dependent_track_reported(self):
        g = Graph(["a1", "a2"], [("a1", "a2")])
        report = validate_track_layout(g, [["a1", "a2"]])
        assert any(c.name == "tracks_independent" and not c.ok for c in report.checks)

    def test_partition_violation(self, triangle):
        report = validate_track_layout(triangle, [["a"], ["b"]])
        assert any(c.name == "tracks_partition_vertices" and not c.ok
                   for c in report.checks)
