import random

import pytest

from qnlay.analysis import exact_queue_number, is_queue, max_rainbow, validate_queue_layout
from qnlay.graph import Graph, GraphError, NotKTreeError, build_graph, random_ktree, stack_family
from qnlay.layout import (
    interbag_color,
    layout_ktree,
    queue_bound,
    queues_from_order,
    track_bound,
    track_bound_from,
)
from qnlay.ordering import LinearOrder
from conftest import complete_graph, cycle_graph, random_graph, script


class TestBounds:
    @pytest.mark.parametrize("k,expected", [(0, 0), (1, 1), (2, 3), (3, 7), (5, 31)])
    def test_queue_bound(self, k, expected):
        assert queue_bound(k) == expected

    def test_track_bound_values(self):
        assert track_bound(1) == 4
        assert track_bound(2) == 108

    def test_track_bound_identity(self):
        for k in range(11):
            assert track_bound(k) == track_bound_from(k + 1, 2 ** k - 1)

    def test_track_bound_from(self):
        assert track_bound_from(3, 3) == 108


class TestInterbagColor:
    def test_rule(self):
        assert interbag_color(True, None, 3) == 7
        assert interbag_color(False, 2, 3) == 5
        assert interbag_color(True, None, 0) == 1

    def test_missing_color_rejected(self):
        with pytest.raises(ValueError):
            interbag_color(False, None, 3)

    def test_out_of_palette_rejected(self):
        with pytest.raises(ValueError):
            interbag_color(False, 4, 3)


class TestLayoutKTree:
    def test_path_single_queue(self, path3):
        layout = layout_ktree(path3, 1)
        assert list(layout.order.sequence) == ["a", "b", "c"]
        assert layout.assignment.queue_of == {("a", "b"): 1, ("b", "c"): 1}
        assert layout.used_queue_count() == 1

    def test_triangle_hand_trace(self, triangle):
        layout = layout_ktree(triangle, 2)
        assert list(layout.order.sequence) == ["a", "b", "c"]
        assert layout.assignment.queue_of == {
            ("b", "c"): 1, ("a", "b"): 3, ("a", "c"): 3,
        }
        assert validate_queue_layout(triangle, layout, strict=True).passed

    def test_non_ktree_rejected(self):
        with pytest.raises(NotKTreeError):
            layout_ktree(complete_graph(4), 2)

    def test_random_ktrees_validate_strict(self):
        for k in (1, 2, 3, 4, 5):
            for seed in range(3):
                g = build_graph(random_ktree(k, 300, seed))
                layout = layout_ktree(g, k)
                report = validate_queue_layout(g, layout, strict=True)
                assert report.passed, f"k={k} seed={seed}\n{report}"
                assert layout.used_queue_count() <= queue_bound(k)

    def test_large_instance(self):
        g = build_graph(random_ktree(4, 2000, 2))
        layout = layout_ktree(g, 4)
        assert validate_queue_layout(g, layout, strict=True).passed

    def test_layout_rainbow_within_bound(self):
        for k in (2, 3, 4):
            g = build_graph(random_ktree(k, 150, k))
            layout = layout_ktree(g, k)
            size, _ = max_rainbow(layout.order, g.edges)
            assert size <= queue_bound(k)

    def test_disconnected_components_share_queues(self):
        g = Graph(
            ["a", "b", "c", "x", "y", "z"],
            [("a", "b"), ("a", "c"), ("b", "c"), ("x", "y"), ("x", "z"), ("y", "z")],
        )
        layout = layout_ktree(g, 2)
        # Components sit side by side, ordered by smallest token.
        assert list(layout.order.sequence)[:3] == ["a", "b", "c"]
        assert layout.used_queue_count() <= queue_bound(2)
        assert validate_queue_layout(g, layout, strict=True).passed

    def test_root_override(self, two_tree_5):
        default = layout_ktree(two_tree_5, 2)
        rooted = layout_ktree(two_tree_5, 2, root="e")
        assert default.order.sequence[0] == "a"
        assert rooted.order.sequence[0] == "e"
        assert validate_queue_layout(two_tree_5, rooted, strict=True).passed

    def test_trace_emitted(self, two_tree_5):
        layout = layout_ktree(two_tree_5, 2, collect_trace=True)
        depths = [ev["depth"] for ev in layout.trace if "depth" in ev]
        assert depths == sorted(depths) and depths[0] == 0
        colored = [ev for ev in layout.trace if "edge" in ev]
        assert colored  # interbag decisions present

    def test_layout_never_beats_exact(self):
        # The construction upper-bounds the optimum on small instances.
        rng = random.Random(3)
        for k in (1, 2, 3):
            for seed in range(6):
                n = rng.randrange(4, 11)
                g = build_graph(random_ktree(k, n, seed))
                layout = layout_ktree(g, k)
                qn, _ = exact_queue_number(g)
                assert qn <= layout.used_queue_count()

    def test_stack_family_bridge(self):
        fam = stack_family(2, 1)
        g0, g1 = fam.graphs
        qn0, _ = exact_queue_number(g0)
        qn1, _ = exact_queue_number(g1)
        assert (qn0, qn1) == (1, 2)  # frozen from the permutation oracle
        assert qn0 <= qn1
        assert qn1 <= layout_ktree(g1, 2).used_queue_count()

    def test_interbag_nesting_locality(self):
        # Nested interbag edges must have their left endpoints in one bag.
        from qnlay.partition import build_tree_partition

        for seed in range(4):
            g = build_graph(random_ktree(3, 40, seed))
            layout = layout_ktree(g, 3)
            tp = build_tree_partition(g, 3, min(g.vertices))
            bag_of = {v: x for x, bag in tp.bags.items() for v in bag}
            interbag = [e for e in g.edges if bag_of[e[0]] != bag_of[e[1]]]
            pos = layout.order.position
            for i, e in enumerate(interbag):
                for f in interbag[i + 1:]:
                    a1, b1 = sorted((pos[e[0]], pos[e[1]]))
                    a2, b2 = sorted((pos[f[0]], pos[f[1]]))
                    if a1 < a2 and b2 < b1 or a2 < a1 and b1 < b2:
                        left_e = layout.order.sequence[min(a1, a2)]
                        u = layout.order.sequence[a1]
                        v = layout.order.sequence[a2]
                        assert bag_of[u] == bag_of[v], (e, f)


class TestQueuesFromOrder:
    def test_nested_pair_convention(self):
        g = Graph(["1", "2", "3", "4"], [("1", "4"), ("2", "3")])
        qa = queues_from_order(g, LinearOrder(["1", "2", "3", "4"]))
        assert qa.queue_of == {("2", "3"): 1, ("1", "4"): 2}
        assert qa.queue_count == 2

    def test_crossing_share_queue(self):
        g = Graph(["1", "2", "3", "4"], [("1", "3"), ("2", "4")])
        qa = queues_from_order(g, LinearOrder(["1", "2", "3", "4"]))
        assert set(qa.queue_of.values()) == {1}

    def test_k4_matches_rainbow(self):
        g = complete_graph(4)
        order = LinearOrder(sorted(g.vertices))
        qa = queues_from_order(g, order)
        assert qa.queue_count == max_rainbow(order, g.edges)[0] == 2

    def test_rejects_partial_order(self, triangle):
        with pytest.raises(GraphError):
            queues_from_order(triangle, LinearOrder(["a", "b"]))

    def test_tight_and_queue_valid_on_random_pairs(self):
        rng = random.Random(99)
        for _ in range(150):
            n = rng.randrange(2, 25)
            g = random_graph(n, rng.uniform(0.1, 0.9), rng)
            seq = sorted(g.vertices)
            rng.shuffle(seq)
            order = LinearOrder(seq)
            qa = queues_from_order(g, order)
            assert qa.queue_count == max_rainbow(order, g.edges)[0]
            for q, edges in qa.by_queue().items():
                ok, pair = is_queue(order, edges)
                assert ok, (q, pair)
