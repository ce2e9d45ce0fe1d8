import numpy as np
from django.test import SimpleTestCase

from eigencone.services.digraph import (
    Digraph,
    cover_without_node,
    from_matrix,
    ingoing_sets,
    is_single_cycle,
    is_strongly_connected,
    reachable_from,
    reaching,
    restrict,
    scc,
    to_matrix,
)
from eigencone.services.exceptions import NotStronglyConnected, PreconditionViolated


class DigraphTestCase(SimpleTestCase):
    def setUp(self):
        # 0 -> 1 -> 2 -> 1, loop on 0
        self.A = np.array([
            [1, 2, 0],
            [0, 0, 3],
            [0, 4, 0],
        ], dtype=float)
        self.D = from_matrix(self.A)

    def test_edges_follow_positive_entries(self):
        self.assertEqual(self.D.edge_set(), frozenset({(0, 0), (0, 1), (1, 2), (2, 1)}))
        self.assertEqual(self.D.edges[(2, 1)], 4.0)
        self.assertEqual(self.D.successors(0), frozenset({0, 1}))
        self.assertEqual(self.D.predecessors(1), frozenset({0, 2}))

    def test_round_trip_to_matrix(self):
        np.testing.assert_array_equal(to_matrix(self.D, 3), self.A)

    def test_components_ordered_by_smallest_node(self):
        decomposition = scc(self.D)
        self.assertEqual(decomposition.components, (frozenset({0}), frozenset({1, 2})))
        self.assertEqual(decomposition.component_of, {0: 0, 1: 1, 2: 1})

    def test_restrict(self):
        sub = restrict(self.D, {1, 2})
        self.assertEqual(sub.edge_set(), frozenset({(1, 2), (2, 1)}))
        self.assertTrue(is_strongly_connected(sub))
        self.assertTrue(is_single_cycle(sub))

    def test_restrict_unknown_nodes(self):
        with self.assertRaises(PreconditionViolated):
            restrict(self.D, {5})

    def test_edge_outside_node_set(self):
        with self.assertRaises(PreconditionViolated):
            Digraph(frozenset({0}), {(0, 1): 1.0})

    def test_lone_node_needs_loop(self):
        self.assertTrue(is_strongly_connected(restrict(self.D, {0})))
        self.assertFalse(is_strongly_connected(restrict(self.D, {1})))
        self.assertFalse(is_strongly_connected(Digraph(frozenset())))

    def test_reachability(self):
        self.assertEqual(reachable_from(self.D, {1}), frozenset({1, 2}))
        self.assertEqual(reaching(self.D, {1}), frozenset({0, 1, 2}))
        self.assertEqual(reaching(self.D, {0}), frozenset({0}))

    def test_ingoing_sets(self):
        self.assertEqual(ingoing_sets(self.D), {
            0: frozenset({0}),
            1: frozenset({0, 2}),
            2: frozenset({1}),
        })

    def test_deep_chain_does_not_recurse(self):
        n = 3000
        edges = {(i, i + 1): 1.0 for i in range(n - 1)}
        edges[(n - 1, 0)] = 1.0
        D = Digraph(frozenset(range(n)), edges)
        self.assertEqual(len(scc(D)), 1)


class CoverWithoutNodeTestCase(SimpleTestCase):
    def test_single_cycle_has_no_spare_node(self):
        D = from_matrix([[0, 1], [1, 0]])
        self.assertTrue(is_single_cycle(D))
        self.assertIsNone(cover_without_node(D))

    def test_complete_graph(self):
        D = from_matrix([[1, 1], [1, 1]])
        self.assertFalse(is_single_cycle(D))
        self.assertEqual(cover_without_node(D), 0)

    def test_cycle_with_chord(self):
        # 0 -> 1 -> 2 -> 0 plus the chord 0 -> 2
        D = from_matrix([[0, 1, 1], [0, 0, 1], [1, 0, 0]])
        self.assertFalse(is_single_cycle(D))
        self.assertEqual(cover_without_node(D), 1)

    def test_requires_strong_connectivity(self):
        with self.assertRaises(NotStronglyConnected):
            cover_without_node(from_matrix([[0, 1], [0, 0]]))
