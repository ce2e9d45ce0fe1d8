import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings

from eigencone.services.box import Box
from eigencone.services.exceptions import (
    CoveringLimitExceeded,
    DimensionMismatch,
    PreconditionViolated,
    Unsolvable,
)
from eigencone.services.one_sided import (
    analyze,
    column_deleted,
    construct_solution,
    gamma_star,
    in_simple_image,
    in_span,
    m_sets,
    minimal_coverings,
    projection,
    residual_ok,
    solution_description,
)
from eigencone.services.oracle import brute_unique_in_box
from eigencone.services.tropical_core import all_close, approx_le, mat_vec

from .strategies import matrices, vectors

SYMMETRIC = np.array([[1, 0.5], [0.5, 1]])


class GammaStarTestCase(SimpleTestCase):
    def test_values(self):
        np.testing.assert_allclose(gamma_star([[1, 2], [3, 0]], [6, 3]), [1, 3])

    def test_zero_column_is_infinite(self):
        gamma = gamma_star([[1, 0], [1, 0]], [1, 1])
        self.assertEqual(gamma[0], 1)
        self.assertTrue(math.isinf(gamma[1]))
        self.assertEqual(m_sets([[1, 0], [1, 0]], [1, 1])[1], frozenset())

    def test_row_count_must_match(self):
        with self.assertRaises(DimensionMismatch):
            gamma_star([[1, 2]], [1, 2])

    def test_m_sets(self):
        self.assertEqual(m_sets([[1, 2], [3, 0]], [6, 3]), (frozenset({1}), frozenset({0})))

    def test_zero_rhs_gives_zero_bound(self):
        np.testing.assert_array_equal(gamma_star(SYMMETRIC, [0, 1]), [0, 0])


class AnalyzeTestCase(SimpleTestCase):
    def test_unique(self):
        analysis = analyze([[1, 2], [3, 0]], [6, 3])
        self.assertTrue(analysis.solvable)
        self.assertTrue(analysis.unique)
        self.assertEqual(analysis.removable_columns(), ())

    def test_solvable_not_unique(self):
        analysis = analyze(SYMMETRIC, [1, 2])
        self.assertTrue(analysis.solvable)
        self.assertFalse(analysis.unique)
        self.assertEqual(analysis.removable_columns(), (0,))

    def test_unsolvable(self):
        analysis = analyze([[1, 0], [0, 0]], [1, 1])
        self.assertFalse(analysis.solvable)
        self.assertFalse(analysis.unique)

    def test_simple_image(self):
        self.assertTrue(in_simple_image(SYMMETRIC, [1, 1]))
        self.assertFalse(in_simple_image(SYMMETRIC, [1, 2]))

    @given(matrices(max_rows=3, square=False, max_cols=3), vectors(3))
    @settings(max_examples=50, deadline=None)
    def test_image_points_are_solvable(self, A, x):
        x = x[:A.shape[1]]
        if x.shape[0] < A.shape[1]:
            return
        b = mat_vec(A, x)
        analysis = analyze(A, b)
        self.assertTrue(analysis.solvable)
        gamma = analysis.gamma_star
        self.assertTrue(np.all(approx_le(x, gamma)))
        self.assertTrue(all_close(projection(A, b), b))

    @given(matrices(max_rows=3, square=False, max_cols=3), vectors(3))
    @settings(max_examples=50, deadline=None)
    def test_agrees_with_grid_search(self, A, b):
        b = b[:A.shape[0]]
        if b.shape[0] < A.shape[0]:
            return
        analysis = analyze(A, b)
        count = brute_unique_in_box(A, b, Box.orthant(A.shape[1]), resolution=2)
        self.assertEqual(analysis.solvable, count >= 1)
        if analysis.solvable:
            self.assertEqual(analysis.unique, count == 1)


class CoveringTestCase(SimpleTestCase):
    def test_minimal_coverings(self):
        sets = [frozenset({0, 1}), frozenset({0}), frozenset({1})]
        coverings = minimal_coverings(sets, frozenset({0, 1}))
        self.assertEqual(coverings, (frozenset({0}), frozenset({1, 2})))

    def test_empty_target(self):
        self.assertEqual(minimal_coverings([frozenset({0})], frozenset()), (frozenset(),))

    def test_limit(self):
        sets = [frozenset({0, 1}), frozenset({0}), frozenset({1})]
        with self.assertRaises(CoveringLimitExceeded):
            minimal_coverings(sets, frozenset({0, 1}), limit=1)

    def test_no_covering(self):
        self.assertEqual(minimal_coverings([frozenset({0})], frozenset({0, 1})), ())


class SolutionDescriptionTestCase(SimpleTestCase):
    def setUp(self):
        self.description = solution_description(SYMMETRIC, [1, 2])

    def test_coverings(self):
        self.assertEqual(self.description.minimal_coverings, (frozenset({1}),))
        self.assertEqual(self.description.constraints(frozenset({1})), {
            'fixed': {1: 2.0},
            'bounded': {0: 1.0},
        })

    def test_membership(self):
        self.assertTrue(self.description.contains([0.5, 2]))
        self.assertTrue(self.description.contains([0, 2]))
        self.assertFalse(self.description.contains([1, 1]))
        self.assertFalse(self.description.contains([1, 3]))

    def test_unsolvable(self):
        with self.assertRaises(Unsolvable):
            solution_description([[1, 0], [0, 0]], [1, 1])


class ColumnsAndSpanTestCase(SimpleTestCase):
    def test_column_deleted(self):
        np.testing.assert_array_equal(column_deleted(SYMMETRIC, 0), [[0.5], [1]])
        with self.assertRaises(PreconditionViolated):
            column_deleted(SYMMETRIC, 2)

    def test_projection(self):
        np.testing.assert_allclose(projection([[1], [1]], [2, 3]), [2, 2])
        self.assertFalse(in_span([[1], [1]], [2, 3]))
        self.assertTrue(in_span([[1], [1]], [2, 2]))

    def test_construct_solution(self):
        x = construct_solution(SYMMETRIC, [1, 2], {1}, {0: 0.5})
        np.testing.assert_allclose(x, [0.5, 2])
        self.assertTrue(residual_ok(SYMMETRIC, x, [1, 2]))

    def test_construct_solution_preconditions(self):
        with self.assertRaises(PreconditionViolated):
            construct_solution(SYMMETRIC, [1, 2], {0})
        with self.assertRaises(PreconditionViolated):
            construct_solution(SYMMETRIC, [1, 2], {1}, {0: 1.5})


class WorkedSystemTestCase(SimpleTestCase):
    A = np.array([[2, 3], [1, 2]])

    def test_principal_solution(self):
        np.testing.assert_allclose(gamma_star(self.A, [2, 1]), [1, 0.5])
        self.assertEqual(m_sets(self.A, [2, 1]), (frozenset({0, 1}), frozenset({1})))

    def test_first_column_covers_alone(self):
        analysis = analyze(self.A, [2, 1])
        self.assertTrue(analysis.solvable)
        self.assertFalse(analysis.unique)
        self.assertFalse(in_simple_image(self.A, [2, 1]))
        self.assertTrue(in_span(column_deleted(self.A, 1), [2, 1]))

    def test_identity(self):
        np.testing.assert_allclose(gamma_star(np.eye(3), [1, 2, 3]), [1, 2, 3])
        self.assertTrue(analyze(np.eye(3), [1, 2, 3]).unique)
        self.assertEqual(m_sets(np.eye(2), [0, 0]), (frozenset(), frozenset()))
