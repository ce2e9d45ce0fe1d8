import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings

from eigencone.services.box import Box
from eigencone.services.cone_geometry import (
    ConeSpan,
    box_meets_cone,
    box_meets_cone_relaxed,
    cone_points_in_box,
    in_cone,
    project,
    project_intersection,
    sample_cone_in_box,
    surrogate_upper,
)
from eigencone.services.exceptions import (
    DimensionMismatch,
    IterationLimit,
    PreconditionViolated,
    UpperOpenUnsupported,
)
from eigencone.services.tropical_core import all_close, approx_le

from .strategies import matrices, vectors

# eigencone of [[1, 0.5], [0.5, 1]] for λ = 1: ratios x_0 / x_1 in [1/2, 2]
V = ConeSpan(np.array([[1, 0.5], [0.5, 1]]))


class ProjectionTestCase(SimpleTestCase):
    def test_generators_are_fixed(self):
        np.testing.assert_allclose(V.project([1, 0.5]), [1, 0.5])
        self.assertTrue(V.contains([0.5, 1]))

    def test_projection_below(self):
        np.testing.assert_allclose(project(V, [1, 4]), [1, 2])
        self.assertFalse(in_cone(V, [1, 4]))

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            project(V, [1, 2, 3])

    @given(matrices(max_rows=3, square=False, max_cols=3), vectors(3, positive=True))
    @settings(max_examples=50, deadline=None)
    def test_idempotent_and_below(self, G, y):
        C = ConeSpan(G)
        y = y[:C.dimension]
        p = project(C, y)
        self.assertTrue(np.all(approx_le(p, y)))
        self.assertTrue(all_close(project(C, p), p))


class IntersectionTestCase(SimpleTestCase):
    def test_diagonal_meets_eigencone(self):
        diagonal = ConeSpan([[1], [1]])
        result = project_intersection([diagonal, V], [2, 3])
        self.assertTrue(result.converged)
        self.assertEqual(result.cycles, 2)
        self.assertTrue(result.is_positive)
        np.testing.assert_allclose(result.point, [2, 2])

    def test_axes_meet_at_zero(self):
        result = project_intersection([ConeSpan([[1], [0]]), ConeSpan([[0], [1]])], [1, 1])
        self.assertTrue(result.is_zero)
        self.assertFalse(result.is_positive)

    def test_needs_a_cone(self):
        with self.assertRaises(PreconditionViolated):
            project_intersection([], [1, 1])

    def test_iteration_limit(self):
        with self.assertRaises(IterationLimit):
            project_intersection([ConeSpan([[1], [1]]), V], [2, 3], max_cycles=1)


class BoxMeetsConeTestCase(SimpleTestCase):
    def test_bounded_yes(self):
        verdict = box_meets_cone(V, Box.closed([1, 1], [2, 2]))
        self.assertTrue(verdict.is_yes)
        np.testing.assert_allclose(verdict.witness, [2, 2])
        self.assertTrue(verdict.entries('projection-in-box')[0].result)

    def test_bounded_no(self):
        verdict = box_meets_cone(V, Box.closed([1, 3], [1, 4]))
        self.assertTrue(verdict.is_no)
        self.assertIsNone(verdict.witness)

    def test_unbounded(self):
        self.assertTrue(box_meets_cone(V, Box.closed([1, 1], [math.inf, math.inf])).is_yes)
        self.assertTrue(box_meets_cone(V, Box.closed([1, 3], [1, math.inf])).is_no)

    def test_surrogate_only_replaces_infinity(self):
        X = Box.closed([1, 1], [2, math.inf])
        upper = surrogate_upper(V.generators, X)
        self.assertEqual(upper[0], 2)
        self.assertGreater(upper[1], 1e6)
        np.testing.assert_array_equal(surrogate_upper(V.generators, Box.closed([1, 1], [2, 2])), [2, 2])

    def test_open_upper_rejected(self):
        X = Box([1, 1], [2, 2], [False, False], [True, False])
        with self.assertRaises(UpperOpenUnsupported):
            box_meets_cone(V, X)


class RelaxedBoxMeetsConeTestCase(SimpleTestCase):
    def test_shrunk_upper_ends(self):
        X = Box([1, 1], [2, 2], [False, False], [True, True])
        verdict = box_meets_cone_relaxed(V, X)
        self.assertTrue(verdict.is_yes)
        self.assertTrue(X.contains(verdict.witness))
        self.assertTrue(V.contains(verdict.witness))
        self.assertEqual(len(verdict.entries('shrunk-upper')), 1)

    def test_closed_hull_misses(self):
        X = Box([1, 3], [1, 4], [False, False], [False, True])
        verdict = box_meets_cone_relaxed(V, X)
        self.assertTrue(verdict.is_no)
        self.assertIn('closed-upper-hull', verdict.labels)

    def test_closed_box_delegates(self):
        self.assertTrue(box_meets_cone_relaxed(V, Box.closed([1, 1], [2, 2])).is_yes)


class ConePointSamplingTestCase(SimpleTestCase):
    def test_point_in_box_and_cone(self):
        X = Box.closed([1, 1], [2, 2])
        point = sample_cone_in_box(V, X, seed=1, samples=50)
        self.assertIsNotNone(point)
        self.assertTrue(X.contains(point))
        self.assertTrue(V.contains(point))

    def test_every_point_in_box_and_cone(self):
        X = Box([0.9, 0.9], [2, 2], [False, False], [False, True])
        points = list(cone_points_in_box(V, X, seed=2, samples=40))
        self.assertGreater(len(points), 0)
        for point in points:
            self.assertTrue(X.contains(point))
            self.assertTrue(V.contains(point))

    def test_seeded(self):
        X = Box.closed([0.5, 0.5], [3, 3])
        first = list(cone_points_in_box(V, X, seed=5, samples=20))
        second = list(cone_points_in_box(V, X, seed=5, samples=20))
        np.testing.assert_array_equal(np.array(first), np.array(second))

    def test_cone_misses_box(self):
        self.assertIsNone(sample_cone_in_box(V, Box.closed([1, 3], [1, 4]), seed=1, samples=50))


class WorkedConeTestCase(SimpleTestCase):
    def test_single_generator_projections(self):
        np.testing.assert_allclose(project(ConeSpan([[0.5], [1]]), [2, 2]), [1, 2])
        np.testing.assert_allclose(project(ConeSpan([[1], [0.5]]), [2, 2]), [2, 1])

    def test_open_lower_end_missed(self):
        X = Box([1, 1], [2, 2], [True, True], [False, False])
        self.assertTrue(box_meets_cone(ConeSpan([[0.5], [1]]), X).is_no)

    def test_eigencone_meets_box(self):
        V = ConeSpan([[1, 1.5], [0.5, 1]])
        verdict = box_meets_cone(V, Box.closed([1, 0.5], [2, 1]))
        self.assertTrue(verdict.is_yes)
        np.testing.assert_allclose(verdict.witness, [2, 1])
