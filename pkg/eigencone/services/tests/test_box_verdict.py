import math

import numpy as np
from django.test import SimpleTestCase

from eigencone.services.box import Box
from eigencone.services.exceptions import DimensionMismatch, InvalidBox
from eigencone.services.verdict import INCONCLUSIVE, NO, YES, Verdict, to_jsonable, vector_from_jsonable


class BoxTestCase(SimpleTestCase):
    def setUp(self):
        # (1, 2] × [0, ∞)
        self.X = Box([1, 0], [2, math.inf], [True, False], [False, False])

    def test_infinite_upper_is_open(self):
        self.assertTrue(self.X.upper_open[1])
        self.assertTrue(self.X.is_upper_closed)
        self.assertFalse(self.X.is_bounded)
        self.assertFalse(self.X.is_closed)

    def test_membership(self):
        self.assertTrue(self.X.contains([2, 5]))
        self.assertFalse(self.X.contains([1, 5]))
        self.assertTrue(self.X.contains([1 + 1e-6, 0]))
        self.assertFalse(self.X.contains([2, math.inf]))

    def test_membership_dimension(self):
        with self.assertRaises(DimensionMismatch):
            self.X.contains([1, 2, 3])

    def test_up_closure_admits_infinity(self):
        up = self.X.up_closure()
        self.assertTrue(up.contains([math.inf, 3]))
        self.assertFalse(up.contains([1, 3]))

    def test_lower_sets(self):
        self.assertEqual(self.X.lower_closed_set(), frozenset({1}))
        self.assertEqual(self.X.lower_open_set(), frozenset({0}))

    def test_strict_lower(self):
        strict = Box.closed([1, 1], [2, 2]).with_lower_open(0)
        self.assertFalse(strict.contains([1, 1]))
        self.assertTrue(strict.contains([1.5, 1]))
        self.assertIsNone(Box.point([1, 1]).with_lower_open(0))

    def test_closed_uppers(self):
        X = Box([1, 1], [2, 2], [True, False], [True, True])
        closed = X.with_closed_uppers()
        self.assertTrue(closed.is_upper_closed)
        self.assertTrue(closed.lower_open[0])
        self.assertTrue(closed.contains([2, 2]))

    def test_invalid_boxes(self):
        with self.assertRaises(InvalidBox):
            Box.closed([2], [1])
        with self.assertRaises(InvalidBox):
            Box([1], [1], [True], [False])
        with self.assertRaises(InvalidBox):
            Box.closed([-1], [1])
        with self.assertRaises(DimensionMismatch):
            Box.closed([1, 2], [3])

    def test_dict_round_trip(self):
        restored = Box.from_dict(self.X.to_dict())
        self.assertEqual(str(restored), str(self.X))
        self.assertEqual(self.X.to_dict()['upper'], [2.0, 'inf'])

    def test_str(self):
        self.assertEqual(str(self.X), '(1, 2]×[0, ∞)')


class VerdictTestCase(SimpleTestCase):
    def test_certificate_is_stored_as_json(self):
        verdict = Verdict(YES, witness=np.array([1.0, 2.0]))
        verdict.add('support', True, nodes=frozenset({2, 0}), bound=math.inf)
        entry = verdict.entries('support')[0]
        self.assertEqual(entry.data, {'nodes': [0, 2], 'bound': 'inf'})

    def test_round_trip(self):
        verdict = Verdict(NO, witness=np.array([1.0, 2.0]), counterexample=np.array([0.9, 2.0]))
        verdict.add('second-solution', True, solution=np.array([0.9, 2.0])).label('sampled')
        self.assertEqual(Verdict.from_dict(verdict.to_dict()).to_dict(), verdict.to_dict())

    def test_labels_are_unique(self):
        verdict = Verdict(INCONCLUSIVE).label('sampled').label('sampled')
        self.assertEqual(verdict.labels, ['sampled'])

    def test_unknown_decision(self):
        with self.assertRaises(ValueError):
            Verdict('maybe')

    def test_special_floats(self):
        self.assertEqual(to_jsonable([math.inf, -math.inf, 1.5]), ['inf', '-inf', 1.5])
        self.assertTrue(math.isinf(vector_from_jsonable(['inf', 1])[0]))
        self.assertIsNone(vector_from_jsonable(None))
