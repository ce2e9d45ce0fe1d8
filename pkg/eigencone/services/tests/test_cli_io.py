import json
import math
from unittest.mock import patch

from django.core.cache import cache
from django.test import SimpleTestCase

from eigencone.services import cli_io
from eigencone.services.cli_io import (
    DECIDED,
    ProblemFile,
    Report,
    RunOptions,
    cache_key,
    render_json,
    render_text,
    report_from_json,
    run,
    run_cached,
)
from eigencone.services.config import using
from eigencone.services.exceptions import DimensionMismatch, NoPositiveSubeigenvector, ProblemFileError

SYMMETRIC = [[1, 0.5], [0.5, 1]]


def problem(**fields):
    data = {'task': 'eigenvalues', 'matrix': SYMMETRIC}
    data.update(fields)
    return ProblemFile.from_dict(data)


class ProblemFileTestCase(SimpleTestCase):
    def test_parse(self):
        p = ProblemFile.loads(json.dumps({
            'task': 'x-simple',
            'matrix': SYMMETRIC,
            'lambda': 'principal',
            'interval': {'lower': [1, 1], 'upper': [2, 'inf']},
        }))
        self.assertEqual(p.task, 'x-simple')
        self.assertEqual(p.matrix.shape, (2, 2))
        self.assertTrue(math.isinf(p.interval.upper[1]))
        self.assertAlmostEqual(p.resolve_lambda(), 1.0)

    def test_task_override(self):
        p = ProblemFile.loads(json.dumps({'task': 'eigenvalues', 'matrix': SYMMETRIC}), task='visualize')
        self.assertEqual(p.task, 'visualize')

    def test_invalid_json(self):
        with self.assertRaises(ProblemFileError):
            ProblemFile.loads('{"task": ')

    def test_schema_violations(self):
        with self.assertRaises(ProblemFileError):
            ProblemFile.from_dict({'task': 'eigenvalues'})
        with self.assertRaises(ProblemFileError):
            ProblemFile.from_dict({'task': 'fly', 'matrix': SYMMETRIC})
        with self.assertRaises(ProblemFileError):
            problem(matrix=[[1, -1], [0, 1]])
        with self.assertRaises(ProblemFileError):
            problem(extra=1)

    def test_shapes(self):
        with self.assertRaises(DimensionMismatch):
            problem(matrix=[[1, 2]])
        with self.assertRaises(DimensionMismatch):
            problem(matrix=[[1, 2], [3]])
        with self.assertRaises(DimensionMismatch):
            problem(rhs=[1, 2, 3])
        with self.assertRaises(DimensionMismatch):
            problem(interval={'lower': [1], 'upper': [2]})

    def test_dimension_limit(self):
        with using(max_dimension=1):
            with self.assertRaises(ProblemFileError):
                problem()

    def test_missing_field(self):
        with self.assertRaises(ProblemFileError):
            problem().require('rhs')

    def test_missing_file(self):
        with self.assertRaises(ProblemFileError):
            ProblemFile.load('/nonexistent/problem.json')


class RunTestCase(SimpleTestCase):
    def test_eigenvalues(self):
        report = run(problem())
        self.assertEqual(report.decision, DECIDED)
        self.assertEqual(report.exit_code, 0)
        self.assertEqual(len(report.payload['eigenvalues']), 1)
        self.assertAlmostEqual(report.payload['principal'], 1.0)

    def test_eigencone(self):
        report = run(problem(task='eigencone', **{'lambda': 1}))
        self.assertEqual(report.payload['representatives'], [0, 1])

    def test_solve(self):
        report = run(problem(task='solve', rhs=[1, 1]))
        self.assertEqual(report.payload['status'], 'unique')
        report = run(problem(task='solve', rhs=[1, 2]))
        self.assertEqual(report.payload['status'], 'solvable')
        self.assertEqual(report.decision, DECIDED)

    def test_solve_in_box(self):
        report = run(problem(task='solve', rhs=[2, 1], interval={'lower': [0.9, 0.9], 'upper': [2, 2]}))
        self.assertEqual(report.decision, 'no')
        self.assertIsNotNone(report.verdict.counterexample)

    def test_x_simple(self):
        report = run(problem(task='x-simple', interval={'lower': [0.9, 0.9], 'upper': [2, 2]}))
        self.assertEqual(report.decision, 'no')
        self.assertEqual(report.exit_code, 0)

    def test_x_simple_lower_open(self):
        interval = {'lower': [1, 1], 'upper': [2, 2], 'lower_open': [True, True]}
        report = run(problem(task='x-simple', interval=interval))
        self.assertEqual(report.decision, 'yes')
        self.assertTrue(report.verdict.entries('critical-cycles'))

    def test_simple_image(self):
        report = run(problem(task='simple-image'))
        self.assertEqual(report.decision, 'yes')
        report = run(problem(task='simple-image', vector=[1, 2], interval={'lower': [1, 1], 'upper': [2, 2]}))
        self.assertEqual(report.decision, 'yes')

    def test_robust(self):
        report = run(problem(task='robust', interval={'lower': [1, 1], 'upper': [2, 2]}))
        self.assertEqual(report.decision, 'yes')

    def test_orbit_inconclusive(self):
        p = problem(task='orbit', matrix=[[0, 1], [1, 0]], vector=[1, 2])
        report = run(p, RunOptions(orbit_steps=5))
        self.assertEqual(report.decision, 'inconclusive')
        self.assertEqual(report.exit_code, 2)
        self.assertEqual(report.payload['horizon'], 5)

    def test_visualize_acyclic(self):
        with self.assertRaises(NoPositiveSubeigenvector):
            run(problem(task='visualize', matrix=[[0, 1], [0, 0]]))

    def test_options_recorded(self):
        report = run(problem(), RunOptions(tolerance=1e-6, seed=5))
        self.assertEqual(report.seed, 5)
        self.assertEqual(report.tolerance, 1e-6)


class RenderTestCase(SimpleTestCase):
    def setUp(self):
        self.report = run(problem(task='x-simple', interval={'lower': [0.9, 0.9], 'upper': [2, 2]}))

    def test_text(self):
        text = render_text(self.report)
        self.assertIn('decision:  no', text)
        self.assertIn('witness: (1, 2)', text)
        self.assertIn('second solution: (0.9, 2)', text)
        self.assertNotIn('certificate:', text)
        self.assertIn('certificate:', render_text(self.report, certificate=True))

    def test_json(self):
        restored = report_from_json(render_json(self.report))
        self.assertEqual(restored.to_dict(), self.report.to_dict())
        self.assertEqual(restored.verdict.decision, 'no')

    def test_infinite_values(self):
        report = Report('solve', DECIDED, payload={'gamma_star': [math.inf, 1.0]})
        self.assertIn('gamma_star: (∞, 1)', render_text(report))
        self.assertEqual(json.loads(render_json(report))['payload']['gamma_star'], ['inf', 1.0])


class CacheTestCase(SimpleTestCase):
    def setUp(self):
        cache.clear()

    def test_key_depends_on_options(self):
        p = problem()
        self.assertEqual(cache_key(p, RunOptions()), cache_key(problem(), RunOptions()))
        self.assertNotEqual(cache_key(p, RunOptions()), cache_key(p, RunOptions(seed=1)))

    def test_second_run_is_cached(self):
        p = problem()
        with patch.object(cli_io, 'run', wraps=cli_io.run) as mock_run:
            first = run_cached(p)
            second = run_cached(p)
        self.assertEqual(mock_run.call_count, 1)
        self.assertEqual(first.to_dict(), second.to_dict())
