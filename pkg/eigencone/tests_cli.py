"""
Tests for the management commands and the Celery tasks.
"""
import json
import os
import tempfile
from io import StringIO
from unittest.mock import MagicMock, patch

from django.core.cache import cache
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase

from eigencone.models import Analysis
from eigencone.tasks import cleanup_old_analyses, run_analysis_task

SYMMETRIC = [[1, 0.5], [0.5, 1]]


class CommandTestCase(TestCase):
    """Base class writing problem files to a temporary directory"""

    def setUp(self):
        cache.clear()
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write_problem(self, data, name='problem.json'):
        path = os.path.join(self.tmp.name, name)
        with open(path, 'w', encoding='utf-8') as f:
            if isinstance(data, str):
                f.write(data)
            else:
                json.dump(data, f)
        return path

    def call(self, *args):
        out = StringIO()
        call_command('tropeig', *args, stdout=out)
        return out.getvalue()


class TropeigCommandTests(CommandTestCase):
    def test_eigenvalues_json(self):
        path = self.write_problem({'task': 'eigenvalues', 'matrix': SYMMETRIC})
        report = json.loads(self.call('eigenvalues', '-f', path, '--json'))
        self.assertEqual(report['decision'], 'decided')
        self.assertAlmostEqual(report['payload']['principal'], 1.0)

    def test_positional_task_wins(self):
        path = self.write_problem({'task': 'eigenvalues', 'matrix': [[2, 3], [1, 2]]})
        output = self.call('visualize', '-f', path)
        self.assertIn('task:      visualize', output)
        self.assertIn('scaling: (2.5, 1.5)', output)

    def test_x_simple_text_with_certificate(self):
        path = self.write_problem({
            'task': 'x-simple',
            'matrix': SYMMETRIC,
            'lambda': 1,
            'interval': {'lower': [0.9, 0.9], 'upper': [2, 2]},
        })
        output = self.call('x-simple', '-f', path, '--certificate', '--no-cache')
        self.assertIn('decision:  no', output)
        self.assertIn('second solution: (0.9, 2)', output)
        self.assertIn('[pass] eigencone-meets-box', output)

    def test_input_error_exit_status(self):
        path = self.write_problem('{"task": "eigenvalues"')
        with self.assertRaises(CommandError) as ctx:
            self.call('eigenvalues', '-f', path)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('ProblemFileError', str(ctx.exception))

    def test_service_error_exit_status(self):
        path = self.write_problem({'task': 'visualize', 'matrix': [[0, 1], [0, 0]]})
        with self.assertRaises(CommandError) as ctx:
            self.call('visualize', '-f', path)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('NoPositiveSubeigenvector', str(ctx.exception))

    def test_inconclusive_exit_status(self):
        path = self.write_problem({'task': 'orbit', 'matrix': [[0, 1], [1, 0]], 'vector': [1, 2]})
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('tropeig', 'orbit', '-f', path, '--orbit-steps', '4', '--json', stdout=out)
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertEqual(json.loads(out.getvalue())['decision'], 'inconclusive')

    def test_save(self):
        path = self.write_problem({'task': 'eigenvalues', 'matrix': SYMMETRIC})
        self.call('eigenvalues', '-f', path, '--save', '--seed', '9')
        analysis = Analysis.objects.get()
        self.assertEqual(analysis.task, 'eigenvalues')
        self.assertEqual(analysis.decision, 'decided')
        self.assertEqual(analysis.seed, 9)
        self.assertEqual(analysis.options_json['seed'], 9)
        self.assertEqual(analysis.report_json['decision'], 'decided')

    @patch('eigencone.management.commands.tropeig.run_analysis_task.delay')
    def test_enqueue(self, mock_delay):
        mock_delay.return_value = MagicMock(id='test-task-id')
        path = self.write_problem({'task': 'eigenvalues', 'matrix': SYMMETRIC})
        output = self.call('eigenvalues', '-f', path, '--enqueue')

        analysis = Analysis.objects.get()
        self.assertEqual(analysis.decision, 'pending')
        mock_delay.assert_called_once_with(analysis.id)
        self.assertIn('test-task-id', output)


class AnalysisTaskTests(TestCase):
    @patch('eigencone.tasks.logger')
    def test_run_analysis_task_success(self, mock_logger):
        analysis = Analysis.objects.create(
            task='robust',
            problem_json={
                'task': 'robust',
                'matrix': SYMMETRIC,
                'lambda': 1,
                'interval': {'lower': [0.9, 0.9], 'upper': [2, 2]},
            },
            options_json={'seed': 3},
        )

        result = run_analysis_task(analysis.id)
        analysis.refresh_from_db()

        self.assertEqual(result['status'], 'completed')
        self.assertEqual(result['decision'], 'no')
        self.assertEqual(analysis.decision, 'no')
        self.assertEqual(analysis.seed, 3)
        self.assertEqual(analysis.report_json['verdict']['witness'], [0.9, 2.0])

    @patch('eigencone.tasks.logger')
    def test_run_analysis_task_failure(self, mock_logger):
        analysis = Analysis.objects.create(
            task='eigenvalues',
            problem_json={'task': 'eigenvalues', 'matrix': [[1, 2]]},
        )

        result = run_analysis_task(analysis.id)
        analysis.refresh_from_db()

        self.assertEqual(result['status'], 'failed')
        self.assertEqual(analysis.decision, 'failed')
        self.assertIn('DimensionMismatch', analysis.error)

    def test_run_analysis_task_not_found(self):
        with self.assertRaises(Analysis.DoesNotExist):
            run_analysis_task(9999)

    @patch('eigencone.tasks.HISTORY_LIMIT', 2)
    def test_cleanup_keeps_latest(self):
        for _ in range(3):
            Analysis.objects.create(task='eigenvalues', problem_json={})
        result = cleanup_old_analyses()
        self.assertEqual(result, {'deleted': 1})
        self.assertEqual(Analysis.objects.count(), 2)


class PeekAnalysesTests(TestCase):
    def test_counts_and_latest(self):
        Analysis.objects.create(task='eigenvalues', problem_json={}, decision='decided')
        Analysis.objects.create(task='robust', problem_json={}, decision='no', duration_ms=12)

        out = StringIO()
        call_command('peek_analyses', '--limit', '1', stdout=out)
        output = out.getvalue()

        self.assertIn('Total runs: 2', output)
        self.assertIn('decided', output)
        self.assertIn('Latest 1:', output)
        self.assertEqual(output.count('\n- #'), 1)
