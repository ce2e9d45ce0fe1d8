import logging
import time

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from eigencone.models import Analysis
from eigencone.services.cli_io import TASKS, ProblemFile, RunOptions, render_json, render_text, run, run_cached
from eigencone.services.exceptions import TropicalError
from eigencone.tasks import run_analysis_task

logger = logging.getLogger(__name__)

EXIT_INPUT_ERROR = 1
EXIT_INCONCLUSIVE = 2


class Command(BaseCommand):
    help = 'Run a tropical eigencone task on a JSON problem file'

    def add_arguments(self, parser):
        parser.add_argument('task', choices=TASKS, help='Task to run')
        parser.add_argument('-f', '--file', required=True, help='Path to the JSON problem file')
        parser.add_argument('--json', action='store_true', help='Print the full report as JSON')
        parser.add_argument('--tolerance', type=float, help='Relative tolerance in the log domain')
        parser.add_argument('--seed', type=int, help='Seed for every sampling fallback')
        parser.add_argument('--max-coverings', type=int, help='Limit on enumerated minimal coverings')
        parser.add_argument('--orbit-steps', type=int, help='Horizon for orbit simulation')
        parser.add_argument('--certificate', action='store_true', help='Include the certificate trail in text output')
        parser.add_argument('--save', action='store_true', help='Store the run in the analysis history')
        parser.add_argument('--enqueue', action='store_true', help='Store the problem and run it as a Celery task')
        parser.add_argument('--no-cache', action='store_true', help='Bypass the report cache')

    def handle(self, *args, **options):
        run_options = RunOptions(
            tolerance=options['tolerance'],
            seed=options['seed'],
            max_coverings=options['max_coverings'],
            orbit_steps=options['orbit_steps'],
            certificate=options['certificate'],
        )

        try:
            problem = ProblemFile.load(options['file'], task=options['task'])
            if options['enqueue']:
                self.enqueue(problem, run_options)
                return
            start_time = time.time()
            if options['no_cache']:
                report = run(problem, run_options)
            else:
                report = run_cached(problem, run_options, timeout=settings.CACHE_TTL)
            duration_ms = int((time.time() - start_time) * 1000)
        except TropicalError as e:
            logger.error(f"{options['task']} failed: {type(e).__name__}: {e}")
            raise CommandError(f"{type(e).__name__}: {e}", returncode=EXIT_INPUT_ERROR)
        except Exception as e:
            logger.exception(f"Unexpected failure in {options['task']}")
            raise CommandError(f"{type(e).__name__}: {e}", returncode=EXIT_INPUT_ERROR)

        if options['save']:
            analysis = Analysis.objects.create(
                task=problem.task,
                problem_json=problem.raw,
                options_json=run_options.to_dict(),
                report_json=report.to_dict(),
                decision=report.decision,
                seed=report.seed,
                tolerance=report.tolerance,
                duration_ms=duration_ms,
            )
            logger.info(f"Saved Analysis #{analysis.id}")

        if options['json']:
            self.stdout.write(render_json(report))
        else:
            self.stdout.write(render_text(report, certificate=options['certificate']), ending='')

        if report.exit_code == EXIT_INCONCLUSIVE:
            raise CommandError(f"{problem.task}: inconclusive", returncode=EXIT_INCONCLUSIVE)

    def enqueue(self, problem: ProblemFile, run_options: RunOptions):
        analysis = Analysis.objects.create(
            task=problem.task,
            problem_json=problem.raw,
            options_json=run_options.to_dict(),
        )
        result = run_analysis_task.delay(analysis.id)
        self.stdout.write(
            self.style.SUCCESS(f'Queued Analysis #{analysis.id} (task id {result.id})')
        )
