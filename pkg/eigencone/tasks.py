"""
Celery tasks for asynchronous processing.
"""
from celery import shared_task
import logging
import time

logger = logging.getLogger(__name__)

HISTORY_LIMIT = 1000


@shared_task(bind=True, name='eigencone.run_analysis_task')
def run_analysis_task(self, analysis_id: int):
    """
    Run a stored problem and record its report.

    Args:
        analysis_id: ID of the Analysis model instance

    Returns:
        dict with the decision and the report
    """
    from eigencone.models import Analysis
    from eigencone.services.cli_io import ProblemFile, RunOptions, run
    from eigencone.services.exceptions import TropicalError

    try:
        analysis = Analysis.objects.get(id=analysis_id)
    except Analysis.DoesNotExist:
        logger.error(f"Analysis #{analysis_id} not found")
        raise

    logger.info(f"Starting {analysis.task} task for Analysis #{analysis_id}")
    if self.request.id:
        self.update_state(state='STARTED', meta={'status': f'Running {analysis.task}...'})
    start_time = time.time()

    try:
        problem = ProblemFile.from_dict(analysis.problem_json)
        options = RunOptions(**analysis.options_json)
        report = run(problem, options)
    except TropicalError as e:
        logger.error(f"Analysis #{analysis_id} failed: {type(e).__name__}: {e}")
        analysis.decision = 'failed'
        analysis.error = f"{type(e).__name__}: {e}"
        analysis.duration_ms = int((time.time() - start_time) * 1000)
        analysis.save()
        return {'analysis_id': analysis_id, 'status': 'failed', 'error': analysis.error}

    analysis.report_json = report.to_dict()
    analysis.decision = report.decision
    analysis.seed = report.seed
    analysis.tolerance = report.tolerance
    analysis.duration_ms = int((time.time() - start_time) * 1000)
    analysis.save()

    logger.info(f"Analysis #{analysis_id} finished in {analysis.duration_ms}ms: {report.decision}")
    return {
        'analysis_id': analysis_id,
        'status': 'completed',
        'decision': report.decision,
        'duration_ms': analysis.duration_ms,
        'report': analysis.report_json,
    }


@shared_task(name='eigencone.cleanup_old_analyses')
def cleanup_old_analyses():
    """
    Periodic task to cleanup old analysis records.
    Keeps last 1000 analyses.
    """
    from eigencone.models import Analysis

    try:
        total_count = Analysis.objects.count()
        if total_count > HISTORY_LIMIT:
            keep_ids = list(Analysis.objects.values_list('id', flat=True)[:HISTORY_LIMIT])
            deleted_count, _ = Analysis.objects.exclude(id__in=keep_ids).delete()
            logger.info(f"Cleaned up {deleted_count} old analysis records")
            return {'deleted': deleted_count}
        return {'deleted': 0}
    except Exception as e:
        logger.error(f"Cleanup task failed: {str(e)}")
        raise
