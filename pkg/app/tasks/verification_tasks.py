"""
Celery tasks for verification runs.

These tasks run the check pipeline in the background, updating job progress
after every finished check.
"""

from celery import shared_task
from celery.utils.log import get_task_logger

from app.models import Job
from app.schubert.catalog import MatroidDocument
from app.schubert.exceptions import SchubertError
from app.schubert.pipeline import PipelineOptions

logger = get_task_logger(__name__)


@shared_task(bind=True, name='app.tasks.verification_tasks.run_verification_async')
def run_verification_async(self, job_id, document, options):
    """
    Verify one matroid in the background.

    Args:
        self: Celery task instance (bound)
        job_id: Job ID (also the Celery task ID)
        document: MatroidDocument dict
        options: PipelineOptions fields as a dict

    Returns:
        Dict with success and the report's pass flag
    """
    from app.checks import run_checks

    job = Job.query.filter_by(job_id=self.request.id or job_id).first()
    if not job:
        return {'success': False, 'error': 'Job not found in database'}

    try:
        job.record_check(0)

        def progress_callback(processed, total, slug):
            """Record each finished check on the job"""
            logger.info("Job %s: %s finished (%d/%d)", job_id, slug, processed, total)
            job.record_check(processed, slug)

        matroid = MatroidDocument.from_dict(document).to_matroid()
        report = run_checks(matroid, PipelineOptions(**options), progress_callback)

        job.complete(report.to_dict())

        return {'success': True, 'passed': report.passed}

    except SchubertError as e:
        logger.error("Job %s failed: %s", job_id, e.message)
        job.fail(e.message)
        return {'success': False, 'error': e.message}

    except Exception as e:
        logger.exception("Job %s crashed", job_id)
        job.fail(str(e))
        return {'success': False, 'error': str(e)}
