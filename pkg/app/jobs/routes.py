"""
Routes for job monitoring and management.
"""

from flask import current_app, jsonify, request

from app import db
from app.jobs import jobs_bp
from app.models import Job

JOBS_PER_PAGE = 20


@jobs_bp.route('/')
def index():
    """
    List jobs, newest first, filtered by status, tool and verdict.
    """
    status_filter = request.args.get('status', 'all')
    tool_filter = request.args.get('tool', 'all')
    passed_filter = request.args.get('passed', 'all').lower()
    page = request.args.get('page', 1, type=int)

    query = Job.query

    if status_filter != 'all':
        query = query.filter_by(status=status_filter)

    if tool_filter != 'all':
        query = query.filter_by(tool_slug=tool_filter)

    if passed_filter in ('true', 'false'):
        query = query.filter_by(passed=passed_filter == 'true')

    jobs = query.order_by(Job.created_at.desc()).paginate(
        page=page,
        per_page=JOBS_PER_PAGE,
        error_out=False
    )

    return jsonify({
        'jobs': [job.to_dict() for job in jobs.items],
        'page': jobs.page,
        'pages': jobs.pages,
        'total': jobs.total
    })


@jobs_bp.route('/<int:job_id>/status')
def job_status_api(job_id):
    """
    Current job status, including the report once the job completed.
    """
    job = db.get_or_404(Job, job_id)
    data = job.to_dict()
    data['result'] = job.get_report()
    return jsonify(data)


@jobs_bp.route('/<int:job_id>/cancel', methods=['POST'])
def cancel_job(job_id):
    job = db.get_or_404(Job, job_id)

    if job.is_finished:
        return jsonify({'success': False, 'message': f'Job is already {job.status} and cannot be cancelled.'}), 409

    # Eager tasks have already run; there is no worker to revoke from
    if not current_app.config.get('CELERY_TASK_ALWAYS_EAGER'):
        try:
            from celery_app import celery

            celery.control.revoke(job.job_id, terminate=True)
        except Exception:
            current_app.logger.exception("Could not revoke task %s", job.job_id)

    job.cancel()
    return jsonify({'success': True, 'message': f'Job #{job.id} has been cancelled.'})


@jobs_bp.route('/<int:job_id>/delete', methods=['POST'])
def delete_job(job_id):
    """
    Delete a finished job record.
    """
    job = db.get_or_404(Job, job_id)

    if not job.is_finished:
        return jsonify({'success': False, 'message': 'Cannot delete a pending or running job. Cancel it first.'}), 409

    db.session.delete(job)
    db.session.commit()
    return jsonify({'success': True, 'message': f'Job #{job_id} has been deleted.'})
