from dataclasses import asdict

from app.models import Job
from app.schubert.catalog import MatroidDocument, catalog_matroid
from app.schubert.pipeline import PipelineOptions
from app.tasks.verification_tasks import run_verification_async


def _document(name):
    return MatroidDocument.from_matroid(catalog_matroid(name)).to_dict()


def test_task_completes_job(app):
    job = Job.create_job('task-ok', 'verify', 2, matroid_name='ex82')
    options = asdict(PipelineOptions(checks=['whitney-identity', 'coextension-identity']))
    outcome = run_verification_async.apply(args=['task-ok', _document('ex82'), options], task_id='task-ok').get()
    assert outcome == {'success': True, 'passed': True}

    job = Job.query.filter_by(job_id='task-ok').first()
    assert job.status == 'completed'
    assert job.checks_done == 2
    assert job.passed is True
    assert job.current_check == 'coextension-identity'
    assert job.get_report()['whitney'] == [1, 2, 1]


def test_task_fails_job_on_bad_document(app):
    Job.create_job('task-bad', 'verify', 1)
    document = {'name': 'broken', 'ground_set': ['1'], 'bases': []}
    outcome = run_verification_async.apply(args=['task-bad', document, asdict(PipelineOptions())],
                                           task_id='task-bad').get()
    assert not outcome['success']

    job = Job.query.filter_by(job_id='task-bad').first()
    assert job.status == 'failed'
    assert 'basis' in job.error_message


def test_task_without_job_record(app):
    outcome = run_verification_async.apply(args=['missing', _document('U(1,1)'), asdict(PipelineOptions())],
                                           task_id='missing').get()
    assert outcome == {'success': False, 'error': 'Job not found in database'}
