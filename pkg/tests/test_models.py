from app.models import Job


def test_job_progress_and_completion(app):
    job = Job.create_job('task-2', 'verify', 4, matroid_name='ex82', ground_set_size=3)
    assert job.status == 'pending'
    assert job.progress == 0
    assert job.elapsed_seconds() is None
    assert not job.is_finished

    job.record_check(1, 'whitney-identity')
    assert job.status == 'running'
    assert job.progress == 25
    assert job.current_check == 'whitney-identity'
    assert job.started_at is not None

    job.complete({'passed': True, 'checks': {}})
    assert job.status == 'completed'
    assert job.progress == 100
    assert job.checks_done == 4
    assert job.passed is True
    assert job.get_report() == {'checks': {}, 'passed': True}

    data = job.to_dict()
    assert data['matroid_name'] == 'ex82'
    assert data['ground_set_size'] == 3
    assert data['elapsed_seconds'] >= 0


def test_job_failure(app):
    job = Job.create_job('task-3', 'verify', 0)
    job.record_check(0)
    assert job.progress == 0
    job.fail('exploded')
    assert job.status == 'failed'
    assert job.is_finished
    assert job.error_message == 'exploded'
    assert job.passed is None
    assert job.get_report() is None
