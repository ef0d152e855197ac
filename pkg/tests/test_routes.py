from app import db
from app.models import Job


def test_index_lists_tools_checks_and_catalog(client):
    data = client.get('/').get_json()
    assert 'Matroids' in data['tools_by_category']
    assert 'mobius-isomorphism' in data['checks']
    assert 'ex82' in data['catalog']


def test_describe_tool(client):
    data = client.get('/tools/verify').get_json()
    assert data['slug'] == 'verify'
    assert data['supports_async']
    assert [field['name'] for field in data['form_fields']] == ['matroid', 'check', 'max_p', 'force_large']


def test_unknown_tool(client):
    assert client.get('/tools/nope').status_code == 404
    assert client.post('/tools/nope', json={}).status_code == 404


def test_run_tool(client):
    response = client.post('/tools/info', json={'matroid': 'catalog:ex82'})
    assert response.status_code == 200
    data = response.get_json()
    assert data['success']
    assert data['data']['rank'] == 2
    assert data['data']['admissible_pairs'] == 12


def test_form_posts_are_accepted(client):
    response = client.post('/tools/cohomology', data={'matroid': 'catalog:U(1,1)', 'max_p': '1'})
    assert response.status_code == 200
    assert response.get_json()['data']['diagonal'] == [1, 1]


def test_validation_and_input_errors(client):
    response = client.post('/tools/info', json={})
    assert response.status_code == 400
    assert response.get_json()['message'].startswith('Validation error')

    response = client.post('/tools/info', json={'matroid': 'catalog:nope'})
    assert response.status_code == 400
    assert response.get_json()['error']['error'] == 'ParseError'


def test_export_after_run(client):
    assert client.get('/tools/export-dot/export/dot').status_code == 404
    client.post('/tools/export-dot', json={'matroid': 'catalog:U(1,1)'})
    response = client.get('/tools/export-dot/export/dot')
    assert response.status_code == 200
    assert response.headers['Content-Type'] == 'text/vnd.graphviz'
    assert response.data.startswith(b'digraph')
    assert client.get('/tools/export-dot/export/csv').status_code == 400


def test_large_verification_runs_as_job(client):
    response = client.post('/tools/verify', json={'matroid': 'catalog:U(1,5)', 'check': 'whitney-identity'})
    assert response.status_code == 202
    started = response.get_json()
    assert started['success']

    # The eager task committed from its own session
    db.session.expire_all()

    status = client.get(f"/jobs/{started['job_db_id']}/status").get_json()
    assert status['status'] == 'completed'
    assert status['progress'] == 100
    assert status['passed'] is True
    assert client.get('/jobs/?passed=true').get_json()['total'] == 1
    assert client.get('/jobs/?passed=false').get_json()['total'] == 0
    assert status['matroid_name'] == 'U(1,5)'
    assert status['result']['passed']
    assert status['result']['checks']['whitney-identity']['verdict'] == 'pass'


def test_job_listing_and_lifecycle(client):
    job = Job.create_job('task-1', 'verify', 3, matroid_name='U(2,5)')
    listing = client.get('/jobs/?status=pending').get_json()
    assert [j['job_id'] for j in listing['jobs']] == ['task-1']
    assert client.get('/jobs/?tool=info').get_json()['total'] == 0

    assert client.post(f'/jobs/{job.id}/delete').status_code == 409
    assert client.post(f'/jobs/{job.id}/cancel').status_code == 200
    assert client.get(f'/jobs/{job.id}/status').get_json()['status'] == 'cancelled'
    assert client.post(f'/jobs/{job.id}/cancel').status_code == 409
    assert client.post(f'/jobs/{job.id}/delete').status_code == 200
    assert client.get(f'/jobs/{job.id}/status').status_code == 404
