import pytest

from app import create_app, db
from app.schubert.catalog import catalog_matroid


@pytest.fixture
def app():
    app = create_app('testing')
    with app.app_context():
        db.create_all()
        yield app
        db.session.remove()
        db.drop_all()


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def u11():
    return catalog_matroid('U(1,1)')


@pytest.fixture
def u22():
    return catalog_matroid('U(2,2)')


@pytest.fixture
def u23():
    return catalog_matroid('U(2,3)')


@pytest.fixture
def ex82():
    return catalog_matroid('ex82')
