import os

import click

from app import create_app, db
from app.models import Job

app = create_app(os.getenv('FLASK_ENV') or 'default')


@app.shell_context_processor
def make_shell_context():
    """Make database objects and the library entry points available in Flask shell"""
    from app.checks import CheckRegistry, run_checks
    from app.schubert.catalog import catalog_matroid

    return {
        'db': db,
        'Job': Job,
        'CheckRegistry': CheckRegistry,
        'run_checks': run_checks,
        'catalog_matroid': catalog_matroid
    }


@app.cli.command()
def init_db():
    """Initialize the database"""
    db.create_all()
    click.echo('Database initialized!')


if __name__ == '__main__':
    app.run(debug=True)
