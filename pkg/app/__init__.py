import logging
import os

from flask import Flask
from flask_sqlalchemy import SQLAlchemy

from app.config import config

# Initialize extensions
db = SQLAlchemy()


def configure_logging(app):
    """Route library loggers (app.schubert, app.checks, ...) through the app's level"""
    level = getattr(logging, str(app.config.get('LOG_LEVEL', 'INFO')).upper(), logging.INFO)
    app.logger.setLevel(level)
    logging.getLogger('app').setLevel(level)
    if not logging.getLogger().handlers:
        logging.basicConfig(format='%(asctime)s %(levelname)s %(name)s: %(message)s')


def create_app(config_name='default'):
    """Flask application factory"""
    app = Flask(__name__)
    app.config.from_object(config[config_name])

    configure_logging(app)

    # Initialize extensions with app
    db.init_app(app)

    # Register tools and checks
    from app.tools import implementations  # noqa: F401
    from app import checks  # noqa: F401

    # Register blueprints
    from app.main import main_bp
    from app.tools import tools_bp
    from app.jobs import jobs_bp

    app.register_blueprint(main_bp)
    app.register_blueprint(tools_bp, url_prefix='/tools')
    app.register_blueprint(jobs_bp, url_prefix='/jobs')

    # Command-line verbs under `flask schubert ...`
    from app.cli import schubert_cli
    app.cli.add_command(schubert_cli)

    # Initialize Celery with Flask app context
    # Deferred to avoid circular imports during initialization
    try:
        from celery_app import init_celery
        init_celery(app)
    except Exception:
        # Celery initialization can fail during Flask CLI operations
        app.logger.debug("Celery not initialised", exc_info=True)

    try:
        os.makedirs(app.instance_path)
    except OSError:
        pass

    return app
