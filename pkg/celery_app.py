"""
Celery application for background verification runs.

To start the Celery worker:
    celery -A celery_app worker -Q verification,celery --loglevel=info

To start Flower monitoring (optional):
    celery -A celery_app flower
"""

import logging
import os

from celery import Celery

logger = logging.getLogger(__name__)

# Get broker and backend from environment or use defaults
broker_url = os.environ.get('REDIS_URL', 'redis://localhost:6379/0')
result_backend = os.environ.get('REDIS_URL', 'redis://localhost:6379/0')

# Create Celery instance without Flask app initially
celery = Celery(
    'schubert',
    broker=broker_url,
    backend=result_backend
)


# Load configuration from CeleryConfig class (lazy import to avoid circular deps)
def configure_celery():
    from app.celery_config import CeleryConfig
    celery.config_from_object(CeleryConfig)


# Configure celery on first use
configure_celery()


def init_celery(app):
    """
    Initialize Celery with Flask app context.

    This should be called from within the Flask app factory.
    """
    celery.flask_app = app
    celery.set_default()
    celery.conf.update(
        broker_url=app.config.get('REDIS_URL', broker_url),
        result_backend=app.config.get('REDIS_URL', result_backend),
        task_always_eager=app.config.get('CELERY_TASK_ALWAYS_EAGER', False),
        task_eager_propagates=app.config.get('CELERY_TASK_ALWAYS_EAGER', False)
    )

    # Ensure tasks run within the context of the most recently initialised app
    class ContextTask(celery.Task):
        def __call__(self, *args, **kwargs):
            with celery.flask_app.app_context():
                return self.run(*args, **kwargs)

    celery.Task = ContextTask
    return celery


# Load tasks when running as Celery worker
# Import Flask app to register tasks
try:
    from app import create_app
    flask_app = create_app(os.getenv('FLASK_ENV') or 'default')
    init_celery(flask_app)

    # Import tasks to register them
    from app.tasks import verification_tasks  # noqa: F401
except ImportError as e:
    logger.warning("Could not import tasks: %s", e)
except Exception as e:
    logger.warning("Error initializing Celery with Flask: %s", e)
