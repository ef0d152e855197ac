"""
Celery tasks module for asynchronous job processing.
"""

from app.tasks import verification_tasks

__all__ = ['verification_tasks']
