"""
Jobs blueprint for monitoring background verification runs.
"""

from flask import Blueprint

jobs_bp = Blueprint('jobs', __name__)

from app.jobs import routes  # noqa: E402,F401
