from datetime import datetime
import json

from app import db

JOB_STATUSES = ('pending', 'running', 'completed', 'failed', 'cancelled')
FINISHED_STATUSES = ('completed', 'failed', 'cancelled')


class Job(db.Model):
    """A background verification run of one matroid"""
    __tablename__ = 'jobs'

    id = db.Column(db.Integer, primary_key=True)
    job_id = db.Column(db.String(255), unique=True, nullable=False, index=True)  # Celery task ID
    tool_slug = db.Column(db.String(100), nullable=False, index=True)
    matroid_name = db.Column(db.String(255))
    ground_set_size = db.Column(db.Integer)
    status = db.Column(db.String(20), default='pending', index=True)
    total_checks = db.Column(db.Integer, default=0)
    checks_done = db.Column(db.Integer, default=0)
    current_check = db.Column(db.String(100))  # slug of the last finished check
    passed = db.Column(db.Boolean)  # None until the report exists
    report_json = db.Column(db.Text)
    error_message = db.Column(db.Text)
    created_at = db.Column(db.DateTime, default=datetime.utcnow, index=True)
    started_at = db.Column(db.DateTime)
    completed_at = db.Column(db.DateTime)

    def __repr__(self):
        return f'<Job {self.job_id} {self.matroid_name} ({self.status})>'

    @property
    def progress(self) -> int:
        """Percentage of checks finished; a completed job is always at 100."""
        if self.status == 'completed':
            return 100
        if not self.total_checks:
            return 0
        return int(100 * (self.checks_done or 0) / self.total_checks)

    @property
    def is_finished(self) -> bool:
        return self.status in FINISHED_STATUSES

    @staticmethod
    def create_job(job_id, tool_slug, total_checks, matroid_name=None, ground_set_size=None):
        """
        Record a verification run before its task is dispatched.

        Args:
            job_id: Celery task ID
            tool_slug: Tool identifier
            total_checks: Number of checks the run will execute
            matroid_name: Name of the matroid under test
            ground_set_size: |E| of that matroid

        Returns:
            Job instance
        """
        job = Job(
            job_id=job_id,
            tool_slug=tool_slug,
            matroid_name=matroid_name,
            ground_set_size=ground_set_size,
            total_checks=total_checks,
            checks_done=0,
            status='pending'
        )
        db.session.add(job)
        db.session.commit()
        return job

    def record_check(self, checks_done, slug=None):
        """Note that checks_done checks have finished, slug being the latest."""
        if not self.started_at:
            self.started_at = datetime.utcnow()
        self.status = 'running'
        self.checks_done = checks_done
        self.current_check = slug
        db.session.commit()

    def complete(self, report):
        """Store the verification report and its overall verdict."""
        self.status = 'completed'
        self.checks_done = self.total_checks
        self.passed = bool(report.get('passed'))
        self.report_json = json.dumps(report, sort_keys=True)
        self.completed_at = datetime.utcnow()
        db.session.commit()

    def fail(self, error_message):
        self.status = 'failed'
        self.error_message = error_message
        self.completed_at = datetime.utcnow()
        db.session.commit()

    def cancel(self):
        self.status = 'cancelled'
        self.completed_at = datetime.utcnow()
        db.session.commit()

    def get_report(self):
        if not self.report_json:
            return None
        try:
            return json.loads(self.report_json)
        except json.JSONDecodeError:
            return None

    def elapsed_seconds(self):
        """Seconds since the run started, up to completion; None before it starts."""
        if not self.started_at:
            return None
        end = self.completed_at or datetime.utcnow()
        return round((end - self.started_at).total_seconds(), 1)

    def to_dict(self):
        return {
            'id': self.id,
            'job_id': self.job_id,
            'tool_slug': self.tool_slug,
            'matroid_name': self.matroid_name,
            'ground_set_size': self.ground_set_size,
            'status': self.status,
            'progress': self.progress,
            'total_checks': self.total_checks,
            'checks_done': self.checks_done,
            'current_check': self.current_check,
            'passed': self.passed,
            'error_message': self.error_message,
            'elapsed_seconds': self.elapsed_seconds(),
            'created_at': self.created_at.isoformat() if self.created_at else None,
            'started_at': self.started_at.isoformat() if self.started_at else None,
            'completed_at': self.completed_at.isoformat() if self.completed_at else None
        }
