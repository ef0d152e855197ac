from dataclasses import asdict
from typing import Dict, Optional, Tuple

from app.checks import CheckRegistry, run_checks
from app.schubert.catalog import MatroidDocument
from app.schubert.exceptions import SchubertError
from app.schubert.matroid_core import Matroid
from app.tools.base_tool import FORCE_LARGE_FIELD, MATROID_FIELD, MAX_P_FIELD, BaseTool, config_value
from app.tools.registry import ToolRegistry


@ToolRegistry.register
class VerifyTool(BaseTool):
    """
    Run acceptance checks and build the verification report.

    Matroids at or above the async threshold run as a background job.
    """

    name = "Verify"
    slug = "verify"
    description = "Run one check or all checks and produce the JSON verification report"
    category = "Verification"

    def get_form_fields(self) -> list:
        return [
            MATROID_FIELD,
            {
                'name': 'check',
                'label': 'Check',
                'type': 'select',
                'required': False,
                'options': [{'value': 'all', 'label': 'All checks'}] +
                           [{'value': slug, 'label': slug} for slug in CheckRegistry.slugs()],
                'help_text': 'A check slug, a comma separated list, or all'
            },
            MAX_P_FIELD,
            FORCE_LARGE_FIELD
        ]

    def validate_input(self, form_data: Dict) -> Tuple[bool, Optional[str]]:
        is_valid, error = super().validate_input(form_data)
        if not is_valid:
            return is_valid, error
        checks = self.pipeline_options(form_data).checks or []
        unknown = [c for c in checks if c != 'all' and not CheckRegistry.check_exists(c)]
        if unknown:
            return False, f"Unknown check(s): {', '.join(unknown)}"
        return True, None

    def run(self, matroid: Optional[Matroid], form_data: Dict) -> Tuple[str, Dict]:
        report = run_checks(matroid, self.pipeline_options(form_data))
        data = report.to_dict()
        verdicts = [c['verdict'] for c in data['checks'].values()]
        message = (f"{verdicts.count('pass')} passed, {verdicts.count('fail')} failed, "
                   f"{verdicts.count('skipped')} skipped")
        return message, data

    def supports_async(self) -> bool:
        return True

    def should_run_async(self, matroid: Matroid) -> bool:
        return len(matroid.ground) >= config_value('ASYNC_GROUND_SET_THRESHOLD', 5)

    def execute_async(self, form_data: Dict, job_id: str) -> Dict:
        """
        Dispatch the verification pipeline as a Celery task.
        """
        from app.models import Job
        from app.tasks.verification_tasks import run_verification_async

        try:
            matroid = self.load_matroid(form_data)
        except SchubertError as e:
            return self.error_result(e)

        options = self.pipeline_options(form_data)
        document = MatroidDocument.from_matroid(matroid).to_dict()

        job = Job.create_job(
            job_id=job_id,
            tool_slug=self.slug,
            matroid_name=matroid.name,
            ground_set_size=len(matroid.ground),
            total_checks=len(CheckRegistry.get_checks(options.checks))
        )

        run_verification_async.apply_async(
            args=[job_id, document, asdict(options)],
            task_id=job_id
        )

        return {
            'success': True,
            'job_id': job_id,
            'job_db_id': job.id,
            'message': f'Job started. Verifying {matroid.name} in the background...'
        }

    def summary_tables(self, data: Dict):
        rows = [[slug, check.get('order') or '-', check['verdict']]
                for slug, check in data['checks'].items()]
        overview = [['whitney', data['whitney']], ['f_vector', data['f_vector']], ['passed', data['passed']]]
        return [(data['matroid'], ['field', 'value'], overview), ('checks', ['check', 'order', 'verdict'], rows)]
