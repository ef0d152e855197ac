import json
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Tuple, Union

from flask import current_app, has_app_context

from app.schubert.catalog import DEFAULT_MAX_ELEMENTS, parse_matroid
from app.schubert.exceptions import MatroidInputError, SchubertError
from app.schubert.matroid_core import Matroid
from app.schubert.pipeline import PipelineOptions

# Form fields shared by most tools
MATROID_FIELD = {
    'name': 'matroid',
    'label': 'Matroid',
    'type': 'textarea',
    'required': True,
    'placeholder': 'catalog:U(2,3)',
    'help_text': 'A catalog reference (catalog:NAME) or a JSON document with ground_set and bases'
}
MAX_P_FIELD = {
    'name': 'max_p',
    'label': 'Max p',
    'type': 'number',
    'required': False,
    'help_text': 'Compute rows p = 0..max_p only (defaults to the rank)'
}
FORCE_LARGE_FIELD = {
    'name': 'force_large',
    'label': 'Force large',
    'type': 'checkbox',
    'required': False,
    'help_text': 'Run cohomology above the ground set size limit'
}


def config_value(key: str, default):
    """A Flask config value, or the default outside an application context."""
    if has_app_context():
        return current_app.config.get(key, default)
    return default


def is_checked(value) -> bool:
    """Checkbox semantics for form values ('on', 'true', '1') and JSON booleans."""
    if isinstance(value, bool):
        return value
    return str(value or '').strip().lower() in ('on', 'true', '1', 'yes')


class BaseTool(ABC):
    """
    Abstract base class for all tools.

    Every CLI verb is one tool. The click commands and the JSON routes both
    call execute(), so the two surfaces return the same data payload.
    """

    # Class attributes (metadata) - must be defined by subclasses
    name: str = ""                      # Display name for the tool
    slug: str = ""                      # URL-safe identifier and CLI verb (e.g., "export-dot")
    description: str = ""               # Brief description of what the tool does
    category: str = "General"           # Category for grouping tools
    needs_matroid: bool = True          # Whether the matroid field is required

    def __init__(self):
        """Initialize the tool"""
        if not self.name or not self.slug:
            raise ValueError(f"Tool {self.__class__.__name__} must define 'name' and 'slug'")

    @abstractmethod
    def get_form_fields(self) -> list:
        """
        Return a list of form field definitions.

        Each field is a dict with:
        - name: str - Field name
        - label: str - Display label
        - type: str - Input type (text, textarea, select, checkbox, number)
        - required: bool - Whether field is required
        - placeholder: str (optional) - Placeholder text
        - help_text: str (optional) - Help text
        - options: list (optional) - For select fields
        """
        pass

    def validate_input(self, form_data: Dict) -> Tuple[bool, Optional[str]]:
        """
        Validate form input.

        Only the shape is checked here; parsing errors surface from execute().

        Returns:
            Tuple of (is_valid, error_message)
        """
        if self.needs_matroid and not form_data.get('matroid'):
            return False, "Please provide a matroid"
        max_p = form_data.get('max_p')
        if max_p not in (None, ''):
            try:
                if int(max_p) < 0:
                    return False, "max_p must be at least 0"
            except (TypeError, ValueError):
                return False, "max_p must be a whole number"
        return True, None

    @abstractmethod
    def run(self, matroid: Optional[Matroid], form_data: Dict) -> Tuple[str, Dict]:
        """
        Compute the tool output.

        Args:
            matroid: The parsed matroid (None when needs_matroid is False)
            form_data: Validated form values

        Returns:
            Tuple of (message, data)
        """
        pass

    def execute(self, form_data: Dict) -> Dict:
        """
        Parse the matroid and run the tool.

        Returns:
            Dictionary with success, message and data. Library errors become an
            unsuccessful result carrying the error dict, never an exception.
        """
        try:
            matroid = self.load_matroid(form_data) if self.needs_matroid else None
            message, data = self.run(matroid, form_data)
        except SchubertError as e:
            return self.error_result(e)
        return {'success': True, 'message': message, 'data': data}

    # Helpers shared by implementations

    def load_matroid(self, form_data: Dict) -> Matroid:
        """
        Raises:
            MatroidInputError: malformed, invalid or oversized matroid
        """
        value: Union[str, Dict] = form_data.get('matroid')
        if not isinstance(value, dict):
            value = str(value)
        return parse_matroid(value, config_value('CATALOG_MAX_ELEMENTS', DEFAULT_MAX_ELEMENTS))

    def pipeline_options(self, form_data: Dict) -> PipelineOptions:
        max_p = form_data.get('max_p')
        checks = form_data.get('checks') or form_data.get('check')
        if isinstance(checks, str):
            checks = [c.strip() for c in checks.split(',') if c.strip()]
        return PipelineOptions(
            max_p=int(max_p) if max_p not in (None, '') else None,
            force_large=is_checked(form_data.get('force_large')),
            checks=checks or None,
            include_timing=config_value('REPORT_INCLUDE_TIMING', False),
            max_ground_set=config_value('MAX_GROUND_SET_SIZE', 6)
        )

    @staticmethod
    def error_result(error: SchubertError) -> Dict:
        return {
            'success': False,
            'message': error.message,
            'data': None,
            'error': error.to_dict(),
            'input_error': isinstance(error, MatroidInputError)
        }

    def supports_async(self) -> bool:
        """
        Whether this tool supports asynchronous execution.
        Override this to return True for long-running operations.
        """
        return False

    def should_run_async(self, matroid: Matroid) -> bool:
        """Whether this matroid warrants a background job; only consulted when supports_async()."""
        return False

    def execute_async(self, form_data: Dict, job_id: str) -> Dict:
        """
        Execute the tool asynchronously.

        Dispatches a Celery task and returns immediately with the job information.

        Returns:
            Dictionary containing success, job_id, job_db_id and message
        """
        raise NotImplementedError("Async execution not implemented for this tool")

    def get_export_formats(self) -> list:
        """Every tool exports its data as JSON; override to add formats."""
        return ['json']

    def export_filename(self, results: Dict, extension: str) -> str:
        data = results.get('data') or {}
        matroid = str(data.get('matroid', 'result'))
        safe = ''.join(c if c.isalnum() or c in '-_' else '_' for c in matroid).strip('_') or 'result'
        return f"{self.slug}_{safe}.{extension}"

    def export_results(self, results: Dict, format: str) -> Tuple[bytes, str, str]:
        """
        Export results in the specified format.

        Returns:
            Tuple of (file_content, mimetype, filename)
        """
        if format == 'json':
            content = json.dumps(results.get('data'), sort_keys=True, indent=2, ensure_ascii=False) + '\n'
            return content.encode('utf-8'), 'application/json', self.export_filename(results, 'json')
        raise ValueError(f"Unsupported export format: {format}")

    def summary_tables(self, data: Dict) -> List[Tuple[Optional[str], List[str], List[List]]]:
        """
        Tables for terminal output as (title, headers, rows).

        The default lists the scalar and list entries of data; tools with
        tabular output override it.
        """
        rows = [[key, value] for key, value in data.items() if not isinstance(value, dict)]
        return [(None, ['field', 'value'], rows)]

    def __repr__(self):
        return f'<Tool: {self.name} ({self.slug})>'
