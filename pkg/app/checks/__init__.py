from typing import Optional

from app.checks.base_check import BaseCheck, CheckResult
from app.checks.registry import CheckRegistry
from app.schubert.matroid_core import Matroid
from app.schubert.pipeline import PipelineOptions, ProgressCallback, VerificationReport, run_pipeline

# Importing the implementations registers them
from app.checks import implementations  # noqa: E402,F401


def run_checks(matroid: Matroid, options: Optional[PipelineOptions] = None,
               progress_callback: Optional[ProgressCallback] = None) -> VerificationReport:
    """Run the registered checks selected by options.checks (all by default)."""
    options = options or PipelineOptions()
    return run_pipeline(matroid, options, CheckRegistry.get_checks(options.checks), progress_callback)


__all__ = ['BaseCheck', 'CheckResult', 'CheckRegistry', 'run_checks']
