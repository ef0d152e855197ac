from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, Optional

from app.schubert.pipeline import PipelineContext

PASS = 'pass'
FAIL = 'fail'
SKIPPED = 'skipped'


@dataclass
class CheckResult:
    slug: str
    verdict: str
    details: Dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> Dict:
        return {'verdict': self.verdict, 'details': self.details}


class BaseCheck(ABC):
    """
    Abstract base class for verification checks.

    Every verification is one subclass, registered with
    @CheckRegistry.register. Checks read shared objects from the
    PipelineContext and never rebuild them.
    """

    # Class attributes (metadata) - must be defined by subclasses
    name: str = ""                      # Display name for the check
    slug: str = ""                      # Identifier used on the CLI (e.g., "diagonal-whitney")
    description: str = ""               # What the check verifies
    order: Optional[int] = None         # Report position, None sorts after every numbered check
    needs_cohomology: bool = True       # Skipped above the ground set size guard

    def __init__(self):
        """Initialize the check"""
        if not self.name or not self.slug:
            raise ValueError(f"Check {self.__class__.__name__} must define 'name' and 'slug'")

    def run(self, context: PipelineContext) -> CheckResult:
        """
        Run the check, or skip it when the matroid is above the size guard.

        Args:
            context: Shared pipeline objects for one matroid

        Returns:
            CheckResult with verdict pass, fail or skipped
        """
        if self.needs_cohomology and context.too_large:
            return self.skipped(
                f"{len(context.matroid.ground)} elements exceeds the limit of "
                f"{context.options.max_ground_set}; use force_large to run it"
            )
        return self.evaluate(context)

    @abstractmethod
    def evaluate(self, context: PipelineContext) -> CheckResult:
        """
        Compute the verdict.

        Args:
            context: Shared pipeline objects for one matroid

        Returns:
            CheckResult; use self.result() or self.skipped()
        """
        pass

    def result(self, passed: bool, **details) -> CheckResult:
        return CheckResult(self.slug, PASS if passed else FAIL, details)

    def skipped(self, reason: str) -> CheckResult:
        return CheckResult(self.slug, SKIPPED, {'reason': reason})

    def __repr__(self):
        return f'<Check: {self.name} ({self.slug})>'
