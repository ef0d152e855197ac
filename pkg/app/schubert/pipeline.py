"""
Verification pipeline: shared computations, check orchestration and the JSON report.
"""

import json
import logging
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence

from app.schubert.bergman import build_augmented
from app.schubert.exceptions import (
    ConsistencyError,
    DivisionNotExact,
    GeometryError,
    MatroidTooLarge,
)
from app.schubert.filtration_ss import KoszulComplexData, SpectralPage, e1_page, e2_dims, koszul_complexes
from app.schubert.graded_algebras import ChowRing, SubalgebraReport, chow_ring, subalgebra_hilbert_and_structure
from app.schubert.matroid_core import Matroid
from app.schubert.schubert_complex import FaceComplex, build_face_complex
from app.schubert.tropical_cohomology import (
    CochainComplex,
    CohomologyTable,
    cochain_complexes,
    cohomology_table,
    diagonal_series,
)

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, int, str], None]


@dataclass
class PipelineOptions:
    max_p: Optional[int] = None
    force_large: bool = False
    checks: Optional[List[str]] = None
    include_timing: bool = False
    max_ground_set: int = 6


class PipelineContext:
    """Lazily built objects shared by every check of one run."""

    def __init__(self, matroid: Matroid, options: Optional[PipelineOptions] = None):
        self.matroid = matroid
        self.options = options or PipelineOptions()
        self._pages: Dict[int, SpectralPage] = {}
        self._koszul: Dict[int, List[KoszulComplexData]] = {}

    @property
    def too_large(self) -> bool:
        return len(self.matroid.ground) > self.options.max_ground_set and not self.options.force_large

    def ensure_size(self) -> None:
        """
        Raises:
            MatroidTooLarge: the ground set is above the cohomology guardrail and not forced
        """
        if self.too_large:
            raise MatroidTooLarge(
                f"{self.matroid.name} has {len(self.matroid.ground)} elements; "
                f"cohomology is limited to {self.options.max_ground_set} unless forced",
                {'elements': len(self.matroid.ground), 'limit': self.options.max_ground_set}
            )

    @property
    def max_p(self) -> int:
        d = self.matroid.rank
        return d if self.options.max_p is None else max(0, min(self.options.max_p, d))

    @cached_property
    def face_complex(self) -> FaceComplex:
        self.ensure_size()
        return build_face_complex(self.matroid)

    @cached_property
    def cochains(self) -> Dict[int, CochainComplex]:
        return cochain_complexes(self.face_complex, self.max_p)

    @cached_property
    def cohomology(self) -> CohomologyTable:
        return cohomology_table(self.face_complex, self.max_p, self.cochains)

    @cached_property
    def diagonal(self) -> List[int]:
        return diagonal_series(self.cohomology)

    def page(self, p: int) -> SpectralPage:
        if p not in self._pages:
            self._pages[p] = e1_page(self.matroid, p)
        return self._pages[p]

    def koszul(self, p: int) -> List[KoszulComplexData]:
        if p not in self._koszul:
            self._koszul[p] = koszul_complexes(self.matroid, self.page(p))
        return self._koszul[p]

    @cached_property
    def chow(self) -> ChowRing:
        self.ensure_size()
        return chow_ring(build_augmented(self.matroid).fan, self.matroid.rank)

    @cached_property
    def subalgebra(self) -> SubalgebraReport:
        return subalgebra_hilbert_and_structure(self.matroid, self.chow)


@dataclass
class VerificationReport:
    matroid: str
    ground_set: List[str]
    rank: int
    whitney: List[int]
    f_vector: List[int]
    cohomology: Optional[Dict[str, int]] = None
    e_pages: Dict[str, Dict[str, Dict[str, int]]] = field(default_factory=dict)
    checks: Dict[str, Dict] = field(default_factory=dict)
    timing: Optional[Dict[str, float]] = None

    @property
    def passed(self) -> bool:
        return all(check['verdict'] != 'fail' for check in self.checks.values())

    def to_dict(self) -> Dict:
        data = {
            'matroid': self.matroid,
            'ground_set': self.ground_set,
            'rank': self.rank,
            'whitney': self.whitney,
            'f_vector': self.f_vector,
            'cohomology': self.cohomology,
            'e_pages': self.e_pages,
            'checks': self.checks,
            'passed': self.passed
        }
        if self.timing is not None:
            data['timing'] = self.timing
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def table_to_dict(table: CohomologyTable) -> Dict[str, int]:
    return {f'{p},{q}': dim for (p, q), dim in sorted(table.items())}


def run_pipeline(matroid: Matroid, options: Optional[PipelineOptions], checks: Sequence,
                 progress_callback: Optional[ProgressCallback] = None) -> VerificationReport:
    """
    Run the given checks against one matroid.

    Each check exposes ``slug`` and ``run(context)`` returning an object with
    ``verdict`` and ``to_dict()``. Consistency and geometry errors raised
    inside a check become a failing verdict; input errors propagate.

    Args:
        matroid: The matroid under test
        options: Pipeline options
        checks: Check instances in report order
        progress_callback: Called as (finished, total, slug) after every check

    Returns:
        VerificationReport
    """
    options = options or PipelineOptions()
    context = PipelineContext(matroid, options)
    report = VerificationReport(
        matroid=matroid.name,
        ground_set=list(matroid.ground),
        rank=matroid.rank,
        whitney=matroid.whitney_numbers(),
        f_vector=matroid.f_vector()
    )
    timing: Dict[str, float] = {}

    for done, check in enumerate(checks, start=1):
        started = time.perf_counter()
        try:
            result = check.run(context).to_dict()
        except (ConsistencyError, GeometryError, DivisionNotExact) as e:
            logger.error("Check %s raised %s: %s", check.slug, type(e).__name__, e.message)
            result = {'verdict': 'fail', 'details': {'error': e.to_dict()}}
        result['order'] = check.order
        report.checks[check.slug] = result
        timing[check.slug] = round(time.perf_counter() - started, 3)
        logger.info("Check %s on %s: %s", check.slug, matroid.name, result['verdict'])
        if progress_callback:
            progress_callback(done, len(checks), check.slug)

    if not context.too_large:
        report.cohomology = table_to_dict(context.cohomology)
        for p in range(context.max_p + 1):
            page = context.page(p)
            report.e_pages[str(p)] = {
                'e1': {str(a): dim for a, dim in page.dims.items()},
                'e2': {str(a): dim for a, dim in e2_dims(page).items()}
            }
    if options.include_timing:
        report.timing = timing
    return report
