"""Checks on the rank spectral sequence and its Koszul blocks."""

from app.checks.base_check import BaseCheck, CheckResult
from app.checks.registry import CheckRegistry
from app.schubert.filtration_ss import (
    acyclicity_check,
    e2_dims,
    euler_check,
    incidence_mismatches,
    koszul_homology_total,
    xi1_page,
)
from app.schubert.pipeline import PipelineContext


@CheckRegistry.register
class SpectralConsistencyCheck(BaseCheck):
    name = "Spectral consistency"
    slug = "spectral-consistency"
    description = ("E_1 and E_2 agree with the filtered face complex; E_2 equals the cohomology "
                   "row by row and sits on the diagonal")
    order = 4

    def evaluate(self, context: PipelineContext) -> CheckResult:
        matroid = context.matroid
        table = context.cohomology
        rows, passed = {}, True
        for p in range(context.max_p + 1):
            page = context.page(p)
            e2 = e2_dims(page)
            cohomology_row = [table[(p, a)] for a in range(matroid.rank + 1)]
            e2_row = [e2.get(a, 0) for a in range(matroid.rank + 1)]
            mismatches = incidence_mismatches(page, context.face_complex, context.cochains[p])
            row_ok = (e2_row == cohomology_row
                      and all(dim == 0 for a, dim in e2.items() if a != p)
                      and euler_check(matroid, page)
                      and not mismatches)
            passed = passed and row_ok
            rows[str(p)] = {'e1': [page.dims.get(a, 0) for a in range(matroid.rank + 1)],
                            'e2': e2_row, 'cohomology': cohomology_row,
                            'incidence_mismatches': mismatches, 'ok': row_ok}
        return self.result(passed, rows=rows)


@CheckRegistry.register
class KoszulAcyclicityCheck(BaseCheck):
    name = "Koszul acyclicity"
    slug = "koszul-acyclicity"
    description = "Blocks D(J,F) with J nonempty are exact; the J empty blocks total W_p"
    order = 5

    def evaluate(self, context: PipelineContext) -> CheckResult:
        matroid = context.matroid
        whitney = matroid.whitney_numbers()
        rows, passed = {}, True
        for p in range(context.max_p + 1):
            complexes = context.koszul(p)
            totals = koszul_homology_total(complexes, p)
            xi1 = xi1_page(matroid, context.page(p))
            expected = {p: whitney[p]} if whitney[p] else {}
            row_ok = (acyclicity_check(complexes)
                      and totals == expected
                      and xi1 == ({(p, 0): whitney[p]} if whitney[p] else {}))
            passed = passed and row_ok
            rows[str(p)] = {'blocks': len(complexes),
                            'homology': {str(a): d for a, d in totals.items()},
                            'xi1': {f'{k},{l}': d for (k, l), d in sorted(xi1.items())},
                            'ok': row_ok}
        return self.result(passed, rows=rows)
