"""Checks that need only the matroid, never the face complex."""

from app.checks.base_check import BaseCheck, CheckResult
from app.checks.registry import CheckRegistry
from app.schubert.exceptions import DivisionNotExact
from app.schubert.matroid_core import N_p, coext_f_identity_check
from app.schubert.pipeline import PipelineContext


@CheckRegistry.register
class WhitneyIdentityCheck(BaseCheck):
    name = "Whitney identity"
    slug = "whitney-identity"
    description = "Alternating sums N_p over admissible pairs equal the Whitney numbers W_p"
    order = 3
    needs_cohomology = False

    def evaluate(self, context: PipelineContext) -> CheckResult:
        matroid = context.matroid
        n = [N_p(matroid, p) for p in range(matroid.rank + 1)]
        whitney = matroid.whitney_numbers()
        return self.result(n == whitney, N_p=n, whitney=whitney)


@CheckRegistry.register
class CoextensionIdentityCheck(BaseCheck):
    name = "Coextension identity"
    slug = "coextension-identity"
    description = "Coefficients of the reduced characteristic polynomial of the free coextension give the f-vector"
    order = 7
    needs_cohomology = False

    def evaluate(self, context: PipelineContext) -> CheckResult:
        matroid = context.matroid
        try:
            passed = coext_f_identity_check(matroid)
            reduced = matroid.free_coextension().reduced_characteristic_polynomial()
        except DivisionNotExact as e:
            return self.result(False, error=e.to_dict())
        return self.result(
            passed,
            coefficients=[abs(int(c)) for c in reversed(reduced.all_coeffs())],
            f_vector=matroid.f_vector()
        )
