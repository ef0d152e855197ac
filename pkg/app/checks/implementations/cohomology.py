"""Checks on the tropical cohomology of Y_M and of the stratum fans."""

from app.checks.base_check import BaseCheck, CheckResult
from app.checks.registry import CheckRegistry
from app.schubert.filtration_ss import d1_squares_to_zero
from app.schubert.pipeline import PipelineContext, table_to_dict
from app.schubert.schubert_complex import filtration_respects_coboundary
from app.schubert.tropical_cohomology import balancing_check, fan_pd_check, off_diagonal_support


@CheckRegistry.register
class OffDiagonalVanishingCheck(BaseCheck):
    name = "Off-diagonal vanishing"
    slug = "off-diagonal-vanishing"
    description = "H^{p,q}(Y_M) = 0 whenever p != q"
    order = 1

    def evaluate(self, context: PipelineContext) -> CheckResult:
        support = off_diagonal_support(context.cohomology)
        return self.result(not support, nonzero=[f'{p},{q}' for p, q in support])


@CheckRegistry.register
class DiagonalWhitneyCheck(BaseCheck):
    name = "Diagonal equals Whitney numbers"
    slug = "diagonal-whitney"
    description = "dim H^{p,p}(Y_M) = W_p(M)"
    order = 2

    def evaluate(self, context: PipelineContext) -> CheckResult:
        diagonal = context.diagonal
        whitney = context.matroid.whitney_numbers()[:len(diagonal)]
        return self.result(diagonal == whitney, diagonal=diagonal, whitney=whitney)


@CheckRegistry.register
class ChainSoundnessCheck(BaseCheck):
    name = "Chain-level soundness"
    slug = "chain-soundness"
    description = "Boundary and d_1 square to zero, the fundamental chain is balanced, the rank filtration is respected"
    order = 6

    def evaluate(self, context: PipelineContext) -> CheckResult:
        complex_ = context.face_complex
        details = {
            'boundary_squared_zero': complex_.boundary_squares_to_zero(),
            'd1_squared_zero': all(d1_squares_to_zero(context.page(p)) for p in range(context.max_p + 1)),
            'balanced': balancing_check(complex_),
            'filtration_respected': filtration_respects_coboundary(complex_),
            'cells': complex_.dims_histogram()
        }
        passed = all(v for k, v in details.items() if k != 'cells')
        details['cells'] = {str(q): n for q, n in details['cells'].items()}
        return self.result(passed, **details)


@CheckRegistry.register
class FanPoincareDualityCheck(BaseCheck):
    name = "Fan Poincare duality"
    slug = "fan-poincare-duality"
    description = "For every stratum minor, H_c of its augmented Bergman fan is the reversed f-vector in top degree"
    order = 8

    def evaluate(self, context: PipelineContext) -> CheckResult:
        matroid = context.matroid
        minors = {}
        for pair in matroid.admissible_pairs():
            minor = matroid.minor(pair.I, pair.F)
            minors.setdefault(minor, matroid.pair_label(pair))

        failures = {}
        for minor, label in minors.items():
            passed, observed = fan_pd_check(minor)
            if not passed:
                failures[label] = {str(p): {str(q): d for q, d in dims.items()} for p, dims in observed.items()}
        return self.result(not failures, minors_checked=len(minors), failures=failures)
