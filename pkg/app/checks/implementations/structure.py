"""Checks on the algebra structure, the stratification and the fan geometry."""

from app.checks.base_check import BaseCheck, CheckResult
from app.checks.registry import CheckRegistry
from app.schubert.bergman import build_augmented, relint_criterion_check, support_identification_check
from app.schubert.fan_geometry import delta_compatible, fan_axioms_check, product_of_lines_fan
from app.schubert.graded_algebras import mobius_algebra, mobius_isomorphism_verdict, pullback_relations_check
from app.schubert.pipeline import PipelineContext
from app.schubert.schubert_complex import (
    closure_cells_check,
    product_decomposition_check,
    stratification,
    stratum_fan_check,
    stratum_order_check,
)
from app.schubert.tropical_cohomology import convolve, cohomology_dims, diagonal_series


@CheckRegistry.register
class MobiusIsomorphismCheck(BaseCheck):
    name = "Graded Mobius algebra"
    slug = "mobius-isomorphism"
    description = "The subalgebra of the Chow ring generated by the y_i is B(M) with Hilbert function W"
    order = 9

    def evaluate(self, context: PipelineContext) -> CheckResult:
        report = context.subalgebra
        pullback = pullback_relations_check(context.matroid)
        passed = mobius_isomorphism_verdict(context.matroid, context.diagonal, report) and all(pullback.values())
        return self.result(passed, chow_dims=context.chow.dims, diagonal=context.diagonal,
                           pullback=pullback, **report.to_dict())


@CheckRegistry.register
class StratificationCensusCheck(BaseCheck):
    name = "Stratification census"
    slug = "stratification-census"
    description = "Strata are the admissible pairs, each the augmented Bergman fan of its minor, ordered by closure"
    order = 10

    def evaluate(self, context: PipelineContext) -> CheckResult:
        matroid = context.matroid
        complex_ = context.face_complex
        strata = stratification(complex_)
        empty = [matroid.pair_label(pair) for pair, cells in strata.items() if not cells]
        wrong_dim = [matroid.pair_label(pair) for pair, cells in strata.items()
                     if cells and max(complex_.cells[i].dim for i in cells) != pair.rank]
        fan_mismatch = stratum_fan_check(complex_)
        order_mismatch = stratum_order_check(complex_)
        closure_mismatch = closure_cells_check(complex_)
        passed = not (empty or wrong_dim or fan_mismatch or order_mismatch or closure_mismatch)
        return self.result(
            passed,
            strata=len(strata),
            labels=[matroid.pair_label(pair) for pair in strata],
            empty=empty,
            wrong_dimension=wrong_dim,
            fan_mismatch=fan_mismatch,
            closure_mismatch=closure_mismatch,
            order_mismatch=[list(pair) for pair in order_mismatch]
        )


@CheckRegistry.register
class ProductBehaviourCheck(BaseCheck):
    name = "Product behaviour"
    slug = "product-behaviour"
    description = "Over the connected-component split, strata multiply and diagonal Hilbert series factor"
    order = 11

    def evaluate(self, context: PipelineContext) -> CheckResult:
        matroid = context.matroid
        components = matroid.connected_components()
        if len(components) < 2:
            return self.skipped("matroid is connected")
        first = matroid.restriction(components[0])
        rest = matroid.restriction([e for c in components[1:] for e in c])
        series = [diagonal_series(cohomology_dims(part)) for part in (first, rest)]
        product = convolve(*series)
        mobius = [mobius_algebra(part).hilbert_function() for part in (first, rest)]
        whole = context.diagonal
        passed = (product[:len(whole)] == whole
                  and product_decomposition_check(first, rest)
                  and convolve(*mobius) == mobius_algebra(matroid).hilbert_function())
        return self.result(
            passed,
            components=[list(c) for c in components],
            factor_series=series,
            product=product,
            diagonal=whole
        )


@CheckRegistry.register
class SupportIdentificationCheck(BaseCheck):
    name = "Support identification"
    slug = "support-identification"
    description = "gamma maps the Bergman fan of the free coextension onto the augmented Bergman fan"
    order = None

    def evaluate(self, context: PipelineContext) -> CheckResult:
        report = support_identification_check(context.matroid).to_dict()
        return self.result(report.pop('passed'), **report)


@CheckRegistry.register
class FanCompatibilityCheck(BaseCheck):
    name = "Fan compatibility"
    slug = "fan-compatibility"
    description = "The augmented Bergman fan is a fan compatible with (P^1)^E and meets orbits as the combinatorial criterion says"
    order = None

    def evaluate(self, context: PipelineContext) -> CheckResult:
        matroid = context.matroid
        fan = build_augmented(matroid).fan
        disagreements = relint_criterion_check(matroid)
        details = {
            'fan_axioms': fan_axioms_check(fan),
            'compatible': delta_compatible(fan, product_of_lines_fan(len(matroid.ground))),
            'criterion_disagreements': disagreements[:20]
        }
        return self.result(details['fan_axioms'] and details['compatible'] and not disagreements, **details)
