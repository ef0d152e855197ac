import json

import pytest

from app.checks import CheckRegistry, run_checks
from app.checks.base_check import FAIL, PASS, SKIPPED, BaseCheck
from app.schubert.catalog import catalog_matroid
from app.schubert.exceptions import DivisionNotExact, MatroidTooLarge
from app.schubert.pipeline import PipelineContext, PipelineOptions

ALL_CHECKS = [
    'off-diagonal-vanishing', 'diagonal-whitney', 'whitney-identity', 'spectral-consistency',
    'koszul-acyclicity', 'chain-soundness', 'coextension-identity', 'fan-poincare-duality',
    'mobius-isomorphism', 'stratification-census', 'product-behaviour',
    'fan-compatibility', 'support-identification',
]


def test_registry_orders_checks():
    assert CheckRegistry.slugs() == ALL_CHECKS
    assert [c.slug for c in CheckRegistry.get_checks(['mobius-isomorphism', 'whitney-identity'])] == \
        ['whitney-identity', 'mobius-isomorphism']
    with pytest.raises(ValueError):
        CheckRegistry.get_checks(['no-such-check'])


def test_registry_rejects_duplicates():
    class Duplicate(BaseCheck):
        name = 'Duplicate'
        slug = 'whitney-identity'

        def evaluate(self, context):
            return self.result(True)

    with pytest.raises(ValueError):
        CheckRegistry.register(Duplicate)


def test_every_check_passes_on_boolean_rank_two(u22):
    report = run_checks(u22)
    verdicts = {slug: check['verdict'] for slug, check in report.checks.items()}
    assert verdicts == {slug: PASS for slug in ALL_CHECKS}
    assert report.passed
    assert report.cohomology == {'0,0': 1, '0,1': 0, '0,2': 0, '1,0': 0, '1,1': 2,
                                 '1,2': 0, '2,0': 0, '2,1': 0, '2,2': 1}
    assert report.e_pages['0']['e1'] == {'0': 4, '1': 4, '2': 1}


def test_connected_matroid_skips_product_check(u23):
    report = run_checks(u23)
    assert report.checks['product-behaviour']['verdict'] == SKIPPED
    assert report.passed


def test_parallel_pair_with_coloop(ex82):
    report = run_checks(ex82)
    assert report.passed
    assert all(check['verdict'] == PASS for check in report.checks.values())
    census = report.checks['stratification-census']['details']
    assert census['strata'] == 12
    rows = report.checks['spectral-consistency']['details']['rows']
    assert not any(row['incidence_mismatches'] for row in rows.values())
    assert census['closure_mismatch'] == []
    assert report.checks['mobius-isomorphism']['details']['witnesses'] == {'y1=y2': True}
    assert report.checks['product-behaviour']['details']['components'] == [['1', '2'], ['3']]


def test_report_json_is_deterministic(u11):
    first = run_checks(u11).to_json()
    second = run_checks(u11).to_json()
    assert first == second
    data = json.loads(first)
    assert data['whitney'] == [1, 1]
    assert 'timing' not in data
    assert data['checks']['whitney-identity']['order'] == 3
    assert data['checks']['fan-compatibility']['order'] is None


def test_timing_is_opt_in(u11):
    report = run_checks(u11, PipelineOptions(checks=['whitney-identity'], include_timing=True))
    assert set(report.to_dict()['timing']) == {'whitney-identity'}


def test_size_guard_skips_cohomology():
    matroid = catalog_matroid('U(2,7)')
    report = run_checks(matroid, PipelineOptions(checks=['whitney-identity', 'diagonal-whitney']))
    assert report.checks['whitney-identity']['verdict'] == PASS
    assert report.checks['diagonal-whitney']['verdict'] == SKIPPED
    assert report.cohomology is None
    with pytest.raises(MatroidTooLarge):
        PipelineContext(matroid).face_complex


def test_progress_callback(u11):
    calls = []
    run_checks(u11, PipelineOptions(checks=['whitney-identity', 'coextension-identity']),
               lambda done, total, slug: calls.append((done, total, slug)))
    assert calls == [(1, 2, 'whitney-identity'), (2, 2, 'coextension-identity')]


def test_max_p_limits_rows(u22):
    report = run_checks(u22, PipelineOptions(max_p=1, checks=['diagonal-whitney', 'spectral-consistency']))
    assert report.checks['diagonal-whitney']['details']['diagonal'] == [1, 2]
    assert set(report.e_pages) == {'0', '1'}
    assert report.passed


def test_coextension_identity_holds_with_loops():
    matroid = catalog_matroid('pp+loop')
    assert matroid.loops == frozenset({'3'})
    assert not matroid.free_coextension().loops
    report = run_checks(matroid, PipelineOptions(checks=['coextension-identity']))
    check = report.checks['coextension-identity']
    assert check['verdict'] == PASS
    assert check['details']['coefficients'] == check['details']['f_vector'][::-1]
    assert report.passed


def test_inexact_division_fails_the_check(monkeypatch, u11):
    def inexact(matroid):
        raise DivisionNotExact("chi_M(t) is not divisible by t - 1", {'remainder': '1'})

    monkeypatch.setattr('app.checks.implementations.combinatorics.coext_f_identity_check', inexact)
    report = run_checks(u11, PipelineOptions(checks=['coextension-identity']))
    check = report.checks['coextension-identity']
    assert check['verdict'] == FAIL
    assert check['details']['error']['error'] == 'DivisionNotExact'
    assert not report.passed


@pytest.mark.slow
def test_vamos_combinatorial_identities():
    report = run_checks(catalog_matroid('vamos'),
                        PipelineOptions(checks=['whitney-identity', 'coextension-identity']))
    assert report.passed
    assert report.whitney == catalog_matroid('vamos').whitney_numbers()


@pytest.mark.slow
def test_parallel_pair_plus_boolean_rank_two():
    report = run_checks(catalog_matroid('pp+U(2,2)'), PipelineOptions(checks=[
        'off-diagonal-vanishing', 'diagonal-whitney', 'product-behaviour']))
    assert report.passed
    assert report.checks['diagonal-whitney']['details']['diagonal'] == [1, 3, 3, 1]
