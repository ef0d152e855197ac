import pytest

from app.schubert.bergman import build_augmented
from app.schubert.catalog import PRODUCT_PAIRS, catalog_matroid, factor_pair
from app.schubert.schubert_complex import build_face_complex
from app.schubert.tropical_cohomology import (
    balancing_check,
    cohomology_dims,
    convolve,
    diagonal_series,
    fan_Hc_dims,
    fan_pd_check,
    fundamental_class,
    kunneth_check,
    multi_tangent,
    off_diagonal_support,
)


def test_cohomology_of_the_compact_line(u11):
    table = cohomology_dims(u11)
    assert table == {(0, 0): 1, (0, 1): 0, (1, 0): 0, (1, 1): 1}
    assert diagonal_series(table) == [1, 1]
    assert off_diagonal_support(table) == []


def test_cohomology_is_diagonal_with_whitney_numbers(u22, ex82):
    for matroid in (u22, ex82):
        table = cohomology_dims(matroid)
        assert off_diagonal_support(table) == []
        assert diagonal_series(table) == matroid.whitney_numbers()


def test_max_p_truncates_rows(u22):
    table = cohomology_dims(u22, max_p=0)
    assert set(p for p, _ in table) == {0}
    assert diagonal_series(table) == [1]


def test_multi_tangent_spaces(u22):
    complex_ = build_face_complex(u22)
    top = complex_.cells_of_dim(2)[0]
    assert multi_tangent(complex_, top, 0).dim == 1
    assert multi_tangent(complex_, top, 1).dim == 2
    assert multi_tangent(complex_, top, 2).dim == 1
    corner = next(i for i, cell in enumerate(complex_.cells) if cell.orbit.dim == 2)
    assert multi_tangent(complex_, corner, 1).dim == 0


def test_fundamental_class_is_balanced(u22, ex82):
    for matroid in (u22, ex82):
        complex_ = build_face_complex(matroid)
        assert balancing_check(complex_)
        assert set(fundamental_class(complex_).weights.values()) == {1}


def test_fan_cohomology_with_compact_supports(u11, ex82):
    hc = fan_Hc_dims(build_augmented(u11).fan, 0)
    assert hc.get(0, 0) == 0
    assert hc.get(1, 0) == 1
    passed, observed = fan_pd_check(ex82)
    assert passed
    assert [observed[p].get(2, 0) for p in range(3)] == [2, 3, 1]


def test_convolve():
    assert convolve([1, 1], [1, 1]) == [1, 2, 1]
    assert convolve([], [1]) == []


def test_kunneth_for_a_sum_of_coloops():
    passed, series = kunneth_check(*factor_pair('U(1,1)', 'U(1,1)'))
    assert passed
    assert series['sum'] == [1, 2, 1]


def test_cohomology_of_uniform_rank_two_on_three(u23):
    table = cohomology_dims(u23)
    assert diagonal_series(table) == [1, 3, 1]
    assert off_diagonal_support(table) == []


def test_kunneth_with_a_parallel_pair():
    passed, series = kunneth_check(*factor_pair('parallel(2)', 'U(1,1)'))
    assert passed
    assert series['sum'] == catalog_matroid('pp+coloop').whitney_numbers()


@pytest.mark.parametrize('name', [
    'U(1,2)',
    'U(3,3)',
    'pp+coloop',
    'pp+loop',
    'triangle',
    'ex82',
    pytest.param('U(2,4)', marks=pytest.mark.slow),
    pytest.param('U(3,4)', marks=pytest.mark.slow),
])
def test_catalog_cohomology_is_diagonal(name):
    matroid = catalog_matroid(name)
    table = cohomology_dims(matroid)
    assert off_diagonal_support(table) == []
    assert diagonal_series(table) == matroid.whitney_numbers()


@pytest.mark.parametrize('pair', PRODUCT_PAIRS, ids=lambda pair: '+'.join(pair))
def test_kunneth_for_every_product_pair(pair):
    first, second = factor_pair(*pair)
    passed, series = kunneth_check(first, second)
    assert passed
    assert series['sum'] == convolve(first.whitney_numbers(), second.whitney_numbers())
