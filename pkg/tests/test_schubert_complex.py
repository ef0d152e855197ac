import pytest

from app.schubert.bergman import build_augmented
from app.schubert.catalog import PRODUCT_PAIRS, catalog_matroid, factor_pair
from app.schubert.fan_geometry import OrbitLabel, closure_cells_of_cone, product_of_lines_fan
from app.schubert.schubert_complex import (
    FaceComplex,
    build_face_complex,
    closure_cells_check,
    export_stratification_dot,
    filtration_respects_coboundary,
    product_decomposition_check,
    rank_filtration,
    stratification,
    stratum_fan_check,
    stratum_order_check,
)


def test_coloop_complex_is_a_compact_line(u11):
    complex_ = build_face_complex(u11)
    assert complex_.dims_histogram() == {0: 3, 1: 2}
    assert complex_.boundary_squares_to_zero()
    assert len(stratification(complex_)) == 3


def test_boolean_rank_two_census(u22):
    complex_ = build_face_complex(u22)
    assert len(complex_.cells) == 27
    assert complex_.dim == 2
    assert complex_.boundary_squares_to_zero()
    strata = stratification(complex_)
    assert len(strata) == 9
    assert all(strata.values())


def test_cells_live_in_orbits_of_the_product_of_lines(u22):
    complex_ = build_face_complex(u22)
    origin_top = [i for i in complex_.cells_of_dim(2) if complex_.cells[i].orbit == OrbitLabel.origin()]
    assert len(origin_top) == 5
    corner = OrbitLabel(frozenset({0, 1}))
    assert any(cell.orbit == corner and cell.dim == 0 for cell in complex_.cells)


def test_strata_are_augmented_fans_of_minors(u22, ex82):
    for matroid in (u22, ex82):
        complex_ = build_face_complex(matroid)
        assert stratum_fan_check(complex_) == []
        assert stratum_order_check(complex_) == []


def test_rank_filtration(ex82):
    complex_ = build_face_complex(ex82)
    levels = rank_filtration(complex_)
    assert len(levels) == 3
    assert len(levels[0]) == len(complex_.cells)
    assert set(levels[2]) <= set(levels[1]) <= set(levels[0])
    assert filtration_respects_coboundary(complex_)


def test_all_cones_complex_of_a_fan():
    complex_ = FaceComplex.from_fan(product_of_lines_fan(2))
    assert complex_.dims_histogram() == {0: 1, 1: 4, 2: 4}
    assert complex_.boundary_squares_to_zero()


@pytest.mark.parametrize('pair', PRODUCT_PAIRS, ids=lambda pair: '+'.join(pair))
def test_strata_of_a_direct_sum_are_products(pair):
    assert product_decomposition_check(*factor_pair(*pair))


def test_a_connected_matroid_is_not_a_product(monkeypatch):
    first, second = factor_pair('U(1,1)', 'U(1,1)')
    monkeypatch.setattr('app.schubert.schubert_complex.direct_sum', lambda a, b: catalog_matroid('U(1,2)'))
    assert not product_decomposition_check(first, second)


def test_stratification_dot(u11, u22):
    dot = export_stratification_dot(u11)
    assert dot.startswith('digraph "U(1,1)" {')
    for label in ('M(∅,∅)', 'M(1,1)', 'M(∅,1)'):
        assert f'"{label}";' in dot
    assert dot.count('->') == 2
    nodes = [line for line in export_stratification_dot(u22).splitlines() if line.endswith('";') and '->' not in line]
    assert len(nodes) == 9


@pytest.mark.slow
def test_parallel_pair_plus_boolean_rank_two():
    complex_ = build_face_complex(catalog_matroid('pp+U(2,2)'))
    assert complex_.boundary_squares_to_zero()
    assert stratum_order_check(complex_) == []


def test_closure_cells_agree_with_the_face_complex(u11, u22, ex82):
    for matroid in (u11, u22, ex82):
        assert closure_cells_check(build_face_complex(matroid)) == []


def test_missing_closure_cell_is_reported(monkeypatch, u11):
    complex_ = build_face_complex(u11)
    monkeypatch.setattr('app.schubert.schubert_complex.closure_cells_of_cone',
                        lambda rays, n: closure_cells_of_cone(rays, n)[:-1])
    assert len(closure_cells_check(complex_)) == len(build_augmented(u11).fan.cones)
