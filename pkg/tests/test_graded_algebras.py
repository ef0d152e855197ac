import pytest

from app.schubert.bergman import build_augmented
from app.schubert.exceptions import DegreeMismatch, NotUnimodular
from app.schubert.fan_geometry import Fan, product_of_lines_fan
from app.schubert.graded_algebras import (
    boolean_chow_palindromic,
    chow_ring,
    mobius_algebra,
    mobius_isomorphism_verdict,
    pullback_generators,
    pullback_relations_check,
    subalgebra_hilbert_and_structure,
    unimodularity_check,
)


def test_mobius_algebra(u22, ex82):
    for matroid in (u22, ex82):
        algebra = mobius_algebra(matroid)
        assert algebra.hilbert_function() == matroid.whitney_numbers()
        assert algebra.is_graded()
        assert algebra.is_associative()
        assert algebra.has_unit()


def test_mobius_product_vanishes_when_ranks_do_not_add(ex82):
    algebra = mobius_algebra(ex82)
    pair = frozenset({'1', '2'})
    assert algebra.multiply({pair: 1}, {pair: 1}) == {}


def test_chow_ring_dimensions(u22):
    assert chow_ring(build_augmented(u22).fan).dims == [1, 3, 1]
    assert chow_ring(product_of_lines_fan(2)).dims == [1, 2, 1]
    assert boolean_chow_palindromic(2)


def test_squares_of_lines_vanish():
    ring = chow_ring(product_of_lines_fan(2))
    x = ring.monomial((0,))
    y = ring.monomial((2,))
    assert ring.multiply(x, x).is_zero
    assert not ring.multiply(x, y).is_zero
    assert ring.monomial((0, 1)).is_zero


def test_products_beyond_the_computed_range():
    ring = chow_ring(product_of_lines_fan(2), 1)
    x = ring.monomial((0,))
    with pytest.raises(DegreeMismatch):
        ring.multiply(x, x)
    line = chow_ring(product_of_lines_fan(1))
    assert line.multiply(line.monomial((0,)), line.monomial((0,))).is_zero


def test_unimodularity():
    unimodularity_check(product_of_lines_fan(2))
    with pytest.raises(NotUnimodular):
        unimodularity_check(Fan.from_maximal(2, [(1, 0), (1, 2)], [[0, 1]]))


def test_pullback(u22, ex82):
    assert len(pullback_generators(u22)) == 2
    for matroid in (u22, ex82):
        assert all(pullback_relations_check(matroid).values())


def test_subalgebra_matches_mobius_algebra(u22, ex82):
    for matroid in (u22, ex82):
        report = subalgebra_hilbert_and_structure(matroid)
        assert report.hilbert == matroid.whitney_numbers()
        assert report.structure_ok
    assert subalgebra_hilbert_and_structure(ex82).witnesses == {'y1=y2': True}


def test_mobius_isomorphism_verdict(u22):
    report = subalgebra_hilbert_and_structure(u22)
    assert mobius_isomorphism_verdict(u22, [1, 2, 1], report)
    assert mobius_isomorphism_verdict(u22, [1], report)
    assert not mobius_isomorphism_verdict(u22, [1, 3, 1], report)
