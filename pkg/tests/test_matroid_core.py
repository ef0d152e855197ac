from itertools import combinations

import pytest

from app.schubert.catalog import catalog_matroid, uniform
from app.schubert.exceptions import (
    DivisionNotExact,
    ElementNotInGroundSet,
    EmptyBases,
    ExchangeAxiomFailure,
    GroundSetOverlap,
    MatroidInputError,
    NotAdmissible,
    ParseError,
    UnequalCardinality,
)
from app.schubert.matroid_core import (
    AdmissiblePair,
    Matroid,
    N_p,
    PairOrder,
    coext_f_identity_check,
    direct_sum,
    n_p_i,
    pair_order,
    whitney_identity_holds,
)


def _coefficients(poly):
    return [int(c) for c in reversed(poly.all_coeffs())]


def test_from_bases_validates_axioms():
    with pytest.raises(EmptyBases):
        Matroid.from_bases(['1'], [])
    with pytest.raises(UnequalCardinality):
        Matroid.from_bases(['1', '2'], [['1'], ['1', '2']])
    with pytest.raises(ElementNotInGroundSet):
        Matroid.from_bases(['1'], [['2']])
    with pytest.raises(ParseError):
        Matroid.from_bases(['1', '1'], [['1']])


def test_exchange_failure_names_the_pair():
    with pytest.raises(ExchangeAxiomFailure) as excinfo:
        Matroid.from_bases(['1', '2', '3', '4'], [['1', '2'], ['3', '4']])
    assert set(excinfo.value.details) == {'basis_a', 'basis_b', 'element'}


def test_basic_invariants(u22, u23, ex82):
    assert u22.whitney_numbers() == [1, 2, 1]
    assert u22.f_vector() == [1, 2, 1]
    assert u23.whitney_numbers() == [1, 3, 1]
    assert u23.f_vector() == [1, 3, 3]
    assert ex82.whitney_numbers() == [1, 2, 1]
    assert ex82.f_vector() == [1, 3, 2]


def test_loops_coloops_and_components(ex82):
    assert ex82.coloops == frozenset({'3'})
    assert ex82.loops == frozenset()
    assert ex82.connected_components() == [('1', '2'), ('3',)]
    loop = catalog_matroid('U(0,1)')
    assert loop.loops == frozenset({'1'})


def test_flats_of_parallel_pair(ex82):
    assert set(ex82.flats) == {
        frozenset(), frozenset({'1', '2'}), frozenset({'3'}), frozenset({'1', '2', '3'})
    }
    assert ex82.closure(['1']) == frozenset({'1', '2'})


def test_admissible_pair_counts(u11, u22, ex82):
    assert len(u11.admissible_pairs()) == 3
    assert len(u22.admissible_pairs()) == 9
    assert len(ex82.admissible_pairs()) == 12
    ranks = [pair.rank for pair in u22.admissible_pairs()]
    assert ranks == sorted(ranks)


def test_pair_order():
    bottom = AdmissiblePair(frozenset(), frozenset(), 0)
    top = AdmissiblePair(frozenset(), frozenset({'1'}), 1)
    point = AdmissiblePair(frozenset({'1'}), frozenset({'1'}), 0)
    assert pair_order(bottom, top) is PairOrder.LESS
    assert pair_order(top, point) is PairOrder.GREATER
    assert pair_order(bottom, point) is PairOrder.INCOMPARABLE
    assert pair_order(top, top) is PairOrder.EQUAL


def test_minor_restricts_then_contracts(u23):
    minor = u23.minor({'1'}, {'1', '2', '3'})
    assert minor.ground == ('2', '3')
    assert minor.rank == 1
    with pytest.raises(NotAdmissible):
        u23.minor({'1', '2', '3'}, {'1', '2', '3'})


def test_minor_f_vector_counts_sets_between(ex82):
    top = AdmissiblePair(frozenset({'3'}), frozenset({'1', '2', '3'}), 1)
    assert ex82.minor_f_vector(top) == [1, 2]
    assert ex82.minor_f_vector(top) == ex82.minor(top.I, top.F).f_vector()


def test_characteristic_polynomials(u22, u23):
    assert _coefficients(u22.characteristic_polynomial()) == [1, -2, 1]
    assert _coefficients(u22.reduced_characteristic_polynomial()) == [-1, 1]
    assert _coefficients(u23.characteristic_polynomial()) == [2, -3, 1]
    assert _coefficients(u23.reduced_characteristic_polynomial()) == [-2, 1]


def test_loops_make_reduced_polynomial_undefined():
    with pytest.raises(DivisionNotExact):
        catalog_matroid('pp+loop').reduced_characteristic_polynomial()


def test_free_coextension(u22, u23):
    assert u22.free_coextension() == Matroid(['0', '1', '2'], [['0', '1', '2']])
    coextension = u23.free_coextension()
    assert coextension == uniform(3, 4, ['0', '1', '2', '3'])
    assert _coefficients(coextension.reduced_characteristic_polynomial()) == [3, -3, 1]


def test_coextension_identity(u22, u23, ex82):
    assert coext_f_identity_check(u22)
    assert coext_f_identity_check(u23)
    assert coext_f_identity_check(ex82)


def test_whitney_identity(u11, u22, u23, ex82):
    for matroid in (u11, u22, u23, ex82):
        assert whitney_identity_holds(matroid)
    assert [N_p(ex82, p) for p in range(3)] == [1, 2, 1]
    assert n_p_i(ex82, 0, -1) == 0
    assert N_p(ex82, 5) == 0


def test_direct_sum_rejects_overlap(u11):
    with pytest.raises(GroundSetOverlap):
        direct_sum(u11, u11)


def test_direct_sum_of_coloops(u11):
    other = Matroid(['2'], [['2']])
    assert direct_sum(u11, other) == catalog_matroid('U(2,2)')


def _all_matroids(max_elements):
    for n in range(1, max_elements + 1):
        ground = [str(i) for i in range(1, n + 1)]
        for r in range(n + 1):
            candidates = list(combinations(ground, r))
            for size in range(1, len(candidates) + 1):
                for bases in combinations(candidates, size):
                    try:
                        yield Matroid.from_bases(ground, bases)
                    except MatroidInputError:
                        continue


@pytest.mark.slow
def test_identities_hold_for_every_matroid_on_five_elements():
    count = 0
    for matroid in _all_matroids(5):
        assert whitney_identity_holds(matroid), matroid.bases
        assert coext_f_identity_check(matroid), matroid.bases
        count += 1
    # labelled matroids on 1..5 elements: 2 + 5 + 16 + 68 + 406
    assert count == 497
