from itertools import combinations

import pytest

from app.schubert.exceptions import DegreeMismatch, DimensionMismatch
from app.schubert.linalg_core import (
    conic_combination,
    contract,
    is_zero_product,
    kernel_basis,
    pairing,
    rank,
    row_reduce,
    solve_exact,
    subspace_sum_basis,
    to_domain_matrix,
    wedge,
    wedge_multivectors,
    wedge_power_basis,
)


def test_rank_of_dependent_rows():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2


def test_kernel_basis_size_is_corank():
    basis = kernel_basis([[1, 1, 0], [0, 0, 1]])
    assert len(basis) == 1
    (v,) = basis
    assert v[0] == -v[1] and v[2] == 0


def test_row_reduce_pivots_read_coordinates():
    rows, pivots = row_reduce([(1, 1, 0), (2, 2, 0), (0, 1, 1)], 3)
    assert len(rows) == 2
    assert pivots == (0, 1)
    for row, pivot in zip(rows, pivots):
        assert row[pivot] == 1


def test_subspace_sum_rejects_mixed_dimensions():
    assert len(subspace_sum_basis([[(1, 0)], [(0, 1)], [(1, 1)]])) == 2
    with pytest.raises(DimensionMismatch):
        subspace_sum_basis([[(1, 0)], [(1, 0, 0)]])


def test_solve_exact():
    assert solve_exact([(1, 0), (1, 1)], (3, 1)) == (2, 1)
    assert solve_exact([(1, 1)], (1, 0)) is None


def test_conic_combination_needs_nonnegative_coefficients():
    assert conic_combination([(1, 0), (0, 1)], (2, 3)) == {0: 2, 1: 3}
    assert conic_combination([(1, 0), (0, 1)], (-1, 0)) is None
    assert conic_combination([], (0, 0)) == {}


def test_is_zero_product():
    left = to_domain_matrix([[1, 1]])
    right = to_domain_matrix([[1], [-1]])
    assert is_zero_product(left, right)
    with pytest.raises(DimensionMismatch):
        is_zero_product(left, left)


def test_wedge_is_alternating():
    assert wedge([(1, 0), (0, 1)]) == {(0, 1): 1}
    assert wedge([(0, 1), (1, 0)]) == {(0, 1): -1}
    assert wedge([(1, 0), (2, 0)]) == {}


def test_wedge_power_basis_dimension():
    vectors = [(1, 0, 0), (0, 1, 0), (1, 1, 0)]
    assert rank(wedge_power_basis(vectors, 2)) == 1
    assert wedge_power_basis(vectors, 4) == []


def test_contract_is_adjoint_to_wedge():
    e12 = {(0, 1): 1}
    assert contract({(0,): 1}, e12) == {(1,): 1}
    assert contract({(1,): 1}, e12) == {(0,): -1}
    assert pairing(e12, {(0, 1): 1}) == 1


def test_contract_rejects_high_degree_covector():
    with pytest.raises(DegreeMismatch):
        contract({(0, 1): 1}, {(0,): 1})


def test_contraction_pairing_identity_on_every_basis_triple():
    for n in range(1, 6):
        for d in range(n + 1):
            for p in range(d + 1):
                for S in combinations(range(n), d):
                    for A in combinations(range(n), p):
                        for B in combinations(range(n), d - p):
                            nu, alpha, beta = {S: 1}, {A: 1}, {B: 1}
                            assert pairing(contract(alpha, nu), beta) == \
                                pairing(nu, wedge_multivectors(alpha, beta)), (S, A, B)
