from app.checks import run_checks
from app.checks.base_check import FAIL
from app.schubert import filtration_ss
from app.schubert.filtration_ss import (
    acyclicity_check,
    cellular_pages,
    d1_squares_to_zero,
    e1_differential,
    e1_page,
    e2_dims,
    euler_check,
    incidence_mismatches,
    koszul_complexes,
    koszul_homology_total,
    xi1_page,
)
from app.schubert.linalg_core import rank
from app.schubert.pipeline import PipelineOptions
from app.schubert.schubert_complex import build_face_complex
from app.schubert.tropical_cohomology import cochain_complexes


def test_e1_page_of_the_compact_line(u11):
    page = e1_page(u11, 0)
    assert page.dims == {0: 2, 1: 1}
    assert e2_dims(page) == {0: 1, 1: 0}
    assert e2_dims(e1_page(u11, 1)) == {1: 1}


def test_e1_differential_shape(u11):
    d = e1_differential(u11, 0, 0)
    assert d.shape == (1, 2)
    assert rank(d) == 1
    assert e1_differential(u11, 0, 1).shape == (0, 1)


def test_e1_page_of_boolean_rank_two(u22):
    page = e1_page(u22, 0)
    assert page.dims == {0: 4, 1: 4, 2: 1}
    assert e2_dims(page) == {0: 1, 1: 0, 2: 0}


def test_pages_degenerate_to_whitney_numbers(u22, ex82):
    for matroid in (u22, ex82):
        whitney = matroid.whitney_numbers()
        for p in range(matroid.rank + 1):
            page = e1_page(matroid, p)
            assert d1_squares_to_zero(page)
            assert euler_check(matroid, page)
            assert e2_dims(page) == {a: (whitney[p] if a == p else 0) for a in page.dims}


def test_empty_page_above_the_rank(u22):
    assert e1_page(u22, 3).dims == {}


def test_koszul_blocks(u22, ex82):
    for matroid in (u22, ex82):
        whitney = matroid.whitney_numbers()
        for p in range(matroid.rank + 1):
            page = e1_page(matroid, p)
            complexes = koszul_complexes(matroid, page)
            assert acyclicity_check(complexes)
            assert koszul_homology_total(complexes, p) == {p: whitney[p]}
            assert xi1_page(matroid, page) == {(p, 0): whitney[p]}


def test_koszul_block_with_independent_set_is_exact(u11):
    complexes = koszul_complexes(u11, e1_page(u11, 0))
    coloop_block = next(block for block in complexes if block.J)
    assert coloop_block.homology() == {0: 0, 1: 0}


def test_face_complex_pages_match_the_wedge_model(u11, u22, ex82):
    for matroid in (u11, u22, ex82):
        complex_ = build_face_complex(matroid)
        for p, cochains in cochain_complexes(complex_).items():
            assert incidence_mismatches(e1_page(matroid, p), complex_, cochains) == []


def test_face_complex_pages_of_boolean_rank_two(u22):
    complex_ = build_face_complex(u22)
    e1, e2 = cellular_pages(complex_, cochain_complexes(complex_, 0)[0])
    assert [e1[(a, a)] for a in range(3)] == [4, 4, 1]
    assert [e2[(a, a)] for a in range(3)] == [1, 0, 0]
    assert all(dim == 0 for (a, q), dim in e1.items() if a != q)


def test_flipped_incidence_sign_is_detected(monkeypatch, u22):
    original = filtration_ss._successors

    def flipped(matroid, label, covers):
        for target, element, sign, keeps_flat in original(matroid, label, covers):
            if not label.pair.F and element == '1':
                sign = -sign
            yield target, element, sign, keeps_flat

    monkeypatch.setattr(filtration_ss, '_successors', flipped)
    complex_ = build_face_complex(u22)
    page = e1_page(u22, 0)
    assert e2_dims(page)[0] == 0
    assert 'E2[0,0]: wedge 0, cells 1' in incidence_mismatches(page, complex_, cochain_complexes(complex_, 0)[0])

    report = run_checks(u22, PipelineOptions(checks=['spectral-consistency']))
    check = report.checks['spectral-consistency']
    assert check['verdict'] == FAIL
    assert check['details']['rows']['0']['incidence_mismatches']
