import json

import pytest

from app.schubert.catalog import (
    MatroidDocument,
    catalog_entries,
    catalog_matroid,
    catalog_names,
    factor_pair,
    parse_matroid,
    read_matroid_source,
    uniform,
)
from app.schubert.exceptions import EmptyBases, ExchangeAxiomFailure, MatroidTooLarge, ParseError
from app.schubert.matroid_core import direct_sum

EX82_DOCUMENT = {'name': 'ex82', 'ground_set': ['1', '2', '3'], 'bases': [['1', '3'], ['2', '3']]}


def test_parse_document(ex82):
    matroid = parse_matroid(json.dumps(EX82_DOCUMENT))
    assert matroid == ex82
    assert matroid.name == 'ex82'
    assert MatroidDocument.from_matroid(ex82).to_dict() == EX82_DOCUMENT


def test_parse_catalog_references():
    assert len(parse_matroid('catalog:U(2,3)').bases) == 3
    assert parse_matroid('catalog:boolean(3)').rank == 3
    assert parse_matroid(' catalog:ex82 ').name == 'ex82'


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_matroid('{not json')
    with pytest.raises(ParseError):
        parse_matroid(json.dumps({'ground_set': ['1']}))
    with pytest.raises(ParseError):
        parse_matroid(json.dumps({'ground_set': [1], 'bases': [[1]]}))
    with pytest.raises(ParseError):
        parse_matroid('catalog:no-such-matroid')
    with pytest.raises(EmptyBases):
        parse_matroid(json.dumps({'ground_set': [], 'bases': []}))
    with pytest.raises(ExchangeAxiomFailure):
        parse_matroid(json.dumps({'ground_set': ['a', 'b', 'c', 'd'], 'bases': [['a', 'b'], ['c', 'd']]}))


def test_size_limit():
    assert len(parse_matroid('catalog:vamos').ground) == 8
    with pytest.raises(MatroidTooLarge):
        parse_matroid('catalog:vamos', max_elements=6)
    with pytest.raises(MatroidTooLarge):
        parse_matroid(json.dumps({'ground_set': list('abcdefg'), 'bases': [[]]}), max_elements=6)


def test_graphic_matroids():
    assert catalog_matroid('triangle') == uniform(2, 3)
    assert catalog_matroid('graphic(digon)') == catalog_matroid('parallel(2)')
    assert catalog_matroid('graphic(selfloop)').loops == frozenset({'2'})
    assert catalog_matroid('graphic(path3)') == catalog_matroid('boolean(3)')


def test_vamos_is_rank_four_on_eight():
    vamos = catalog_matroid('vamos')
    assert vamos.rank == 4
    assert len(vamos.bases) == 65


def test_named_sums():
    assert catalog_matroid('pp+coloop') == catalog_matroid('ex82')
    assert catalog_matroid('pp+U(2,2)').whitney_numbers() == [1, 3, 3, 1]


def test_factor_pair_is_disjoint():
    first, second = factor_pair('U(1,1)', 'U(1,1)')
    assert second.ground == ('2',)
    assert direct_sum(first, second) == catalog_matroid('U(2,2)')


def test_catalog_listing():
    names = [entry['name'] for entry in catalog_entries()]
    assert 'ex82' in names and 'U(r,n)' in names
    assert 'graphic(triangle)' in catalog_names()


def test_read_matroid_source_from_file(tmp_path, ex82):
    path = tmp_path / 'ex82.json'
    path.write_text(json.dumps(EX82_DOCUMENT), encoding='utf-8')
    assert parse_matroid(read_matroid_source(str(path))) == ex82
    assert read_matroid_source('catalog:ex82') == 'catalog:ex82'
    assert read_matroid_source(str(tmp_path / 'missing.json')) == str(tmp_path / 'missing.json')


def test_parse_matroid_accepts_decoded_documents(ex82):
    assert parse_matroid(EX82_DOCUMENT) == ex82
    with pytest.raises(MatroidTooLarge):
        parse_matroid(EX82_DOCUMENT, max_elements=2)
    with pytest.raises(ParseError):
        parse_matroid({'ground_set': ['1']})
