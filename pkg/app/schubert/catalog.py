"""
Named matroids and the explicit-bases document format.

A matroid document is a JSON object::

    {"name": "ex82", "ground_set": ["1", "2", "3"], "bases": [["1", "3"], ["2", "3"]]}

The ground set order in the document is the canonical element order.
Catalog references are written ``catalog:NAME``, e.g. ``catalog:U(2,3)``.
"""

import json
import logging
import os
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from app.schubert.exceptions import MatroidTooLarge, ParseError
from app.schubert.matroid_core import Matroid, direct_sum

logger = logging.getLogger(__name__)

CATALOG_PREFIX = 'catalog:'
DEFAULT_MAX_ELEMENTS = 8


def _labels(n: int, start: int = 1) -> List[str]:
    return [str(i) for i in range(start, start + n)]


def uniform(r: int, n: int, labels: Optional[Sequence[str]] = None) -> Matroid:
    if not 0 <= r <= n:
        raise ParseError(f"U({r},{n}) needs 0 <= r <= n", {'r': r, 'n': n})
    ground = list(labels) if labels else _labels(n)
    return Matroid(ground, combinations(ground, r), name=f'U({r},{n})')


def boolean(n: int) -> Matroid:
    matroid = uniform(n, n)
    matroid.name = f'boolean({n})'
    return matroid


def parallel(k: int, labels: Optional[Sequence[str]] = None) -> Matroid:
    """k parallel copies of one element: rank 1, every element a basis."""
    matroid = uniform(1, k, labels)
    matroid.name = f'parallel({k})'
    return matroid


def graphic(edges: Sequence[Tuple], name: str = 'graphic') -> Matroid:
    """
    Cycle matroid of a multigraph: element i is edge i (labelled from 1),
    bases are the spanning forests.
    """
    graph = nx.MultiGraph()
    for u, v in edges:
        graph.add_node(u)
        graph.add_node(v)
    keyed = [(u, v, graph.add_edge(u, v)) for u, v in edges]
    r = graph.number_of_nodes() - nx.number_connected_components(graph)
    ground = _labels(len(edges))

    bases = []
    for chosen in combinations(range(len(edges)), r):
        forest = nx.MultiGraph()
        forest.add_nodes_from(graph.nodes)
        forest.add_edges_from(keyed[i] for i in chosen)
        if nx.is_forest(forest):
            bases.append([ground[i] for i in chosen])
    return Matroid(ground, bases, name=name)


def named_graph(name: str) -> Matroid:
    if name not in GRAPHS:
        raise ParseError(f"Unknown graph '{name}'", {'name': name, 'known': sorted(GRAPHS)})
    return graphic(GRAPHS[name], name=f'graphic({name})')


def vamos() -> Matroid:
    """The Vamos matroid: rank 4 on 8 elements, not representable over any field."""
    ground = list('abcdefgh')
    excluded = {frozenset(s) for s in ('abcd', 'abef', 'abgh', 'cdef', 'cdgh')}
    bases = [b for b in combinations(ground, 4) if frozenset(b) not in excluded]
    return Matroid(ground, bases, name='vamos')


def ex81() -> Matroid:
    matroid = uniform(2, 2)
    matroid.name = 'ex81'
    return matroid


def ex82() -> Matroid:
    """Two parallel elements 1, 2 and the coloop 3."""
    return Matroid(['1', '2', '3'], [['1', '3'], ['2', '3']], name='ex82')


def _relabelled(matroid: Matroid, labels: Sequence[str]) -> Matroid:
    mapping = dict(zip(matroid.ground, labels))
    return Matroid(labels, [[mapping[e] for e in b] for b in matroid.bases], name=matroid.name)


def parallel_pair_plus(other: Matroid, name: str) -> Matroid:
    """parallel(2) on {1, 2} summed with a copy of other on the next labels."""
    shifted = _relabelled(other, _labels(len(other.ground), start=3))
    matroid = direct_sum(parallel(2), shifted)
    matroid.name = name
    return matroid


GRAPHS: Dict[str, List[Tuple]] = {
    'triangle': [(0, 1), (1, 2), (0, 2)],
    'path3': [(0, 1), (1, 2), (2, 3)],
    'digon': [(0, 1), (0, 1)],
    'selfloop': [(0, 1), (1, 1)],
    'diamond': [(0, 1), (1, 2), (2, 0), (1, 3), (3, 2)],
}

NAMED: Dict[str, Callable[[], Matroid]] = {
    'ex81': ex81,
    'ex82': ex82,
    'vamos': vamos,
    'triangle': lambda: graphic(GRAPHS['triangle'], name='triangle'),
    'pp+coloop': lambda: parallel_pair_plus(uniform(1, 1), 'pp+coloop'),
    'pp+loop': lambda: parallel_pair_plus(uniform(0, 1), 'pp+loop'),
    'pp+U(2,2)': lambda: parallel_pair_plus(uniform(2, 2), 'pp+U(2,2)'),
}

DESCRIPTIONS: Dict[str, str] = {
    'ex81': 'Boolean matroid of rank 2 on 12',
    'ex82': 'parallel pair 1, 2 plus the coloop 3',
    'vamos': 'non-representable rank-4 matroid on 8 elements',
    'triangle': 'cycle matroid of the triangle, equal to U(2,3)',
    'pp+coloop': 'parallel pair summed with a coloop',
    'pp+loop': 'parallel pair summed with a loop',
    'pp+U(2,2)': 'parallel pair summed with the Boolean matroid of rank 2',
}

PATTERNS: List[Tuple[re.Pattern, Callable[..., Matroid]]] = [
    (re.compile(r'^U\(?(\d+),?(\d+)\)?$'), lambda r, n: uniform(int(r), int(n))),
    (re.compile(r'^boolean\((\d+)\)$'), lambda n: boolean(int(n))),
    (re.compile(r'^parallel\((\d+)\)$'), lambda k: parallel(int(k))),
    (re.compile(r"^graphic\((\w+)\)$"), named_graph),
]

# Factor pairs whose direct sums exercise the Kunneth check.
PRODUCT_PAIRS: List[Tuple[str, str]] = [
    ('U(1,1)', 'U(1,1)'),
    ('parallel(2)', 'U(1,1)'),
    ('U(1,2)', 'U(0,1)'),
]


def catalog_matroid(name: str) -> Matroid:
    """
    Raises:
        ParseError: unknown catalog name
    """
    if name in NAMED:
        return NAMED[name]()
    for pattern, build in PATTERNS:
        match = pattern.match(name)
        if match:
            return build(*match.groups())
    raise ParseError(f"Unknown catalog matroid '{name}'", {'name': name, 'known': catalog_names()})


def catalog_names() -> List[str]:
    return sorted(NAMED) + ['U(r,n)', 'boolean(n)', 'parallel(k)'] + [f'graphic({g})' for g in sorted(GRAPHS)]


def catalog_entries() -> List[Dict]:
    """The named catalog with basic invariants; parametrised families are listed without them."""
    entries = []
    for name in sorted(NAMED):
        matroid = NAMED[name]()
        entries.append({
            'name': name,
            'elements': len(matroid.ground),
            'rank': matroid.rank,
            'description': DESCRIPTIONS.get(name, '')
        })
    for family in ('U(r,n)', 'boolean(n)', 'parallel(k)'):
        entries.append({'name': family, 'elements': None, 'rank': None, 'description': 'family'})
    for g in sorted(GRAPHS):
        matroid = graphic(GRAPHS[g])
        entries.append({
            'name': f'graphic({g})',
            'elements': len(matroid.ground),
            'rank': matroid.rank,
            'description': f'cycle matroid of {g}'
        })
    return entries


@dataclass
class MatroidDocument:
    name: str
    ground_set: List[str]
    bases: List[List[str]]

    @classmethod
    def from_dict(cls, data: Dict) -> 'MatroidDocument':
        """
        Raises:
            ParseError: missing keys or wrongly typed values
        """
        if not isinstance(data, dict):
            raise ParseError("Matroid document must be a JSON object")
        missing = [key for key in ('ground_set', 'bases') if key not in data]
        if missing:
            raise ParseError(f"Matroid document is missing {', '.join(missing)}", {'missing': missing})
        ground, bases = data['ground_set'], data['bases']
        if not isinstance(ground, list) or not all(isinstance(e, str) for e in ground):
            raise ParseError("ground_set must be a list of strings")
        if not isinstance(bases, list) or not all(
                isinstance(b, list) and all(isinstance(e, str) for e in b) for b in bases):
            raise ParseError("bases must be a list of lists of strings")
        return cls(name=str(data.get('name') or 'M'), ground_set=ground, bases=bases)

    @classmethod
    def from_matroid(cls, matroid: Matroid) -> 'MatroidDocument':
        bases = sorted((list(matroid.sort(b)) for b in matroid.bases),
                       key=lambda b: [matroid.position(e) for e in b])
        return cls(name=matroid.name, ground_set=list(matroid.ground), bases=bases)

    def to_dict(self) -> Dict:
        return {'name': self.name, 'ground_set': self.ground_set, 'bases': self.bases}

    def to_matroid(self) -> Matroid:
        return Matroid.from_bases(self.ground_set, self.bases, name=self.name)


def _check_size(matroid: Matroid, max_elements: int) -> Matroid:
    if len(matroid.ground) > max_elements:
        raise MatroidTooLarge(
            f"Ground set of {matroid.name} has {len(matroid.ground)} elements (limit {max_elements})",
            {'elements': len(matroid.ground), 'limit': max_elements}
        )
    return matroid


def parse_matroid(source: Union[str, Dict], max_elements: int = DEFAULT_MAX_ELEMENTS) -> Matroid:
    """
    Parse a matroid document, given as text or as a decoded dict, or a ``catalog:NAME`` reference.

    Raises:
        ParseError: malformed document or unknown catalog name
        MatroidTooLarge: more than max_elements elements
        EmptyBases, UnequalCardinality, ExchangeAxiomFailure, ElementNotInGroundSet:
            forwarded from Matroid.from_bases
    """
    if isinstance(source, dict):
        data = source
    else:
        text = str(source).strip()
        if text.startswith(CATALOG_PREFIX):
            return _check_size(catalog_matroid(text[len(CATALOG_PREFIX):].strip()), max_elements)
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"Invalid JSON: {e.msg}", {'line': e.lineno, 'column': e.colno})
    document = MatroidDocument.from_dict(data)
    if len(document.ground_set) > max_elements:
        raise MatroidTooLarge(
            f"Ground set has {len(document.ground_set)} elements (limit {max_elements})",
            {'elements': len(document.ground_set), 'limit': max_elements}
        )
    return document.to_matroid()


def read_matroid_source(source: str) -> str:
    """The contents of source when it names a document file, else source unchanged."""
    if not source.startswith(CATALOG_PREFIX) and os.path.isfile(source):
        with open(source, encoding='utf-8') as handle:
            return handle.read()
    return source


def factor_pair(first_name: str, second_name: str) -> Tuple[Matroid, Matroid]:
    """Two catalog matroids with the second relabelled past the first, ready for direct_sum."""
    first, second = catalog_matroid(first_name), catalog_matroid(second_name)
    shifted = _relabelled(second, _labels(len(second.ground), start=len(first.ground) + 1))
    return first, shifted
