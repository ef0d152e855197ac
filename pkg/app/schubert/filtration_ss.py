"""
The rank spectral sequence of Y_M and its flat-rank refinement.

The E_1 page in row p has, in column a, one wedge monomial w_S for every
admissible pair (I, F) of rank a and every S in F - I with I + S independent
and |S| = a - p. The differential d_1 wedges with -e_j along (I + j, F) -> (I, F)
and with e_{F-G} along (I, G) -> (I, F).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from sympy.polys.matrices import DomainMatrix

from app.schubert.exceptions import DecompositionFailure
from app.schubert.linalg_core import is_zero_product, rank, sparse_matrix
from app.schubert.matroid_core import AdmissiblePair, Matroid, Subset
from app.schubert.schubert_complex import FaceComplex
from app.schubert.tropical_cohomology import CochainComplex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PageLabel:
    """The basis vector w_S of F_{a-p}(0) of the stratum (I, F)."""
    pair: AdmissiblePair
    S: Tuple[str, ...]

    @property
    def degree(self) -> int:
        return self.pair.rank


@dataclass
class SpectralPage:
    r: int
    p: int
    bases: Dict[int, List[PageLabel]]
    differentials: Dict[int, DomainMatrix] = field(default_factory=dict)
    flat_preserving: Dict[int, DomainMatrix] = field(default_factory=dict)

    @property
    def dims(self) -> Dict[int, int]:
        return {a: len(labels) for a, labels in sorted(self.bases.items())}


def _homology(dims: Dict[int, int], maps: Dict[int, DomainMatrix]) -> Dict[int, int]:
    ranks = {a: rank(m) for a, m in maps.items()}
    return {a: dims[a] - ranks.get(a, 0) - ranks.get(a - 1, 0) for a in sorted(dims)}


def _wedge_sign(matroid: Matroid, element: str, S: Tuple[str, ...]) -> int:
    """Sign of e_element ^ w_S against w_{S + element}."""
    position = matroid.position(element)
    before = sum(1 for s in S if matroid.position(s) < position)
    return -1 if before % 2 else 1


def _labels(matroid: Matroid, p: int) -> Dict[int, List[PageLabel]]:
    bases: Dict[int, List[PageLabel]] = {a: [] for a in range(p, matroid.rank + 1)}
    if p > matroid.rank:
        return {}
    for pair in matroid.admissible_pairs():
        size = pair.rank - p
        if size < 0:
            continue
        for independent in matroid.independent_sets:
            if len(independent) == len(pair.I) + size and pair.I <= independent <= pair.F:
                bases[pair.rank].append(PageLabel(pair, matroid.sort(independent - pair.I)))
    return bases


def _successors(matroid: Matroid, label: PageLabel, covers: Dict[Subset, List[Subset]]):
    """Yield (target pair, added element, coefficient sign, flat preserving) for every d_1 term."""
    J, G, S = label.pair.I, label.pair.F, label.S
    for j in matroid.sort(J):
        target = AdmissiblePair(I=J - {j}, F=G, rank=label.pair.rank + 1)
        yield target, j, -_wedge_sign(matroid, j, S), True
    for F in covers.get(G, []):
        target = AdmissiblePair(I=J, F=F, rank=label.pair.rank + 1)
        for f in matroid.sort(F - G):
            yield target, f, _wedge_sign(matroid, f, S), False


def e1_page(matroid: Matroid, p: int) -> SpectralPage:
    """E_1 in row p with its wedge differential."""
    bases = _labels(matroid, p)
    lattice = matroid.flat_lattice()
    covers: Dict[Subset, List[Subset]] = {}
    for lower, upper in lattice.covers:
        covers.setdefault(lower, []).append(upper)

    index = {a: {label: i for i, label in enumerate(labels)} for a, labels in bases.items()}
    differentials, flat_preserving = {}, {}
    for a in sorted(bases):
        if a + 1 not in bases:
            continue
        full: Dict[Tuple[int, int], int] = {}
        koszul: Dict[Tuple[int, int], int] = {}
        for col, label in enumerate(bases[a]):
            for target, element, sign, keeps_flat in _successors(matroid, label, covers):
                image = PageLabel(target, matroid.sort(set(label.S) | {element}))
                row = index[a + 1][image]
                full[(row, col)] = full.get((row, col), 0) + sign
                if keeps_flat:
                    koszul[(row, col)] = koszul.get((row, col), 0) + sign
        shape = (len(bases[a + 1]), len(bases[a]))
        differentials[a] = sparse_matrix(full, shape)
        flat_preserving[a] = sparse_matrix(koszul, shape)

    page = SpectralPage(r=1, p=p, bases=bases, differentials=differentials, flat_preserving=flat_preserving)
    logger.debug("E_1 row %d of %s: %s", p, matroid.name, page.dims)
    return page


def e1_differential(matroid: Matroid, p: int, a: int) -> DomainMatrix:
    page = e1_page(matroid, p)
    if a not in page.differentials:
        return sparse_matrix({}, (len(page.bases.get(a + 1, [])), len(page.bases.get(a, []))))
    return page.differentials[a]


def d1_squares_to_zero(page: SpectralPage) -> bool:
    return all(is_zero_product(page.differentials[a + 1], page.differentials[a])
               for a in page.differentials if a + 1 in page.differentials)


def e2_dims(page: SpectralPage) -> Dict[int, int]:
    return _homology(page.dims, page.differentials)


def euler_check(matroid: Matroid, page: SpectralPage) -> bool:
    whitney = matroid.whitney_numbers()
    expected = whitney[page.p] if page.p < len(whitney) else 0
    return sum((-1) ** (a - page.p) * dim for a, dim in page.dims.items()) == expected


PageTable = Dict[Tuple[int, int], int]


def _filtration_degrees(complex_: FaceComplex, cochains: CochainComplex) -> Dict[int, List[int]]:
    """Stratum rank of every coordinate of C^{p,q}, in the cochain complex's own order."""
    return {q: [complex_.cells[c].stratum.rank for c in cells for _ in range(cochains.widths[c])]
            for q, cells in cochains.cells.items()}


def cellular_pages(complex_: FaceComplex, cochains: CochainComplex) -> Tuple[PageTable, PageTable]:
    """
    E_1 and E_2 of the stratum rank filtration of C^{p,*}, keyed by (a, q).

    Everything is read off the face complex incidences: E_1 is the cohomology
    of each graded piece, and the rank of d_1 out of column a comes from the
    long exact sequence of the two-step quotient F^a / F^{a+2}.
    """
    degrees = _filtration_degrees(complex_, cochains)
    top = complex_.matroid.rank

    def coordinates(q: int, low: int, high: int) -> List[int]:
        return [i for i, k in enumerate(degrees.get(q, [])) if low <= k <= high]

    def block_rank(q: int, low: int, high: int) -> int:
        if q not in cochains.differentials:
            return 0
        rows, cols = coordinates(q + 1, low, high), coordinates(q, low, high)
        return rank(cochains.differentials[q].extract(rows, cols)) if rows and cols else 0

    quotients: Dict[Tuple[int, int], Dict[int, int]] = {}

    def quotient_cohomology(low: int, high: int) -> Dict[int, int]:
        if (low, high) not in quotients:
            ranks = {q: block_rank(q, low, high) for q in degrees}
            quotients[(low, high)] = {q: len(coordinates(q, low, high)) - ranks[q] - ranks.get(q - 1, 0)
                                      for q in degrees}
        return quotients[(low, high)]

    e1: PageTable = {}
    d1_ranks: PageTable = {}
    for a in range(top + 1):
        graded, above = quotient_cohomology(a, a), quotient_cohomology(a + 1, a + 1)
        pair = quotient_cohomology(a, a + 1)
        previous = 0
        for q in sorted(degrees):
            e1[(a, q)] = graded[q]
            d1_ranks[(a, q)] = above[q] - previous + graded[q] - pair[q]
            previous = d1_ranks[(a, q)]

    e2 = {(a, q): dim - d1_ranks[(a, q)] - d1_ranks.get((a - 1, q - 1), 0) for (a, q), dim in e1.items()}
    return e1, e2


def incidence_mismatches(page: SpectralPage, complex_: FaceComplex, cochains: CochainComplex) -> List[str]:
    """
    Compare the wedge model of E_1 and E_2 in row p with the pages computed
    from the signed incidences of the face complex. The wedge model puts
    column a in total degree q = a.
    """
    e1, e2 = cellular_pages(complex_, cochains)
    wedge_e2 = e2_dims(page)
    mismatches = []
    for (a, q) in sorted(e1):
        expected_e1 = page.dims.get(a, 0) if q == a else 0
        expected_e2 = wedge_e2.get(a, 0) if q == a else 0
        if e1[(a, q)] != expected_e1:
            mismatches.append(f'E1[{a},{q}]: wedge {expected_e1}, cells {e1[(a, q)]}')
        if e2[(a, q)] != expected_e2:
            mismatches.append(f'E2[{a},{q}]: wedge {expected_e2}, cells {e2[(a, q)]}')
    if mismatches:
        logger.warning("Row %d of %s disagrees with the face complex: %s",
                       page.p, complex_.matroid.name, '; '.join(mismatches))
    return mismatches


@dataclass
class KoszulComplexData:
    """The block D(J, F): labels (I, F, S) with I + S = J, graded by |S|."""
    J: Subset
    F: Subset
    p: int
    spaces: Dict[int, List[PageLabel]]
    differentials: Dict[int, DomainMatrix] = field(default_factory=dict)

    def homology(self) -> Dict[int, int]:
        return _homology({k: len(v) for k, v in self.spaces.items()}, self.differentials)


def koszul_complexes(matroid: Matroid, page: SpectralPage) -> List[KoszulComplexData]:
    """
    Split the flat-preserving part of d_1 into Koszul blocks.

    Raises:
        DecompositionFailure: a basis vector or a matrix entry falls outside a single block
    """
    blocks: Dict[Tuple[Subset, Subset], Dict[int, List[PageLabel]]] = {}
    for pair in matroid.admissible_pairs():
        if len(pair.I) == matroid.rank_of(pair.F) - page.p:
            blocks[(pair.I, pair.F)] = {k: [] for k in range(len(pair.I) + 1)}

    where: Dict[PageLabel, Tuple[Tuple[Subset, Subset], int]] = {}
    for a, labels in page.bases.items():
        for label in labels:
            key = (label.pair.I | frozenset(label.S), label.pair.F)
            if key not in blocks:
                raise DecompositionFailure("Basis vector lies in no Koszul block",
                                           {'pair': matroid.pair_label(label.pair), 'S': list(label.S)})
            blocks[key][len(label.S)].append(label)
            where[label] = (key, len(blocks[key][len(label.S)]) - 1)

    entries: Dict[Tuple[Subset, Subset], Dict[int, Dict[Tuple[int, int], object]]] = {
        key: {k: {} for k in spaces} for key, spaces in blocks.items()
    }
    for a, matrix in page.flat_preserving.items():
        for (row, col), value in _nonzero(matrix):
            source, target = page.bases[a][col], page.bases[a + 1][row]
            (block_s, k_s), (block_t, k_t) = where[source], where[target]
            if block_s != block_t:
                raise DecompositionFailure("Differential mixes Koszul blocks",
                                           {'source': matroid.pair_label(source.pair),
                                            'target': matroid.pair_label(target.pair)})
            degree = len(source.S)
            entries[block_s][degree][(k_t, k_s)] = value

    complexes = []
    for (J, F), spaces in blocks.items():
        differentials = {
            k: sparse_matrix(entries[(J, F)][k], (len(spaces[k + 1]), len(spaces[k])))
            for k in spaces if k + 1 in spaces
        }
        complexes.append(KoszulComplexData(J=J, F=F, p=page.p, spaces=spaces, differentials=differentials))
    return complexes


def _nonzero(matrix: DomainMatrix):
    dense = matrix.to_Matrix()
    for i in range(dense.rows):
        for j in range(dense.cols):
            if dense[i, j] != 0:
                yield (i, j), dense[i, j]


def acyclicity_check(complexes: List[KoszulComplexData]) -> bool:
    """Blocks with J nonempty are exact; each block with J empty is a single line in degree 0."""
    for block in complexes:
        homology = block.homology()
        expected = {k: (1 if not block.J and k == 0 else 0) for k in homology}
        if homology != expected:
            logger.warning("Koszul block (%s, %s) has homology %s", sorted(block.J), sorted(block.F), homology)
            return False
    return True


def koszul_homology_total(complexes: List[KoszulComplexData], p: int) -> Dict[int, int]:
    """Total Koszul homology by column a; a block class of S-degree k sits at a = p + k."""
    totals: Dict[int, int] = {}
    for block in complexes:
        for k, dim in block.homology().items():
            if dim:
                totals[p + k] = totals.get(p + k, 0) + dim
    return totals


def xi1_page(matroid: Matroid, page: SpectralPage) -> Dict[Tuple[int, int], int]:
    """
    Homology of E_1 under the flat-preserving part of d_1, indexed by
    (k, l) = (rank of F, a - rank of F).
    """
    by_rank: Dict[int, Dict[int, List[int]]] = {}
    for a, labels in page.bases.items():
        for i, label in enumerate(labels):
            k = matroid.rank_of(label.pair.F)
            by_rank.setdefault(k, {}).setdefault(a, []).append(i)

    table: Dict[Tuple[int, int], int] = {}
    for k, columns in sorted(by_rank.items()):
        dims = {a: len(columns.get(a, [])) for a in page.bases}
        maps = {}
        for a, matrix in page.flat_preserving.items():
            rows, cols = columns.get(a + 1, []), columns.get(a, [])
            maps[a] = matrix.extract(rows, cols) if rows and cols else sparse_matrix({}, (len(rows), len(cols)))
        for a, dim in _homology(dims, maps).items():
            if dim:
                table[(k, a - k)] = dim
    return table
