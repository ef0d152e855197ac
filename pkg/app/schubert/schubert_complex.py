"""
The face complex of the tropical matroid Schubert variety Y_M inside (TP^1)^E.

Every cell is a simplicial cone living in a torus orbit O(J, K). Cells come
from projecting cones sigma_{I,F} of the augmented Bergman fan to the orbits
eta_{J,K} meeting their relative interiors; a cell of orbit (J, E-F) belongs to
the stratum of the admissible pair (J, F).

Orientation: a cell is oriented by the wedge of its rays in canonical order
(element rays in ground order, then flag rays by increasing flat). Removing
the ray in position m (1-based) gives a face. Deleting it inside the same
orbit carries sign (-1)^m; killing it by moving to a smaller orbit (an element
ray e_j, or the ray of the largest flag flat) carries sign (-1)^(m-1).
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx
from sympy.polys.matrices import DomainMatrix

from app.schubert.bergman import CompatiblePair, build_augmented, element_ray, orbit_label
from app.schubert.exceptions import SignConsistencyFailure
from app.schubert.fan_geometry import Cone, Fan, OrbitLabel, Ray, closure_cells_of_cone, indicator, project
from app.schubert.linalg_core import is_zero_product, sparse_matrix
from app.schubert.matroid_core import AdmissiblePair, Matroid, Subset, direct_sum, pair_precedes

logger = logging.getLogger(__name__)

CellKey = Tuple[OrbitLabel, FrozenSet[Ray]]


@dataclass(frozen=True)
class Cell:
    orbit: OrbitLabel
    rays: Tuple[Ray, ...]
    stratum: Optional[AdmissiblePair] = None
    independent: Tuple[str, ...] = ()
    flag: Tuple[Subset, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.rays)

    @property
    def key(self) -> CellKey:
        return (self.orbit, frozenset(self.rays))


@dataclass
class FaceComplex:
    cells: List[Cell]
    covers: List[Tuple[int, int, int]]
    ambient_dim: int
    matroid: Optional[Matroid] = None
    index: Dict[CellKey, int] = field(default_factory=dict)
    _by_dim: Dict[int, List[int]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.index = {cell.key: i for i, cell in enumerate(self.cells)}
        by_dim = defaultdict(list)
        for i, cell in enumerate(self.cells):
            by_dim[cell.dim].append(i)
        self._by_dim = dict(by_dim)

    @property
    def dim(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    def cells_of_dim(self, q: int) -> List[int]:
        return self._by_dim.get(q, [])

    def dims_histogram(self) -> Dict[int, int]:
        return {q: len(cells) for q, cells in sorted(self._by_dim.items())}

    def boundary_matrix(self, q: int) -> DomainMatrix:
        """Matrix of the boundary from dim-q cells (columns) to dim-(q-1) cells (rows)."""
        rows = {c: i for i, c in enumerate(self.cells_of_dim(q - 1))}
        cols = {c: j for j, c in enumerate(self.cells_of_dim(q))}
        entries = {(rows[lower], cols[upper]): sign
                   for lower, upper, sign in self.covers if upper in cols}
        return sparse_matrix(entries, (len(rows), len(cols)))

    def boundary_squares_to_zero(self) -> bool:
        return all(is_zero_product(self.boundary_matrix(q - 1), self.boundary_matrix(q))
                   for q in range(2, self.dim + 1))

    @classmethod
    def from_fan(cls, fan: Fan) -> 'FaceComplex':
        """All-cones complex of a fan; every cell sits in the origin orbit."""
        origin = OrbitLabel.origin()
        cones = fan.sorted_cones()
        cells = [Cell(origin, tuple(fan.ray_vectors(cone))) for cone in cones]
        position = {cone: i for i, cone in enumerate(cones)}
        covers = []
        for cone in cones:
            for m, ray in enumerate(cone.ray_indices, start=1):
                facet = Cone(tuple(i for i in cone.ray_indices if i != ray))
                covers.append((position[facet], position[cone], (-1) ** m))
        return cls(cells=cells, covers=covers, ambient_dim=fan.ambient_dim)


def _cell_rays(matroid: Matroid, independent: Sequence[str], flag: Sequence[Subset],
               flat: Subset) -> Tuple[Ray, ...]:
    n = len(matroid.ground)
    rays = [element_ray(matroid, e) for e in independent]
    for g in flag:
        rays.append(indicator(n, [matroid.position(e) for e in flat - g], -1))
    return tuple(rays)


def _make_cell(matroid: Matroid, J: Subset, F: Subset, independent: Sequence[str],
               flag: Sequence[Subset]) -> Cell:
    ground = frozenset(matroid.ground)
    pair = AdmissiblePair(I=J, F=F, rank=matroid.rank_of(F) - len(J))
    return Cell(
        orbit=orbit_label(matroid, J, ground - F),
        rays=_cell_rays(matroid, independent, flag, F),
        stratum=pair,
        independent=tuple(independent),
        flag=tuple(flag)
    )


def _faces(matroid: Matroid, cell: Cell) -> List[Tuple[Cell, int]]:
    """Codimension-one faces of a cell with their incidence signs."""
    J, F = cell.stratum.I, cell.stratum.F
    independent, flag = list(cell.independent), list(cell.flag)
    faces = []
    for m in range(1, cell.dim + 1):
        if m <= len(independent):
            element = independent[m - 1]
            rest = [e for e in independent if e != element]
            faces.append((_make_cell(matroid, J, F, rest, flag), (-1) ** m))
            faces.append((_make_cell(matroid, J | {element}, F, rest, flag), (-1) ** (m - 1)))
        else:
            position = m - len(independent) - 1
            rest = flag[:position] + flag[position + 1:]
            faces.append((_make_cell(matroid, J, F, independent, rest), (-1) ** m))
            if position == len(flag) - 1:
                faces.append((_make_cell(matroid, J, flag[-1], independent, flag[:-1]), (-1) ** (m - 1)))
    return faces


def _cell_sort_key(matroid: Matroid, cell: Cell) -> Tuple:
    return (cell.dim, matroid.pair_key(cell.stratum), cell.orbit.sort_key(), cell.rays)


def _cone_cells(matroid: Matroid, pair: CompatiblePair) -> List[Cell]:
    """Cells of the closure of sigma_{I,F}: one per flat F in the flag or E and per J inside I."""
    cells = []
    for flat in pair.flag + (frozenset(matroid.ground),):
        lower_flags = tuple(g for g in pair.flag if g < flat)
        for size in range(len(pair.I) + 1):
            for J in map(frozenset, combinations(matroid.sort(pair.I), size)):
                cells.append(_make_cell(matroid, J, flat, matroid.sort(pair.I - J), lower_flags))
    return cells


def build_face_complex(matroid: Matroid) -> FaceComplex:
    """
    Build the face complex of Y_M with its signed cover relation.

    Raises:
        SignConsistencyFailure: a boundary cell is missing or the boundary
            does not square to zero
    """
    augmented = build_augmented(matroid)
    origin = OrbitLabel.origin()

    cells: Dict[CellKey, Cell] = {}
    for cone, pair in augmented.cone_label.items():
        sigma_rays = augmented.fan.ray_vectors(cone)
        for cell in _cone_cells(matroid, pair):
            if frozenset(project(sigma_rays, origin, cell.orbit)) != frozenset(cell.rays):
                raise SignConsistencyFailure(
                    "Projected cone disagrees with its combinatorial description",
                    {'cone': augmented.describe_cone(cone), 'orbit': repr(cell.orbit)}
                )
            cells.setdefault(cell.key, cell)

    ordered = sorted(cells.values(), key=lambda c: _cell_sort_key(matroid, c))
    position = {cell.key: i for i, cell in enumerate(ordered)}

    covers = []
    for i, cell in enumerate(ordered):
        for face, sign in _faces(matroid, cell):
            if face.key not in position:
                raise SignConsistencyFailure(
                    "Boundary cell missing from the face complex",
                    {'cell': repr(cell.key), 'face': repr(face.key)}
                )
            covers.append((position[face.key], i, sign))

    complex_ = FaceComplex(cells=ordered, covers=covers, ambient_dim=len(matroid.ground), matroid=matroid)
    if not complex_.boundary_squares_to_zero():
        raise SignConsistencyFailure("Boundary of the face complex does not square to zero",
                                     {'matroid': matroid.name})
    logger.info("Face complex of %s: %d cells %s, %d covers",
                matroid.name, len(ordered), complex_.dims_histogram(), len(covers))
    return complex_


def stratification(complex_: FaceComplex) -> Dict[AdmissiblePair, List[int]]:
    """Cells grouped by stratum, in admissible pair order."""
    matroid = complex_.matroid
    strata: Dict[AdmissiblePair, List[int]] = {pair: [] for pair in matroid.admissible_pairs()}
    for i, cell in enumerate(complex_.cells):
        strata[cell.stratum].append(i)
    return strata


def stratum_fan_check(complex_: FaceComplex) -> List[str]:
    """
    Compare each stratum with the augmented Bergman fan of its minor, with the
    minor's coordinates placed inside R^E.

    Returns:
        Labels of strata whose cone families differ (empty when all agree)
    """
    matroid = complex_.matroid
    n = len(matroid.ground)
    mismatched = []
    for pair, members in stratification(complex_).items():
        minor = matroid.minor(pair.I, pair.F)
        fan = build_augmented(minor).fan
        lifted = Counter()
        for cone in fan.cones:
            rays = []
            for r in fan.ray_vectors(cone):
                vector = [0] * n
                for element, x in zip(minor.ground, r):
                    vector[matroid.position(element)] = x
                rays.append(tuple(vector))
            lifted[frozenset(rays)] += 1
        found = Counter(frozenset(complex_.cells[i].rays) for i in members)
        if lifted != found:
            mismatched.append(matroid.pair_label(pair))
    return mismatched


def closure_cells_check(complex_: FaceComplex) -> List[str]:
    """
    Recompute the cells of every cone of the augmented Bergman fan
    geometrically, as the closure cells of the cone in (TP^1)^E, and compare
    them with the combinatorial cells of the face complex.

    Returns:
        Descriptions of cones whose closure cells differ (empty when all agree)
    """
    matroid = complex_.matroid
    augmented = build_augmented(matroid)
    n = len(matroid.ground)
    mismatched = []
    for cone, pair in sorted(augmented.cone_label.items(), key=lambda item: item[0]):
        closure = {(orbit, frozenset(rays))
                   for orbit, rays in closure_cells_of_cone(augmented.fan.ray_vectors(cone), n)}
        combinatorial = {cell.key for cell in _cone_cells(matroid, pair)}
        if closure != combinatorial or not combinatorial <= complex_.index.keys():
            mismatched.append(augmented.describe_cone(cone))
    if mismatched:
        logger.warning("Closure cells of %d cones of %s disagree with the face complex",
                       len(mismatched), matroid.name)
    return mismatched


def closure_order(complex_: FaceComplex) -> nx.DiGraph:
    """Strata with an edge B -> A whenever a cell of A is a face of a cell of B, transitively closed."""
    matroid = complex_.matroid
    graph = nx.DiGraph()
    graph.add_nodes_from(matroid.admissible_pairs())
    for lower, upper, _ in complex_.covers:
        a, b = complex_.cells[lower].stratum, complex_.cells[upper].stratum
        if a != b:
            graph.add_edge(b, a)
    return nx.transitive_closure_dag(graph)


def stratum_order_check(complex_: FaceComplex) -> List[Tuple[str, str]]:
    """
    Compare closure containment of strata with the admissible pair order.

    Returns:
        (lower, upper) label pairs where the two orders disagree
    """
    matroid = complex_.matroid
    closure = closure_order(complex_)
    disagreements = []
    for lower in matroid.admissible_pairs():
        for upper in matroid.admissible_pairs():
            if lower == upper:
                continue
            in_closure = closure.has_edge(upper, lower)
            if in_closure != pair_precedes(lower, upper):
                disagreements.append((matroid.pair_label(lower), matroid.pair_label(upper)))
    return disagreements


def rank_filtration(complex_: FaceComplex) -> List[List[int]]:
    """levels[k] = cells in strata of rank at least k, for k = 0..d."""
    d = complex_.matroid.rank
    return [[i for i, cell in enumerate(complex_.cells) if cell.stratum.rank >= k] for k in range(d + 1)]


def filtration_respects_coboundary(complex_: FaceComplex) -> bool:
    """No cover goes from a stratum of rank k up to a cell of stratum rank below k."""
    return all(complex_.cells[upper].stratum.rank >= complex_.cells[lower].stratum.rank
               for lower, upper, _ in complex_.covers)


def _stratum_profiles(matroid: Matroid) -> Dict[Tuple[Subset, Subset], Tuple[int, int]]:
    """(dimension, compactly supported Euler characteristic) of every stratum of Y_M."""
    complex_ = build_face_complex(matroid)
    profiles = {}
    for pair, members in stratification(complex_).items():
        dims = [complex_.cells[i].dim for i in members]
        profiles[(pair.I, pair.F)] = (max(dims, default=-1), sum((-1) ** q for q in dims))
    return profiles


def product_decomposition_check(first: Matroid, second: Matroid) -> bool:
    """
    Strata of Y_{N+O} are exactly the products of strata of Y_N and Y_O.

    Builds all three face complexes: every product stratum must exist, with
    dimensions adding and Euler characteristics multiplying, and there must
    be no other strata.
    """
    left, right = _stratum_profiles(first), _stratum_profiles(second)
    found = _stratum_profiles(direct_sum(first, second))
    expected = {
        (a_I | b_I, a_F | b_F): (a_dim + b_dim, a_chi * b_chi)
        for (a_I, a_F), (a_dim, a_chi) in left.items()
        for (b_I, b_F), (b_dim, b_chi) in right.items()
    }
    if found != expected:
        missing = [key for key in expected if found.get(key) != expected[key]]
        logger.warning("Strata of %s+%s are not products: %d of %d differ",
                       first.name, second.name, len(missing) + len(set(found) - set(expected)), len(expected))
        return False
    return True


def export_stratification_dot(matroid: Matroid) -> str:
    """DOT digraph of the admissible pair order: nodes M(I,F), edges the cover relations."""
    pairs = matroid.admissible_pairs()
    graph = nx.DiGraph()
    graph.add_nodes_from(pairs)
    graph.add_edges_from((a, b) for a in pairs for b in pairs if a != b and pair_precedes(a, b))
    hasse = nx.transitive_reduction(graph)

    lines = [f'digraph "{matroid.name}" {{', '  rankdir=BT;', '  node [shape=box];']
    for pair in pairs:
        lines.append(f'  "{matroid.pair_label(pair)}";')
    edges = sorted(hasse.edges(), key=lambda e: (matroid.pair_key(e[0]), matroid.pair_key(e[1])))
    for lower, upper in edges:
        lines.append(f'  "{matroid.pair_label(lower)}" -> "{matroid.pair_label(upper)}";')
    lines.append('}')
    return '\n'.join(lines) + '\n'
