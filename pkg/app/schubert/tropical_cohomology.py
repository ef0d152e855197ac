"""
Cellular tropical cohomology of face complexes.

F_p(sigma) is the sum of the p-th exterior powers of the tangent spans of all
cofaces of sigma in the same orbit, stored as a reduced row echelon basis
inside Lambda^p R^E. Cochains are the duals: a cochain on sigma is read off
through the pivot coordinates of that basis.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from app.schubert.bergman import build_augmented
from app.schubert.exceptions import NotBalanced, SignConsistencyFailure
from app.schubert.fan_geometry import Fan
from app.schubert.linalg_core import (
    Vector,
    is_zero_product,
    rank,
    row_reduce,
    sparse_matrix,
    wedge,
    wedge_indices,
    wedge_power_basis,
)
from app.schubert.matroid_core import Matroid, direct_sum
from app.schubert.schubert_complex import FaceComplex, build_face_complex

logger = logging.getLogger(__name__)

CohomologyTable = Dict[Tuple[int, int], int]


@dataclass
class MultiTangentSpace:
    cell: int
    p: int
    basis: List[Vector]
    pivots: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, vector: Sequence) -> Tuple:
        return tuple(vector[i] for i in self.pivots)


def _maximal_cofaces(complex_: FaceComplex) -> List[FrozenSet[int]]:
    """For each cell, the maximal cells above it inside its own orbit."""
    above: Dict[int, List[int]] = {i: [] for i in range(len(complex_.cells))}
    for lower, upper, _ in complex_.covers:
        if complex_.cells[lower].orbit == complex_.cells[upper].orbit:
            above[lower].append(upper)
    maximal: List[Optional[FrozenSet[int]]] = [None] * len(complex_.cells)
    for i in sorted(range(len(complex_.cells)), key=lambda c: -complex_.cells[c].dim):
        if not above[i]:
            maximal[i] = frozenset([i])
        else:
            maximal[i] = frozenset().union(*(maximal[j] for j in above[i]))
    return maximal


class TangentSpaces:
    """Lazy F_p(sigma) for every cell of a complex at a fixed p."""

    def __init__(self, complex_: FaceComplex, p: int, maximal: Optional[List[FrozenSet[int]]] = None):
        self.complex = complex_
        self.p = p
        self.maximal = maximal if maximal is not None else _maximal_cofaces(complex_)
        self._wedges: Dict[int, List[Vector]] = {}
        self._spaces: Dict[int, MultiTangentSpace] = {}

    def wedges(self, cell: int) -> List[Vector]:
        if cell not in self._wedges:
            rays = self.complex.cells[cell].rays
            self._wedges[cell] = wedge_power_basis(rays, self.p, self.complex.ambient_dim)
        return self._wedges[cell]

    def __getitem__(self, cell: int) -> MultiTangentSpace:
        if cell not in self._spaces:
            vectors = [w for top in sorted(self.maximal[cell]) for w in self.wedges(top)]
            basis, pivots = row_reduce(vectors, len(wedge_indices(self.complex.ambient_dim, self.p)))
            self._spaces[cell] = MultiTangentSpace(cell, self.p, basis, pivots)
        return self._spaces[cell]


def multi_tangent(complex_: FaceComplex, cell: int, p: int) -> MultiTangentSpace:
    return TangentSpaces(complex_, p)[cell]


def _project_multivector(vector: Vector, n: int, p: int, killed: FrozenSet[int]) -> Vector:
    if not killed:
        return vector
    return tuple(0 if killed.intersection(idx) else x for idx, x in zip(wedge_indices(n, p), vector))


@dataclass
class CochainComplex:
    p: int
    cells: Dict[int, List[int]]
    dims: Dict[int, int]
    differentials: Dict[int, DomainMatrix] = field(default_factory=dict)
    widths: Dict[int, int] = field(default_factory=dict)  # cell -> dim F_p(cell)

    def cohomology(self) -> Dict[int, int]:
        """dim H^q = dim C^q - rank d_q - rank d_{q-1}."""
        ranks = {q: rank(m) for q, m in self.differentials.items()}
        return {q: self.dims[q] - ranks.get(q, 0) - ranks.get(q - 1, 0) for q in sorted(self.dims)}


def cochain_complex(complex_: FaceComplex, p: int, spaces: Optional[TangentSpaces] = None) -> CochainComplex:
    """
    Assemble C^{p,*} with d_q: C^{p,q} -> C^{p,q+1}.

    Raises:
        SignConsistencyFailure: the coboundary does not square to zero
    """
    spaces = spaces or TangentSpaces(complex_, p)
    n = complex_.ambient_dim
    top = complex_.dim

    offsets: Dict[int, int] = {}
    widths: Dict[int, int] = {}
    dims: Dict[int, int] = {}
    cells: Dict[int, List[int]] = {}
    for q in range(top + 1):
        cells[q] = complex_.cells_of_dim(q)
        total = 0
        for c in cells[q]:
            offsets[c] = total
            widths[c] = spaces[c].dim
            total += widths[c]
        dims[q] = total

    entries: Dict[int, Dict[Tuple[int, int], object]] = {q: {} for q in range(top)}
    for lower, upper, sign in complex_.covers:
        q = complex_.cells[lower].dim
        source, target = spaces[lower], spaces[upper]
        if not source.dim or not target.dim:
            continue
        killed = complex_.cells[lower].orbit.killed
        block = entries[q]
        for r, vector in enumerate(target.basis):
            image = source.coordinates(_project_multivector(vector, n, p, killed))
            for c, x in enumerate(image):
                if x != 0:
                    key = (offsets[upper] + r, offsets[lower] + c)
                    block[key] = block.get(key, 0) + sign * x

    differentials = {q: sparse_matrix(entries[q], (dims[q + 1], dims[q])) for q in range(top)}
    for q in range(top - 1):
        if not is_zero_product(differentials[q + 1], differentials[q]):
            raise SignConsistencyFailure("Coboundary does not square to zero", {'p': p, 'q': q})
    return CochainComplex(p=p, cells=cells, dims=dims, differentials=differentials, widths=widths)


def cochain_complexes(complex_: FaceComplex, max_p: Optional[int] = None) -> Dict[int, CochainComplex]:
    """C^{p,*} for 0 <= p <= max_p, sharing the maximal coface computation."""
    max_p = complex_.dim if max_p is None else max_p
    maximal = _maximal_cofaces(complex_)
    return {p: cochain_complex(complex_, p, TangentSpaces(complex_, p, maximal)) for p in range(max_p + 1)}


def cohomology_table(complex_: FaceComplex, max_p: Optional[int] = None,
                     complexes: Optional[Dict[int, CochainComplex]] = None) -> CohomologyTable:
    """{(p, q): dim H^{p,q}} for 0 <= p <= max_p and 0 <= q <= dim."""
    top = complex_.dim
    complexes = complexes if complexes is not None else cochain_complexes(complex_, max_p)
    table: CohomologyTable = {}
    for p, cochains in sorted(complexes.items()):
        dims = cochains.cohomology()
        for q in range(top + 1):
            table[(p, q)] = dims.get(q, 0)
        logger.debug("H^{%d,*} = %s", p, [table[(p, q)] for q in range(top + 1)])
    return table


def cohomology_dims(matroid: Matroid, max_p: Optional[int] = None) -> CohomologyTable:
    return cohomology_table(build_face_complex(matroid), max_p)


def diagonal_series(table: CohomologyTable) -> List[int]:
    """[dim H^{p,p}] for p = 0, 1, ... as far as the table reaches."""
    p = 0
    series = []
    while (p, p) in table:
        series.append(table[(p, p)])
        p += 1
    return series


def off_diagonal_support(table: CohomologyTable) -> List[Tuple[int, int]]:
    return sorted(key for key, value in table.items() if key[0] != key[1] and value)


def fan_Hc_dims(fan: Fan, p: int) -> Dict[int, int]:
    """Cohomology with compact supports of a fan: every cone enters the cochain complex."""
    complex_ = FaceComplex.from_fan(fan)
    return cochain_complex(complex_, p).cohomology()


def fan_pd_check(matroid: Matroid) -> Tuple[bool, Dict[int, Dict[int, int]]]:
    """
    H_c of the augmented Bergman fan sits in degree a = rank, with
    dim H_c^{p,a} = f^{a-p}.

    Returns:
        (passed, {p: {q: dim}})
    """
    fan = build_augmented(matroid).fan
    a = matroid.rank
    f = matroid.f_vector()
    observed = {p: fan_Hc_dims(fan, p) for p in range(a + 1)}
    passed = all(
        observed[p].get(q, 0) == (f[a - p] if q == a else 0)
        for p in range(a + 1)
        for q in range(a + 1)
    )
    return passed, observed


@dataclass
class FundamentalClass:
    weights: Dict[int, int]
    generators: Dict[int, Dict[Tuple[int, ...], object]]


def fundamental_class(complex_: FaceComplex) -> FundamentalClass:
    """Weight 1 and the wedge of rays in canonical order on every top-dimensional cell."""
    top = complex_.cells_of_dim(complex_.dim)
    return FundamentalClass(
        weights={i: 1 for i in top},
        generators={i: wedge(complex_.cells[i].rays) for i in top}
    )


def balancing_check(complex_: FaceComplex) -> bool:
    """
    The top Borel-Moore chain is a cycle: around every codimension-one cell
    the signed, projected generators sum to zero.

    Raises:
        NotBalanced: some codimension-one cell is unbalanced
    """
    fundamental = fundamental_class(complex_)
    sums: Dict[int, Dict[Tuple[int, ...], object]] = {}
    for lower, upper, sign in complex_.covers:
        if upper not in fundamental.generators:
            continue
        killed = complex_.cells[lower].orbit.killed
        total = sums.setdefault(lower, {})
        for idx, x in fundamental.generators[upper].items():
            if killed.intersection(idx):
                continue
            total[idx] = total.get(idx, 0) + sign * fundamental.weights[upper] * x
    for lower, total in sums.items():
        if any(x != 0 for x in total.values()):
            raise NotBalanced("Fundamental chain is not a cycle",
                              {'cell': repr(complex_.cells[lower].key)})
    return True


def convolve(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def kunneth_check(first: Matroid, second: Matroid) -> Tuple[bool, Dict[str, List[int]]]:
    """Diagonal Hilbert series of Y_{N+O} against the product of the factors' series."""
    series = {
        'first': diagonal_series(cohomology_dims(first)),
        'second': diagonal_series(cohomology_dims(second)),
        'sum': diagonal_series(cohomology_dims(direct_sum(first, second)))
    }
    series['product'] = convolve(series['first'], series['second'])
    return series['sum'] == series['product'], series
