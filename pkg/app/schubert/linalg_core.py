"""
Exact rational linear algebra and exterior-algebra helpers.

Matrices are sympy DomainMatrix objects over QQ, which keeps every rank and
row reduction exact. Vectors cross module boundaries as tuples of sympy
Rationals (or plain ints). Multivectors are sparse dicts mapping a strictly
increasing index tuple to a coefficient; the dense form of a degree-p
multivector in an n-dimensional space is ordered by ``wedge_indices(n, p)``.
"""

import logging
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import QQ, Rational
from sympy.polys.matrices import DomainMatrix

from app.schubert.exceptions import DegreeMismatch, DimensionMismatch

logger = logging.getLogger(__name__)

Vector = Tuple
Multivector = Dict[Tuple[int, ...], object]
MatrixLike = Union[DomainMatrix, Sequence[Sequence]]


def _qq(value):
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def _rows_to_dicts(rows: Sequence[Sequence]) -> Dict[int, Dict[int, object]]:
    rep = {}
    for i, row in enumerate(rows):
        entries = {j: _qq(x) for j, x in enumerate(row) if x != 0}
        if entries:
            rep[i] = entries
    return rep


def to_domain_matrix(rows: Sequence[Sequence], ncols: Optional[int] = None) -> DomainMatrix:
    """
    Build a sparse DomainMatrix over QQ from a list of rows.

    Args:
        rows: Row vectors (ints, sympy Rationals or QQ elements)
        ncols: Column count; required when rows is empty

    Returns:
        DomainMatrix of shape (len(rows), ncols)
    """
    if ncols is None:
        if not rows:
            raise DimensionMismatch("Column count needed for an empty matrix")
        ncols = len(rows[0])
    for row in rows:
        if len(row) != ncols:
            raise DimensionMismatch(
                "Rows have inconsistent lengths",
                {'expected': ncols, 'found': len(row)}
            )
    return DomainMatrix(_rows_to_dicts(rows), (len(rows), ncols), QQ)


def sparse_matrix(entries: Dict[Tuple[int, int], object], shape: Tuple[int, int]) -> DomainMatrix:
    """Build a DomainMatrix over QQ from a {(row, col): value} map."""
    nrows, ncols = shape
    rep: Dict[int, Dict[int, object]] = {}
    for (i, j), value in entries.items():
        if not (0 <= i < nrows and 0 <= j < ncols):
            raise DimensionMismatch("Entry index out of bounds", {'index': (i, j), 'shape': shape})
        if value != 0:
            rep.setdefault(i, {})[j] = _qq(value)
    return DomainMatrix(rep, shape, QQ)


def _as_matrix(m: MatrixLike) -> DomainMatrix:
    if isinstance(m, DomainMatrix):
        return m
    return to_domain_matrix(list(m))


def _rows_of(m: DomainMatrix, count: Optional[int] = None) -> List[Vector]:
    dense = m.to_Matrix()
    count = dense.rows if count is None else count
    return [tuple(dense.row(i)) for i in range(count)]


def rank(m: MatrixLike) -> int:
    """Rank over QQ."""
    m = _as_matrix(m)
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return 0
    return m.rank()


def kernel_basis(m: MatrixLike) -> List[Vector]:
    """Basis of the right null space; its size is cols - rank."""
    m = _as_matrix(m)
    nrows, ncols = m.shape
    if ncols == 0:
        return []
    if nrows == 0:
        return [tuple(Rational(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    null = m.nullspace()
    if null.shape[0] == 0:
        return []
    return _rows_of(null)


def row_reduce(vectors: Sequence[Sequence], dim: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    """
    Reduced row echelon basis of the span of the given vectors.

    Args:
        vectors: Spanning family, each of length dim
        dim: Ambient dimension

    Returns:
        Tuple of (basis rows, pivot columns). Row i has a 1 in column pivots[i]
        and zeros in every other pivot column, so the coordinates of any w in
        the span are w[pivots].
    """
    if not vectors:
        return [], ()
    m = to_domain_matrix(list(vectors), dim)
    reduced, pivots = m.rref()
    rows = _rows_of(reduced, len(pivots))
    normalised = []
    for row, pivot in zip(rows, pivots):
        lead = row[pivot]
        normalised.append(tuple(x / lead for x in row) if lead != 1 else row)
    return normalised, tuple(pivots)


def subspace_sum_basis(generating_families: Sequence[Sequence[Sequence]]) -> List[Vector]:
    """Basis of the sum of the spans of several families of vectors."""
    stacked = [v for family in generating_families for v in family]
    if not stacked:
        return []
    dims = {len(v) for v in stacked}
    if len(dims) != 1:
        raise DimensionMismatch("Vectors of different dimensions", {'dimensions': sorted(dims)})
    basis, _ = row_reduce(stacked, dims.pop())
    return basis


def solve_exact(columns: Sequence[Sequence], target: Sequence) -> Optional[Vector]:
    """
    Solve sum_j x_j * columns[j] = target exactly.

    Free variables are set to zero. Returns None when the system is
    inconsistent.
    """
    dim = len(target)
    if not columns:
        return () if all(t == 0 for t in target) else None
    for col in columns:
        if len(col) != dim:
            raise DimensionMismatch("Column and target dimensions differ",
                                    {'column': len(col), 'target': dim})
    augmented = [[col[i] for col in columns] + [target[i]] for i in range(dim)]
    reduced, pivots = to_domain_matrix(augmented, len(columns) + 1).rref()
    if len(columns) in pivots:
        return None
    rows = _rows_of(reduced, len(pivots))
    solution = [Rational(0)] * len(columns)
    for row, pivot in zip(rows, pivots):
        solution[pivot] = row[-1] / row[pivot]
    return tuple(solution)


def conic_combination(generators: Sequence[Sequence], target: Sequence) -> Optional[Dict[int, object]]:
    """
    Find a nonnegative combination of generators equal to target.

    By Caratheodory's theorem a feasible target is a nonnegative combination
    of linearly independent generators, so enumerating independent subsets
    and solving each square system decides feasibility exactly.

    Returns:
        {generator index: coefficient} or None if infeasible
    """
    if all(t == 0 for t in target):
        return {}
    if not generators:
        return None
    if solve_exact(generators, target) is None:
        return None
    max_size = min(len(generators), len(target))
    for size in range(1, max_size + 1):
        for subset in combinations(range(len(generators)), size):
            cols = [generators[i] for i in subset]
            if rank(cols) < size:
                continue
            coeffs = solve_exact(cols, target)
            if coeffs is not None and all(c >= 0 for c in coeffs):
                return dict(zip(subset, coeffs))
    return None


def is_zero_product(left: DomainMatrix, right: DomainMatrix) -> bool:
    """True iff left * right is the zero matrix (shapes must compose)."""
    if left.shape[1] != right.shape[0]:
        raise DimensionMismatch("Matrices do not compose",
                                {'left': left.shape, 'right': right.shape})
    if 0 in left.shape or 0 in right.shape:
        return True
    return (left * right).is_zero_matrix


# Exterior algebra

def wedge_indices(n: int, p: int) -> List[Tuple[int, ...]]:
    """Standard basis of the degree-p exterior power of an n-space, in lexicographic order."""
    return list(combinations(range(n), p))


def merge_sign(left: Sequence[int], right: Sequence[int]) -> int:
    """Sign of the permutation sorting left + right, both already increasing."""
    inversions = sum(1 for a in left for b in right if a > b)
    return -1 if inversions % 2 else 1


def vector_to_multivector(vector: Sequence) -> Multivector:
    return {(i,): c for i, c in enumerate(vector) if c != 0}


def wedge_multivectors(a: Multivector, b: Multivector) -> Multivector:
    out: Multivector = {}
    for s, x in a.items():
        for t, y in b.items():
            if set(s) & set(t):
                continue
            key = tuple(sorted(s + t))
            out[key] = out.get(key, 0) + merge_sign(s, t) * x * y
    return {k: v for k, v in out.items() if v != 0}


def wedge(vectors: Iterable[Sequence]) -> Multivector:
    """Wedge product of vectors in the given order."""
    result: Multivector = {(): 1}
    for v in vectors:
        result = wedge_multivectors(result, vector_to_multivector(v))
        if not result:
            break
    return result


def to_dense(multivector: Multivector, n: int, p: int) -> Vector:
    index = {s: i for i, s in enumerate(wedge_indices(n, p))}
    dense = [0] * len(index)
    for s, c in multivector.items():
        if len(s) != p:
            raise DegreeMismatch("Multivector term of wrong degree", {'term': s, 'degree': p})
        dense[index[s]] = c
    return tuple(dense)


def from_dense(vector: Sequence, n: int, p: int) -> Multivector:
    return {s: c for s, c in zip(wedge_indices(n, p), vector) if c != 0}


def wedge_power_basis(vectors: Sequence[Sequence], p: int, dim: Optional[int] = None) -> List[Vector]:
    """
    Dense coordinates of the wedge of every p-subset of the input vectors.

    Subsets are taken in combinations order; each wedge is expanded in the
    basis ``wedge_indices(dim, p)``.
    """
    if dim is None:
        if not vectors:
            raise DimensionMismatch("Ambient dimension needed for an empty family")
        dim = len(vectors[0])
    if p > len(vectors):
        return []
    return [to_dense(wedge([vectors[i] for i in subset]), dim, p)
            for subset in combinations(range(len(vectors)), p)]


def _degree(multivector: Multivector, name: str) -> int:
    degrees = {len(s) for s in multivector}
    if len(degrees) > 1:
        raise DegreeMismatch(f"{name} is not homogeneous", {'degrees': sorted(degrees)})
    return degrees.pop() if degrees else 0


def pairing(vector: Multivector, covector: Multivector):
    """<nu, alpha> with the standard bases dual to each other."""
    return sum((c * covector[s] for s, c in vector.items() if s in covector), 0)


def contract(alpha: Multivector, nu: Multivector) -> Multivector:
    """
    Contraction of a degree-d multivector nu by a degree-p covector alpha.

    The result k satisfies <k, beta> = <nu, alpha ^ beta> for every
    degree-(d - p) covector beta.
    """
    p = _degree(alpha, 'alpha')
    d = _degree(nu, 'nu')
    if alpha and nu and p > d:
        raise DegreeMismatch("Covector degree exceeds multivector degree", {'p': p, 'd': d})
    out: Multivector = {}
    for a, x in alpha.items():
        a_set = set(a)
        for s, y in nu.items():
            if not a_set.issubset(s):
                continue
            rest = tuple(i for i in s if i not in a_set)
            out[rest] = out.get(rest, 0) + merge_sign(a, rest) * x * y
    return {k: v for k, v in out.items() if v != 0}
