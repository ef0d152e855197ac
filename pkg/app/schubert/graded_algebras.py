"""
Graded Mobius algebras and Chow rings of unimodular simplicial fans.

A Chow ring is computed degree by degree: degree-k monomials supported on
cones, modulo the span of L_i * mu for every coordinate functional L_i and
every degree-(k-1) monomial mu. Classes are stored by their coordinates on
the non-pivot monomials of the reduced relation basis.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from sympy import Matrix

from app.schubert.bergman import build_augmented, is_subfan_of_boolean
from app.schubert.exceptions import DegreeMismatch, NotUnimodular
from app.schubert.fan_geometry import Cone, Fan, courant_value, product_of_lines_fan
from app.schubert.linalg_core import Vector, rank, row_reduce
from app.schubert.matroid_core import Matroid, Subset

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


@dataclass
class GradedAlgebra:
    """A finite graded algebra given by a basis per degree and a product table on basis labels."""
    name: str
    basis: Dict[int, List[Hashable]]
    table: Dict[Tuple[Hashable, Hashable], Dict[Hashable, object]]
    unit: Hashable
    _degree: Dict[Hashable, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._degree = {label: k for k, labels in self.basis.items() for label in labels}

    def degree_of(self, label: Hashable) -> int:
        return self._degree[label]

    def hilbert_function(self) -> List[int]:
        top = max(self.basis) if self.basis else -1
        return [len(self.basis.get(k, [])) for k in range(top + 1)]

    def multiply(self, x: Dict[Hashable, object], y: Dict[Hashable, object]) -> Dict[Hashable, object]:
        out: Dict[Hashable, object] = {}
        for a, s in x.items():
            for b, t in y.items():
                for c, u in self.table.get((a, b), {}).items():
                    out[c] = out.get(c, 0) + s * t * u
        return {c: v for c, v in out.items() if v != 0}

    def is_graded(self) -> bool:
        return all(self.degree_of(c) == self.degree_of(a) + self.degree_of(b)
                   for (a, b), image in self.table.items() for c in image)

    def is_associative(self) -> bool:
        labels = list(self._degree)
        for a in labels:
            for b in labels:
                ab = self.multiply({a: 1}, {b: 1})
                for c in labels:
                    if self.multiply(ab, {c: 1}) != self.multiply({a: 1}, self.multiply({b: 1}, {c: 1})):
                        return False
        return True

    def has_unit(self) -> bool:
        return all(self.multiply({self.unit: 1}, {a: 1}) == {a: 1} == self.multiply({a: 1}, {self.unit: 1})
                   for a in self._degree)


def mobius_algebra(matroid: Matroid) -> GradedAlgebra:
    """B(M): y_F * y_G = y_{F v G} when ranks add, 0 otherwise."""
    lattice = matroid.flat_lattice()
    basis: Dict[int, List[Subset]] = {}
    for flat in lattice.flats:
        basis.setdefault(lattice.rank_of[flat], []).append(flat)
    table = {}
    for a in lattice.flats:
        for b in lattice.flats:
            join = lattice.join(a, b)
            if lattice.rank_of[join] == lattice.rank_of[a] + lattice.rank_of[b]:
                table[(a, b)] = {join: 1}
    return GradedAlgebra(name=f'B({matroid.name})', basis=basis, table=table, unit=lattice.bottom)


@dataclass(frozen=True)
class ChowClass:
    degree: int
    coords: Tuple

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def unimodularity_check(fan: Fan) -> None:
    """
    Raises:
        NotUnimodular: the rays of some maximal cone do not extend to a lattice basis
    """
    n = fan.ambient_dim
    for cone in fan.maximal_cones:
        rays = fan.ray_vectors(cone)
        if not rays:
            continue
        divisor = 0
        for cols in combinations(range(n), len(rays)):
            divisor = gcd(divisor, int(Matrix([[r[c] for c in cols] for r in rays]).det()))
            if divisor == 1:
                break
        if divisor != 1:
            raise NotUnimodular("Cone rays do not extend to a lattice basis",
                                {'cone': list(cone.ray_indices), 'gcd_of_minors': divisor})


class ChowRing:
    """A(Sigma) in degrees 0..max_degree; degrees above the fan dimension vanish."""

    def __init__(self, fan: Fan, max_degree: Optional[int] = None):
        unimodularity_check(fan)
        self.fan = fan
        self.max_degree = fan.dim if max_degree is None else max_degree
        self.monomials: Dict[int, List[Monomial]] = {0: [()]}
        self._index: Dict[int, Dict[Monomial, int]] = {0: {(): 0}}
        self._relations: Dict[int, Tuple[List[Vector], Tuple[int, ...]]] = {0: ([], ())}
        self.basis: Dict[int, List[Monomial]] = {0: [()]}
        for k in range(1, self.max_degree + 1):
            self._build_degree(k)
        logger.info("Chow ring of %r: dims %s", fan, self.dims)

    def supported(self, monomial: Monomial) -> bool:
        return Cone.of(set(monomial)) in self.fan.cones

    def _build_degree(self, k: int) -> None:
        found = set()
        for mu in self.monomials[k - 1]:
            for rho in range(len(self.fan.rays)):
                candidate = tuple(sorted(mu + (rho,)))
                if self.supported(candidate):
                    found.add(candidate)
        monomials = sorted(found)
        index = {m: i for i, m in enumerate(monomials)}
        relations = []
        for mu in self.monomials[k - 1]:
            for i in range(self.fan.ambient_dim):
                vector = [0] * len(monomials)
                for rho, ray in enumerate(self.fan.rays):
                    if ray[i] == 0:
                        continue
                    candidate = tuple(sorted(mu + (rho,)))
                    if candidate in index:
                        vector[index[candidate]] += ray[i]
                if any(vector):
                    relations.append(vector)
        rows, pivots = row_reduce(relations, len(monomials)) if monomials else ([], ())
        self.monomials[k] = monomials
        self._index[k] = index
        self._relations[k] = (rows, pivots)
        self.basis[k] = [m for i, m in enumerate(monomials) if i not in set(pivots)]

    @property
    def dims(self) -> List[int]:
        return [len(self.basis[k]) for k in range(self.max_degree + 1)]

    def normal_form(self, k: int, vector: Sequence) -> ChowClass:
        """Class of a vector given in degree-k monomial coordinates."""
        rows, pivots = self._relations[k]
        reduced = list(vector)
        for row, pivot in zip(rows, pivots):
            coefficient = reduced[pivot]
            if coefficient != 0:
                reduced = [x - coefficient * y for x, y in zip(reduced, row)]
        pivot_set = set(pivots)
        coords = tuple(x for i, x in enumerate(reduced) if i not in pivot_set)
        return ChowClass(k, coords)

    def zero(self, k: int) -> ChowClass:
        return ChowClass(k, tuple([0] * len(self.basis.get(k, []))))

    def monomial(self, monomial: Monomial) -> ChowClass:
        k = len(monomial)
        if k > self.max_degree:
            return self._beyond(k)
        monomial = tuple(sorted(monomial))
        if monomial not in self._index[k]:
            return self.zero(k)
        vector = [0] * len(self.monomials[k])
        vector[self._index[k][monomial]] = 1
        return self.normal_form(k, vector)

    def linear(self, coefficients: Dict[int, object]) -> ChowClass:
        """The degree-one class sum c_rho x_rho."""
        if self.max_degree < 1:
            return self._beyond(1)
        vector = [0] * len(self.monomials[1])
        for rho, c in coefficients.items():
            vector[self._index[1][(rho,)]] += c
        return self.normal_form(1, vector)

    def _beyond(self, k: int) -> ChowClass:
        if self.max_degree < self.fan.dim:
            raise DegreeMismatch("Product degree exceeds the computed range",
                                 {'degree': k, 'max_degree': self.max_degree})
        return ChowClass(k, ())

    def multiply(self, a: ChowClass, b: ChowClass) -> ChowClass:
        k = a.degree + b.degree
        if k > self.max_degree:
            return self._beyond(k)
        vector = [0] * len(self.monomials[k])
        for m, x in zip(self.basis[a.degree], a.coords):
            if x == 0:
                continue
            for n, y in zip(self.basis[b.degree], b.coords):
                if y == 0:
                    continue
                product = tuple(sorted(m + n))
                if product in self._index[k]:
                    vector[self._index[k][product]] += x * y
        return self.normal_form(k, vector)


def chow_ring(fan: Fan, max_degree: Optional[int] = None) -> ChowRing:
    return ChowRing(fan, max_degree)


def _positive_part_coefficients(fan: Fan, i: int) -> Dict[int, object]:
    return {rho: ray[i] for rho, ray in enumerate(fan.rays) if ray[i] > 0}


def pullback_generators(matroid: Matroid, ring: Optional[ChowRing] = None) -> List[ChowClass]:
    """y_i = sum over rays of max(u_i, 0) x_rho, for every element in ground order."""
    ring = ring or chow_ring(build_augmented(matroid).fan, matroid.rank)
    return [ring.linear(_positive_part_coefficients(ring.fan, matroid.position(e))) for e in matroid.ground]


def pullback_relations_check(matroid: Matroid) -> Dict[str, bool]:
    """
    Along A((P^1)^E) -> A(Sigma+_E) -> A(Sigma+_M): coarse linear relations
    pull back to zero, the composite agrees with the direct y_i, and y_i^2 = 0.
    """
    n = len(matroid.ground)
    coarse = product_of_lines_fan(n)
    boolean = Matroid(matroid.ground, [matroid.ground], name='Boolean')
    fine_fan = build_augmented(boolean).fan
    fine = chow_ring(fine_fan, 1)

    def pull_to_fine(coarse_coefficients: Dict[int, object]) -> Dict[int, object]:
        out: Dict[int, object] = {}
        for rho, ray in enumerate(fine_fan.rays):
            value = sum(c * courant_value(coarse, tau, ray) for tau, c in coarse_coefficients.items())
            if value != 0:
                out[rho] = value
        return out

    relations_vanish = all(
        fine.linear(pull_to_fine({tau: ray[i] for tau, ray in enumerate(coarse.rays) if ray[i]})).is_zero
        for i in range(n)
    )

    augmented = build_augmented(matroid)
    target = chow_ring(augmented.fan, matroid.rank)
    direct = pullback_generators(matroid, target)
    composite_agrees = is_subfan_of_boolean(matroid)
    for i in range(n):
        fine_coefficients = pull_to_fine({2 * i: 1})
        restricted: Dict[int, object] = {}
        for rho, c in fine_coefficients.items():
            index = augmented.fan.ray_index(fine_fan.rays[rho])
            if index is not None:
                restricted[index] = restricted.get(index, 0) + c
        if target.linear(restricted) != direct[i]:
            composite_agrees = False

    squares_vanish = all(target.multiply(y, y).is_zero for y in direct) if matroid.rank >= 2 else True
    return {
        'relations_vanish': relations_vanish,
        'composite_agrees': composite_agrees,
        'squares_vanish': squares_vanish
    }


def _span_rank(classes: Sequence[ChowClass]) -> int:
    vectors = [c.coords for c in classes if c.coords]
    return rank(vectors) if vectors else 0


@dataclass
class SubalgebraReport:
    hilbert: List[int]
    squares_vanish: bool
    dependent_vanish: bool
    closure_equal: bool
    flats_independent: bool
    structure_matches: bool
    witnesses: Dict[str, bool] = field(default_factory=dict)

    @property
    def structure_ok(self) -> bool:
        return (self.squares_vanish and self.dependent_vanish and self.closure_equal
                and self.flats_independent and self.structure_matches)

    def to_dict(self) -> Dict:
        return {
            'hilbert': self.hilbert,
            'squares_vanish': self.squares_vanish,
            'dependent_vanish': self.dependent_vanish,
            'closure_equal': self.closure_equal,
            'flats_independent': self.flats_independent,
            'structure_matches': self.structure_matches,
            'witnesses': dict(sorted(self.witnesses.items()))
        }


def subalgebra_hilbert_and_structure(matroid: Matroid, ring: Optional[ChowRing] = None) -> SubalgebraReport:
    """
    The subalgebra of A(Sigma+_M) generated by the y_i, compared with B(M)
    under y_I -> y_{cl(I)}.
    """
    ring = ring or chow_ring(build_augmented(matroid).fan, matroid.rank)
    d = matroid.rank
    y = dict(zip(matroid.ground, pullback_generators(matroid, ring)))

    products: Dict[Tuple[str, ...], ChowClass] = {(): ring.monomial(())}
    for k in range(1, d + 1):
        for subset in combinations(matroid.ground, k):
            products[subset] = ring.multiply(products[subset[:-1]], y[subset[-1]])

    hilbert = [_span_rank([c for s, c in products.items() if len(s) == k]) for k in range(d + 1)]
    squares_vanish = all(ring.multiply(c, c).is_zero for c in y.values()) if d >= 2 else True
    dependent_vanish = all(c.is_zero for s, c in products.items() if not matroid.is_independent(s))

    representative: Dict[Subset, Tuple[str, ...]] = {}
    closure_equal = True
    for independent in matroid.independent_sets:
        key = matroid.sort(independent)
        flat = matroid.closure(independent)
        if len(independent) != matroid.rank_of(flat):
            continue
        if flat not in representative:
            representative[flat] = key
        elif products[key] != products[representative[flat]]:
            closure_equal = False

    flats_independent = all(
        _span_rank([products[representative[f]] for f in matroid.flats if matroid.rank_of(f) == k])
        == matroid.whitney_numbers()[k]
        for k in range(d + 1)
    )

    algebra = mobius_algebra(matroid)
    structure_matches = True
    for a in matroid.flats:
        for b in matroid.flats:
            product = ring.multiply(products[representative[a]], products[representative[b]])
            expected = algebra.table.get((a, b))
            if expected is None:
                ok = product.is_zero
            else:
                (join, _), = expected.items()
                ok = product == products[representative[join]]
            if not ok:
                structure_matches = False

    witnesses = {}
    ground = matroid.ground
    for first, second in combinations(ground, 2):
        if matroid.closure([first]) == matroid.closure([second]) and matroid.is_independent([first]):
            witnesses[f'y{first}=y{second}'] = y[first] == y[second]
    report = SubalgebraReport(
        hilbert=hilbert,
        squares_vanish=squares_vanish,
        dependent_vanish=dependent_vanish,
        closure_equal=closure_equal,
        flats_independent=flats_independent,
        structure_matches=structure_matches,
        witnesses=witnesses
    )
    logger.info("Subalgebra of %s: Hilbert %s, structure %s", matroid.name, hilbert, report.structure_ok)
    return report


def mobius_isomorphism_verdict(matroid: Matroid, diagonal: Sequence[int], report: Optional[SubalgebraReport] = None) -> bool:
    """
    Hilbert function = Whitney numbers = diagonal cohomology, and the structure
    matches B(M). A diagonal computed only up to some p is compared up to p.
    """
    report = report or subalgebra_hilbert_and_structure(matroid)
    whitney = matroid.whitney_numbers()
    reach = len(diagonal)
    return (report.hilbert == whitney
            and whitney[:reach] == list(diagonal)
            and report.structure_ok)


def boolean_chow_palindromic(n: int) -> bool:
    ground = [str(i + 1) for i in range(n)]
    ring = chow_ring(build_augmented(Matroid(ground, [ground], name=f'B{n}')).fan)
    return ring.dims == ring.dims[::-1]
