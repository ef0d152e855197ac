"""
Simplicial integer fans and the toric combinatorics of products of tropical lines.

Coordinates are integer indices 0..n-1. An OrbitLabel (J, K) names the torus
orbit of the tropical toric variety of (Pi^1)^n whose points have coordinate
+inf on J and -inf on K; its cone is eta_{J,K} = cone(e_j, -e_k).
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from app.schubert.exceptions import (
    DimensionMismatch,
    GeometryError,
    NotAFaceRelation,
    SupportNotContained,
)
from app.schubert.linalg_core import conic_combination, rank, solve_exact

logger = logging.getLogger(__name__)

Ray = Tuple[int, ...]


def primitive(vector: Sequence[int]) -> Ray:
    """Divide an integer vector by the gcd of its entries; the zero vector is returned unchanged."""
    divisor = 0
    for x in vector:
        divisor = gcd(divisor, int(x))
    if divisor in (0, 1):
        return tuple(int(x) for x in vector)
    return tuple(int(x) // divisor for x in vector)


def unit(n: int, i: int, sign: int = 1) -> Ray:
    return tuple(sign if j == i else 0 for j in range(n))


def indicator(n: int, coords: Iterable[int], sign: int = 1) -> Ray:
    coords = set(coords)
    return tuple(sign if j in coords else 0 for j in range(n))


@dataclass(frozen=True, order=True)
class Cone:
    ray_indices: Tuple[int, ...]

    @classmethod
    def of(cls, indices: Iterable[int]) -> 'Cone':
        return cls(tuple(sorted(indices)))

    @property
    def dim(self) -> int:
        return len(self.ray_indices)

    def faces(self) -> List['Cone']:
        return [Cone(sub) for k in range(self.dim + 1) for sub in combinations(self.ray_indices, k)]

    def facets(self) -> List['Cone']:
        return [Cone(sub) for sub in combinations(self.ray_indices, self.dim - 1)] if self.dim else []

    def is_face_of(self, other: 'Cone') -> bool:
        return set(self.ray_indices) <= set(other.ray_indices)


@dataclass(frozen=True)
class OrbitLabel:
    """Sedentarity (J, K): coordinates at +inf and at -inf."""
    J: FrozenSet[int] = frozenset()
    K: FrozenSet[int] = frozenset()

    def __post_init__(self):
        if self.J & self.K:
            raise GeometryError("Orbit label has overlapping J and K",
                                {'J': sorted(self.J), 'K': sorted(self.K)})

    @classmethod
    def origin(cls) -> 'OrbitLabel':
        return cls(frozenset(), frozenset())

    @property
    def killed(self) -> FrozenSet[int]:
        return self.J | self.K

    @property
    def dim(self) -> int:
        return len(self.J) + len(self.K)

    def precedes(self, other: 'OrbitLabel') -> bool:
        return self.J <= other.J and self.K <= other.K

    def cone_rays(self, n: int) -> List[Ray]:
        return [unit(n, j) for j in sorted(self.J)] + [unit(n, k, -1) for k in sorted(self.K)]

    def sort_key(self) -> Tuple:
        return (self.dim, sorted(self.J), sorted(self.K))

    def __repr__(self):
        return f'O({sorted(self.J)},{sorted(self.K)})'


class Fan:
    """
    A simplicial fan in Z^n given by primitive rays and cones as ray-index sets.

    The cone set is closed under faces; simpliciality (ray independence) is
    validated on construction unless validate=False.
    """

    def __init__(self, ambient_dim: int, rays: Sequence[Sequence[int]], cones: Iterable[Cone],
                 validate: bool = True):
        self.ambient_dim = ambient_dim
        self.rays: Tuple[Ray, ...] = tuple(tuple(int(x) for x in r) for r in rays)
        self.cones: FrozenSet[Cone] = frozenset(cones)
        if validate:
            self._validate()

    @classmethod
    def from_maximal(cls, ambient_dim: int, rays: Sequence[Sequence[int]],
                     maximal: Iterable[Iterable[int]], validate: bool = True) -> 'Fan':
        cones = set()
        for indices in maximal:
            cones.update(Cone.of(indices).faces())
        if not cones:
            cones.add(Cone(()))
        return cls(ambient_dim, rays, cones, validate=validate)

    def _validate(self):
        for r in self.rays:
            if len(r) != self.ambient_dim:
                raise DimensionMismatch("Ray of wrong dimension", {'ray': r, 'ambient_dim': self.ambient_dim})
            if not any(r):
                raise GeometryError("Zero ray")
            if primitive(r) != r:
                raise GeometryError("Ray is not primitive", {'ray': r})
        for cone in self.cones:
            for face in cone.faces():
                if face not in self.cones:
                    raise GeometryError("Fan is not closed under faces",
                                        {'cone': cone.ray_indices, 'missing': face.ray_indices})
            if cone.dim and rank(self.ray_vectors(cone)) != cone.dim:
                raise GeometryError("Cone is not simplicial", {'cone': cone.ray_indices})

    def __repr__(self):
        return f'<Fan in Z^{self.ambient_dim}: {len(self.rays)} rays, {len(self.cones)} cones>'

    def ray_vectors(self, cone: Cone) -> List[Ray]:
        return [self.rays[i] for i in cone.ray_indices]

    def sorted_cones(self) -> List[Cone]:
        return sorted(self.cones, key=lambda c: (c.dim, c.ray_indices))

    @property
    def dim(self) -> int:
        return max(c.dim for c in self.cones)

    @property
    def maximal_cones(self) -> List[Cone]:
        return [c for c in self.sorted_cones()
                if not any(c != other and c.is_face_of(other) for other in self.cones)]

    def is_pure(self) -> bool:
        return len({c.dim for c in self.maximal_cones}) == 1

    def cone_counts(self) -> List[int]:
        counts = [0] * (self.dim + 1)
        for c in self.cones:
            counts[c.dim] += 1
        return counts

    def ray_index(self, ray: Sequence[int]) -> Optional[int]:
        ray = tuple(ray)
        for i, r in enumerate(self.rays):
            if r == ray:
                return i
        return None


def product_of_lines_fan(n: int) -> Fan:
    """
    The fan (Pi^1)^n: rays e_i (index 2i) and -e_i (index 2i+1); one cone per
    orbit label (J, K).
    """
    rays = []
    for i in range(n):
        rays.append(unit(n, i))
        rays.append(unit(n, i, -1))
    maximal = [[2 * i + (0 if i in positive else 1) for i in range(n)]
               for k in range(n + 1) for positive in map(set, combinations(range(n), k))]
    return Fan.from_maximal(n, rays, maximal)


def orbit_of_cone(fan: Fan, cone: Cone) -> OrbitLabel:
    """Orbit label of a cone of product_of_lines_fan."""
    J = frozenset(i // 2 for i in cone.ray_indices if i % 2 == 0)
    K = frozenset(i // 2 for i in cone.ray_indices if i % 2 == 1)
    return OrbitLabel(J, K)


def _check_point(fan: Fan, point: Sequence) -> None:
    if len(point) != fan.ambient_dim:
        raise DimensionMismatch("Point and fan dimensions differ",
                                {'point': len(point), 'ambient_dim': fan.ambient_dim})


def cone_coefficients(fan: Fan, point: Sequence) -> Optional[Tuple[Cone, Dict[int, object]]]:
    """
    Locate a point in the fan.

    Returns:
        (maximal cone, {ray index: nonnegative coefficient}) or None when the
        point is outside the support
    """
    _check_point(fan, point)
    for cone in fan.maximal_cones:
        coeffs = solve_exact(fan.ray_vectors(cone), point)
        if coeffs is not None and all(c >= 0 for c in coeffs):
            return cone, dict(zip(cone.ray_indices, coeffs))
    return None



def cone_contains(fan: Fan, point: Sequence) -> bool:
    """True iff point lies in the support of the fan."""
    return cone_coefficients(fan, point) is not None


def courant_value(fan: Fan, ray_index: int, point: Sequence):
    """Value at point of the piecewise linear function that is 1 on the given ray and 0 on all others."""
    located = cone_coefficients(fan, point)
    if located is None:
        raise SupportNotContained("Point outside the fan support", {'point': list(point)})
    return located[1].get(ray_index, 0)


def relint_meets(sigma_rays: Sequence[Sequence[int]], eta_rays: Sequence[Sequence[int]]) -> bool:
    """
    True iff sigma meets the relative interior of eta.

    A point sum(mu_s s) with every mu_s > 0 lies in sigma. Rescaling to
    mu_s >= 1 turns this into conic feasibility of sum(s) over the
    generators of sigma and the negated generators of eta.
    """
    if not eta_rays:
        return True
    target = [sum(col) for col in zip(*eta_rays)]
    generators = [tuple(r) for r in sigma_rays] + [tuple(-x for x in s) for s in eta_rays]
    return conic_combination(generators, target) is not None


def relative_interiors_meet(a_rays: Sequence[Sequence[int]], b_rays: Sequence[Sequence[int]]) -> bool:
    """True iff relint(a) and relint(b) intersect."""
    if not a_rays and not b_rays:
        return True
    n = len(a_rays[0]) if a_rays else len(b_rays[0])
    target = [sum(s[i] for s in b_rays) - sum(r[i] for r in a_rays) for i in range(n)]
    generators = [tuple(r) for r in a_rays] + [tuple(-x for x in s) for s in b_rays]
    return conic_combination(generators, target) is not None


def project(rays: Sequence[Sequence[int]], source: OrbitLabel, target: OrbitLabel) -> Tuple[Ray, ...]:
    """
    Image of cone(rays), living in O(source), under the projection to O(target).

    Coordinates killed by target are set to zero; zero images are dropped and
    the remaining rays primitivised and deduplicated.

    Raises:
        NotAFaceRelation: source does not precede target
    """
    if not source.precedes(target):
        raise NotAFaceRelation(f"{source!r} does not precede {target!r}")
    killed = target.killed
    images = set()
    for r in rays:
        image = tuple(0 if i in killed else x for i, x in enumerate(r))
        if any(image):
            images.add(primitive(image))
    return tuple(sorted(images))


def _in_simplicial_cone(generators: Sequence[Sequence[int]], point: Sequence) -> bool:
    coeffs = solve_exact(generators, point)
    return coeffs is not None and all(c >= 0 for c in coeffs)


def delta_compatible(sigma_fan: Fan, delta: Fan) -> bool:
    """
    True iff every cone of sigma_fan lies in a single cone of delta.

    Raises:
        SupportNotContained: a ray of sigma_fan is outside the support of delta
    """
    for r in sigma_fan.rays:
        if not cone_contains(delta, r):
            raise SupportNotContained("Ray outside the support of delta", {'ray': list(r)})
    for cone in sigma_fan.maximal_cones:
        vectors = sigma_fan.ray_vectors(cone)
        if not any(all(_in_simplicial_cone(delta.ray_vectors(eta), v) for v in vectors)
                   for eta in delta.maximal_cones):
            logger.debug("Cone %s is not inside a single cone of delta", cone.ray_indices)
            return False
    return True


def containing_orbit(rays: Sequence[Sequence[int]]) -> OrbitLabel:
    """
    Smallest cone eta_{J,K} of (Pi^1)^n containing cone(rays).

    Raises:
        SupportNotContained: some coordinate takes both signs
    """
    positive, negative = set(), set()
    for r in rays:
        for i, x in enumerate(r):
            if x > 0:
                positive.add(i)
            elif x < 0:
                negative.add(i)
    if positive & negative:
        raise SupportNotContained("Cone is not contained in a single orthant cone",
                                  {'coordinates': sorted(positive & negative)})
    return OrbitLabel(frozenset(positive), frozenset(negative))


def closure_cells_of_cone(rays: Sequence[Sequence[int]], n: int) -> List[Tuple[OrbitLabel, Tuple[Ray, ...]]]:
    """
    Cells of the closure of cone(rays) in the tropical toric variety of (Pi^1)^n.

    One cell (zeta, pi^zeta(sigma)) per face zeta of the smallest orthant cone
    containing sigma whose relative interior meets sigma; the origin orbit
    contributes sigma itself.
    """
    eta = containing_orbit(rays)
    origin = OrbitLabel.origin()
    cells = []
    for j_size in range(len(eta.J) + 1):
        for J in combinations(sorted(eta.J), j_size):
            for k_size in range(len(eta.K) + 1):
                for K in combinations(sorted(eta.K), k_size):
                    zeta = OrbitLabel(frozenset(J), frozenset(K))
                    if relint_meets(rays, zeta.cone_rays(n)):
                        cells.append((zeta, project(rays, origin, zeta)))
    return sorted(cells, key=lambda cell: (cell[0].sort_key(), cell[1]))


def fan_axioms_check(fan: Fan) -> bool:
    """
    True iff relative interiors of distinct cones are disjoint, which for a
    face-closed simplicial collection means pairwise intersections are faces.
    """
    cones = fan.sorted_cones()
    for a, b in combinations(cones, 2):
        if a.is_face_of(b) or b.is_face_of(a):
            continue
        union = sorted(set(a.ray_indices) | set(b.ray_indices))
        if rank([fan.rays[i] for i in union]) == len(union):
            continue
        if relative_interiors_meet(fan.ray_vectors(a), fan.ray_vectors(b)):
            logger.warning("Cones %s and %s overlap in their relative interiors",
                           a.ray_indices, b.ray_indices)
            return False
    return True
