"""
Bergman fans and augmented Bergman fans of matroids.

Coordinates of R^E follow the ground order of the matroid. The augmented fan
lists its rays as e_i for every non-loop i (ground order) followed by
-e_{E-F} for every proper flat F (flat order, which refines rank order), so
sorted ray indices of a cone are exactly its canonical orientation order.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from app.schubert.exceptions import HasLoops
from app.schubert.fan_geometry import (
    Cone,
    Fan,
    OrbitLabel,
    Ray,
    cone_contains,
    containing_orbit,
    indicator,
    relint_meets,
    unit,
)
from app.schubert.matroid_core import Matroid, Subset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompatiblePair:
    """An independent set I with a strictly increasing flag of proper flats, each containing I."""
    I: Subset
    flag: Tuple[Subset, ...]

    @property
    def dim(self) -> int:
        return len(self.I) + len(self.flag)


def _chains(flats: Sequence[Subset]) -> List[Tuple[Subset, ...]]:
    """All strictly increasing chains (including the empty one) among flats given in rank order."""
    chains = [()]

    def extend(chain, start):
        for idx in range(start, len(flats)):
            if not chain or chain[-1] < flats[idx]:
                longer = chain + (flats[idx],)
                chains.append(longer)
                extend(longer, idx + 1)

    extend((), 0)
    return chains


def compatible_pairs(matroid: Matroid) -> List[CompatiblePair]:
    ground = frozenset(matroid.ground)
    proper = [f for f in matroid.flats if f != ground]
    pairs = []
    for independent in matroid.independent_sets:
        above = [f for f in proper if independent <= f]
        pairs.extend(CompatiblePair(independent, chain) for chain in _chains(above))
    return pairs


@dataclass
class AugmentedBergmanFan:
    matroid: Matroid
    fan: Fan
    cone_label: Dict[Cone, CompatiblePair]
    ray_label: Tuple[str, ...] = field(default=())

    @property
    def label_to_cone(self) -> Dict[CompatiblePair, Cone]:
        return {label: cone for cone, label in self.cone_label.items()}

    def describe_cone(self, cone: Cone) -> str:
        label = self.cone_label[cone]
        flags = ','.join(self.matroid.label(f) for f in label.flag)
        return f'σ({self.matroid.label(label.I)};{{{flags}}})'


def element_ray(matroid: Matroid, element: str) -> Ray:
    return unit(len(matroid.ground), matroid.position(element))


def flat_ray(matroid: Matroid, flat: Subset) -> Ray:
    """-e_{E-F} in the coordinates of R^E."""
    complement = [matroid.position(e) for e in matroid.ground if e not in flat]
    return indicator(len(matroid.ground), complement, -1)


def build_augmented(matroid: Matroid) -> AugmentedBergmanFan:
    """
    The augmented Bergman fan: one cone cone(e_i, i in I) + cone(-e_{E-F}, F in flag)
    per compatible pair. Loops carry no ray and sit at coordinate 0 of every
    flat ray, which realises the fan of the loopless part inside R^E.
    """
    n = len(matroid.ground)
    ground = frozenset(matroid.ground)
    elements = [e for e in matroid.ground if e not in matroid.loops]
    proper = [f for f in matroid.flats if f != ground]

    rays: List[Ray] = [element_ray(matroid, e) for e in elements]
    ray_label = [f'e_{e}' for e in elements]
    rays += [flat_ray(matroid, f) for f in proper]
    ray_label += [f'-e_E\\{matroid.label(f)}' for f in proper]

    element_index = {e: i for i, e in enumerate(elements)}
    flat_index = {f: len(elements) + i for i, f in enumerate(proper)}

    cone_label: Dict[Cone, CompatiblePair] = {}
    for pair in compatible_pairs(matroid):
        indices = [element_index[e] for e in matroid.sort(pair.I)] + [flat_index[f] for f in pair.flag]
        cone_label[Cone(tuple(indices))] = pair

    fan = Fan(n, rays, cone_label.keys())
    logger.info("Augmented Bergman fan of %s: %d rays, cone counts %s",
                matroid.name, len(rays), fan.cone_counts())
    return AugmentedBergmanFan(matroid=matroid, fan=fan, cone_label=cone_label, ray_label=tuple(ray_label))


def bergman_ray(matroid: Matroid, flat: Subset) -> Ray:
    """Ray of a proper nonempty flat in the slice of R^E/<e_E> where the last coordinate is 0."""
    last = matroid.ground[-1]
    if last in flat:
        return flat_ray(matroid, flat)
    return indicator(len(matroid.ground), [matroid.position(e) for e in flat])


def build_bergman(matroid: Matroid) -> Fan:
    """
    The Bergman fan: one cone per flag of proper nonempty flats.

    Raises:
        HasLoops: the matroid has loops
    """
    if matroid.loops:
        raise HasLoops("Bergman fans need a loopless matroid",
                       {'loops': list(matroid.sort(matroid.loops))})
    ground = frozenset(matroid.ground)
    proper = [f for f in matroid.flats if f and f != ground]
    rays = [bergman_ray(matroid, f) for f in proper]
    index = {f: i for i, f in enumerate(proper)}
    cones = [Cone(tuple(index[f] for f in chain)) for chain in _chains(proper)]
    return Fan(len(matroid.ground), rays, cones)


def to_slice(vector: Sequence) -> Tuple:
    """Representative of the class of vector modulo the all-ones direction with last coordinate 0."""
    shift = vector[-1]
    return tuple(x - shift for x in vector)


def gamma(vector: Sequence) -> Tuple:
    """[a_0, a_1, ..., a_n] -> (a_1 - a_0, ..., a_n - a_0)."""
    return tuple(x - vector[0] for x in vector[1:])


def gamma_inverse(vector: Sequence) -> Tuple:
    return to_slice((0,) + tuple(vector))


def _sample_points(fan: Fan) -> List[Tuple]:
    """Rays, cone barycenters and the depth-two barycentric points of every cone."""
    points = set()
    for cone in fan.sorted_cones():
        vectors = fan.ray_vectors(cone)
        if not vectors:
            points.add(tuple([0] * fan.ambient_dim))
            continue
        barycenter = tuple(sum(col) for col in zip(*vectors))
        points.add(barycenter)
        for v in vectors:
            points.add(tuple(v))
            points.add(tuple(b + x for b, x in zip(barycenter, v)))
    return sorted(points)


@dataclass
class SupportReport:
    samples_checked: int = 0
    forward_failures: List[Tuple] = field(default_factory=list)
    backward_failures: List[Tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.forward_failures and not self.backward_failures

    def to_dict(self) -> Dict:
        return {
            'samples_checked': self.samples_checked,
            'forward_failures': [list(map(str, p)) for p in self.forward_failures],
            'backward_failures': [list(map(str, p)) for p in self.backward_failures],
            'passed': self.passed
        }


def support_identification_check(matroid: Matroid) -> SupportReport:
    """
    Sample both supports: gamma maps the Bergman fan of the free coextension
    into the augmented Bergman fan, and gamma inverse maps back.
    """
    coextension = matroid.free_coextension()
    bergman = build_bergman(coextension)
    augmented = build_augmented(matroid).fan
    report = SupportReport()

    for point in _sample_points(bergman):
        report.samples_checked += 1
        if not cone_contains(augmented, gamma(point)):
            report.forward_failures.append(point)

    for point in _sample_points(augmented):
        report.samples_checked += 1
        if not cone_contains(bergman, gamma_inverse(point)):
            report.backward_failures.append(point)

    logger.info("Support identification for %s: %d samples, %d failures",
                matroid.name, report.samples_checked,
                len(report.forward_failures) + len(report.backward_failures))
    return report


def orbit_label(matroid: Matroid, J: Subset, K: Subset) -> OrbitLabel:
    return OrbitLabel(frozenset(matroid.position(e) for e in J),
                      frozenset(matroid.position(e) for e in K))


def meets_orbit(matroid: Matroid, pair: CompatiblePair, orbit: OrbitLabel) -> bool:
    """
    Combinatorial form of the relint condition: J is contained in I and
    either K is empty or E - K is a flat of the flag.
    """
    J = frozenset(matroid.ground[i] for i in orbit.J)
    K = frozenset(matroid.ground[i] for i in orbit.K)
    if not J <= pair.I:
        return False
    if not K:
        return True
    return (frozenset(matroid.ground) - K) in pair.flag


def relint_criterion_check(matroid: Matroid) -> List[Dict]:
    """
    Compare geometric relint feasibility with the combinatorial criterion over
    every cone and every orbit face of its containing orthant cone. Orbits
    outside that orthant are never met and the criterion must say so too.

    Returns:
        List of disagreements (empty when the criterion holds)
    """
    augmented = build_augmented(matroid)
    n = len(matroid.ground)
    disagreements = []
    all_orbits = [OrbitLabel(frozenset(J), frozenset(K))
                  for j in range(n + 1) for J in combinations(range(n), j)
                  for k in range(n - j + 1)
                  for K in combinations([i for i in range(n) if i not in J], k)]
    for cone, pair in sorted(augmented.cone_label.items(), key=lambda item: item[0]):
        rays = augmented.fan.ray_vectors(cone)
        eta = containing_orbit(rays)
        for orbit in all_orbits:
            combinatorial = meets_orbit(matroid, pair, orbit)
            if orbit.precedes(eta):
                geometric = relint_meets(rays, orbit.cone_rays(n))
            else:
                geometric = False
            if geometric != combinatorial:
                disagreements.append({
                    'cone': augmented.describe_cone(cone),
                    'orbit': repr(orbit),
                    'geometric': geometric,
                    'combinatorial': combinatorial
                })
    return disagreements


def is_subfan_of_boolean(matroid: Matroid) -> bool:
    """Every cone of the augmented Bergman fan of M is a cone of the Boolean augmented fan on E."""
    boolean = Matroid(matroid.ground, [matroid.ground], name='Boolean')
    big = build_augmented(boolean).fan
    small = build_augmented(matroid).fan
    ray_map = {}
    for i, r in enumerate(small.rays):
        j = big.ray_index(r)
        if j is None:
            return False
        ray_map[i] = j
    return all(Cone.of(ray_map[i] for i in cone.ray_indices) in big.cones for cone in small.cones)
