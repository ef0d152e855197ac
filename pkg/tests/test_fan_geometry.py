from itertools import product

import pytest

from app.schubert.bergman import build_augmented
from app.schubert.exceptions import GeometryError, NotAFaceRelation, SupportNotContained
from app.schubert.fan_geometry import (
    Cone,
    Fan,
    OrbitLabel,
    closure_cells_of_cone,
    cone_contains,
    containing_orbit,
    courant_value,
    fan_axioms_check,
    orbit_of_cone,
    primitive,
    product_of_lines_fan,
    project,
    relint_meets,
)
from app.schubert.linalg_core import rank


def test_primitive():
    assert primitive((2, 4, -6)) == (1, 2, -3)
    assert primitive((0, 0)) == (0, 0)


def test_product_of_lines_fan_has_one_cone_per_orbit():
    fan = product_of_lines_fan(2)
    assert fan.cone_counts() == [1, 4, 4]
    assert fan.is_pure()
    assert fan_axioms_check(fan)
    orbits = {orbit_of_cone(fan, cone) for cone in fan.cones}
    assert len(orbits) == 9


def test_fan_validation():
    with pytest.raises(GeometryError):
        Fan(1, [(2,)], [Cone(()), Cone((0,))])
    with pytest.raises(GeometryError):
        Fan.from_maximal(2, [(1, 0), (0, 1), (1, 1)], [[0, 1, 2]])
    with pytest.raises(GeometryError):
        Fan(2, [(1, 0)], [Cone((0,))])


def test_fan_axioms_detect_overlap():
    overlapping = Fan.from_maximal(2, [(1, 0), (0, 1), (1, 1)], [[0, 1], [2]])
    assert not fan_axioms_check(overlapping)


def test_cone_contains_and_courant_values():
    line = product_of_lines_fan(1)
    assert cone_contains(product_of_lines_fan(2), (5, -3))
    assert courant_value(line, 0, (3,)) == 3
    assert courant_value(line, 0, (-2,)) == 0
    quadrant = Fan.from_maximal(2, [(1, 0), (0, 1)], [[0, 1]])
    assert not cone_contains(quadrant, (-1, 0))
    with pytest.raises(SupportNotContained):
        courant_value(quadrant, 0, (-1, 0))


def test_relint_meets():
    assert relint_meets([(1, 0)], [(1, 0)])
    assert not relint_meets([(1, 0)], [(0, 1)])
    assert relint_meets([(1, 1)], [])


def test_orbit_labels():
    with pytest.raises(GeometryError):
        OrbitLabel(frozenset({0}), frozenset({0}))
    label = OrbitLabel(frozenset({0}), frozenset({1}))
    assert label.dim == 2
    assert OrbitLabel.origin().precedes(label)
    assert label.cone_rays(2) == [(1, 0), (0, -1)]


def test_project_kills_coordinates():
    target = OrbitLabel(frozenset({1}))
    assert project([(1, 1), (0, 1)], OrbitLabel.origin(), target) == ((1, 0),)
    with pytest.raises(NotAFaceRelation):
        project([(1, 1)], target, OrbitLabel.origin())


def test_containing_orbit():
    assert containing_orbit([(1, -1), (1, 0)]) == OrbitLabel(frozenset({0}), frozenset({1}))
    with pytest.raises(SupportNotContained):
        containing_orbit([(1, 0), (-1, 0)])


def test_closure_cells_of_a_ray():
    cells = closure_cells_of_cone([(1, 0)], 2)
    assert cells == [
        (OrbitLabel.origin(), ((1, 0),)),
        (OrbitLabel(frozenset({0})), ()),
    ]


def test_closure_cells_of_the_closed_quadrant():
    cells = closure_cells_of_cone([(1, 0), (0, 1)], 2)
    assert cells == [
        (OrbitLabel.origin(), ((0, 1), (1, 0))),
        (OrbitLabel(frozenset({0})), ((0, 1),)),
        (OrbitLabel(frozenset({1})), ((1, 0),)),
        (OrbitLabel(frozenset({0, 1})), ()),
    ]


def test_closure_cells_of_a_flag_cone():
    cells = closure_cells_of_cone([(-1, -1), (0, -1)], 2)
    assert [orbit for orbit, _ in cells] == [
        OrbitLabel.origin(),
        OrbitLabel(K=frozenset({1})),
        OrbitLabel(K=frozenset({0, 1})),
    ]
    assert cells[1][1] == ((-1, 0),)


def _labels(n):
    for signs in product((0, 1, -1), repeat=n):
        yield OrbitLabel(frozenset(i for i, s in enumerate(signs) if s == 1),
                         frozenset(i for i, s in enumerate(signs) if s == -1))


def test_project_is_functorial():
    rays = [(1, 2, -1), (0, 1, -3), (2, 0, 0)]
    origin = OrbitLabel.origin()
    for middle in _labels(3):
        for target in _labels(3):
            if middle.precedes(target):
                assert project(project(rays, origin, middle), middle, target) == project(rays, origin, target)


def test_closure_cell_dimensions(ex82, u23):
    for matroid in (ex82, u23):
        augmented = build_augmented(matroid)
        n = len(matroid.ground)
        for cone in augmented.fan.cones:
            sigma = augmented.fan.ray_vectors(cone)
            for orbit, rays in closure_cells_of_cone(sigma, n):
                assert (rank(list(rays)) if rays else 0) == len(rays)
                zeta = orbit.cone_rays(n)
                spanning = list(sigma) + zeta
                transverse = (rank(spanning) if spanning else 0) == cone.dim + orbit.dim
                assert len(rays) <= cone.dim
                assert (len(rays) == cone.dim) == transverse
