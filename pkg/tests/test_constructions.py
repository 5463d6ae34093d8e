from fractions import Fraction

import pytest

from extreme_delaunay.models.cone import functional_of
from extreme_delaunay.models.hypermetric import BVector
from extreme_delaunay.services.constructions import (
    REFERENCE_POLYTOPES,
    cube_coordinates,
    gosset_coordinates,
    gosset_neighbor,
    gosset_on_neighbor_basis,
    schlafli_coordinates,
    unit_cube,
)
from extreme_delaunay.services.delaunay import (
    common_vertices,
    is_extreme_polytope,
    min_vertex_bound,
)
from extreme_delaunay.services.isometry import are_isomorphic, automorphism_group
from extreme_delaunay.services.linalg import rank_of_vectors


def squared_distances(points):
    return {
        sum((a - b) ** 2 for a, b in zip(p, q))
        for i, p in enumerate(points)
        for q in points[i + 1:]
    }


class TestCoordinates:
    def test_gosset_vertices(self):
        points = gosset_coordinates()
        assert len(points) == 56
        assert all(sum(p) == 0 for p in points)
        assert squared_distances(points) == {2, 4, 6}

    def test_schlafli_vertices(self):
        points = schlafli_coordinates()
        assert len(points) == 27
        assert squared_distances(points) == {2, 4}

    def test_cube_coordinates(self):
        assert len(cube_coordinates(4)) == 16
        assert cube_coordinates(2) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_coordinates_are_exact(self):
        assert all(isinstance(x, Fraction) for x in gosset_coordinates()[0])


class TestPolytopes:
    def test_registry(self):
        assert set(REFERENCE_POLYTOPES) == {
            "segment",
            "square",
            "cube",
            "schlafli",
            "gosset",
            "gosset_neighbor",
        }

    def test_four_cube(self):
        assert unit_cube(4).vertex_count == 16

    @pytest.mark.slow
    def test_gosset_builds(self, gosset):
        assert gosset.n == 7


class TestGossetNeighbor:
    def test_vertex_count(self):
        polytope = gosset_neighbor()
        assert polytope.n == 7
        assert polytope.vertex_count == 35
        assert polytope.vertex_count == min_vertex_bound(7)

    def test_is_extreme(self):
        check = is_extreme_polytope(gosset_neighbor())
        assert check.extreme
        assert check.rank == 27

    def test_shares_a_two_face_with_gosset(self):
        shared = common_vertices(gosset_neighbor(), gosset_on_neighbor_basis())
        assert len(shared) == 34
        assert BVector.of(1, 1, 1, -1, -1, -1, -1, 2) not in shared
        functionals = [functional_of(b) for b in shared if not b.is_unit()]
        assert rank_of_vectors(functionals) == 26

    @pytest.mark.slow
    def test_automorphism_group(self):
        assert automorphism_group(gosset_neighbor()).order == 1440

    @pytest.mark.slow
    def test_gosset_on_neighbor_basis(self, gosset):
        assert are_isomorphic(gosset_on_neighbor_basis(), gosset) is not None
