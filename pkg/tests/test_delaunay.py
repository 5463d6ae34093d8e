import itertools
from fractions import Fraction

import pytest

from extreme_delaunay.errors import NotHypermetricError
from extreme_delaunay.models.hypermetric import BVector, DistanceVector
from extreme_delaunay.services.constructions import cube_coordinates
from extreme_delaunay.services.delaunay import (
    find_affine_bases,
    is_extreme_polytope,
    min_vertex_bound,
    pairwise_distances,
    polytope_from_basis,
    polytope_from_coordinates,
    polytope_from_distance_matrix,
    polytope_from_ray,
    rebase,
    vertex_in_basis,
)
from extreme_delaunay.services.isometry import are_isomorphic
from extreme_delaunay.services.linalg import determinant


def brute_force_bases(polytope):
    points = [b.w for b in polytope.vertices]
    n = polytope.n
    count = 0
    for subset in itertools.combinations(range(len(points)), n + 1):
        base = points[subset[0]]
        diffs = [[a - b for a, b in zip(points[s], base)] for s in subset[1:]]
        if abs(determinant(diffs)) == 1:
            count += 1
    return count


class TestConstruction:
    def test_segment(self, segment):
        assert segment.vertex_count == 2
        assert segment.n == 1

    def test_square(self, square):
        assert square.vertex_count == 4
        assert square.sphere.r2 == Fraction(1, 2)

    def test_cube(self, cube):
        assert cube.vertex_count == 8

    def test_non_hypermetric_basis(self):
        with pytest.raises(NotHypermetricError) as excinfo:
            polytope_from_basis(DistanceVector.from_entries([3, 1, 1]))
        assert excinfo.value.witness == BVector.of(1, 1, -1)

    def test_from_coordinates(self, cube):
        polytope = polytope_from_coordinates(cube_coordinates(3))
        assert polytope.vertex_count == 8
        assert are_isomorphic(polytope, cube) is not None

    def test_points_that_are_not_a_vertex_set(self):
        D = [[0, 1, 1], [1, 0, 2], [1, 2, 0]]
        with pytest.raises(ValueError):
            polytope_from_distance_matrix(D)


class TestFromRay:
    def test_full_rank_ray(self, square):
        polytope = polytope_from_ray((1, 1, 2))
        assert polytope.vertices == square.vertices
        assert polytope.basis_d == square.basis_d
        assert polytope.source_ray == (1, 1, 2)
        assert not polytope.is_reduced()

    def test_cut_ray_reduces_to_a_segment(self):
        polytope = polytope_from_ray((0, 1, 1))
        assert polytope.n == 1
        assert polytope.vertex_count == 2
        assert polytope.ambient_n == 2
        assert polytope.is_reduced()
        assert polytope.basis_d.entries == (1,)

    def test_non_hypermetric_ray(self):
        with pytest.raises(NotHypermetricError):
            polytope_from_ray((3, 1, 1))


class TestExtremeness:
    def test_square_is_not_extreme(self, square):
        check = is_extreme_polytope(square)
        assert not check.extreme
        assert check.rank == 1

    def test_cube_is_not_extreme(self, cube):
        check = is_extreme_polytope(cube)
        assert not check.extreme
        assert check.rank == 3

    def test_segment_is_extreme(self, segment):
        check = is_extreme_polytope(segment)
        assert check.extreme
        assert check.rank == 0

    def test_schlafli(self, schlafli):
        check = is_extreme_polytope(schlafli)
        assert schlafli.vertex_count == 27
        assert check.extreme
        assert check.rank == 20
        assert len(check.incident) == 20

    @pytest.mark.slow
    def test_gosset(self, gosset):
        check = is_extreme_polytope(gosset)
        assert gosset.vertex_count == 56
        assert check.extreme
        assert check.rank == 27

    def test_vertex_bound(self):
        assert min_vertex_bound(1) == 2
        assert min_vertex_bound(6) == 27
        assert min_vertex_bound(7) == 35
        assert min_vertex_bound(15) == 135


class TestBases:
    def test_square_bases(self, square):
        assert len(find_affine_bases(square)) == 4

    def test_cube_bases_match_determinants(self, cube):
        bases = find_affine_bases(cube)
        assert len(bases) == 56
        assert len(bases) == brute_force_bases(cube)
        assert bases == sorted(bases)

    def test_limit(self, cube):
        assert len(find_affine_bases(cube, limit=3)) == 3

    def test_vertex_in_another_basis(self, square):
        # vertices: (-1,1,1), (0,0,1), (0,1,0), (1,0,0)
        assert vertex_in_basis(square, (1, 2, 3), 0) == BVector.of(1, 1, -1)

    def test_rebase_keeps_the_polytope(self, cube):
        basis = find_affine_bases(cube)[-1]
        other = rebase(cube, basis)
        assert other.vertex_count == 8
        assert are_isomorphic(cube, other) is not None

    def test_pairwise_distances(self, square):
        D = pairwise_distances(square)
        assert sorted(D[0]) == [0, 1, 1, 2]
        assert all(D[i][j] == D[j][i] for i in range(4) for j in range(4))
