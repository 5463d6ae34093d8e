"""
Reference Delaunay polytopes with exact coordinates.

The Gosset polytope is the Delaunay cell of E7 with vertices the 56
permutations of ±(3/4, 3/4, -1/4, ..., -1/4) in the hyperplane Σx = 0 of R^8;
pairwise squared distances are 2, 4 and 6. The Schläfli polytope (E6 cell) is
its vertex figure: the 27 vertices at squared distance 2 from a fixed one.
"""

import logging
from fractions import Fraction
from itertools import combinations, product

from extreme_delaunay.models.hypermetric import DistanceVector
from extreme_delaunay.models.polytope import DelaunayPolytope
from extreme_delaunay.services.delaunay import polytope_from_basis, polytope_from_coordinates

logger = logging.getLogger(__name__)


def segment(length2=1) -> DelaunayPolytope:
    """The 1-dimensional polytope: two points at squared distance length2."""
    return polytope_from_basis(DistanceVector.from_entries([length2]))


def unit_square() -> DelaunayPolytope:
    return polytope_from_basis(DistanceVector.from_entries([1, 1, 2]))


def unit_cube(dim: int = 3) -> DelaunayPolytope:
    """{0,1}^dim described over the origin and the dim unit vectors."""
    # d_0i = 1, d_ij = 2
    entries = [1] * dim + [2] * (dim * (dim - 1) // 2)
    return polytope_from_basis(DistanceVector.from_entries(entries, dim))


def gosset_coordinates() -> list[tuple[Fraction, ...]]:
    """The 56 vertices of the Gosset polytope, sorted."""
    big, small = Fraction(3, 4), Fraction(-1, 4)
    points = []
    for pair in combinations(range(8), 2):
        vertex = tuple(big if i in pair else small for i in range(8))
        points.append(vertex)
        points.append(tuple(-x for x in vertex))
    return sorted(points)


def schlafli_coordinates() -> list[tuple[Fraction, ...]]:
    """The 27 Gosset vertices at squared distance 2 from the first one."""
    points = gosset_coordinates()
    apex = points[0]
    return [p for p in points if sum((a - b) ** 2 for a, b in zip(p, apex)) == 2]


def gosset() -> DelaunayPolytope:
    logger.info("building the Gosset polytope (56 vertices, dimension 7)")
    return polytope_from_coordinates(gosset_coordinates())


def schlafli() -> DelaunayPolytope:
    logger.info("building the Schläfli polytope (27 vertices, dimension 6)")
    return polytope_from_coordinates(schlafli_coordinates())


def cube_coordinates(dim: int = 3) -> list[tuple[int, ...]]:
    return sorted(product((0, 1), repeat=dim))


def _basis_entries(apex: int, near: int, pair: int, far: dict[tuple[int, int], int]) -> list[int]:
    """Squared distances on 8 basis points in pair order: d_0k = apex, d_kl = pair, except far."""
    entries = [apex] * 6 + [near]
    for k, l in combinations(range(1, 8), 2):
        entries.append(far.get((k, l), pair))
    return entries


def gosset_neighbor() -> DelaunayPolytope:
    """
    The 35-vertex extreme polytope of dimension 7 (automorphism group of
    order 1440), adjacent to the Gosset polytope in the hypermetric cone.

    Its basis shares 34 vertices with ``gosset_on_neighbor_basis``; the
    common inequalities cut out a 2-face holding both rays.
    """
    logger.info("building the 35-vertex neighbor of the Gosset polytope")
    far = {(1, 7): 8, (2, 7): 8}
    return polytope_from_basis(DistanceVector.from_entries(_basis_entries(3, 5, 4, far), 7))


def gosset_on_neighbor_basis() -> DelaunayPolytope:
    """The Gosset polytope over the affine basis it shares with ``gosset_neighbor``."""
    far = {(1, 7): 4, (2, 7): 4}
    return polytope_from_basis(DistanceVector.from_entries(_basis_entries(2, 2, 2, far), 7))


REFERENCE_POLYTOPES = {
    "segment": segment,
    "square": unit_square,
    "cube": unit_cube,
    "schlafli": schlafli,
    "gosset": gosset,
    "gosset_neighbor": gosset_neighbor,
}
