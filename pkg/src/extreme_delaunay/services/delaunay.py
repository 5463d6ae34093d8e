"""
Delaunay polytope service.

Builds polytopes from a basis distance vector, from a hypermetric ray of any
rank, from explicit coordinates or from a distance matrix, and answers the
structural questions the explorer and the CLI ask about them.
"""

import logging
from dataclasses import replace
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from extreme_delaunay.errors import (
    DegenerateGramError,
    NotHypermetricError,
    PSDIrreducibleError,
)
from extreme_delaunay.models.cone import ExtremeRayCheck, functional_of
from extreme_delaunay.models.enums import Definiteness
from extreme_delaunay.models.hypermetric import BVector, DistanceVector, pair_count, pairs
from extreme_delaunay.models.matrices import RatMatrix, as_vector, dot
from extreme_delaunay.models.polytope import DelaunayPolytope
from extreme_delaunay.services.hermite import PrimitiveExtender, hermite_basis
from extreme_delaunay.services.hypermetric import (
    ann,
    circumsphere,
    gram_of,
    is_hypermetric,
)
from extreme_delaunay.services.lattice_cvp import psd_reduce
from extreme_delaunay.services.linalg import (
    common_denominator,
    inverse,
    rank_of_vectors,
    solve_linear,
    symmetric_inertia,
)

logger = logging.getLogger(__name__)


# ============================================================================
# Construction
# ============================================================================

def polytope_from_basis(d: DistanceVector, node_limit: Optional[int] = None) -> DelaunayPolytope:
    """
    The Delaunay polytope whose affine basis has squared distances d.

    Raises:
        CoincidentPointsError: d has a zero entry.
        DegenerateGramError: the basis is not an n-simplex.
        NotHypermetricError: d violates a hypermetric inequality, so its
            circumsphere is not empty.
    """
    gram = gram_of(d)
    sphere = circumsphere(gram)
    verdict = is_hypermetric(d, node_limit)
    if not verdict.valid:
        raise NotHypermetricError(
            f"basis distances violate H(b)d <= 0 at b = {verdict.witness}", witness=verdict.witness
        )
    vertices = ann(d, node_limit)
    logger.debug(f"polytope of dimension {d.n} with {len(vertices)} vertices")
    return DelaunayPolytope(n=d.n, basis_d=d, vertices=tuple(vertices), gram=gram, sphere=sphere)


def polytope_from_ray(
    ray: Sequence, n: Optional[int] = None, node_limit: Optional[int] = None
) -> DelaunayPolytope:
    """
    The polytope of a hypermetric ray, in its true dimension.

    A full-rank ray gives the polytope on its own basis. When the Gram matrix
    is only positive semidefinite (coincident or affinely dependent points) the
    ray's points are reduced to an integral affine basis of the lattice they
    generate and the polytope is built on that basis; ``ambient_n`` records
    the original number of points minus one.

    Raises:
        NotHypermetricError: the ray is not hypermetric.
        PSDIrreducibleError: no integral affine basis exists among the points.
    """
    d = DistanceVector.from_entries(ray, n)
    source = tuple(int(x) for x in d.entries) if all(x.denominator == 1 for x in d.entries) else None
    gram = gram_of(d)
    inertia = symmetric_inertia(gram)
    if inertia.definiteness is Definiteness.POSITIVE_DEFINITE:
        polytope = polytope_from_basis(d, node_limit)
        return replace(polytope, ambient_n=d.n, source_ray=source)

    verdict = is_hypermetric(d, node_limit)
    if not verdict.valid:
        raise NotHypermetricError(f"ray violated at b = {verdict.witness}", witness=verdict.witness)
    reduction = psd_reduce(gram)
    if reduction is None:
        raise PSDIrreducibleError(f"no integral affine basis among the {d.n + 1} points")
    # generator i is point i + 1; the origin is point 0
    base_point = 0 if reduction.base is None else reduction.base + 1
    basis_points = [base_point] + [i + 1 for i in reduction.indices]
    reduced_d = DistanceVector.from_entries(
        [d.get(basis_points[i], basis_points[j]) for i, j in pairs(len(basis_points) - 1)]
    )
    polytope = polytope_from_basis(reduced_d, node_limit)
    logger.info(f"rank-deficient ray reduced from {d.n} to dimension {polytope.n}")
    return replace(polytope, ambient_n=d.n, source_ray=source)


def _integer_coordinates(D: Sequence[Sequence[Fraction]]) -> list[tuple[int, ...]]:
    """
    Integer coordinates of points with squared distance matrix D.

    Coordinates are taken over a basis of the lattice generated by the
    difference vectors p_i - p_0, so point 0 sits at the origin.
    """
    m = len(D)
    G = [[(D[0][i] + D[0][j] - D[i][j]) / 2 for j in range(1, m)] for i in range(1, m)]
    independent: list[int] = []
    for i in range(m - 1):
        if rank_of_vectors([G[j] for j in independent] + [G[i]]) > len(independent):
            independent.append(i)
    if not independent:
        return [()] * m
    G_J = RatMatrix.from_rows([[G[a][b] for b in independent] for a in independent])
    rational = [tuple(Fraction(0) for _ in independent)]
    for i in range(m - 1):
        rhs = [G[a][i] for a in independent]
        rational.append(solve_linear(G_J, rhs).particular)
    scale = common_denominator([x for v in rational for x in v])
    scaled = [tuple(int(x * scale) for x in v) for v in rational]
    basis = hermite_basis(scaled)
    to_basis = inverse(basis)
    coords = []
    for v in scaled:
        z = [dot(v, to_basis.column(k)) for k in range(len(basis))]
        coords.append(tuple(int(x) for x in z))
    return coords


def iter_affine_bases(points: Sequence[Sequence[int]], n: int) -> Iterator[tuple[int, ...]]:
    """
    Index sets S (sorted) with det[p_s - p_{s0}] = ±1, in lexicographic order.

    Partial sets are extended only while their difference vectors still extend
    to a basis of Z^n.
    """
    m = len(points)

    def grow(base: int, chosen: list[int], state: PrimitiveExtender):
        if len(chosen) == n + 1:
            yield tuple(chosen)
            return
        needed = n + 1 - len(chosen)
        for idx in range(chosen[-1] + 1, m - needed + 1):
            diff = [a - b for a, b in zip(points[idx], points[base])]
            extended = state.extend(diff)
            if extended is not None:
                chosen.append(idx)
                yield from grow(base, chosen, extended)
                chosen.pop()

    for base in range(m - n):
        yield from grow(base, [base], PrimitiveExtender(n))


def polytope_from_distance_matrix(
    D: Sequence[Sequence], node_limit: Optional[int] = None
) -> DelaunayPolytope:
    """
    Intrinsic polytope from the squared distances among its vertices.

    Raises:
        ValueError: no affine basis exists among the vertices, or the points
            are not exactly the vertex set of the resulting Delaunay polytope.
    """
    matrix = [as_vector(row) for row in D]
    m = len(matrix)
    coords = _integer_coordinates(matrix)
    n = len(coords[0])
    if n == 0:
        raise DegenerateGramError("all points coincide", rank=0)
    basis = next(iter_affine_bases(coords, n), None)
    if basis is None:
        raise ValueError(f"no affine basis among the {m} points")
    d = DistanceVector.from_entries([matrix[basis[i]][basis[j]] for i, j in pairs(n)])
    polytope = polytope_from_basis(d, node_limit)
    if polytope.vertex_count != m:
        raise ValueError(
            f"{m} points given but their Delaunay polytope has {polytope.vertex_count} vertices"
        )
    return polytope


def polytope_from_coordinates(
    points: Sequence[Sequence], node_limit: Optional[int] = None
) -> DelaunayPolytope:
    """Intrinsic polytope from explicit rational coordinates (any ambient dimension)."""
    vecs = [as_vector(p) for p in points]
    D = [[dot(_diff(p, q), _diff(p, q)) for q in vecs] for p in vecs]
    return polytope_from_distance_matrix(D, node_limit)


def _diff(p: Sequence, q: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(p, q))


def rebase(polytope: DelaunayPolytope, basis: Sequence[int]) -> DelaunayPolytope:
    """The same polytope described over another affine basis (vertex indices)."""
    D = pairwise_distances(polytope)
    k = len(basis) - 1
    d = DistanceVector.from_entries([D[basis[i]][basis[j]] for i, j in pairs(k)])
    return polytope_from_basis(d)


# ============================================================================
# Queries
# ============================================================================

def min_vertex_bound(n: int) -> int:
    """Least vertex count of an extreme Delaunay polytope of dimension n."""
    return (n + 1) * (n + 2) // 2 - 1


def as_ray(polytope: DelaunayPolytope) -> tuple[Fraction, ...]:
    return polytope.as_ray()


def is_extreme_polytope(polytope: DelaunayPolytope) -> ExtremeRayCheck:
    """Extreme iff the functionals of the non-basis vertices have rank N - 1."""
    incident = tuple(b for b in polytope.vertices if not b.is_unit())
    r = rank_of_vectors([functional_of(b) for b in incident])
    return ExtremeRayCheck(extreme=r == pair_count(polytope.n) - 1, rank=r, incident=incident)


def common_vertices(first: DelaunayPolytope, second: DelaunayPolytope) -> list[BVector]:
    """
    Vertices shared by two polytopes described over the same affine basis.

    Their non-basis members are the hypermetric inequalities tight at both
    rays, so they cut out the smallest face of the cone holding the two.
    """
    if first.n != second.n:
        raise ValueError(f"polytopes of dimension {first.n} and {second.n} share no basis")
    return sorted(set(first.vertices) & set(second.vertices))


def pairwise_distances(polytope: DelaunayPolytope) -> list[list[Fraction]]:
    """Squared distances between vertices via (w - w')ᵀ G (w - w')."""
    ws = [b.w for b in polytope.vertices]
    m = len(ws)
    D = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            value = polytope.gram.quadratic_form(_diff(ws[i], ws[j]))
            D[i][j] = D[j][i] = value
    return D


def find_affine_bases(polytope: DelaunayPolytope, limit: Optional[int] = None) -> list[tuple[int, ...]]:
    """All affine bases as sorted vertex-index tuples, lexicographic order."""
    points = [b.w for b in polytope.vertices]
    found = []
    for basis in iter_affine_bases(points, polytope.n):
        found.append(basis)
        if limit is not None and len(found) >= limit:
            break
    logger.info(f"{len(found)} affine bases among {len(points)} vertices")
    return found


def vertex_in_basis(polytope: DelaunayPolytope, basis: Sequence[int], index: int) -> Optional[BVector]:
    """Integer affine coordinates of a vertex over another affine basis, if integral."""
    base = polytope.vertices[basis[0]].w
    columns = [_diff(polytope.vertices[s].w, base) for s in basis[1:]]
    A = [[col[r] for col in columns] for r in range(polytope.n)]
    target = _diff(polytope.vertices[index].w, base)
    solution = solve_linear(A, target)
    if not solution.solvable or any(x.denominator != 1 for x in solution.particular):
        return None
    w = [int(x) for x in solution.particular]
    return BVector.from_w(w)
