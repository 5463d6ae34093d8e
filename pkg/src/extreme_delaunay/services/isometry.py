"""
Isometry testing and automorphism groups of Delaunay polytopes.

Two polytopes are isometric iff their distance-colored complete graphs are
isomorphic. The search is individualization-refinement: partitions are
refined to equitable ones (a vertex's signature is the multiset of
(cell, color) over all other vertices), the smallest non-singleton cell is
split by individualizing one vertex, and every leaf mapping is checked against
the full color matrices before it is returned.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import networkx as nx

from extreme_delaunay.models.enums import IsometryMode
from extreme_delaunay.models.graphs import ColoredGraph, PermGroup, Permutation
from extreme_delaunay.models.polytope import DelaunayPolytope
from extreme_delaunay.services.delaunay import pairwise_distances
from extreme_delaunay.services.lp_solver import convex_combination

logger = logging.getLogger(__name__)

Partition = list[list[int]]


@dataclass(frozen=True)
class IsometryClass:
    """One isometry class among a list of polytopes."""

    representative: DelaunayPolytope
    members: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.members)


# ============================================================================
# Colored graphs
# ============================================================================

def distance_colored_graph(
    polytope: DelaunayPolytope, mode: IsometryMode = IsometryMode.STRICT
) -> ColoredGraph:
    """
    Complete graph on the vertices colored by squared distance.

    In projective mode distances are divided by the first basis distance, so
    polytopes on proportional rays compare equal.
    """
    D = pairwise_distances(polytope)
    if mode is IsometryMode.PROJECTIVE:
        scale = polytope.basis_d.entries[0]
        D = [[x / scale for x in row] for row in D]
    return ColoredGraph.from_distances(D)


def _refine(graph: ColoredGraph, partition: Partition) -> tuple[Partition, list]:
    """Equitable refinement; returns the partition and an invariant trace."""
    trace = []
    cells = [list(c) for c in partition]
    while True:
        cell_of = {}
        for idx, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = idx
        new_cells: Partition = []
        round_trace = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                round_trace.append((1, ()))
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                row = graph.colors[v]
                signature = tuple(
                    sorted(Counter((cell_of[u], row[u]) for u in range(graph.m) if u != v).items())
                )
                groups.setdefault(signature, []).append(v)
            for signature in sorted(groups):
                new_cells.append(groups[signature])
                round_trace.append((len(groups[signature]), signature))
        trace.append(tuple(round_trace))
        if len(new_cells) == len(cells):
            return new_cells, trace
        cells = new_cells


def _individualize(partition: Partition, v: int) -> Partition:
    out: Partition = []
    for cell in partition:
        if v in cell:
            out.append([v])
            rest = [u for u in cell if u != v]
            if rest:
                out.append(rest)
        else:
            out.append(list(cell))
    return out


def _target_cell(partition: Partition) -> Optional[int]:
    best = None
    for idx, cell in enumerate(partition):
        if len(cell) > 1 and (best is None or len(cell) < len(partition[best])):
            best = idx
    return best


def _search(
    A: ColoredGraph, part_a: Partition, B: ColoredGraph, part_b: Partition
) -> Optional[Permutation]:
    """A color-preserving bijection A -> B compatible with the two partitions."""
    part_a, trace_a = _refine(A, part_a)
    part_b, trace_b = _refine(B, part_b)
    if trace_a != trace_b:
        return None
    target = _target_cell(part_a)
    if target is None:
        mapping = [0] * A.m
        for ca, cb in zip(part_a, part_b):
            mapping[ca[0]] = cb[0]
        perm = tuple(mapping)
        if all(
            A.colors[i][j] == B.colors[perm[i]][perm[j]]
            for i in range(A.m)
            for j in range(i + 1, A.m)
        ):
            return perm
        return None
    v = min(part_a[target])
    next_a = _individualize(part_a, v)
    for u in sorted(part_b[target]):
        found = _search(A, next_a, B, _individualize(part_b, u))
        if found is not None:
            return found
    return None


def graph_isomorphism(A: ColoredGraph, B: ColoredGraph) -> Optional[Permutation]:
    if A.m != B.m or A.table != B.table:
        return None
    if A.color_multiplicities() != B.color_multiplicities():
        return None
    return _search(A, [list(range(A.m))], B, [list(range(B.m))])


def _nearest_neighbour_graph(graph: ColoredGraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(graph.m))
    g.add_edges_from(
        (i, j) for i in range(graph.m) for j in range(i + 1, graph.m) if graph.colors[i][j] == 0
    )
    return g


def are_isomorphic(
    P1: DelaunayPolytope, P2: DelaunayPolytope, mode: IsometryMode = IsometryMode.STRICT
) -> Optional[Permutation]:
    """
    A vertex bijection P1 -> P2 preserving all squared distances, or None.

    The returned permutation maps vertex index i of P1 to perm[i] of P2.
    """
    if P1.vertex_count != P2.vertex_count:
        return None
    A = distance_colored_graph(P1, mode)
    B = distance_colored_graph(P2, mode)
    if A.table != B.table:
        return None
    if not nx.faster_could_be_isomorphic(_nearest_neighbour_graph(A), _nearest_neighbour_graph(B)):
        return None
    return graph_isomorphism(A, B)


# ============================================================================
# Automorphisms
# ============================================================================

def _orbit_under(generators: Sequence[Permutation], point: int) -> set[int]:
    seen = {point}
    frontier = [point]
    while frontier:
        p = frontier.pop()
        for g in generators:
            if g[p] not in seen:
                seen.add(g[p])
                frontier.append(g[p])
    return seen


def graph_automorphisms(graph: ColoredGraph) -> PermGroup:
    """
    Generators and order of the color-preserving automorphism group.

    Walks one individualization path to a discrete partition, fixing base
    points β_0, β_1, ... Working from the deepest level up, the orbit of β_l
    under the stabilizer of β_0..β_{l-1} is completed by searching for an
    automorphism to every cell member the known generators do not reach. The
    group order is the product of those orbit lengths.
    """
    levels: list[tuple[Partition, int, list[int]]] = []
    partition, _ = _refine(graph, [list(range(graph.m))])
    while True:
        target = _target_cell(partition)
        if target is None:
            break
        beta = min(partition[target])
        levels.append((partition, beta, sorted(partition[target])))
        partition, _ = _refine(graph, _individualize(partition, beta))

    generators: list[Permutation] = []
    order = 1
    for partition, beta, cell in reversed(levels):
        fixed_a = _individualize(partition, beta)
        orbit = _orbit_under(generators, beta)
        for gamma in cell:
            if gamma in orbit:
                continue
            perm = _search(graph, fixed_a, graph, _individualize(partition, gamma))
            if perm is not None:
                generators.append(perm)
                orbit = _orbit_under(generators, beta)
        order *= len(orbit)
    logger.debug(f"automorphism group: order {order}, {len(generators)} generators")
    return PermGroup(degree=graph.m, generators=tuple(generators), order=order)


def automorphism_group(
    polytope: DelaunayPolytope, mode: IsometryMode = IsometryMode.STRICT
) -> PermGroup:
    """Isometries of the polytope as permutations of its vertex indices."""
    return graph_automorphisms(distance_colored_graph(polytope, mode))


# ============================================================================
# Skeleton
# ============================================================================

def skeleton_graph(polytope: DelaunayPolytope) -> nx.Graph:
    """
    Vertex-edge graph of the polytope.

    u ~ v iff the midpoint of [u, v] is not a convex combination of the other
    vertices, decided by an exact LP in lattice coordinates.
    """
    points = [b.w for b in polytope.vertices]
    g = nx.Graph()
    g.add_nodes_from(range(len(points)))
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            midpoint = [Fraction(a + b, 2) for a, b in zip(points[i], points[j])]
            others = [p for k, p in enumerate(points) if k not in (i, j)]
            if convex_combination(midpoint, others) is None:
                g.add_edge(i, j)
    logger.debug(f"skeleton: {g.number_of_edges()} edges on {len(points)} vertices")
    return g


# ============================================================================
# Classification
# ============================================================================

def distance_profile(polytope: DelaunayPolytope) -> tuple:
    """Rows of the full distance matrix, each sorted, in sorted order; an isometry invariant."""
    return tuple(sorted(tuple(sorted(row)) for row in pairwise_distances(polytope)))


def _representative_key(polytope: DelaunayPolytope) -> tuple:
    return (
        polytope.vertex_count,
        polytope.n,
        distance_profile(polytope),
        polytope.basis_d.entries,
        tuple(b.coords for b in polytope.vertices),
    )


def classify_results(
    polytopes: Sequence[DelaunayPolytope], mode: IsometryMode = IsometryMode.STRICT
) -> list[IsometryClass]:
    """
    Partition polytopes into isometry classes.

    Classes are ordered by vertex count, dimension and distance profile,
    which every member shares in strict mode (in projective mode the
    smallest scale comes first). The representative is the member whose basis
    distance vector is lexicographically smallest, with its vertex list as the
    final tie-break; classes with equal invariants are ordered by their
    representatives in the same way.
    """
    classes: list[list[int]] = []
    for idx, polytope in enumerate(polytopes):
        for members in classes:
            if are_isomorphic(polytopes[members[0]], polytope, mode) is not None:
                members.append(idx)
                break
        else:
            classes.append([idx])
    result = []
    for members in classes:
        rep = min(members, key=lambda i: _representative_key(polytopes[i]))
        result.append(IsometryClass(representative=polytopes[rep], members=tuple(members)))
    result.sort(key=lambda c: _representative_key(c.representative))
    logger.info(f"{len(polytopes)} polytopes in {len(result)} isometry classes")
    return result
