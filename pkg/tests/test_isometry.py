import networkx as nx
import pytest

from extreme_delaunay.models.enums import IsometryMode
from extreme_delaunay.models.graphs import ColoredGraph
from extreme_delaunay.models.hypermetric import DistanceVector
from extreme_delaunay.services.constructions import segment
from extreme_delaunay.services.delaunay import (
    find_affine_bases,
    pairwise_distances,
    polytope_from_basis,
    rebase,
)
from extreme_delaunay.services.isometry import (
    are_isomorphic,
    automorphism_group,
    classify_results,
    distance_colored_graph,
    distance_profile,
    graph_automorphisms,
    skeleton_graph,
)


def polytope(*entries):
    return polytope_from_basis(DistanceVector.from_entries(entries))


def graph_distances(g):
    lengths = dict(nx.all_pairs_shortest_path_length(g))
    nodes = sorted(g.nodes)
    return [[lengths[u][v] for v in nodes] for u in nodes]


def networkx_isometric(P1, P2):
    """Independent check: complete graphs with a distance attribute on each edge."""

    def complete(P):
        D = pairwise_distances(P)
        g = nx.complete_graph(len(D))
        for i, j in g.edges:
            g.edges[i, j]["d"] = D[i][j]
        return g

    return nx.is_isomorphic(
        complete(P1), complete(P2), edge_match=lambda a, b: a["d"] == b["d"]
    )


class TestAutomorphisms:
    def test_segment(self, segment):
        assert automorphism_group(segment).order == 2

    def test_triangle(self):
        assert automorphism_group(polytope(1, 1, 1)).order == 6

    def test_square(self, square):
        group = automorphism_group(square)
        assert group.order == 8
        assert group.orbits() == [[0, 1, 2, 3]]

    def test_rectangle(self):
        assert automorphism_group(polytope(1, 4, 5)).order == 4

    def test_cube(self, cube):
        group = automorphism_group(cube)
        assert group.order == 48
        graph = distance_colored_graph(cube)
        assert all(graph.preserves(g) for g in group.generators)

    def test_pentagon(self):
        graph = ColoredGraph.from_distances(graph_distances(nx.cycle_graph(5)))
        assert graph_automorphisms(graph).order == 10

    def test_petersen(self):
        graph = ColoredGraph.from_distances(graph_distances(nx.petersen_graph()))
        assert graph_automorphisms(graph).order == 120

    def test_schlafli(self, schlafli):
        assert automorphism_group(schlafli).order == 51840

    @pytest.mark.slow
    def test_gosset(self, gosset):
        assert automorphism_group(gosset).order == 2903040


class TestIsomorphism:
    def test_rebased_cube(self, cube):
        other = rebase(cube, find_affine_bases(cube)[-1])
        perm = are_isomorphic(cube, other)
        assert perm is not None
        D1, D2 = pairwise_distances(cube), pairwise_distances(other)
        assert all(D1[i][j] == D2[perm[i]][perm[j]] for i in range(8) for j in range(8))

    def test_different_vertex_counts(self, square, segment):
        assert are_isomorphic(square, segment) is None

    def test_square_and_rectangle(self, square):
        assert are_isomorphic(square, polytope(1, 4, 5)) is None

    def test_scaling_needs_projective_mode(self, square):
        big = polytope(2, 2, 4)
        assert are_isomorphic(square, big) is None
        assert are_isomorphic(square, big, IsometryMode.PROJECTIVE) is not None

    def test_agrees_with_networkx(self, square, cube):
        cases = [
            (square, polytope(1, 4, 5)),
            (square, rebase(square, find_affine_bases(square)[-1])),
            (cube, rebase(cube, find_affine_bases(cube)[10])),
            (polytope(1, 1, 1), polytope(1, 1, 1)),
        ]
        for P1, P2 in cases:
            assert (are_isomorphic(P1, P2) is not None) == networkx_isometric(P1, P2)


class TestSkeleton:
    def test_triangle(self):
        assert skeleton_graph(polytope(1, 1, 1)).number_of_edges() == 3

    def test_square(self, square):
        g = skeleton_graph(square)
        assert g.number_of_edges() == 4
        assert all(deg == 2 for _, deg in g.degree)

    def test_cube(self, cube):
        g = skeleton_graph(cube)
        assert g.number_of_edges() == 12
        assert all(deg == 3 for _, deg in g.degree)


class TestClassification:
    def test_duplicates_collapse(self, square):
        classes = classify_results([square, square])
        assert len(classes) == 1
        assert classes[0].multiplicity == 2
        assert classes[0].members == (0, 1)

    def test_classes_ordered_by_size(self, square):
        classes = classify_results([square, segment(), segment(2)])
        assert [c.representative.vertex_count for c in classes] == [2, 2, 4]
        assert [c.representative.basis_d.entries for c in classes][:2] == [(1,), (2,)]

    def test_rebased_members_share_a_class(self, cube):
        classes = classify_results([cube, rebase(cube, find_affine_bases(cube)[-1])])
        assert len(classes) == 1
        assert classes[0].multiplicity == 2

    def test_representative_has_smallest_basis_distances(self, cube):
        members = [rebase(cube, basis) for basis in reversed(find_affine_bases(cube))]
        assert len({distance_profile(p) for p in members}) == 1
        (cls,) = classify_results(members)
        smallest = min(p.basis_d.entries for p in members)
        assert cls.representative.basis_d.entries == smallest
        assert smallest == (1, 1, 1, 2, 2, 2)

    def test_projective_merges_scaled_copies(self):
        classes = classify_results([segment(), segment(3)], IsometryMode.PROJECTIVE)
        assert len(classes) == 1
