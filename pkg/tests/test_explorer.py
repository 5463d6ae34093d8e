from fractions import Fraction

import pytest

from extreme_delaunay.automations import explorer as explorer_module
from extreme_delaunay.automations.explorer import (
    AdjacencyExplorer,
    explore,
    explore_face,
    initialize,
    initialize_from_ray,
)
from extreme_delaunay.automations.reports import build_report, render_log
from extreme_delaunay.errors import (
    EnumerationBudgetExceeded,
    NotExtremeError,
    NotHypermetricError,
    PSDIrreducibleError,
)
from extreme_delaunay.models.enums import CandidateStatus, Definiteness
from extreme_delaunay.models.hypermetric import BVector, DistanceVector, HypermetricVerdict
from extreme_delaunay.services.constructions import gosset_neighbor, gosset_on_neighbor_basis
from extreme_delaunay.services.delaunay import common_vertices, is_extreme_polytope
from extreme_delaunay.services.hypermetric import (
    brute_force_is_hypermetric,
    is_hypermetric,
    triangle_bvectors,
)


class TestInitialize:
    def test_segment_has_nothing_to_explore(self, segment):
        state = initialize(segment)
        assert len(state.F) == 0
        assert state.e == (1,)

    def test_square_is_rejected(self, square):
        with pytest.raises(NotExtremeError):
            initialize(square)

    def test_from_cut_ray(self):
        state = initialize_from_ray((0, 1, 1))
        assert state.n == 2
        assert len(state.F) == 3

    def test_from_non_hypermetric_ray(self):
        with pytest.raises(NotHypermetricError):
            initialize_from_ray((3, 1, 1))

    def test_from_interior_ray(self):
        with pytest.raises(NotExtremeError):
            initialize_from_ray((1, 1, 1))

    def test_schlafli_inequalities(self, schlafli):
        state = initialize(schlafli)
        incident = is_extreme_polytope(schlafli).incident
        expected = set(incident) | set(triangle_bvectors(6))
        assert len(state.F) == len(expected)
        assert all(b in state.F for b in incident)


class TestExplore:
    def test_segment(self, segment):
        result = explore(initialize(segment))
        assert result.complete
        assert result.neighbors == ()

    def test_met3_neighbors(self):
        result = explore(initialize_from_ray((0, 1, 1)))
        assert result.complete
        assert result.iterations == 1
        assert [nb.ray for nb in result.neighbors] == [(1, 0, 1), (1, 1, 0)]
        assert all(entry.verdict is CandidateStatus.HYPERMETRIC for entry in result.log)
        for nb in result.neighbors:
            assert nb.basis_found
            assert nb.rank_deficient
            assert nb.dimension == 1
            assert nb.polytope.vertex_count == 2
            assert nb.meets_vertex_bound
            assert nb.incident_rank == 2

    def test_log_is_deterministic(self):
        first = render_log(explore(initialize_from_ray((0, 1, 1))))
        second = render_log(explore(initialize_from_ray((0, 1, 1))))
        assert first == second
        assert first.splitlines()[0] == "iter=1 |F|=3 ray=(1,0,1) verdict=hypermetric added=0"
        assert first.rstrip().endswith("COMPLETE")

    def test_threads_do_not_change_the_log(self):
        single = explore(initialize_from_ray((0, 1, 1)), threads=1)
        pooled = explore(initialize_from_ray((0, 1, 1)), threads=4)
        assert single.log == pooled.log
        assert single.neighbors == pooled.neighbors

    def test_rejects_bad_budgets(self):
        with pytest.raises(ValueError):
            AdjacencyExplorer(budget_iters=0)

    def test_stats(self):
        runner = AdjacencyExplorer()
        runner.explore(initialize_from_ray((0, 1, 1)))
        assert runner.stats == {"iterations": 1, "candidates_tested": 2, "inequalities_added": 0}


class TestRefinement:
    def test_five_point_cut(self):
        # the cut separating point 0: d_0j = 1 and points 1..4 coincide
        state = initialize_from_ray((1, 1, 1, 1, 0, 0, 0, 0, 0, 0))
        result = explore(state)
        assert result.complete
        assert any(entry.added for entry in result.log)
        assert any(entry.verdict is CandidateStatus.VIOLATED for entry in result.log)
        assert result.final_f_size > len(triangle_bvectors(4))
        assert len(result.neighbors) == 14
        for nb in result.neighbors:
            assert set(nb.ray) == {0, 1}
            d = DistanceVector.from_entries(nb.ray, 4)
            assert brute_force_is_hypermetric(d, 2).valid
            assert is_hypermetric(d).valid
            assert nb.incident_rank == 9
            assert nb.dimension == 1
            assert nb.polytope.vertex_count == 2
            assert nb.meets_vertex_bound

    def test_indefinite_candidates_get_bounded_cuts(self):
        runner = AdjacencyExplorer()
        # K_{2,3}: 1 across the parts {1, 2} and {0, 3, 4}, 2 within them
        small = {1, 2}
        ray = tuple(
            1 if (i in small) != (j in small) else 2 for i in range(5) for j in range(i + 1, 5)
        )
        status, cuts = runner.test_candidate(ray, 4)
        assert status is CandidateStatus.VIOLATED
        assert BVector.of(1, -1, -1, 1, 1) in cuts
        assert len(cuts) > 1

    def test_cut_search_cap(self):
        runner = AdjacencyExplorer(cut_search_bound=2, cut_search_cap=100)
        d = DistanceVector.from_entries([1, 1, 9])
        # bound 2 checks 5^2 = 25 b-vectors on 3 points, bound 1 checks 9
        assert runner.bounded_cuts(d)
        assert AdjacencyExplorer(cut_search_bound=2, cut_search_cap=8).bounded_cuts(d) == ()

    def test_rejects_bad_cut_search(self):
        with pytest.raises(ValueError):
            AdjacencyExplorer(cut_search_bound=-1)


class TestExploreFace:
    def test_met3_face(self):
        result = explore_face(initialize_from_ray((0, 1, 1)), [BVector.of(1, -1, 1)])
        assert result.complete
        assert [nb.ray for nb in result.neighbors] == [(1, 1, 0)]
        assert len(result.log) == 1
        assert result.log[0].verdict is CandidateStatus.HYPERMETRIC

    def test_collapsed_face(self):
        result = explore_face(initialize_from_ray((0, 1, 1)), [BVector.of(2, -1, 0)])
        assert result.complete
        assert result.neighbors == ()
        assert result.log == ()

    def test_face_inequality_must_be_tight(self):
        with pytest.raises(ValueError):
            explore_face(initialize_from_ray((0, 1, 1)), [BVector.of(1, 1, -1)])

    def test_face_must_be_two_dimensional(self):
        face = [BVector.of(1, -1, 1), BVector.of(-1, 1, 1)]
        with pytest.raises(ValueError):
            explore_face(initialize_from_ray((0, 1, 1)), face)


class TestIncompleteRuns:
    def test_iteration_budget(self, monkeypatch):
        extra = BVector.of(2, -1, 0)

        def violated(d, node_limit=None):
            return HypermetricVerdict(
                valid=False,
                definiteness=Definiteness.POSITIVE_SEMIDEFINITE,
                reduced_dim=1,
                witness=extra,
                value=Fraction(1),
                violations=((extra, Fraction(1)),),
            )

        state = initialize_from_ray((0, 1, 1))
        monkeypatch.setattr(explorer_module, "is_hypermetric", violated)
        result = AdjacencyExplorer(budget_iters=1).explore(state)
        assert not result.complete
        assert result.final_f_size == 4
        assert any("iteration budget" in reason for reason in result.incomplete_reasons)
        assert result.neighbors == ()

    def test_node_budget(self, monkeypatch):
        state = initialize_from_ray((0, 1, 1))

        def exhausted(d, node_limit=None):
            raise EnumerationBudgetExceeded(node_limit)

        monkeypatch.setattr(explorer_module, "is_hypermetric", exhausted)
        result = AdjacencyExplorer(budget_nodes=5).explore(state)
        assert not result.complete
        assert len(result.incomplete_reasons) == 2
        assert all(e.verdict is CandidateStatus.BUDGET_EXCEEDED for e in result.log)

    def test_irreducible_candidate(self, monkeypatch):
        state = initialize_from_ray((0, 1, 1))

        def irreducible(d, node_limit=None):
            raise PSDIrreducibleError("no integral basis")

        monkeypatch.setattr(explorer_module, "is_hypermetric", irreducible)
        result = explore(state)
        assert not result.complete
        assert "INCOMPLETE" in render_log(result)


class TestReport:
    def test_classes_of_met3(self):
        result = explore(initialize_from_ray((0, 1, 1)))
        report = build_report(result, (0, 1, 1), 2)
        assert report.status == "COMPLETE"
        assert report.neighbor_count == 2
        assert len(report.classes) == 1
        summary = report.classes[0]
        assert summary.multiplicity == 2
        assert summary.automorphism_order == 2
        assert summary.representative_ray == [1, 0, 1]
        assert summary.member_rays == [[1, 0, 1], [1, 1, 0]]
        assert report.base_ray == ["0", "1", "1"]


@pytest.mark.slow
class TestSchlafliExploration:
    def test_neighbors_are_hypermetric(self, schlafli):
        result = explore(initialize(schlafli))
        assert result.complete
        assert result.neighbors
        for nb in result.neighbors:
            assert is_hypermetric(DistanceVector.from_entries(nb.ray, 6)).valid
            assert nb.incident_rank == 20
            if nb.basis_found:
                assert nb.meets_vertex_bound


@pytest.mark.slow
class TestGossetFace:
    def test_reaches_the_35_vertex_polytope(self):
        start = gosset_on_neighbor_basis()
        target = gosset_neighbor()
        face = [b for b in common_vertices(start, target) if not b.is_unit()]
        result = explore_face(initialize(start), face)
        assert result.complete
        first = result.log[0]
        assert first.verdict is CandidateStatus.VIOLATED
        assert first.added
        (nb,) = result.neighbors
        assert nb.ray == target.as_ray()
        assert nb.polytope.vertex_count == 35
        assert nb.incident_rank == 27
        report = build_report(result, start.as_ray(), 7)
        (summary,) = report.classes
        assert summary.vertex_count == 35
        assert summary.automorphism_order == 1440
