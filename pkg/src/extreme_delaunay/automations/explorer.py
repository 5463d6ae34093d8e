"""
Adjacency exploration around an extreme hypermetric ray.

Starting from the inequalities tight at the base ray plus the triangle
inequalities, the explorer repeatedly computes the rays adjacent to e in the
working cone C(F), tests each one for hypermetricity and adds every violated
inequality to F. Once a pass finds no violation, the adjacent rays are
exactly the neighbours of e in the hypermetric cone and their polytopes are
built.

A candidate whose Gram matrix is not positive definite yields only one
constructed violation from the lattice machinery, which can leave the loop
cutting the same region forever. Such candidates are also checked against
every b with small coefficients, and all of those violations are added.

``explore_face`` runs the same refinement restricted to a 2-dimensional face
through e and returns the single neighbour on that face.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn

from extreme_delaunay.errors import (
    EnumerationBudgetExceeded,
    NotExtremeError,
    NotHypermetricError,
    PSDIrreducibleError,
)
from extreme_delaunay.models.cone import ConeSystem, Ray, evaluate, functional_of
from extreme_delaunay.models.enums import CandidateStatus, Definiteness
from extreme_delaunay.models.exploration import (
    Candidate,
    ExplorationResult,
    ExplorationState,
    LogEntry,
    Neighbor,
)
from extreme_delaunay.models.hypermetric import BVector, DistanceVector
from extreme_delaunay.models.polytope import DelaunayPolytope
from extreme_delaunay.services.cone_geometry import adjacent_rays, is_extreme_ray, primitive_ray
from extreme_delaunay.services.delaunay import (
    is_extreme_polytope,
    min_vertex_bound,
    polytope_from_ray,
)
from extreme_delaunay.services.hypermetric import (
    brute_force_is_hypermetric,
    gram_of,
    is_hypermetric,
    triangle_bvectors,
)
from extreme_delaunay.services.linalg import nullspace, rank_of_vectors, symmetric_inertia

logger = logging.getLogger(__name__)

DEFAULT_BUDGET_ITERS = 1000
DEFAULT_BUDGET_NODES = 10**8
DEFAULT_CUT_SEARCH_BOUND = 2
DEFAULT_CUT_SEARCH_CAP = 100_000

# verdict plus the violations found at the candidate
Verdict = tuple[CandidateStatus, tuple[BVector, ...]]


# ============================================================================
# Initialization
# ============================================================================

def initialize(polytope: DelaunayPolytope) -> ExplorationState:
    """
    State for exploring around an extreme polytope.

    F starts as the non-basis vertices (the inequalities tight at the ray)
    together with every triangle inequality.

    Raises:
        NotExtremeError: the polytope's ray is not extreme.
    """
    check = is_extreme_polytope(polytope)
    if not check.extreme:
        raise NotExtremeError(
            f"polytope is not extreme: incident rank {check.rank}", rank=check.rank
        )
    F = ConeSystem.from_bvectors(polytope.n, list(check.incident) + triangle_bvectors(polytope.n))
    logger.info(
        f"initialized on a {polytope.vertex_count}-vertex polytope: "
        f"{len(check.incident)} incident, |F| = {len(F)}"
    )
    return ExplorationState(n=polytope.n, F=F, e=polytope.as_ray())


def initialize_from_ray(ray: Sequence, n: Optional[int] = None) -> ExplorationState:
    """
    State for exploring around a hypermetric ray given directly, with F the
    triangle inequalities only.

    Raises:
        NotHypermetricError: the ray violates a hypermetric inequality.
        NotExtremeError: the ray is not extreme in the metric cone.
    """
    d = DistanceVector.from_entries(ray, n)
    verdict = is_hypermetric(d)
    if not verdict.valid:
        raise NotHypermetricError(f"start ray violated at b = {verdict.witness}", verdict.witness)
    F = ConeSystem.from_bvectors(d.n, triangle_bvectors(d.n))
    check = is_extreme_ray(F, d.entries)
    if not check.extreme:
        raise NotExtremeError(
            f"ray is not extreme among the triangle inequalities: rank {check.rank}",
            rank=check.rank,
        )
    return ExplorationState(n=d.n, F=F, e=d.entries)


# ============================================================================
# Exploration
# ============================================================================

class AdjacencyExplorer:
    """
    Runs the refine-until-hypermetric loop on an ExplorationState.

    Verdicts are cached per ray: a candidate found hypermetric stays so, and a
    violated one is cut off by the inequalities it contributed. ``stats``
    tallies the work done.

    ``cut_search_bound`` is the coefficient bound of the extra search run on
    candidates without a positive definite Gram matrix; it is lowered until
    the search has at most ``cut_search_cap`` b-vectors to check, and skipped
    if even bound 1 exceeds the cap.
    """

    def __init__(
        self,
        budget_iters: int = DEFAULT_BUDGET_ITERS,
        budget_nodes: int = DEFAULT_BUDGET_NODES,
        threads: int = 1,
        console: Optional[Console] = None,
        cut_search_bound: int = DEFAULT_CUT_SEARCH_BOUND,
        cut_search_cap: int = DEFAULT_CUT_SEARCH_CAP,
    ):
        if budget_iters < 1 or budget_nodes < 1 or threads < 1:
            raise ValueError("budgets and thread count must be positive")
        if cut_search_bound < 0 or cut_search_cap < 1:
            raise ValueError("cut search bound must be non-negative and its cap positive")
        self.budget_iters = budget_iters
        self.budget_nodes = budget_nodes
        self.threads = threads
        self.cut_search_bound = cut_search_bound
        self.cut_search_cap = cut_search_cap
        self.console = console or Console(stderr=True)
        self._verdicts: dict[Ray, Verdict] = {}
        self.stats = {"iterations": 0, "candidates_tested": 0, "inequalities_added": 0}

    def test_candidate(self, ray: Ray, n: int) -> Verdict:
        d = DistanceVector.from_entries(ray, n)
        try:
            verdict = is_hypermetric(d, self.budget_nodes)
        except PSDIrreducibleError:
            return CandidateStatus.PSD_IRREDUCIBLE, ()
        except EnumerationBudgetExceeded:
            return CandidateStatus.BUDGET_EXCEEDED, ()
        if verdict.valid:
            return CandidateStatus.HYPERMETRIC, ()
        found = [b for b, _ in verdict.violations]
        if verdict.definiteness is not Definiteness.POSITIVE_DEFINITE:
            found.extend(b for b in self.bounded_cuts(d) if b not in found)
        return CandidateStatus.VIOLATED, tuple(found)

    def bounded_cuts(self, d: DistanceVector) -> tuple[BVector, ...]:
        """Every b with coefficients within the cut search bound that d violates."""
        bound = self.cut_search_bound
        while bound >= 1 and (2 * bound + 1) ** d.n > self.cut_search_cap:
            bound -= 1
        if bound < 1:
            return ()
        return tuple(b for b, _ in brute_force_is_hypermetric(d, bound).violations)

    def _test_all(self, candidates: list[Ray], n: int) -> list[Verdict]:
        pending = [ray for ray in candidates if ray not in self._verdicts]
        self.stats["candidates_tested"] += len(pending)
        if self.threads > 1 and len(pending) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                results = list(pool.map(lambda r: self.test_candidate(r, n), pending))
        else:
            results = [self.test_candidate(ray, n) for ray in pending]
        self._verdicts.update(zip(pending, results))
        return [self._verdicts[ray] for ray in candidates]

    def _step(self, state: ExplorationState) -> list[BVector]:
        """One pass: test the current adjacent rays; returns the inequalities to add."""
        state.iteration += 1
        candidates = adjacent_rays(state.F, state.e)
        verdicts = self._test_all(candidates, state.n)
        added: list[BVector] = []
        frontier = []
        for ray, (status, violations) in zip(candidates, verdicts):
            new = tuple(b for b in violations if b not in state.F and b not in added)
            added.extend(new)
            frontier.append(Candidate(ray=ray, status=status))
            state.log.append(
                LogEntry(
                    iteration=state.iteration,
                    f_size=len(state.F),
                    candidate=ray,
                    verdict=status,
                    added=new,
                )
            )
            logger.debug(f"iteration {state.iteration}: {ray} -> {status.value}, {len(new)} new")
        state.frontier = frontier
        tally = {s.value: sum(1 for c in frontier if c.status is s) for s in CandidateStatus}
        logger.info(
            f"iteration {state.iteration}: |F| = {len(state.F)}, {len(candidates)} candidates, "
            + ", ".join(f"{k} {v}" for k, v in tally.items() if v)
        )
        return added

    def _neighbor(self, state: ExplorationState, ray: Ray) -> Neighbor:
        incident_rank = is_extreme_ray(state.F, ray).rank
        try:
            polytope = polytope_from_ray(ray, state.n, self.budget_nodes)
        except PSDIrreducibleError:
            gram = gram_of(DistanceVector.from_entries(ray, state.n))
            logger.warning(f"no affine basis found for neighbor {ray}")
            return Neighbor(
                ray=ray,
                polytope=None,
                dimension=symmetric_inertia(gram).n_plus,
                incident_rank=incident_rank,
                meets_vertex_bound=False,
            )
        meets = polytope.vertex_count >= min_vertex_bound(polytope.n)
        if not meets:
            logger.warning(
                f"neighbor {ray} has {polytope.vertex_count} vertices, "
                f"below the bound {min_vertex_bound(polytope.n)} for dimension {polytope.n}"
            )
        return Neighbor(
            ray=ray,
            polytope=polytope,
            dimension=polytope.n,
            incident_rank=incident_rank,
            meets_vertex_bound=meets,
        )

    def explore(self, state: ExplorationState, show_progress: bool = False) -> ExplorationResult:
        """
        Refine F until every adjacent ray of C(F) at e is hypermetric.

        On budget exhaustion the hypermetric candidates of the last pass are
        still returned (they are genuine neighbours) with ``complete`` False.
        """
        reasons: list[str] = []
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=self.console,
            disable=not show_progress,
            transient=True,
        ) as progress:
            task = progress.add_task("Exploring", total=None)
            while True:
                if state.iteration >= self.budget_iters:
                    reasons.append(f"iteration budget of {self.budget_iters} exhausted")
                    break
                added = self._step(state)
                self.stats["iterations"] += 1
                progress.update(
                    task, description=f"Iteration {state.iteration}, |F| = {len(state.F)}"
                )
                if not added:
                    break
                state.F = state.F.extended(added)
                self.stats["inequalities_added"] += len(added)

        for candidate in state.frontier:
            if candidate.status is CandidateStatus.PSD_IRREDUCIBLE:
                reasons.append(f"candidate {candidate.ray} is rank-deficient with no integral basis")
            elif candidate.status is CandidateStatus.BUDGET_EXCEEDED:
                reasons.append(f"candidate {candidate.ray} exceeded {self.budget_nodes} nodes")

        neighbors = [
            self._neighbor(state, c.ray)
            for c in sorted(state.frontier, key=lambda c: c.ray)
            if c.status is CandidateStatus.HYPERMETRIC
        ]
        complete = not reasons
        logger.info(
            f"exploration {'complete' if complete else 'INCOMPLETE'} after {state.iteration} "
            f"iterations: {len(neighbors)} neighbors, |F| = {len(state.F)}"
        )
        return ExplorationResult(
            neighbors=tuple(neighbors),
            log=tuple(state.log),
            complete=complete,
            iterations=state.iteration,
            final_f_size=len(state.F),
            incomplete_reasons=tuple(reasons),
        )

    # ------------------------------------------------------------------
    # Single 2-face
    # ------------------------------------------------------------------

    def explore_face(self, state: ExplorationState, face: Sequence[BVector]) -> ExplorationResult:
        """
        Follow the 2-face of C(F) cut out by the b-vectors in ``face`` away from e.

        The face's other extreme ray is tested; violations are added to F and
        the ray recomputed until it is hypermetric. A face that is only the
        ray e itself has no neighbour and the run is complete.

        Raises:
            ValueError: a face b-vector is not tight at e, or the face
                equations do not leave a 2-dimensional plane.
        """
        e = state.e
        functionals = [functional_of(b) for b in face]
        for b, f in zip(face, functionals):
            if evaluate(f, e) != 0:
                raise ValueError(f"face inequality {b} is not tight at the base ray")
        plane = nullspace(functionals) if functionals else ()
        if len(plane) != 2:
            raise ValueError(f"face equations leave a plane of dimension {len(plane)}, not 2")
        u = next(v for v in plane if rank_of_vectors([e, v]) == 2)

        reasons: list[str] = []
        neighbors: list[Neighbor] = []
        while True:
            if state.iteration >= self.budget_iters:
                reasons.append(f"iteration budget of {self.budget_iters} exhausted")
                break
            ray = self._face_ray(state.F, e, u)
            if ray is None:
                logger.info(f"face collapses to the base ray after {state.iteration} iterations")
                break
            state.iteration += 1
            self.stats["iterations"] += 1
            status, violations = self._test_all([ray], state.n)[0]
            new = tuple(b for b in violations if b not in state.F)
            state.frontier = [Candidate(ray=ray, status=status)]
            state.log.append(
                LogEntry(
                    iteration=state.iteration,
                    f_size=len(state.F),
                    candidate=ray,
                    verdict=status,
                    added=new,
                )
            )
            logger.info(f"face iteration {state.iteration}: {ray} -> {status.value}, +{len(new)}")
            if status is CandidateStatus.HYPERMETRIC:
                neighbors.append(self._neighbor(state, ray))
                break
            if status is not CandidateStatus.VIOLATED:
                reasons.append(f"candidate {ray} could not be decided ({status.value})")
                break
            if not new:
                reasons.append(f"candidate {ray} is violated only by inequalities already in F")
                break
            state.F = state.F.extended(new)
            self.stats["inequalities_added"] += len(new)

        return ExplorationResult(
            neighbors=tuple(neighbors),
            log=tuple(state.log),
            complete=not reasons,
            iterations=state.iteration,
            final_f_size=len(state.F),
            incomplete_reasons=tuple(reasons),
        )

    @staticmethod
    def _face_ray(F: ConeSystem, e: Ray, u: Sequence) -> Optional[Ray]:
        """
        The extreme ray of C(F) ∩ span(e, u) other than e, or None if that
        intersection is the ray e alone.

        On the side v of e where the tight rows allow it, the other extreme
        ray is a·e + v with a the least value keeping every loose row
        satisfied.

        Raises:
            ValueError: the intersection contains the line through e.
        """
        tight = [f for f in F.functionals if evaluate(f, e) == 0]
        loose = [(f, evaluate(f, e)) for f in F.functionals if evaluate(f, e) != 0]
        for v in (tuple(u), tuple(-x for x in u)):
            if any(evaluate(f, v) > 0 for f in tight):
                continue
            if not loose:
                raise ValueError("the face is not pointed: no inequality bounds it away from -e")
            # f·e < 0 for every loose row
            a = max(-evaluate(f, v) / fe for f, fe in loose)
            return primitive_ray([a * x + y for x, y in zip(e, v)])
        return None


def explore(
    state: ExplorationState,
    budget_iters: int = DEFAULT_BUDGET_ITERS,
    budget_nodes: int = DEFAULT_BUDGET_NODES,
    threads: int = 1,
) -> ExplorationResult:
    """Run one exploration with a fresh explorer."""
    return AdjacencyExplorer(budget_iters, budget_nodes, threads).explore(state)


def explore_face(
    state: ExplorationState,
    face: Sequence[BVector],
    budget_iters: int = DEFAULT_BUDGET_ITERS,
    budget_nodes: int = DEFAULT_BUDGET_NODES,
) -> ExplorationResult:
    """Follow one 2-face through the base ray with a fresh explorer."""
    return AdjacencyExplorer(budget_iters, budget_nodes).explore_face(state, face)
