"""
Hypermetric inequalities and the separation oracle.

For b = (1 - Σw, w) the inequality value is

    H(b)d = Σ_i w_i g_ii - wᵀGw = r2 - (w - alpha)ᵀ G (w - alpha)

where G is the Gram matrix of d and (alpha, r2) its circumsphere, so a violated
inequality is a lattice point strictly inside the circumsphere and a tight one
is a lattice point on it.
"""

import logging
from fractions import Fraction
from itertools import permutations, product
from math import comb, factorial
from typing import Optional

from extreme_delaunay.errors import (
    CoincidentPointsError,
    DegenerateGramError,
    DimensionMismatchError,
    SumNotOneError,
)
from extreme_delaunay.models.enums import Definiteness
from extreme_delaunay.models.hypermetric import (
    BVector,
    Circumsphere,
    DistanceVector,
    GramMatrix,
    HypermetricVerdict,
    pairs,
)
from extreme_delaunay.models.lattice import CVPQuery
from extreme_delaunay.models.matrices import RatMatrix, as_matrix, dot
from extreme_delaunay.services.lattice_cvp import (
    cvp_at_exact_radius,
    enumerate_norm_query,
    indefinite_witness,
)
from extreme_delaunay.services.linalg import (
    integer_multiple,
    nullspace,
    solve_linear,
    symmetric_inertia,
)

logger = logging.getLogger(__name__)


# ============================================================================
# Values and geometry
# ============================================================================

def _as_bvector(b) -> BVector:
    if isinstance(b, BVector):
        return b
    coords = tuple(int(x) for x in b)
    if sum(coords) != 1:
        raise SumNotOneError(coords)
    return BVector(coords=coords)


def hyp_value(b, d: DistanceVector) -> Fraction:
    """H(b)d = Σ_{i<j} b_i b_j d_ij."""
    bv = _as_bvector(b)
    if len(bv) != d.n + 1:
        raise DimensionMismatchError(f"b has {len(bv)} coordinates, d has {d.n + 1} points")
    return sum((bv[i] * bv[j] * dij for (i, j), dij in zip(pairs(d.n), d.entries)), Fraction(0))


def gram_of(d: DistanceVector) -> GramMatrix:
    """g_ij = (d_i0 + d_j0 - d_ij) / 2 for 1 <= i, j <= n."""
    n = d.n
    rows = [
        [(d.get(i, 0) + d.get(j, 0) - d.get(i, j)) / 2 for j in range(1, n + 1)]
        for i in range(1, n + 1)
    ]
    return RatMatrix.from_rows(rows, cols=n)


def circumsphere(G) -> Circumsphere:
    """
    Centre coefficients and squared radius of the simplex with Gram matrix G.

    Raises:
        DegenerateGramError: G is singular or not positive definite.
    """
    gram = as_matrix(G)
    inertia = symmetric_inertia(gram)
    if inertia.definiteness is not Definiteness.POSITIVE_DEFINITE:
        raise DegenerateGramError(
            "Gram matrix is not positive definite", rank=inertia.n_plus + inertia.n_minus
        )
    half_diag = tuple(g / 2 for g in gram.diagonal())
    alpha = solve_linear(gram, half_diag).particular
    return Circumsphere(alpha=alpha, r2=gram.quadratic_form(alpha))


def sphere_identity_check(b, d: DistanceVector) -> tuple[Fraction, Fraction]:
    """
    Both sides of Σ_{i,j} b_i b_j d_ij = 2 (r2 - ‖Σ b_i v_i - c‖²).

    The left side is the ordered double sum, i.e. 2·hyp_value; the right side
    is evaluated independently through G, alpha and r2.
    """
    bv = _as_bvector(b)
    lhs = 2 * hyp_value(bv, d)
    gram = gram_of(d)
    sphere = circumsphere(gram)
    offset = [wi - ai for wi, ai in zip(bv.w, sphere.alpha)]
    rhs = 2 * (sphere.r2 - gram.quadratic_form(offset))
    return lhs, rhs


def _require_distinct_points(d: DistanceVector) -> None:
    if d.has_zero_entry():
        zero = next(pair for pair, e in zip(pairs(d.n), d.entries) if e == 0)
        raise CoincidentPointsError(f"points {zero[0]} and {zero[1]} coincide (d = 0)")


def ann(d: DistanceVector, node_limit: Optional[int] = None) -> list[BVector]:
    """
    Every b with Σ b_i = 1 and H(b)d = 0, lexicographically sorted.

    These are the lattice points on the circumsphere of the basis simplex.

    Raises:
        CoincidentPointsError: d has a zero entry.
        DegenerateGramError: the basis does not span an n-simplex.
    """
    _require_distinct_points(d)
    gram = gram_of(d)
    sphere = circumsphere(gram)
    query = CVPQuery.build(gram, sphere.alpha, sphere.r2)
    vertices = sorted(BVector.from_w(w) for w in cvp_at_exact_radius(query, node_limit))
    logger.debug(f"ann: {len(vertices)} vertices for n = {d.n}")
    return vertices


# ============================================================================
# Separation oracle
# ============================================================================

def _rank_violations(d: DistanceVector, candidates) -> list[tuple[BVector, Fraction]]:
    scored = {}
    for w in candidates:
        b = BVector.from_w(w)
        value = hyp_value(b, d)
        if value > 0:
            scored[b] = value
    return sorted(scored.items(), key=lambda item: (-item[1], item[0].coords))


def violating_bvectors(
    d: DistanceVector, node_limit: Optional[int] = None
) -> HypermetricVerdict:
    """
    One full separation pass over d.

    Indefinite Gram matrices and PSD ones whose circumsphere system is
    inconsistent yield a single constructed violation; otherwise every lattice
    point strictly inside the (possibly reduced) circumsphere is reported.

    Raises:
        PSDIrreducibleError: rank-deficient G with no integral subfamily.
        EnumerationBudgetExceeded: enumeration exceeded node_limit.
    """
    gram = gram_of(d)
    inertia = symmetric_inertia(gram)
    kind = inertia.definiteness
    half_diag = tuple(g / 2 for g in gram.diagonal())

    if kind is Definiteness.INDEFINITE:
        w = indefinite_witness(gram, half_diag, 0)
        violations = _rank_violations(d, [w])
        return _verdict(kind, inertia.n_plus, violations)

    solution = solve_linear(gram, half_diag)
    if not solution.solvable:
        # diag(G) has a component along ker G: H is linear and nonzero there
        diag = gram.diagonal()
        z = next(v for v in nullspace(gram) if dot(v, diag) != 0)
        w = integer_multiple(z)
        if dot(w, diag) < 0:
            w = tuple(-x for x in w)
        violations = _rank_violations(d, [w])
        return _verdict(kind, inertia.n_plus, violations)

    alpha = solution.particular
    r2 = gram.quadratic_form(alpha)
    result, found = enumerate_norm_query(gram, alpha, r2, node_limit)
    violations = _rank_violations(d, found)
    return _verdict(kind, result.reduced_dim, violations)


def _verdict(kind: Definiteness, reduced_dim: int, violations) -> HypermetricVerdict:
    if not violations:
        return HypermetricVerdict(valid=True, definiteness=kind, reduced_dim=reduced_dim)
    witness, value = violations[0]
    return HypermetricVerdict(
        valid=False,
        definiteness=kind,
        reduced_dim=reduced_dim,
        witness=witness,
        value=value,
        violations=tuple(violations),
    )


def is_hypermetric(d: DistanceVector, node_limit: Optional[int] = None) -> HypermetricVerdict:
    """
    Decide whether d satisfies every hypermetric inequality.

    Zero entries are allowed: coincident points make G rank-deficient and are
    handled by the reduced-lattice branch.
    """
    verdict = violating_bvectors(d, node_limit)
    if verdict.valid:
        logger.debug(f"d on {d.n + 1} points is hypermetric (rank {verdict.reduced_dim})")
    else:
        logger.debug(f"d violated by b = {verdict.witness} (H = {verdict.value})")
    return verdict


# ============================================================================
# Generators and bounds
# ============================================================================

def triangle_bvectors(n: int) -> list[BVector]:
    """All distinct permutations of (1, 1, -1, 0, ..., 0); 3·C(n+1, 3) of them."""
    if n < 2:
        return []
    seed = (1, 1, -1) + (0,) * (n - 2)
    return sorted(BVector(coords=p) for p in set(permutations(seed)))


def lovasz_bound(n: int) -> int:
    """floor(n! 2^n / C(2n, n)), the coefficient bound for facet b-vectors."""
    return (factorial(n) * 2**n) // comb(2 * n, n)


def brute_force_is_hypermetric(d: DistanceVector, B: int) -> HypermetricVerdict:
    """
    Check every b with |b_i| <= B directly.

    Independent of the lattice machinery; the verdict's witness follows the
    same most-violated-then-lexicographic rule as is_hypermetric.
    """
    if B < 1:
        raise ValueError("bound must be at least 1")
    candidates = []
    for w in product(range(-B, B + 1), repeat=d.n):
        if abs(1 - sum(w)) <= B:
            candidates.append(w)
    inertia = symmetric_inertia(gram_of(d))
    violations = _rank_violations(d, candidates)
    return _verdict(inertia.definiteness, inertia.n_plus, violations)
