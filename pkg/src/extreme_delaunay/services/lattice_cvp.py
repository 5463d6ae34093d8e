"""
Closest-vector enumeration with exact rational bounds.

The enumeration is Fincke-Pohst style: G is factored as Uᵀ D U (unit upper
triangular U, positive diagonal D) and the coordinates of w are fixed from the
last one down, each level contributing D_i (w_i - t_i)² to the squared
distance. Square roots are only taken as integer floors to size the candidate
range; every accept/reject decision is made on the exact rational value.
"""

import logging
from dataclasses import replace
from fractions import Fraction
from itertools import combinations
from math import ceil, floor, isqrt
from typing import Iterator, Optional, Sequence

from extreme_delaunay.errors import (
    EnumerationBudgetExceeded,
    NotPositiveDefiniteError,
    NotPSDError,
    PSDIrreducibleError,
)
from extreme_delaunay.models.enums import Definiteness
from extreme_delaunay.models.lattice import (
    CVPQuery,
    IntVector,
    LatticeReduction,
    NormQueryResult,
)
from extreme_delaunay.models.matrices import RatMatrix, as_matrix, as_vector, dot, to_fraction
from extreme_delaunay.services.linalg import (
    determinant,
    integer_multiple,
    inverse,
    ldl_upper,
    solve_linear,
    symmetric_inertia,
)

logger = logging.getLogger(__name__)

DEFAULT_NODE_LIMIT = 10**8


def floor_sqrt(q: Fraction) -> int:
    """floor(sqrt(q)) for a nonnegative rational."""
    if q < 0:
        raise ValueError("square root of a negative rational")
    return isqrt(q.numerator * q.denominator) // q.denominator


# ============================================================================
# Enumeration
# ============================================================================

class _Enumerator:
    """Depth-first enumeration of lattice points in an ellipsoid."""

    def __init__(self, query: CVPQuery, node_limit: Optional[int]):
        gram = query.lattice.gram
        try:
            self.D, self.U = ldl_upper(gram)
        except ValueError as exc:
            raise NotPositiveDefiniteError("CVP requires a positive-definite Gram matrix") from exc
        self.n = gram.rows
        self.x = query.target
        self.r2 = query.r2
        self.node_limit = node_limit if node_limit is not None else DEFAULT_NODE_LIMIT
        self.nodes = 0

    def points(self, strict: bool) -> Iterator[tuple[IntVector, Fraction]]:
        """
        Yield (w, distance²) for every w with distance² < r2 (strict) or <= r2.

        Order is deterministic: last coordinate outermost, ascending values.
        """
        if self.r2 < 0 or (strict and self.r2 == 0):
            return
        if self.n == 0:
            yield (), Fraction(0)
            return
        w = [0] * self.n
        yield from self._level(self.n - 1, Fraction(0), w, strict)

    def _level(self, i: int, partial: Fraction, w: list[int], strict: bool):
        # centre of the admissible interval for w_i given w_{i+1..n-1}
        t = self.x[i] - sum(
            (self.U[i][j] * (w[j] - self.x[j]) for j in range(i + 1, self.n)), Fraction(0)
        )
        remaining = self.r2 - partial
        radius = floor_sqrt(remaining / self.D[i])
        for wi in range(floor(t) - radius - 1, ceil(t) + radius + 2):
            term = self.D[i] * (wi - t) ** 2
            total = partial + term
            if total > self.r2 or (strict and total >= self.r2):
                continue
            self.nodes += 1
            if self.nodes > self.node_limit:
                raise EnumerationBudgetExceeded(self.node_limit)
            w[i] = wi
            if i == 0:
                yield tuple(w), total
            else:
                yield from self._level(i - 1, total, w, strict)
        w[i] = 0


def cvp_strictly_inside(query: CVPQuery, node_limit: Optional[int] = None) -> Optional[IntVector]:
    """
    Some w with (w - x)ᵀG(w - x) < r2, or None when there is none.

    Raises:
        NotPositiveDefiniteError: G is not positive definite.
        EnumerationBudgetExceeded: more than node_limit nodes were visited.
    """
    enumerator = _Enumerator(query, node_limit)
    for w, _ in enumerator.points(strict=True):
        return w
    return None


def enumerate_strictly_inside(
    query: CVPQuery, node_limit: Optional[int] = None
) -> list[tuple[IntVector, Fraction]]:
    """Every w strictly inside the sphere with its squared distance, sorted by w."""
    enumerator = _Enumerator(query, node_limit)
    return sorted(enumerator.points(strict=True))


def cvp_at_exact_radius(query: CVPQuery, node_limit: Optional[int] = None) -> list[IntVector]:
    """All w with (w - x)ᵀG(w - x) == r2, lexicographically sorted."""
    enumerator = _Enumerator(query, node_limit)
    found = [w for w, dist in enumerator.points(strict=False) if dist == query.r2]
    logger.debug(f"exact-radius enumeration: {len(found)} points, {enumerator.nodes} nodes")
    return sorted(found)


def coordinate_bounds(gram, target: Sequence, r2) -> list[tuple[int, int]]:
    """
    Integer box containing every w with (w - x)ᵀG(w - x) <= r2.

    Uses |w_i - x_i|² <= r2 · (G⁻¹)_ii, the exact ellipsoid extent per axis.
    """
    inv = inverse(gram)
    r2 = to_fraction(r2)
    x = as_vector(target)
    bounds = []
    for i in range(len(x)):
        reach = floor_sqrt(r2 * inv[i, i]) + 1
        bounds.append((floor(x[i]) - reach, ceil(x[i]) + reach))
    return bounds


# ============================================================================
# Rank reduction
# ============================================================================

def _difference_gram(G: RatMatrix, base: Optional[int], indices: Sequence[int]) -> RatMatrix:
    def g(a: Optional[int], b: Optional[int]) -> Fraction:
        if a is None or b is None:
            return Fraction(0)
        return G[a, b]

    rows = []
    for a in indices:
        rows.append([g(a, b) - g(a, base) - g(base, b) + g(base, base) for b in indices])
    return RatMatrix.from_rows(rows, cols=len(indices))


def _candidate_families(n: int, r: int) -> Iterator[tuple[Optional[int], tuple[int, ...]]]:
    """Base point first (origin, then each generator), subsets lexicographic."""
    for base in [None, *range(n)]:
        others = [i for i in range(n) if i != base]
        for subset in combinations(others, r):
            yield base, subset


def psd_reduce(G, points: Sequence[Sequence] = ()) -> Optional[LatticeReduction]:
    """
    Find r differences of generating points that form an integral basis.

    Args:
        G: Gram matrix of the generators u_0..u_{n-1}; must be PSD.
        points: Rational coordinate vectors over the generators to re-express.

    Returns:
        The reduction, or None when no family of the required shape expresses
        every generator with integer coefficients.

    Raises:
        NotPSDError: G has a negative direction.
    """
    gram = as_matrix(G)
    inertia = symmetric_inertia(gram)
    if inertia.n_minus > 0:
        raise NotPSDError(f"Gram matrix has {inertia.n_minus} negative direction(s)")
    n = gram.rows
    r = inertia.n_plus

    for base, subset in _candidate_families(n, r):
        reduced = _difference_gram(gram, base, subset)
        if r and determinant(reduced) == 0:
            continue
        coords: list[IntVector] = []
        for i in range(n):
            rhs = []
            for a in subset:
                ga_i = gram[a, i]
                gb_i = gram[base, i] if base is not None else Fraction(0)
                rhs.append(ga_i - gb_i)
            if r == 0:
                coords.append(())
                continue
            solution = solve_linear(reduced, rhs)
            c = solution.particular
            if c is None or any(ci.denominator != 1 for ci in c):
                break
            coords.append(tuple(int(ci) for ci in c))
        else:
            reduction = LatticeReduction(
                base=base,
                indices=tuple(subset),
                gram=reduced,
                generator_coords=tuple(coords),
            )
            logger.debug(f"rank {r} reduction via base={base} indices={subset}")
            return replace(
                reduction, points=tuple(reduction.reduce_point(as_vector(p)) for p in points)
            )
    logger.info(f"no integral rank-{r} subfamily among {n} generators")
    return None


# ============================================================================
# Dispatch
# ============================================================================

def indefinite_witness(G, h: Sequence, c) -> IntVector:
    """
    An integer w with wᵀGw - 2hᵀw + c < 0 for an indefinite G.

    The rational negative direction z from the inertia computation is scaled
    to an integer vector z̃ (a = z̃ᵀGz̃ < 0); along k·z̃ the value is
    a·k² - 2βk + c with β = hᵀz̃, and k > (2|β| + |c|) / |a| makes it negative.
    """
    gram = as_matrix(G)
    inertia = symmetric_inertia(gram)
    if inertia.negative_witness is None:
        raise ValueError("form has no negative direction")
    z = integer_multiple(inertia.negative_witness)
    a = gram.quadratic_form(z)
    beta = dot(h, z)
    c = to_fraction(c)
    k = floor((2 * abs(beta) + abs(c)) / -a) + 1
    return tuple(k * zi for zi in z)


def dispatch_norm_query(
    G, x: Sequence, r2, node_limit: Optional[int] = None
) -> NormQueryResult:
    """
    Decide whether some integer w has (w - x)ᵀG(w - x) < r2 for any symmetric G.

    Indefinite G always admits such a w (built explicitly); positive-definite G
    goes to the CVP enumeration; a rank-deficient PSD G is first reduced to an
    integral basis of full rank.

    Raises:
        PSDIrreducibleError: G is PSD and no integral subfamily exists.
        EnumerationBudgetExceeded: the enumeration ran over node_limit.
    """
    gram = as_matrix(G)
    target = as_vector(x)
    radius2 = to_fraction(r2)
    inertia = symmetric_inertia(gram)
    kind = inertia.definiteness

    if kind is Definiteness.INDEFINITE:
        h = gram.mul_vec(target)
        c = gram.quadratic_form(target) - radius2
        witness = indefinite_witness(gram, h, c)
        return NormQueryResult(witness=witness, definiteness=kind, reduced_dim=inertia.n_plus)

    if kind is Definiteness.POSITIVE_DEFINITE:
        query = CVPQuery.build(gram, target, radius2)
        return NormQueryResult(
            witness=cvp_strictly_inside(query, node_limit),
            definiteness=kind,
            reduced_dim=gram.rows,
        )

    reduction = psd_reduce(gram, [target])
    if reduction is None:
        raise PSDIrreducibleError(
            f"no integral basis among differences of {gram.rows} generators (rank {inertia.n_plus})"
        )
    query = CVPQuery.build(reduction.gram, reduction.points[0], radius2)
    found = cvp_strictly_inside(query, node_limit)
    return NormQueryResult(
        witness=reduction.lift(found) if found is not None else None,
        definiteness=kind,
        reduced_dim=reduction.rank,
        reduction=reduction,
    )


def enumerate_norm_query(
    G, x: Sequence, r2, node_limit: Optional[int] = None
) -> tuple[NormQueryResult, list[IntVector]]:
    """
    Like dispatch_norm_query but returns every vector strictly inside.

    The indefinite case has infinitely many; only the constructed witness is
    returned there.
    """
    gram = as_matrix(G)
    target = as_vector(x)
    radius2 = to_fraction(r2)
    inertia = symmetric_inertia(gram)
    kind = inertia.definiteness

    if kind is Definiteness.INDEFINITE:
        result = dispatch_norm_query(gram, target, radius2, node_limit)
        return result, [result.witness]

    if kind is Definiteness.POSITIVE_DEFINITE:
        found = [w for w, _ in enumerate_strictly_inside(CVPQuery.build(gram, target, radius2), node_limit)]
        result = NormQueryResult(
            witness=found[0] if found else None, definiteness=kind, reduced_dim=gram.rows
        )
        return result, found

    reduction = psd_reduce(gram, [target])
    if reduction is None:
        raise PSDIrreducibleError(
            f"no integral basis among differences of {gram.rows} generators (rank {inertia.n_plus})"
        )
    query = CVPQuery.build(reduction.gram, reduction.points[0], radius2)
    found = [reduction.lift(w) for w, _ in enumerate_strictly_inside(query, node_limit)]
    result = NormQueryResult(
        witness=found[0] if found else None,
        definiteness=kind,
        reduced_dim=reduction.rank,
        reduction=reduction,
    )
    return result, found
