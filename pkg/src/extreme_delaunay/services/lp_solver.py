"""
Exact rational linear programming.

Two-phase primal simplex over Fractions with Bland's anti-cycling rule. An
infeasible problem comes back with a Farkas multiplier vector read off the
phase-one reduced costs, so both outcomes carry a certificate that can be
checked by substitution.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from extreme_delaunay.errors import UnboundedLPError
from extreme_delaunay.models.enums import ConstraintSense, LPStatus, VarSign
from extreme_delaunay.models.matrices import LPProblem, RatVector, dot

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LPResult:
    """
    Outcome of an LP.

    Exactly one of ``point`` (feasible) and ``farkas`` (infeasible) is set.
    ``farkas`` holds one multiplier u_i per constraint row with
    u_i <= 0 on <= rows, u_i >= 0 on >= rows, (uᵀA)_j <= 0 on nonnegative
    variables, (uᵀA)_j = 0 on free variables and uᵀb > 0.
    """

    status: LPStatus
    point: Optional[RatVector] = None
    farkas: Optional[RatVector] = None
    objective_value: Optional[Fraction] = None

    @property
    def feasible(self) -> bool:
        return self.status is LPStatus.FEASIBLE

    def verify(self, problem: LPProblem) -> bool:
        """Re-check whichever certificate is present against the problem."""
        if self.feasible:
            return self.point is not None and self.farkas is None and point_satisfies(problem, self.point)
        return self.farkas is not None and self.point is None and farkas_certifies(problem, self.farkas)


def point_satisfies(problem: LPProblem, x: Sequence) -> bool:
    """Direct substitution of x into every row and sign restriction."""
    for j, sign in enumerate(problem.var_signs):
        if sign is VarSign.NONNEGATIVE and x[j] < 0:
            return False
    for row, b, sense in zip(problem.A.entries, problem.rhs, problem.senses):
        value = dot(row, x)
        if sense is ConstraintSense.LE and value > b:
            return False
        if sense is ConstraintSense.GE and value < b:
            return False
        if sense is ConstraintSense.EQ and value != b:
            return False
    return True


def farkas_certifies(problem: LPProblem, u: Sequence) -> bool:
    """Check that u proves infeasibility of the problem."""
    if len(u) != problem.num_rows:
        return False
    for ui, sense in zip(u, problem.senses):
        if sense is ConstraintSense.LE and ui > 0:
            return False
        if sense is ConstraintSense.GE and ui < 0:
            return False
    for j, sign in enumerate(problem.var_signs):
        combined = dot(u, problem.A.column(j))
        if sign is VarSign.NONNEGATIVE and combined > 0:
            return False
        if sign is VarSign.FREE and combined != 0:
            return False
    return dot(u, problem.rhs) > 0


# ============================================================================
# Tableau
# ============================================================================

class _Tableau:
    """Dense canonical tableau; rows[i][-1] is the right-hand side."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int], width: int):
        self.rows = rows
        self.basis = basis
        self.width = width

    def pivot(self, r: int, c: int) -> None:
        p = self.rows[r][c]
        self.rows[r] = [x / p for x in self.rows[r]]
        pivot_row = self.rows[r]
        for i, row in enumerate(self.rows):
            if i != r and row[c] != 0:
                f = row[c]
                self.rows[i] = [a - f * b for a, b in zip(row, pivot_row)]
        self.basis[r] = c

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        reduced = list(cost)
        for i, bv in enumerate(self.basis):
            cb = cost[bv]
            if cb != 0:
                row = self.rows[i]
                for j in range(self.width):
                    reduced[j] -= cb * row[j]
        return reduced

    def objective(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[bv] * self.rows[i][-1] for i, bv in enumerate(self.basis)), Fraction(0))

    def run(self, cost: Sequence[Fraction], allowed: Sequence[bool]) -> None:
        """Minimize cost over the allowed columns, Bland's rule throughout."""
        iterations = 0
        while True:
            reduced = self.reduced_costs(cost)
            entering = next(
                (j for j in range(self.width) if allowed[j] and reduced[j] < 0), None
            )
            if entering is None:
                logger.debug(f"simplex optimal after {iterations} pivots")
                return
            leaving = None
            best: Optional[tuple[Fraction, int]] = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    key = (row[-1] / row[entering], self.basis[i])
                    if best is None or key < best:
                        best = key
                        leaving = i
            if leaving is None:
                raise UnboundedLPError("objective is unbounded on the feasible region")
            self.pivot(leaving, entering)
            iterations += 1


# ============================================================================
# Solver
# ============================================================================

def lp_feasible(problem: LPProblem) -> LPResult:
    """
    Decide feasibility of an LP and, if an objective is set, optimize it.

    Args:
        problem: The LP. Rows may mix <=, == and >= senses; variables may be
            free or nonnegative.

    Returns:
        LPResult with a feasible point (optimal when an objective is given)
        or a Farkas infeasibility certificate.

    Raises:
        UnboundedLPError: The objective is unbounded on a nonempty region.
    """
    m = problem.num_rows
    # standard-form columns: (original index, sign) for x, then slacks
    columns: list[tuple[int, int]] = []
    for j, sign in enumerate(problem.var_signs):
        columns.append((j, 1))
        if sign is VarSign.FREE:
            columns.append((j, -1))
    n_struct = len(columns)
    slack_of_row: dict[int, int] = {}
    for i, sense in enumerate(problem.senses):
        if sense is not ConstraintSense.EQ:
            slack_of_row[i] = len(columns)
            columns.append((-1, 1 if sense is ConstraintSense.LE else -1))
    n_std = len(columns)

    flips: list[int] = []
    rows: list[list[Fraction]] = []
    for i in range(m):
        row = [Fraction(0)] * (n_std + m + 1)
        for c in range(n_struct):
            j, s = columns[c]
            row[c] = s * problem.A[i, j]
        if i in slack_of_row:
            row[slack_of_row[i]] = Fraction(columns[slack_of_row[i]][1])
        row[-1] = problem.rhs[i]
        flip = -1 if row[-1] < 0 else 1
        if flip < 0:
            row = [-x for x in row]
        row[n_std + i] = Fraction(1)
        flips.append(flip)
        rows.append(row)

    tableau = _Tableau(rows, [n_std + i for i in range(m)], n_std + m)
    phase_one_cost = [Fraction(0)] * n_std + [Fraction(1)] * m
    tableau.run(phase_one_cost, [True] * (n_std + m))

    if tableau.objective(phase_one_cost) > 0:
        reduced = tableau.reduced_costs(phase_one_cost)
        farkas = tuple(flips[i] * (1 - reduced[n_std + i]) for i in range(m))
        logger.debug(f"LP infeasible ({m} rows, {problem.num_vars} vars)")
        return LPResult(status=LPStatus.INFEASIBLE, farkas=farkas)

    # drive remaining zero-valued artificials out of the basis
    r = 0
    while r < len(tableau.rows):
        if tableau.basis[r] >= n_std:
            c = next((j for j in range(n_std) if tableau.rows[r][j] != 0), None)
            if c is None:
                del tableau.rows[r]
                del tableau.basis[r]
                continue
            tableau.pivot(r, c)
        r += 1

    allowed = [True] * n_std + [False] * m
    if problem.objective is not None:
        sign = -1 if problem.maximize else 1
        cost = [Fraction(0)] * (n_std + m)
        for c in range(n_struct):
            j, s = columns[c]
            cost[c] = sign * s * problem.objective[j]
        tableau.run(cost, allowed)

    std_values = [Fraction(0)] * (n_std + m)
    for i, bv in enumerate(tableau.basis):
        std_values[bv] = tableau.rows[i][-1]
    x = [Fraction(0)] * problem.num_vars
    for c in range(n_struct):
        j, s = columns[c]
        x[j] += s * std_values[c]
    point = tuple(x)
    value = dot(problem.objective, point) if problem.objective is not None else None
    return LPResult(status=LPStatus.FEASIBLE, point=point, objective_value=value)


# ============================================================================
# Combination helpers
# ============================================================================

def conic_combination(target: Sequence, generators: Sequence[Sequence]) -> Optional[RatVector]:
    """Nonnegative coefficients λ with Σ λ_j g_j = target, or None."""
    if not generators:
        return () if all(t == 0 for t in target) else None
    dim = len(target)
    A = [[g[k] for g in generators] for k in range(dim)]
    result = lp_feasible(LPProblem.build(A, target))
    return result.point if result.feasible else None


def convex_combination(target: Sequence, points: Sequence[Sequence]) -> Optional[RatVector]:
    """Barycentric coefficients expressing target in the hull of points, or None."""
    if not points:
        return None
    dim = len(target)
    A = [[p[k] for p in points] for k in range(dim)] + [[1] * len(points)]
    result = lp_feasible(LPProblem.build(A, list(target) + [1]))
    return result.point if result.feasible else None
