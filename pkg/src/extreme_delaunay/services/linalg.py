"""
Exact linear algebra over the rationals.

Gaussian elimination, linear solving with nullspace description, and the
inertia of a symmetric form by congruence diagonalization. Nothing here uses
floating point; eigenvalues are never computed.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Optional, Sequence

from extreme_delaunay.errors import DimensionMismatchError
from extreme_delaunay.models.enums import Definiteness, SolutionKind
from extreme_delaunay.models.matrices import RatMatrix, RatVector, as_matrix, as_vector, dot

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RowEchelon:
    """Reduced row echelon form together with its pivot columns."""

    rows: tuple[RatVector, ...]
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


@dataclass(frozen=True)
class LinearSolution:
    """Result of solve_linear."""

    kind: SolutionKind
    particular: Optional[RatVector] = None
    nullspace: tuple[RatVector, ...] = ()

    @property
    def solvable(self) -> bool:
        return self.kind is not SolutionKind.NONE


@dataclass(frozen=True)
class Inertia:
    """Signature of a symmetric form, with a negative direction when one exists."""

    n_plus: int
    n_minus: int
    n_zero: int
    negative_witness: Optional[RatVector] = None

    @property
    def dimension(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero

    @property
    def definiteness(self) -> Definiteness:
        if self.n_minus > 0:
            return Definiteness.INDEFINITE
        if self.n_zero > 0:
            return Definiteness.POSITIVE_SEMIDEFINITE
        return Definiteness.POSITIVE_DEFINITE


# ============================================================================
# Elimination
# ============================================================================

def row_reduce(M) -> RowEchelon:
    """Reduced row echelon form by exact Gauss-Jordan elimination."""
    work = as_matrix(M).to_lists()
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        p = work[r][c]
        work[r] = [x / p for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    return RowEchelon(rows=tuple(tuple(row) for row in work), pivots=tuple(pivots))


def rank(M) -> int:
    """Exact rank over the rationals."""
    return _rank_of_rows(as_matrix(M).to_lists())


def _rank_of_rows(rows: list[list[Fraction]]) -> int:
    # forward elimination only; cheaper than full RREF
    work = [row[:] for row in rows if any(x != 0 for x in row)]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        p = work[r][c]
        for i in range(r + 1, len(work)):
            if work[i][c] != 0:
                f = work[i][c] / p
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def rank_of_vectors(vectors: Sequence[Sequence]) -> int:
    """Rank of a family of vectors (integer or rational)."""
    return _rank_of_rows([[Fraction(x) for x in v] for v in vectors])


def nullspace(M) -> tuple[RatVector, ...]:
    """Basis of {x : M x = 0}, one vector per free column."""
    matrix = as_matrix(M)
    echelon = row_reduce(matrix)
    free = [c for c in range(matrix.cols) if c not in echelon.pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * matrix.cols
        vec[f] = Fraction(1)
        for row, p in zip(echelon.rows, echelon.pivots):
            vec[p] = -row[f]
        basis.append(tuple(vec))
    return tuple(basis)


def solve_linear(A, rhs: Sequence) -> LinearSolution:
    """
    Solve A x = rhs exactly.

    Returns the unique solution, a certified inconsistency, or (when
    underdetermined) one particular solution plus a nullspace basis.
    """
    matrix = as_matrix(A)
    b = as_vector(rhs)
    if len(b) != matrix.rows:
        raise DimensionMismatchError(f"matrix has {matrix.rows} rows, right-hand side has {len(b)}")
    augmented = RatMatrix.from_rows([row + (bi,) for row, bi in zip(matrix.entries, b)])
    echelon = row_reduce(augmented)
    if matrix.cols in echelon.pivots:
        return LinearSolution(kind=SolutionKind.NONE)
    particular = [Fraction(0)] * matrix.cols
    for row, p in zip(echelon.rows, echelon.pivots):
        particular[p] = row[-1]
    kernel = nullspace(matrix)
    kind = SolutionKind.UNIQUE if not kernel else SolutionKind.UNDERDETERMINED
    return LinearSolution(kind=kind, particular=tuple(particular), nullspace=kernel)


def determinant(M) -> Fraction:
    """Exact determinant by elimination."""
    work = as_matrix(M).to_lists()
    n = len(work)
    if any(len(row) != n for row in work):
        raise DimensionMismatchError("determinant of a non-square matrix")
    det = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            work[c], work[pivot_row] = work[pivot_row], work[c]
            det = -det
        p = work[c][c]
        det *= p
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] / p
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    return det


def inverse(M) -> RatMatrix:
    """Exact inverse; raises ValueError on a singular matrix."""
    matrix = as_matrix(M)
    n = matrix.rows
    augmented = RatMatrix.from_rows(
        [row + tuple(Fraction(int(i == j)) for j in range(n)) for i, row in enumerate(matrix.entries)]
    )
    echelon = row_reduce(augmented)
    if echelon.pivots[:n] != tuple(range(n)):
        raise ValueError("matrix is not invertible")
    return RatMatrix.from_rows([row[n:] for row in echelon.rows])


# ============================================================================
# Symmetric forms
# ============================================================================

def symmetric_inertia(G) -> Inertia:
    """
    Inertia of a symmetric form by exact congruence diagonalization.

    Maintains T with A = T G Tᵀ on the still-active indices. A nonzero diagonal
    entry is a 1x1 pivot; when every active diagonal entry vanishes but some
    off-diagonal A[i][j] does not, row i is replaced by row i + row j, which
    turns the 2x2 block into a usable 1x1 pivot of value 2·A[i][j].
    """
    matrix = as_matrix(G)
    if not matrix.is_symmetric():
        raise ValueError("symmetric_inertia requires a symmetric matrix")
    n = matrix.rows
    A = matrix.to_lists()
    T = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    active = list(range(n))
    n_plus = n_minus = 0
    witness: Optional[RatVector] = None

    while active:
        i = next((k for k in active if A[k][k] != 0), None)
        if i is None:
            pair = next(
                ((p, q) for p in active for q in active if p < q and A[p][q] != 0), None
            )
            if pair is None:
                break
            p, q = pair
            T[p] = [a + b for a, b in zip(T[p], T[q])]
            new_pp = A[p][p] + 2 * A[p][q] + A[q][q]
            for k in active:
                A[p][k] = A[p][k] + A[q][k]
            for k in active:
                A[k][p] = A[p][k]
            A[p][p] = new_pp
            i = p
        d = A[i][i]
        if d > 0:
            n_plus += 1
        else:
            n_minus += 1
            if witness is None:
                witness = tuple(T[i])
        active.remove(i)
        factors = {j: A[j][i] / d for j in active}
        for j in active:
            if factors[j] != 0:
                T[j] = [a - factors[j] * b for a, b in zip(T[j], T[i])]
        for j in active:
            for k in active:
                A[j][k] = A[j][k] - factors[j] * A[i][k]
    n_zero = n - n_plus - n_minus
    return Inertia(n_plus=n_plus, n_minus=n_minus, n_zero=n_zero, negative_witness=witness)


def definiteness(G) -> Definiteness:
    return symmetric_inertia(G).definiteness


def is_positive_definite(G) -> bool:
    return symmetric_inertia(G).definiteness is Definiteness.POSITIVE_DEFINITE


def ldl_upper(G) -> tuple[RatVector, tuple[RatVector, ...]]:
    """
    Decompose a positive-definite G as Uᵀ D U with U unit upper triangular.

    Returns (D, U). Then xᵀ G x = Σ_i D_i (x_i + Σ_{j>i} U_ij x_j)².
    """
    matrix = as_matrix(G)
    n = matrix.rows
    D = [Fraction(0)] * n
    U = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        D[i] = matrix[i, i] - sum((D[k] * U[k][i] * U[k][i] for k in range(i)), Fraction(0))
        if D[i] <= 0:
            raise ValueError("ldl_upper requires a positive-definite matrix")
        for j in range(i + 1, n):
            s = matrix[i, j] - sum((D[k] * U[k][i] * U[k][j] for k in range(i)), Fraction(0))
            U[i][j] = s / D[i]
    return tuple(D), tuple(tuple(row) for row in U)


# ============================================================================
# Integer helpers
# ============================================================================

def common_denominator(values: Sequence[Fraction]) -> int:
    return reduce(lcm, (Fraction(v).denominator for v in values), 1)


def integer_multiple(values: Sequence) -> tuple[int, ...]:
    """Smallest positive integer multiple of a rational vector."""
    den = common_denominator(values)
    return tuple(int(Fraction(v) * den) for v in values)


def primitive_vector(values: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector by a positive factor to a primitive integer vector."""
    ints = integer_multiple(values)
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        raise ValueError("the zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def vector_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def matrix_vector_dot(rows: Sequence[Sequence], v: Sequence) -> tuple[Fraction, ...]:
    return tuple(dot(row, v) for row in rows)
