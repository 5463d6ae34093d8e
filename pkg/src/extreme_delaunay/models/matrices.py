"""
Exact rational matrices and linear-program descriptions.

Every entry is a fractions.Fraction, which keeps itself in lowest terms with a
positive denominator, so no rounding happens anywhere downstream.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from extreme_delaunay.errors import DimensionMismatchError
from extreme_delaunay.models.enums import ConstraintSense, VarSign

Rational = Union[int, Fraction]
RatVector = tuple[Fraction, ...]


def to_fraction(value) -> Fraction:
    """Convert an int, Fraction or 'p/q' string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating-point values are not accepted; use Fraction or 'p/q' strings")
    return Fraction(value)


def as_vector(values: Iterable) -> RatVector:
    """Coerce an iterable to an immutable Fraction vector."""
    return tuple(to_fraction(v) for v in values)


def dot(u: Sequence, v: Sequence) -> Fraction:
    """Exact inner product of two equally long vectors."""
    if len(u) != len(v):
        raise DimensionMismatchError(f"cannot dot vectors of length {len(u)} and {len(v)}")
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class RatMatrix:
    """An immutable rows x cols matrix of Fractions, stored row-major."""

    entries: tuple[RatVector, ...]
    cols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: Optional[int] = None) -> "RatMatrix":
        data = tuple(as_vector(row) for row in rows)
        width = len(data[0]) if data else (cols or 0)
        for row in data:
            if len(row) != width:
                raise DimensionMismatchError("matrix rows have different lengths")
        return cls(entries=data, cols=width)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], cols=cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> RatVector:
        return self.entries[i]

    def column(self, j: int) -> RatVector:
        return tuple(row[j] for row in self.entries)

    def to_lists(self) -> list[list[Fraction]]:
        """Mutable copy for elimination routines."""
        return [list(row) for row in self.entries]

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def mul_vec(self, v: Sequence) -> RatVector:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"matrix has {self.cols} columns, vector has {len(v)}")
        return tuple(dot(row, v) for row in self.entries)

    def quadratic_form(self, v: Sequence) -> Fraction:
        """vᵀ M v."""
        return dot(v, self.mul_vec(v))

    def bilinear(self, u: Sequence, v: Sequence) -> Fraction:
        """uᵀ M v."""
        return dot(u, self.mul_vec(v))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix.from_rows(
            [[self.entries[i][j] for j in cols] for i in rows], cols=len(cols)
        )

    def diagonal(self) -> RatVector:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def scaled(self, factor: Rational) -> "RatMatrix":
        f = to_fraction(factor)
        return RatMatrix.from_rows([[f * x for x in row] for row in self.entries], cols=self.cols)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


def as_matrix(value) -> RatMatrix:
    """Accept a RatMatrix or any nested sequence of rationals."""
    if isinstance(value, RatMatrix):
        return value
    return RatMatrix.from_rows(value)


@dataclass(frozen=True)
class LPProblem:
    """
    A linear program over the rationals.

    Rows read ``A[i] · x  (senses[i])  rhs[i]``. With ``objective`` unset the
    problem is a pure feasibility question; otherwise ``objective · x`` is
    minimized (or maximized when ``maximize`` is set).
    """

    A: RatMatrix
    rhs: RatVector
    senses: tuple[ConstraintSense, ...]
    var_signs: tuple[VarSign, ...]
    objective: Optional[RatVector] = None
    maximize: bool = False
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if len(self.rhs) != self.A.rows or len(self.senses) != self.A.rows:
            raise DimensionMismatchError("LP rows, right-hand side and senses disagree")
        if len(self.var_signs) != self.A.cols:
            raise DimensionMismatchError("LP columns and variable signs disagree")
        if self.objective is not None and len(self.objective) != self.A.cols:
            raise DimensionMismatchError("LP objective length differs from column count")

    @classmethod
    def build(
        cls,
        A,
        rhs: Iterable,
        senses=ConstraintSense.EQ,
        var_signs=VarSign.NONNEGATIVE,
        objective: Optional[Iterable] = None,
        maximize: bool = False,
    ) -> "LPProblem":
        """Convenience constructor; scalar senses/signs are broadcast."""
        matrix = as_matrix(A)
        rows, cols = matrix.shape
        if isinstance(senses, ConstraintSense):
            senses = (senses,) * rows
        if isinstance(var_signs, VarSign):
            var_signs = (var_signs,) * cols
        return cls(
            A=matrix,
            rhs=as_vector(rhs),
            senses=tuple(senses),
            var_signs=tuple(var_signs),
            objective=as_vector(objective) if objective is not None else None,
            maximize=maximize,
        )

    @property
    def num_vars(self) -> int:
        return self.A.cols

    @property
    def num_rows(self) -> int:
        return self.A.rows
