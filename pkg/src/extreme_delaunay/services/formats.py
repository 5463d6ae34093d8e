"""
Text formats for distance vectors, polytopes and Gram matrices.

All numbers are exact: integers or ``p/q`` rationals, whitespace separated.
Blank lines and anything after ``#`` are ignored.

Distance vector::

    n
    d01 d02 ... d0n d12 ... d(n-1)n

Polytope, intrinsic form (the vertex block is optional and, when present,
must equal Ann(d))::

    n
    <basis distance vector>
    m
    m lines of n+1 integers

Polytope, coordinate form (any ambient dimension k)::

    coordinates
    k
    m
    m lines of k rationals

Gram matrix: n, then n rows of n rationals; the matrix must be symmetric.
"""

import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from extreme_delaunay.errors import HypermetricError, ParseError
from extreme_delaunay.models.hypermetric import BVector, DistanceVector, pair_count
from extreme_delaunay.models.matrices import RatMatrix
from extreme_delaunay.models.polytope import DelaunayPolytope
from extreme_delaunay.services.delaunay import polytope_from_basis, polytope_from_coordinates

logger = logging.getLogger(__name__)

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_INTEGER = re.compile(r"^[+-]?\d+$")

Source = Union[str, Path]


# ============================================================================
# Tokens
# ============================================================================

def parse_rational(token: str, line: Optional[int] = None) -> Fraction:
    if not _RATIONAL.match(token):
        raise ParseError("expected an integer or p/q rational", line=line, token=token)
    if "/" in token and int(token.split("/")[1]) == 0:
        raise ParseError("zero denominator", line=line, token=token)
    return Fraction(token)


def parse_integer(token: str, line: Optional[int] = None) -> int:
    if not _INTEGER.match(token):
        raise ParseError("expected an integer", line=line, token=token)
    return int(token)


def parse_rational_list(text: str) -> tuple[Fraction, ...]:
    """Comma- or whitespace-separated rationals, e.g. ``1/2,1/2``."""
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not tokens:
        raise ParseError("empty list of rationals")
    return tuple(parse_rational(t) for t in tokens)


class TokenStream:
    """Tokens of a text with their line numbers."""

    def __init__(self, text: str):
        self.tokens: list[tuple[int, str]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            content = raw.split("#", 1)[0]
            self.tokens.extend((lineno, tok) for tok in content.split())
        self.pos = 0

    @property
    def exhausted(self) -> bool:
        return self.pos >= len(self.tokens)

    @property
    def line(self) -> Optional[int]:
        if self.exhausted:
            return self.tokens[-1][0] if self.tokens else None
        return self.tokens[self.pos][0]

    def peek(self) -> Optional[str]:
        return None if self.exhausted else self.tokens[self.pos][1]

    def _next(self, what: str) -> tuple[int, str]:
        if self.exhausted:
            raise ParseError(f"unexpected end of input, expected {what}", line=self.line)
        item = self.tokens[self.pos]
        self.pos += 1
        return item

    def integer(self, what: str = "an integer") -> int:
        line, token = self._next(what)
        return parse_integer(token, line)

    def positive(self, what: str) -> int:
        line, token = self._next(what)
        value = parse_integer(token, line)
        if value < 1:
            raise ParseError(f"{what} must be positive", line=line, token=token)
        return value

    def rational(self, what: str = "a rational") -> Fraction:
        line, token = self._next(what)
        return parse_rational(token, line)

    def rationals(self, count: int, what: str = "a rational") -> list[Fraction]:
        return [self.rational(what) for _ in range(count)]

    def expect_end(self) -> None:
        if not self.exhausted:
            line, token = self.tokens[self.pos]
            raise ParseError("unexpected trailing token", line=line, token=token)


def _text(source: Source) -> str:
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    return source


# ============================================================================
# Parsers
# ============================================================================

def _distance_vector(stream: TokenStream) -> DistanceVector:
    start = stream.line
    n = stream.positive("n")
    entries = stream.rationals(pair_count(n), "a squared distance")
    try:
        return DistanceVector.from_entries(entries, n)
    except ValueError as e:
        raise ParseError(str(e), line=start) from e


def parse_distance_vector(source: Source) -> DistanceVector:
    """Read a distance-vector file (or text)."""
    stream = TokenStream(_text(source))
    d = _distance_vector(stream)
    stream.expect_end()
    return d


def parse_gram(source: Source) -> RatMatrix:
    """Read a Gram-matrix file (or text); symmetry is checked."""
    stream = TokenStream(_text(source))
    start = stream.line
    n = stream.positive("n")
    rows = [stream.rationals(n, "a matrix entry") for _ in range(n)]
    stream.expect_end()
    gram = RatMatrix.from_rows(rows)
    if not gram.is_symmetric():
        raise ParseError("Gram matrix is not symmetric", line=start)
    return gram


def _coordinate_polytope(stream: TokenStream, node_limit: Optional[int]) -> DelaunayPolytope:
    k = stream.positive("ambient dimension")
    m = stream.positive("vertex count")
    points = [tuple(stream.rationals(k, "a coordinate")) for _ in range(m)]
    stream.expect_end()
    if len(set(points)) != m:
        raise ParseError("repeated point in coordinate block")
    return polytope_from_coordinates(points, node_limit)


def _bvector_block(stream: TokenStream, n: int) -> tuple[int, list[BVector]]:
    header_line = stream.line
    m = stream.positive("vertex count")
    vertices = []
    for _ in range(m):
        line = stream.line
        coords = [stream.integer("a b-vector coordinate") for _ in range(n + 1)]
        try:
            vertices.append(BVector(coords=tuple(coords)))
        except HypermetricError as e:
            raise ParseError(str(e), line=line) from e
    return header_line, vertices


def parse_polytope(source: Source, node_limit: Optional[int] = None) -> DelaunayPolytope:
    """
    Read a polytope file in intrinsic or coordinate form.

    A bare distance vector is accepted and read as the basis of its polytope.

    Raises:
        ParseError: malformed input, or a vertex block different from Ann(d).
        NotHypermetricError / DegenerateGramError: the basis does not define
            a Delaunay polytope.
    """
    stream = TokenStream(_text(source))
    if stream.peek() == "coordinates":
        stream.pos += 1
        return _coordinate_polytope(stream, node_limit)

    d = _distance_vector(stream)
    listed = None
    if not stream.exhausted:
        header_line, listed = _bvector_block(stream, d.n)
        stream.expect_end()
    polytope = polytope_from_basis(d, node_limit)
    if listed is not None and sorted(set(listed)) != list(polytope.vertices):
        raise ParseError(
            f"vertex block lists {len(listed)} b-vectors but Ann(d) has "
            f"{polytope.vertex_count}, or they differ",
            line=header_line,
        )
    return polytope


# ============================================================================
# Writers
# ============================================================================

def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_vector(values: Iterable, sep: str = " ") -> str:
    return sep.join(format_rational(v) for v in values)


def format_bvector(b: BVector) -> str:
    """``(1,1,-1)`` form used in verdict lines."""
    return str(b)


def format_ray(ray: Sequence) -> str:
    return "(" + format_vector(ray, ",") + ")"


def write_distance_vector(d: DistanceVector) -> str:
    return f"{d.n}\n{format_vector(d.entries)}\n"


def write_polytope(polytope: DelaunayPolytope) -> str:
    """Intrinsic form with the full vertex block."""
    lines = [str(polytope.n), format_vector(polytope.basis_d.entries), str(polytope.vertex_count)]
    lines.extend(" ".join(str(c) for c in b.coords) for b in polytope.vertices)
    return "\n".join(lines) + "\n"


def write_gram(gram: RatMatrix) -> str:
    lines = [str(gram.rows)] + [format_vector(gram.row(i)) for i in range(gram.rows)]
    return "\n".join(lines) + "\n"
