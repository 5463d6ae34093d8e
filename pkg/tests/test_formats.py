from fractions import Fraction

import pytest

from extreme_delaunay.errors import ParseError
from extreme_delaunay.models.hypermetric import BVector
from extreme_delaunay.services.formats import (
    format_rational,
    format_ray,
    parse_distance_vector,
    parse_gram,
    parse_polytope,
    parse_rational,
    parse_rational_list,
    write_distance_vector,
    write_gram,
    write_polytope,
)


class TestTokens:
    def test_rationals(self):
        assert parse_rational("3") == 3
        assert parse_rational("-1/2") == Fraction(-1, 2)
        assert parse_rational_list("1/2,1/2") == (Fraction(1, 2), Fraction(1, 2))

    def test_zero_denominator(self):
        with pytest.raises(ParseError, match="zero denominator"):
            parse_rational("1/0")

    def test_decimal_is_not_exact(self):
        with pytest.raises(ParseError):
            parse_rational("0.5")

    def test_formatting(self):
        assert format_rational(Fraction(3, 4)) == "3/4"
        assert format_rational(Fraction(2)) == "2"
        assert format_ray((1, 0, 1)) == "(1,0,1)"


class TestDistanceVectors:
    def test_parse(self):
        d = parse_distance_vector("2\n1 1 2\n")
        assert d.n == 2
        assert d.entries == (1, 1, 2)

    def test_comments_and_blank_lines(self):
        d = parse_distance_vector("# square\n\n2   # points minus one\n1 1\n2\n")
        assert d.entries == (1, 1, 2)

    def test_error_location(self):
        with pytest.raises(ParseError) as excinfo:
            parse_distance_vector("2\n1 1/0 2\n")
        assert excinfo.value.line == 2
        assert excinfo.value.token == "1/0"
        assert "line 2" in str(excinfo.value)

    def test_too_few_entries(self):
        with pytest.raises(ParseError, match="unexpected end"):
            parse_distance_vector("2\n1 1\n")

    def test_trailing_token(self):
        with pytest.raises(ParseError, match="trailing"):
            parse_distance_vector("1\n1 2\n")

    def test_negative_distance(self):
        with pytest.raises(ParseError):
            parse_distance_vector("1\n-1\n")

    def test_n_must_be_positive(self):
        with pytest.raises(ParseError):
            parse_distance_vector("0\n")

    def test_written_form(self, square):
        assert write_distance_vector(square.basis_d) == "2\n1 1 2\n"


class TestGram:
    def test_parse(self):
        gram = parse_gram("2\n1 1/2\n1/2 1\n")
        assert gram[0, 1] == Fraction(1, 2)
        assert write_gram(gram) == "2\n1 1/2\n1/2 1\n"

    def test_asymmetric(self):
        with pytest.raises(ParseError, match="symmetric"):
            parse_gram("2\n1 0\n1 1\n")


class TestPolytopes:
    def test_intrinsic_with_vertex_block(self, square):
        text = write_polytope(square)
        assert text.splitlines()[:3] == ["2", "1 1 2", "4"]
        polytope = parse_polytope(text)
        assert polytope.vertices == square.vertices

    def test_bare_distance_vector(self, square):
        assert parse_polytope("2\n1 1 2\n").vertices == square.vertices

    def test_wrong_vertex_block(self):
        with pytest.raises(ParseError) as excinfo:
            parse_polytope("2\n1 1 2\n3\n1 0 0\n0 1 0\n0 0 1\n")
        assert excinfo.value.line == 3

    def test_vertex_must_sum_to_one(self):
        with pytest.raises(ParseError):
            parse_polytope("2\n1 1 2\n1\n1 1 0\n")

    def test_coordinate_block(self):
        text = "coordinates\n3\n8\n" + "".join(
            f"{x} {y} {z}\n" for x in (0, 1) for y in (0, 1) for z in (0, 1)
        )
        polytope = parse_polytope(text)
        assert polytope.vertex_count == 8
        assert polytope.n == 3

    def test_repeated_point(self):
        with pytest.raises(ParseError, match="repeated"):
            parse_polytope("coordinates\n1\n2\n0\n0\n")

    def test_reads_paths(self, write_file, square):
        path = write_file("square.poly", write_polytope(square))
        assert parse_polytope(path).vertices == square.vertices

    def test_vertex_block_order_is_free(self, square):
        lines = write_polytope(square).splitlines()
        shuffled = "\n".join(lines[:3] + list(reversed(lines[3:]))) + "\n"
        assert parse_polytope(shuffled).vertex_count == 4
        assert BVector.of(-1, 1, 1) in parse_polytope(shuffled).vertices
