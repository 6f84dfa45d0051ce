import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from birational.errors import DimensionMismatchError, ParseError
from birational.fields import GF, QQ
from birational.geom import AFFINE, PROJECTIVE, AmbientSpace, Point
from birational.parse import (
    format_hypersurface_fixture,
    format_map_fixture,
    max_variable,
    parse_fraction,
    parse_hypersurface_fixture,
    parse_map_fixture,
    parse_point,
    parse_polynomial,
)
from birational.poly import Polynomial

from .conftest import polynomials, random_poly


def test_circle():
    x0, x1 = Polynomial.gens(QQ, 2)
    assert parse_polynomial("x0^2 + x1^2 - 1") == x0 ** 2 + x1 ** 2 - 1


def test_aliases():
    x0, x1, x2 = Polynomial.gens(QQ, 3)
    assert parse_polynomial("x*y - z^2") == x0 * x1 - x2 ** 2
    assert parse_polynomial("w", 4) == Polynomial.var(QQ, 4, 3)


def test_double_plus_is_a_syntax_error_at_the_second_plus():
    with pytest.raises(ParseError) as exc:
        parse_polynomial("x0^2 + + x1")
    assert exc.value.column == 8


@pytest.mark.parametrize("text", ["x0^", "(x0 + 1", "x0 +", "q1", "1/0", "x0^-1", "2 x0 )", ""])
def test_malformed_inputs(text):
    with pytest.raises(ParseError):
        parse_polynomial(text)


def test_rational_literals_and_whitespace():
    x0, x1 = Polynomial.gens(QQ, 2)
    assert parse_polynomial(" 3/4 * x0*x1 -(x0 - 1/2)^2 ") == (
        (x0 * x1).scale(Fraction(3, 4)) - (x0 - Fraction(1, 2)) ** 2)


def test_prime_field_reduction():
    x0, x1 = Polynomial.gens(GF(7), 2)
    assert parse_polynomial("x0/2 + 8*x1", 2, GF(7)) == 4 * x0 + x1


def test_explicit_nvars_too_small():
    with pytest.raises(ParseError):
        parse_polynomial("x3", 2)


def test_max_variable():
    assert max_variable("x0 + x12*y") == 12
    assert max_variable("7") == -1


def test_fraction_parsing():
    num, den = parse_fraction("x0/(1+x1)", 2)
    x0, x1 = Polynomial.gens(QQ, 2)
    assert (num, den) == (x0, 1 + x1)


@given(st.data())
def test_print_parse_round_trip(data):
    field = data.draw(st.sampled_from([QQ, GF(7), GF(101)]))
    n = data.draw(st.integers(1, 6))
    f = data.draw(polynomials(field, n))
    assert parse_polynomial(str(f), n, field) == f


def test_thousand_round_trips():
    rng = random.Random(1000)
    for k in range(1000):
        field = [QQ, GF(13), GF(2 ** 31 - 1)][k % 3]
        n = rng.randint(1, 6)
        f = random_poly(rng, field, n, rng.randint(0, 5), rng.randint(0, 20))
        assert parse_polynomial(str(f), n, field) == f


def test_hypersurface_fixture_round_trip():
    X = parse_hypersurface_fixture("Q\nprojective\nx0^3 + x1^3 + x2^3 + x3^3\n")
    assert X.chart == PROJECTIVE and X.nvars == 4 and X.degree == 3
    assert parse_hypersurface_fixture(format_hypersurface_fixture(X)) == X
    Y = parse_hypersurface_fixture("Fp 7\naffine 3\nx0*x1 - 1\n")
    assert Y.field == GF(7) and Y.nvars == 3 and Y.chart == AFFINE


def test_whole_space_fixture():
    S = parse_hypersurface_fixture("Q\naffine 2\n0\n")
    assert isinstance(S, AmbientSpace) and S.nvars == 2
    with pytest.raises(ParseError):
        parse_hypersurface_fixture("Q\naffine\n0\n")


def test_map_fixture():
    text = "field Q\nsource affine 2\ntarget affine 1\nx0/(1+x1)\n"
    F = parse_map_fixture(text)
    assert F.target_chart == AFFINE and F.target_count == 1 and F.nvars == 2
    assert parse_map_fixture(format_map_fixture(F)) == F
    p = F(Point.affine(QQ, [3, 1]))
    assert p.coords == (Fraction(3, 2),)


def test_map_fixture_errors():
    with pytest.raises(ParseError):
        parse_map_fixture("x0\n")
    with pytest.raises(DimensionMismatchError):
        parse_map_fixture("field Q\nsource affine 2\ntarget affine 2\nx0\n")
    with pytest.raises(ParseError) as exc:
        parse_map_fixture("field Q\nsource affine 2\ntarget affine 1\nx0 +* x1\n")
    assert exc.value.line == 4


def test_point_literals():
    assert parse_point("2:-2:0", QQ) == Point.projective(QQ, [1, -1, 0])
    assert parse_point("3/5, 4/5", QQ).chart == AFFINE
    with pytest.raises(ParseError):
        parse_point("a,b", QQ)
