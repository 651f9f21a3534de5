"""Polynomial text grammar."""

from fractions import Fraction

import pytest

from cxpoisson import Chart, Poly, parse_poly
from cxpoisson.grammar import PolyParseError
from cxpoisson.scalars import GS_I, GaussScalar

CH = Chart(("x", "y", "z"))


def test_literals():
    assert parse_poly("3", CH) == Poly.const(CH, 3)
    assert parse_poly("3/2", CH) == Poly.const(CH, Fraction(3, 2))
    assert parse_poly("i", CH) == Poly.const(CH, GS_I)
    assert parse_poly("-i", CH) == Poly.const(CH, -GS_I)
    assert parse_poly("0", CH).is_zero()


def test_variables_and_powers():
    x = Poly.var(CH, "x")
    y = Poly.var(CH, "y")
    assert parse_poly("x", CH) == x
    assert parse_poly("x^3", CH) == x * x * x
    assert parse_poly("x*y^2", CH) == x * y * y
    assert parse_poly("x^0", CH) == Poly.const(CH, 1)


def test_expressions():
    p = parse_poly("1 + 2*x - 3/4*y^2 + i*z", CH)
    q = (
        Poly.const(CH, 1)
        + Poly.var(CH, "x").scale(2)
        - (Poly.var(CH, "y") * Poly.var(CH, "y")).scale(Fraction(3, 4))
        + Poly.var(CH, "z").scale(GS_I)
    )
    assert p == q


def test_parentheses_and_unary():
    assert parse_poly("-(x + y)", CH) == -(Poly.var(CH, "x") + Poly.var(CH, "y"))
    assert parse_poly("(1 + i)*(1 - i)", CH) == Poly.const(CH, 2)
    assert parse_poly("--x", CH) == Poly.var(CH, "x")


def test_complex_coefficient_roundtrip():
    p = parse_poly("(1 + 2*i)*x*y + 3/2*i", CH)
    assert parse_poly(str(p), CH) == p


def test_chart_variable_named_i_shadows_unit():
    ch = Chart(("i", "j"))
    p = parse_poly("i^2", ch)
    assert p == Poly.var(ch, "i") * Poly.var(ch, "i")


def test_errors_carry_column():
    with pytest.raises(PolyParseError):
        parse_poly("x +", CH)
    with pytest.raises(PolyParseError):
        parse_poly("w + 1", CH)
    with pytest.raises(PolyParseError):
        parse_poly("x^y", CH)
    with pytest.raises(PolyParseError):
        parse_poly("(x", CH)
    with pytest.raises(PolyParseError):
        parse_poly("x ? y", CH)
    with pytest.raises(PolyParseError):
        parse_poly("x y", CH)
    err = None
    try:
        parse_poly("x + w", CH)
    except PolyParseError as exc:
        err = exc
    assert err is not None and "column 5" in str(err)
