import pytest
from fractions import Fraction

from serival.algebra import HomogForm, SeriesPoly
from serival.parsing import (
    ParseError, infer_nvars, parse_completed, parse_poly, parse_ratfunc, parse_series,
)
from strategies import F2, QQ


def test_series_with_precision():
    s = parse_series("1 + T1^2*T2 - 3*T2^3 @6", QQ)
    assert s.prec == 6 and s.coeffs == {(0, 0): 1, (2, 1): 1, (0, 3): -3}


def test_series_needs_precision():
    with pytest.raises(ParseError):
        parse_series("T1 + T2", QQ)


def test_ratfunc():
    r = parse_ratfunc("(t1^2 - 1)/(t1 - 1)", QQ, 1)
    assert r.num == {(1,): 1, (0,): 1} and r.den == {(0,): 1}
    assert parse_ratfunc("3/4", QQ, 1).num == {(0,): Fraction(3, 4)}


def test_completed():
    e = parse_completed("(t1^2)*TN^2 + TN^3 @8", QQ, 1)
    assert e.tprec == 8 and set(e.coeffs) == {2, 3}


def test_poly_in_z():
    Q = parse_poly("Z^2 - (T1^2 + T2^3)", QQ)
    assert isinstance(Q, SeriesPoly) and Q.degree == 2
    assert Q.coeffs[0].coeffs == {(2, 0): -1, (0, 3): -1}


def test_form():
    P = parse_poly("X^2 - T1^3*Y^2", F2, nvars=2)
    assert isinstance(P, HomogForm) and P.coeffs[0].coeffs == {(3, 0): 1}


def test_errors():
    with pytest.raises(ParseError, match="homogeneous"):
        parse_poly("X^2 + Y", QQ)
    with pytest.raises(ParseError):
        parse_poly("Z + X", QQ)
    with pytest.raises(ParseError, match="unknown symbols"):
        parse_poly("Z + W", QQ)
    with pytest.raises(ParseError):
        parse_poly("Z^", QQ)


def test_infer_nvars():
    assert infer_nvars("T1 + T3") == 3
