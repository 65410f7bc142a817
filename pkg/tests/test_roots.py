import pytest
from fractions import Fraction

from serival.algebra import HatPoly, SeriesPoly, as_fraction, root_split
from serival.completion import CompletedElement
from serival.fields import RatFunc
from serival.parsing import parse_poly
from strategies import F2, F3, QQ


def Z(text, F=QQ, n=2, prec=40):
    return parse_poly(text, F, n, prec=prec)


def mono(c, e, j, F=QQ, tprec=16):
    return CompletedElement.monomial(RatFunc.monomial(c, e, F), j, tprec, F, len(e))


def roots_of(Q, tprec=12, **kw):
    rs = root_split(Q, tprec, **kw)
    assert rs.degree == Q.degree
    return rs


def reassemble(Q, rs):
    """prod (Z - z_k)^(n_k) * remainder, as coefficient list."""
    acc = list(rs.remainder.coeffs)
    for z, n in rs.roots:
        for _ in range(n):
            shifted = [-(z * acc[0])] + [acc[i - 1] - z * acc[i] for i in range(1, len(acc))] + [acc[-1]]
            acc = shifted
    return acc


class TestRootSplit:
    def test_product_of_linear_factors(self):
        rs = roots_of(Z("(Z - T1)*(Z - T2)"))
        assert rs.q == 0
        got = {str(z) for z, n in rs.roots}
        assert got == {str(mono(1, (0,), 1, tprec=12)), str(mono(1, (1,), 1, tprec=12))}
        assert all(n == 1 for _, n in rs.roots)

    def test_plus_minus(self):
        rs = roots_of(Z("Z^2 - T1^2"))
        assert {str(z) for z, _ in rs.roots} == {str(mono(1, (1,), 1, tprec=12)),
                                                 str(mono(-1, (1,), 1, tprec=12))}

    def test_rootless(self):
        rs = roots_of(Z("Z^2 + 1"))
        assert rs.roots == [] and rs.q == 2

    @pytest.mark.parametrize("d", [2, 3])
    def test_non_integral_slope(self, d):
        rs = roots_of(Z(f"Z^{d} - T1^{d + 1}"))
        assert rs.roots == [] and rs.q == d
        assert [s.integral for s in rs.slopes] == [False]
        assert rs.slopes[0].slope == Fraction(d + 1, d)

    @pytest.mark.parametrize("k", [2, 3])
    def test_multiplicity(self, k):
        rs = roots_of(Z(f"(Z - T1)^{k}"))
        assert [n for _, n in rs.roots] == [k]

    def test_double_root_characteristic_two(self):
        rs = roots_of(Z("Z^2 + T1^2", F=F2))
        assert [n for _, n in rs.roots] == [2]

    def test_inseparable_rejected(self):
        rs = roots_of(Z("Z^2 + T1^2 + T2^3", F=F2))
        assert rs.roots == [] and rs.q == 2
        assert "could not be lifted" in rs.slopes[0].note

    def test_zero_root(self):
        rs = roots_of(Z("Z^3 - T1*Z^2"))
        mults = sorted(n for _, n in rs.roots)
        assert mults == [1, 2]

    def test_seeded(self):
        rs = root_split(Z("Z^2 - (T1^2 + T2^3)"), 14, seeds=[mono(-1, (1,), 1)])
        assert len(rs.roots) == 1
        assert rs.roots[0][0].coefficient(1) == RatFunc.monomial(-1, (1,), QQ)

    @pytest.mark.parametrize("text,F", [("(Z - T1)*(Z - T2)*(Z^2 + 1)", QQ),
                                        ("(Z - T1)^2*(Z + T2)", QQ),
                                        ("Z^3 - T1^2*Z + T2^3", F3),
                                        ("Z^2 - (T1^2 + T2^3)", QQ)])
    def test_reassembles(self, text, F):
        Q = Z(text, F=F)
        rs = roots_of(Q, tprec=14)
        back = reassemble(Q, rs)
        want = Q.embed().coeffs
        assert len(back) == len(want)
        for a, b in zip(back, want):
            assert (a - b).ord_value() >= 14 // 2


class TestAsFraction:
    def test_polynomial_root(self):
        u, v = as_fraction(mono(1, (1,), 1), 2)
        assert u.coeffs == {(1, 0): 1} and v.coeffs == {(0, 0): 1}

    def test_ratio(self):
        u, v = as_fraction(mono(1, (-1,), 0), 2)
        assert u.coeffs == {(0, 1): 1} and v.coeffs == {(1, 0): 1}

    def test_empty(self):
        assert as_fraction(CompletedElement.zero(5, QQ, 1), 2) is None
