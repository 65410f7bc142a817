import random

import pytest
from fractions import Fraction
from hypothesis import assume, given, settings, strategies as st

from serival.algebra import (
    AlgebraError, HatPoly, HomogForm, NewtonError, QuotientRing, SeriesPoly, choose_u,
    cofactor_expand, dehomogenize, eval_P, graded_order, homogenize, is_distinguished,
    newton_steps, normalize_Qu, root_split,
)
from serival.completion import CompletedElement, embed_blowup
from serival.fields import RatFunc
from serival.parsing import parse_poly
from serival.series import OrderValue, Series, random_series
from strategies import F2, QQ, series


def T(i, prec=12, F=QQ, n=2):
    return Series.var(i, prec, F, n)


def const(c, prec=12, F=QQ, n=2):
    return Series.const(c, prec, F, n)


def Z(text, F=QQ, n=2, prec=24):
    return parse_poly(text, F, n, prec=prec)


def qr_equal(f, g):
    return all(a.congruent(b) for a, b in zip(f, g))


class TestNormalize:
    def test_degree_two_formula(self):
        a0, a1, a2 = T(0) + T(1), T(1) ** 2, const(1) + T(0)
        u = T(1)
        Qu = normalize_Qu(SeriesPoly([a0, a1, a2]), u)
        assert Qu.coeffs[0].congruent(a0 * u * u * a2)
        assert Qu.coeffs[1].congruent(a1 * u)
        assert Qu.is_monic()

    def test_monic_unchanged(self):
        Q = Z("Z^2 + T1*Z + T2^3")
        Qu = normalize_Qu(Q, const(1))
        assert all(a.congruent(b) for a, b in zip(Qu.coeffs, Q.coeffs))

    def test_large_u_distinguishes(self):
        Q = Z("Z^2 + T2*Z + T1")
        assert not is_distinguished(Q)
        Qu = normalize_Qu(Q, T(0, 24))
        rep = is_distinguished(Qu)
        assert rep and list(rep.initial_form) == [2]

    def test_choose_u_is_minimal(self):
        Q = Z("Z^2 - T1^2")
        u = choose_u(Q)
        e = u.ord().value
        assert is_distinguished(normalize_Qu(Q, u))
        assert e >= 1
        smaller = Series.monomial((0, e - 1), u.prec, QQ, 2)
        assert not is_distinguished(normalize_Qu(Q, smaller))

    def test_zero_u(self):
        with pytest.raises(AlgebraError):
            normalize_Qu(Z("Z^2 - T1"), Series.zero(5, QQ, 2))


class TestDistinguished:
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_example_family(self, d):
        rep = is_distinguished(Z(f"Z^{d} - T1^{d + 1}"))
        assert rep and rep.weierstrass

    def test_not_distinguished(self):
        rep = is_distinguished(Z("Z^2 - T1^2"))
        assert not rep and set(rep.initial_form) == {0, 2}
        rep = is_distinguished(Z("T1 + Z"))
        assert not rep and set(rep.initial_form) == {0, 1}


class TestHomogenize:
    def test_reading(self):
        P = homogenize(Z("Z^2 - T1^3"))
        assert str(P) == str(parse_poly("X^2 - T1^3*Y^2", QQ, 2, prec=24))

    def test_round_trip(self):
        Q = Z("Z^3 + T1*Z - T2^2")
        assert dehomogenize(homogenize(Q)) == Q
        assert dehomogenize(homogenize(Q), "X=1").coeffs == list(reversed(Q.coeffs))

    def test_values(self):
        P = parse_poly("X^2 - T1^3*Y^2", QQ, 2, prec=12)
        v = eval_P(P, T(0) ** 2, T(0))
        assert v.coeffs == {(4, 0): 1, (5, 0): -1} and v.ord() == OrderValue(4, True)
        assert eval_P(P, Series.zero(12, QQ, 2), Series.zero(12, QQ, 2)).is_zero()
        XY = parse_poly("X*Y", QQ, 2, prec=12)
        assert eval_P(XY, T(0), T(1)).coeffs == {(1, 1): 1}


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_form_matches_y_power_times_q(data):
    # P(x, y) = y^d Q(x / y) inside the completion
    a = [data.draw(series(QQ, prec=4)).with_prec(20) for _ in range(3)]
    assume(not a[-1].is_zero())
    x = data.draw(series(QQ, prec=3)).with_prec(20)
    y = data.draw(series(QQ, prec=3)).with_prec(20)
    assume(y.ord().exact)
    Q = SeriesPoly(a)
    lhs = embed_blowup(eval_P(HomogForm(a), x, y))
    ratio = embed_blowup(x) / embed_blowup(y)
    rhs = embed_blowup(y) ** 2 * Q(ratio)
    assert lhs.agrees(rhs)


class TestCofactor:
    def test_top_b_is_leading_coefficient(self):
        Q = Z("Z^3 + T1*Z^2 + T2*Z + T1^3", prec=10)
        cf = cofactor_expand(Q, T(0, 10), T(1, 10))
        R = QuotientRing(Q)
        assert qr_equal(cf.b[-1], R.element(Q.coeffs[-1]))

    def test_b0_degree_two(self):
        Q = Z("Z^2 + T2*Z + T1^3", prec=10)
        R = QuotientRing(Q)
        cf = cofactor_expand(Q, T(0, 10), T(1, 10))
        want = R.add(R.element(Q.coeffs[1]), R.scale(R.zbar(10), Q.coeffs[2]))
        assert qr_equal(cf.b[0], want)

    def test_truncated_zero_x(self):
        Q = Z("Z^2 + T1^3", prec=10)
        with pytest.raises(AlgebraError):
            cofactor_expand(Q, Series.zero(10, QQ, 2), T(1, 10))
        assert cofactor_expand(Q, Series.zero(10, QQ, 2), T(1, 10), want_f=False).f is None

    def test_non_root_rejected(self):
        Q = Z("Z^2 - T1^2", prec=10)
        bad = CompletedElement.monomial(RatFunc.const(3, QQ, 1), 0, 6, QQ, 1)
        with pytest.raises(AlgebraError, match="residual"):
            cofactor_expand(Q, T(0, 10), T(1, 10), zbar=bad)


def check_cofactor(Q, x, y):
    R = QuotientRing(Q)
    cf = cofactor_expand(Q, x, y)
    zb = R.zbar(max(x.prec, y.prec))
    lin = R.sub(R.element(x), R.scale(zb, y))
    assert qr_equal(R.mul(lin, cf.h), R.element(cf.P_xy))
    expansion = None
    power = R.element(const(1, x.prec, x.field))
    for f in cf.f:
        term = R.scale(power, f)
        expansion = term if expansion is None else R.add(expansion, term)
        power = R.mul(power, zb)
    assert qr_equal(expansion, cf.h)
    for i in range(Q.degree - 1):
        rhs = R.add(R.element(Q.coeffs[i + 1]), R.mul(zb, cf.b[i + 1]))
        assert qr_equal(cf.b[i], rhs)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([F2, QQ]), st.sampled_from([2, 3]), st.integers(0, 10 ** 6))
def test_cofactor_identities(F, d, seed):
    rng = random.Random(seed)
    a = [random_series(2, 8, F, density=0.3, seed=rng) for _ in range(d)]
    a.append(const(1, 8, F))
    x = random_series(2, 8, F, density=0.3, seed=rng)
    y = random_series(2, 8, F, density=0.3, seed=rng)
    assume(x.ord().exact)
    check_cofactor(SeriesPoly(a), x, y)


class TestGradedOrder:
    def test_examples(self):
        z = Series.zero(9, QQ, 2)
        assert graded_order((T(0) ** 2, z)) == OrderValue(2, True)
        assert graded_order((z, const(1))) == OrderValue(1, True)
        assert graded_order((T(0), T(1) ** 2, z)) == OrderValue(1, True)

    def test_precondition(self):
        with pytest.raises(AlgebraError, match="graded formula invalid"):
            graded_order((T(0), T(1)), Z("Z^2 - T1^2"))


def seed_monomial(c, exps, j, tprec=24, F=QQ):
    return CompletedElement.monomial(RatFunc.monomial(c, exps, F), j, tprec, F, len(exps))


class TestNewton:
    def test_binomial_series(self):
        # sqrt(1 + T) = 1 + T/2 - T^2/8 + T^3/16 - 5 T^4/128
        Q = parse_poly("Z^2 - (1 + T1)", QQ, 1, prec=20)
        z = list(newton_steps(Q, CompletedElement.const(1, 12, QQ, 0), 10))[-1].root
        want = [1, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16), Fraction(-5, 128)]
        assert [z.coefficient(j).num.get((), 0) for j in range(5)] == want

    @pytest.mark.parametrize("d", [2, 3])
    def test_binomial_family_root(self, d):
        # Z = T2 W: W^d = t1^d + T2, lifted from W = t1
        Q = Z(f"Z^{d} - (T1^{d} + T2^{d + 1})", prec=40)
        rs = root_split(Q, 16, seeds=[seed_monomial(1, (1,), 1)])
        z = rs.roots[0][0]
        assert Q(z).ord_value() >= 16
        assert z.coefficient(1) == RatFunc.monomial(1, (1,), QQ)

    def test_residual_strictly_increases(self):
        Q = Z("Z^2 - (T1^2 + T2^3)", prec=48)
        orders = [s.residual.value for s in newton_steps(Q, seed_monomial(1, (1,), 1), 32)]
        assert orders == [3, 4, 6, 10, 18, 34]
        # r - 2 ord Q'(z) doubles
        assert [r - 2 for r in orders] == [1, 2, 4, 8, 16, 32]

    def test_newton_condition(self):
        Q = Z("Z^2 - (T1^2 + T2^3)", prec=30)
        with pytest.raises(NewtonError, match="Newton condition"):
            list(newton_steps(Q, seed_monomial(2, (1,), 1), 8))

    def test_inseparable(self):
        Q = Z("Z^2 - (T1^2 + T2^3)", F=F2, prec=30)
        with pytest.raises(NewtonError, match="inseparable"):
            list(newton_steps(Q, seed_monomial(1, (1,), 1, F=F2), 8))
