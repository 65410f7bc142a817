import pytest
from hypothesis import assume, given, settings, strategies as st

from serival.series import (
    NotDivisible, OrderValue, Series, SeriesError, exact_divide, iter_series, random_series,
)
from strategies import F2, F3, QQ, fields, series


def S(coeffs, prec, F=QQ, n=2):
    return Series(coeffs, prec, F, n)


T1 = lambda p, F=QQ: Series.var(0, p, F, 2)  # noqa: E731
T2 = lambda p, F=QQ: Series.var(1, p, F, 2)  # noqa: E731


class TestOrder:
    def test_exact(self):
        assert S({(2, 0): 1, (1, 3): 1}, 6).ord() == OrderValue(2, True)

    def test_truncated_zero(self):
        assert Series.zero(5, QQ, 2).ord() == OrderValue.at_least(5)

    def test_cancellation(self):
        t12 = S({(1, 1): 1}, 4)
        s = t12 - S({(1, 1): 1}, 4)
        assert s.ord() == OrderValue.at_least(4)
        with pytest.raises(SeriesError):
            s.ord().require_exact()


class TestArith:
    def test_product_truncates(self):
        one = Series.const(1, 5, QQ, 2)
        assert (one + T1(5)) * (one - T1(5)) == S({(0, 0): 1, (2, 0): -1}, 5)

    def test_additive_inverse(self):
        s = T1(5) + (-T1(5))
        assert s.is_zero() and s.prec == 5

    def test_frobenius(self):
        one = Series.const(1, 5, F2, 2)
        assert (one + T1(5, F2)) ** 2 == S({(0, 0): 1, (2, 0): 1}, 5, F2)

    def test_product_precision(self):
        a = S({(1, 0): 1}, 4)
        b = S({(0, 2): 1}, 6)
        assert (a * b).prec == min(4 + 2, 6 + 1)

    def test_mismatch(self):
        with pytest.raises(SeriesError):
            T1(4) + Series.var(0, 4, QQ, 3)
        with pytest.raises(SeriesError):
            T1(4) + T1(4, F2)


class TestExactDivide:
    def test_monomial_factor(self):
        x = S({(2, 1): 1, (1, 2): 1}, 8)
        assert exact_divide(x, S({(1, 1): 1}, 8)).congruent(S({(1, 0): 1, (0, 1): 1}, 6))

    def test_not_divisible(self):
        q = exact_divide(T1(5), T2(5))
        assert isinstance(q, NotDivisible) and q.degree == 1 and not q

    def test_round_trip(self):
        one = Series.const(1, 9, QQ, 2)
        x = (one + T1(9)) * T2(9) ** 3
        q = exact_divide(x, T2(9) ** 3)
        assert q.coeffs == {(0, 0): 1, (1, 0): 1}
        assert q.prec == x.prec - 3

    def test_zero_divisor(self):
        with pytest.raises(SeriesError, match="indistinguishable"):
            exact_divide(T1(4), Series.zero(4, QQ, 2))


class TestInitialForm:
    def test_examples(self):
        assert S({(2, 0): 1, (0, 3): 1}, 6).initial_form() == S({(2, 0): 1}, 6)
        assert S({(1, 0): 1, (0, 1): 1}, 6).initial_form() == S({(1, 0): 1, (0, 1): 1}, 6)
        assert (S({(0, 0): 1, (1, 0): 1}, 6) * T2(6) ** 2).initial_form().coeffs == {(0, 2): 1}

    def test_truncated_zero(self):
        with pytest.raises(SeriesError):
            Series.zero(3, QQ, 2).initial_form()


class TestRandom:
    def test_density_zero(self):
        assert random_series(2, 5, QQ, density=0, seed=1).is_zero()

    def test_deterministic(self):
        assert random_series(3, 5, F3, seed=7) == random_series(3, 5, F3, seed=7)

    def test_full_density(self):
        s = random_series(2, 2, F2, density=1, seed=0)
        assert s.coeffs == {(0, 0): 1, (1, 0): 1, (0, 1): 1}

    def test_bad_density(self):
        with pytest.raises(ValueError):
            random_series(2, 2, F2, density=2)

    def test_iter_series_counts(self):
        assert sum(1 for _ in iter_series(2, 2, (0, 1), F2)) == 2 ** 3


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_order_is_a_valuation(data):
    F = data.draw(fields)
    x = data.draw(series(F, prec=6))
    y = data.draw(series(F, prec=6))
    ox, oy = x.ord(), y.ord()
    if ox.exact and oy.exact:
        p = x * y
        if ox.value + oy.value < p.prec:
            assert p.ord() == OrderValue(ox.value + oy.value, True)
    s = x + y
    m = min(ox.value, oy.value)
    assert s.ord().value >= m
    if ox.exact and oy.exact and ox.value != oy.value:
        assert s.ord() == OrderValue(m, True)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_exact_divide_round_trip(data):
    F = data.draw(fields)
    x = data.draw(series(F, prec=6))
    y = data.draw(series(F, prec=6))
    assume(y.ord().exact)
    q = exact_divide(x * y, y)
    assert q
    assert q.congruent(x)          # x truncated to the contract precision
    assert q.prec == min((x * y).prec, y.prec) - y.ord().value


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_initial_form_multiplicative(data):
    F = data.draw(fields)
    x = data.draw(series(F, prec=7))
    y = data.draw(series(F, prec=7))
    assume(x.ord().exact and y.ord().exact and x.ord().value + y.ord().value < 7)
    assert (x * y).initial_form().coeffs == (x.initial_form() * y.initial_form()).coeffs
