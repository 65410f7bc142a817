import pytest
from hypothesis import given, settings, strategies as st

from serival.membership import (
    artin_rees_probe, coprime, in_ideal_mod, nullspace, project_to_solution, solve,
)
from serival.series import Series, SeriesError
from oracles import brute_member, membership_corpus
from strategies import F2, F3, QQ, series


def S(c, prec=8, F=QQ):
    return Series(c, prec, F, 2)


T1 = S({(1, 0): 1})
T2 = S({(0, 1): 1})


class TestLinearAlgebra:
    def test_solve(self):
        rows = [{0: 1, 1: 1}, {1: 1}]
        assert solve(rows, [3, 1], 2, QQ) == [2, 1]
        assert solve([{0: 1}, {0: 2}], [1, 3], 1, QQ) is None

    def test_nullspace(self):
        basis = nullspace([{0: 1, 1: 1, 2: 1}], 3, F2)
        assert len(basis) == 2
        assert all(sum(v) % 2 == 0 for v in basis)


class TestInIdeal:
    def test_member(self):
        w = S({(3, 0): 1})
        wit = in_ideal_mod(w, [T1, T2], 2, 5)
        assert wit is not None and wit.verify(w, [T1, T2])
        assert wit.eps[0].coeffs == {(2, 0): 1} and wit.eps[1].is_zero()

    def test_constants_unreachable(self):
        assert in_ideal_mod(S({(0, 0): 1}), [T1, T2], 0, 2) is None

    def test_precision_guard(self):
        with pytest.raises(SeriesError):
            in_ideal_mod(S({(2, 0): 1}, 3), [T1, T2], 0, 5)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([F2, F3, QQ]), st.integers(0, 3), st.data())
def test_constructed_members_are_found(F, i, data):
    u = data.draw(series(F, prec=6, min_ord=1))
    v = data.draw(series(F, prec=6, min_ord=1))
    e1 = data.draw(series(F, prec=6, min_ord=i))
    e2 = data.draw(series(F, prec=6, min_ord=i))
    if u.is_zero() or v.is_zero():
        return
    w = (u * e1 + v * e2).truncate(6)
    K = min(6, w.prec)
    wit = in_ideal_mod(w, [u, v], i, K)
    assert wit is not None and wit.verify(w, [u, v])


def test_agrees_with_brute_force():
    for w, gens, i in membership_corpus(40, seed=7):
        assert (in_ideal_mod(w, gens, i, 4) is not None) == brute_member(w, gens, i, 4)


class TestArtinRees:
    def test_regular_sequence(self):
        rep = artin_rees_probe(T1, T2, 4, 8)
        # (T1, T2) = m, and m ∩ m^i = m^i is not inside m^(i+1): the first shift that works is 1
        assert rep.i0 == 1 and not rep.inconclusive

    def test_common_factor(self):
        rep = artin_rees_probe(S({(2, 0): 1}), S({(1, 1): 1}), 2, 7)
        assert rep.i0 is not None and rep.i0 >= 1

    def test_principal(self):
        rep = artin_rees_probe(T1, T1, 3, 6)
        assert rep.i0 == 1

    def test_budget(self):
        rep = artin_rees_probe(T1, T2, 4, 8, budget=3)
        assert rep.inconclusive and rep.i0 is None
        assert "empirical" in rep.to_json()["note"]


class TestProjection:
    def test_close_pair(self):
        x = S({(1, 0): 1, (0, 5): 1}, 10)
        y = S({(0, 1): 1}, 10)
        xb, yb = project_to_solution(x, y, T1.with_prec(10), T2.with_prec(10), 4, 8)
        assert (T1 * yb - T2 * xb).truncate(8).is_zero()
        assert (xb - x).ord_value() >= 4 and (yb - y).ord_value() >= 4

    def test_already_on_line(self):
        x, y = (T1 * T2).with_prec(10), (T2 * T2).with_prec(10)
        xb, yb = project_to_solution(x, y, T1.with_prec(10), T2.with_prec(10), 3, 8)
        assert xb.congruent(x) and yb.congruent(y)

    def test_far_pair(self):
        x, y = S({(0, 1): 1}, 10), S({(1, 0): 1}, 10)
        assert project_to_solution(x, y, T1.with_prec(10), T2.with_prec(10), 3, 8) is None

    def test_coprime_required(self):
        assert not coprime(T1 * T2, T1)
        with pytest.raises(ValueError):
            project_to_solution(T1, T2, T1 * T2, T1, 1, 6)
