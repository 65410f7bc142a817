"""Fast consistency checks behind ``serival-lab selftest``.

Each check recomputes a quantity two independent ways on small random input.
"""

from __future__ import annotations

import random
import time
from typing import Callable, List, Tuple

from ..algebra import QuotientRing, SeriesPoly, cofactor_expand, newton_steps
from ..completion import CompletedElement, distance, distance_via_product
from ..fields import BaseField, RatFunc
from ..membership import in_ideal_mod
from ..series import Series, exact_divide, random_series
from .engine import FormEvaluator, PrunedScan, Universe, brute_force
from .params import ScanParams
from .scans import greenberg_estimate


def _rand(F: BaseField, prec: int, rng: random.Random, min_ord: int = 0) -> Series:
    s = random_series(2, prec, F, seed=rng)
    return Series({e: c for e, c in s.coeffs.items() if sum(e) >= min_ord}, prec, F, 2)


def _ring_axioms(rng: random.Random) -> bool:
    for F in (BaseField.parse("f2"), BaseField.parse("q")):
        for _ in range(10):
            a, b, c = (_rand(F, 6, rng) for _ in range(3))
            if not ((a * b) * c).congruent(a * (b * c)) or not (a * (b + c)).congruent(a * b + a * c):
                return False
            q = exact_divide(a * b, b) if not b.is_zero() else None
            if q and not (q * b).congruent(a * b):
                return False
    return True


def _cofactor(rng: random.Random) -> bool:
    for F in (BaseField.parse("f2"), BaseField.parse("q")):
        for _ in range(6):
            d = rng.choice((2, 3))
            a = [_rand(F, 8, rng, 1) for _ in range(d)]
            Q = SeriesPoly(a + [Series.const(1, 8, F, 2)])
            x = _rand(F, 8, rng, 1)
            y = _rand(F, 8, rng)
            if x.is_zero():
                continue
            cf = cofactor_expand(Q, x, y)
            R = QuotientRing(Q)
            lhs = R.mul(R.sub(R.element(x), R.scale(R.zbar(8), y)), cf.h)
            if not all(s.congruent(t) for s, t in zip(lhs, R.element(cf.P_xy))):
                return False
    return True


def _hensel(rng: random.Random) -> bool:
    F = BaseField.parse("q")
    T1 = Series.var(0, 64, F, 2)
    T2 = Series.var(1, 64, F, 2)
    Q = SeriesPoly([-(T1 * T1 + T2 ** 3), Series.zero(64, F, 2), Series.const(1, 64, F, 2)])
    seed = CompletedElement.monomial(RatFunc.monomial(1, (1,), F), 1, 64, F, 1)
    steps = list(newton_steps(Q, seed, 32))
    orders = [s.residual.value for s in steps]
    return orders[-1] >= 32 and all(b > a for a, b in zip(orders, orders[1:]))


def _membership(rng: random.Random) -> bool:
    F = BaseField.parse("f2")
    gens = [Series({(1, 0): 1, (0, 2): 1}, 4, F, 2), Series({(0, 1): 1}, 4, F, 2)]
    for _ in range(10):
        e = [_rand(F, 4, rng, 1) for _ in gens]
        w = (e[0] * gens[0] + e[1] * gens[1]).truncate(4)
        wit = in_ideal_mod(w, gens, 1, 4)
        if wit is None or not wit.verify(w, gens):
            return False
    return True


def _engine(rng: random.Random) -> bool:
    F = BaseField.parse("f2")
    U = Universe(F, 2, 2, (0, 1))
    ev = FormEvaluator([{(0, 3): 1}, {}, {(0, 0): 1}], F, 2)   # X^2 - T2^3 Y^2
    a = PrunedScan(ev, U).run()
    b = brute_force(ev, U)
    return a.maxima() == b.maxima() and a.total() == b.total()


def _distance(rng: random.Random) -> bool:
    F = BaseField.parse("q")
    z = CompletedElement.monomial(RatFunc.monomial(1, (1,), F), 1, 12, F, 1)
    for _ in range(5):
        x = _rand(F, 5, rng).with_prec(17)
        y = _rand(F, 5, rng).with_prec(17)
        if y.is_zero():
            continue
        if distance(z, x, y) != distance_via_product(z, x, y):
            return False
    return True


def _greenberg(rng: random.Random) -> bool:
    from ..parsing import parse_poly
    p = ScanParams(field="f3", nvars=1, prec=5, i_max=3)
    rep = greenberg_estimate(parse_poly("Z", p.base_field, 1), p)
    return [r["beta"] for r in rep.rows] == [0, 1, 2, 3]


CHECKS: List[Tuple[str, Callable[[random.Random], bool]]] = [
    ("series ring axioms and exact division", _ring_axioms),
    ("cofactor identity (x - Zbar y) h = P(x, y)", _cofactor),
    ("Newton lifting of Z^2 - (T1^2 + T2^3)", _hensel),
    ("ideal membership witnesses", _membership),
    ("pruned scan equals brute force", _engine),
    ("distance two ways", _distance),
    ("Artin function of Q = Z", _greenberg),
]


def run_selftest(verbose: bool = True, seed: int = 0) -> int:
    failed = 0
    for name, check in CHECKS:
        t0 = time.perf_counter()
        try:
            ok = check(random.Random(seed))
            err = ""
        except Exception as exc:    # report and keep going
            ok, err = False, f" ({type(exc).__name__}: {exc})"
        failed += not ok
        if verbose:
            print(f"{'ok  ' if ok else 'FAIL'} {name} [{time.perf_counter() - t0:.2f}s]{err}")
    if verbose:
        print(f"{len(CHECKS) - failed}/{len(CHECKS)} checks passed")
    return 0 if failed == 0 else 2
