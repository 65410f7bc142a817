"""The acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line; the same lines are repeated
in the pytest terminal summary. Run directly with ``python3 tests/test_acceptance.py``.
"""

import os
import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, os.path.dirname(__file__))

from serival.algebra import SeriesPoly, newton_steps, normalize_Qu  # noqa: E402
from serival.completion import CompletedElement  # noqa: E402
from serival.fields import BaseField, RatFunc, pord  # noqa: E402
from serival.lab.params import ScanParams  # noqa: E402
from serival.lab.scans import (  # noqa: E402
    artin_estimate, dioph_scan, form_evaluator, greenberg_estimate, izumi_probe, lift_root,
    lojasiewicz_scan,
)
from serival.membership import in_ideal_mod  # noqa: E402
from serival.parsing import parse_poly  # noqa: E402
from serival.series import Series, random_series  # noqa: E402
from oracles import brute_member, cofactor_holds, membership_corpus  # noqa: E402

F2, F3, QQ = BaseField(2), BaseField(3), BaseField()

RESULTS = []


def report(name: str, ok: bool, detail: str):
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def hensel_root(tprec):
    Q = parse_poly("Z^2 - (T1^2 + T2^3)", QQ, 2, prec=2 * tprec + 8)
    seed = CompletedElement.monomial(RatFunc.monomial(1, (1,), QQ), 1, tprec, QQ, 1)
    return Q, seed


def test_cofactor_identity_suite():
    t0 = time.perf_counter()
    rng = random.Random(8)
    cases = bad = 0
    for F in (F2, QQ):
        for d in (2, 3):
            done = 0
            while done < 55:
                a = [random_series(2, 8, F, density=0.35, seed=rng) for _ in range(d)]
                a.append(Series.const(1, 8, F, 2) + random_series(2, 8, F, density=0.2, seed=rng)
                         .truncate(8) * Series.var(0, 8, F, 2))
                u = random_series(2, 8, F, density=0.3, seed=rng) * Series.var(1, 8, F, 2)
                x = random_series(2, 8, F, density=0.35, seed=rng)
                y = random_series(2, 8, F, density=0.35, seed=rng)
                if u.is_zero() or not x.ord().exact:
                    continue
                Qu = normalize_Qu(SeriesPoly(a), u)
                done += 1
                bad += not cofactor_holds(Qu, x, y)
            cases += done
    dt = time.perf_counter() - t0
    report("cofactor identity suite", bad == 0 and cases >= 200 and dt < 30,
           f"{cases} cases over F2 and Q, d in {{2,3}}, prec 8: {bad} failures, {dt:.1f}s")


def test_lojasiewicz_anchor():
    t0 = time.perf_counter()
    form = parse_poly("X^2 - T1^3*Y^2", F2, 2, prec=40)
    rep = lojasiewicz_scan(form, ScanParams(field="f2", prec=6, mode="exhaustive"))
    ev = form_evaluator(form)
    maxima = {r["min_ord"]: r["max_ordP"] for r in rep.rows}
    family = []
    for k in range(5):
        v = pord(ev.value({(k + 1, 0): 1}, {(k, 0): 1}))
        family.append(v == 2 * k + 2 and v <= maxima[k])
    dt = time.perf_counter() - t0
    ok = rep.fit.slope == 2 and all(family) and rep.flags["envelope_sound"] and dt < 120
    report("Lojasiewicz anchor", ok,
           f"slope {rep.fit.slope}, intercept {rep.fit.intercept}, family x=T1^(k+1), y=T1^k "
           f"gives ord P = 2k+2 for k<5: {all(family)}, {dt:.1f}s")


def test_strict_excess_anchor():
    t0 = time.perf_counter()
    form = parse_poly("X^2 - (T1^2 + T2^3)*Y^2", QQ, 2, prec=40)
    rep = lojasiewicz_scan(form, ScanParams(field="q", height=1, prec=6, mode="exhaustive"))
    dt = time.perf_counter() - t0
    maxima = [r["max_ordP"] for r in rep.rows]
    report("strict-excess anchor", rep.fit.slope > 2 and dt < 300,
           f"slope {rep.fit.slope} (needs > 2), bucket maxima {maxima}, {dt:.1f}s")


def test_hensel_convergence():
    Q, seed = hensel_root(40)
    steps = list(newton_steps(Q, seed, 32))
    v = steps[0].derivative.value
    excess = [s.residual.value - 2 * v for s in steps]
    doubling = all(b == 2 * a for a, b in zip(excess, excess[1:]))
    final = steps[-1].residual.value
    report("Hensel convergence", doubling and final >= 32,
           f"residual orders {[s.residual.value for s in steps]}, ord Q'(z) = {v}, "
           f"excess over 2 ord Q' {excess}, final {final}")


def test_diophantine_shape():
    Q, seed = hensel_root(24)
    z = lift_root(Q, [seed], 24)
    rep = dioph_scan(Q, z, ScanParams(field="q", prec=6, mode="sampled", samples=2000, seed=1,
                                      tprec=24))
    ok = (rep.flags["exact_hits"] == 0 and rep.fit is not None and rep.fit.slope >= 1
          and rep.flags["envelope_sound"])
    report("Diophantine bound shape", ok,
           f"{rep.counts['y_scanned']} denominators, hits {rep.flags['exact_hits']}, "
           f"envelope {rep.fit.slope} * ord y + {rep.fit.intercept}, "
           f"sound on every sample: {rep.flags['envelope_sound']}")


def test_artin_affine_shape():
    t0 = time.perf_counter()
    form = parse_poly("X^2 - T1^3*Y^2", F2, 2, prec=40)
    rep = artin_estimate(form, ScanParams(field="f2", i_min=0, i_max=3, prec_offset=3))
    dt = time.perf_counter() - t0
    shape = rep.extra["shape"]
    ok = rep.flags["monotone"] and rep.flags.get("slope_within_cap", False) and dt < 600
    report("Artin affine shape", ok,
           f"beta {[r['beta'] for r in rep.rows]}, slope {rep.fit.slope} <= 2 max(A, B) = "
           f"{shape.get('slope_cap')} (A = {shape.get('A')}, B = {shape.get('B')}), {dt:.1f}s")


def test_membership_oracle():
    cases = membership_corpus(100)
    agree = sum((in_ideal_mod(w, g, i, 4) is not None) == brute_member(w, g, i, 4)
                for w, g, i in cases)
    report("membership oracle equivalence", agree == len(cases),
           f"{agree}/{len(cases)} cases agree with exhaustive enumeration over F2, K = 4")


def test_greenberg_case_split():
    params = ScanParams(field="f3", nvars=1, prec=10, i_max=8)
    const = greenberg_estimate(parse_poly("Z^2 - T1^3", F3, 1, prec=40), params)
    affine = greenberg_estimate(parse_poly("Z^2 - T1^2", F3, 1, prec=40), params)
    ok = (const.extra["case"] == "constant" and const.flags["constant"]
          and affine.extra["case"] == "affine" and Fraction(affine.extra["lambda"]) <= 2)
    report("Greenberg case split", ok,
           f"Z^2 - T^3: {const.extra['case']} c = {const.extra['c']}; Z^2 - T^2: "
           f"{affine.extra['case']} lambda = {affine.extra['lambda']}, mu = {affine.extra['mu']}")


def test_reproducibility():
    runs = []
    form = parse_poly("X^2 - (T1^2 + T2^3)*Y^2", QQ, 2, prec=40)
    lp = ScanParams(field="q", prec=5, mode="sampled", samples=500, seed=3)
    runs.append((lojasiewicz_scan(form, lp), lojasiewicz_scan(form, lp.replace(workers=2))))
    Q, seed = hensel_root(20)
    z = lift_root(Q, [seed], 20)
    dp = ScanParams(field="q", prec=5, mode="sampled", samples=300, seed=3, tprec=20)
    runs.append((dioph_scan(Q, z, dp), dioph_scan(Q, z, dp.replace(workers=2))))
    Qi = parse_poly("Z^2 - T1^2*(1 + T2)", QQ, 2, prec=40)
    ip = ScanParams(field="q", prec=3, mode="sampled", samples=200, seed=3)
    runs.append((izumi_probe(Qi, ip), izumi_probe(Qi, ip)))
    same = [a.csv_text() == b.csv_text() and a.json_text() == b.json_text() for a, b in runs]
    report("reproducibility", all(same),
           f"loja, dioph, izumi sampled runs byte-identical (CSV and JSON): {same}")


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
