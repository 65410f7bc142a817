"""The experiments: each returns a :class:`~serival.lab.report.ScanReport`."""

from __future__ import annotations

import importlib
import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..algebra import (
    AlgebraError,
    HomogForm,
    NewtonError,
    PrecisionError,
    QuotientRing,
    SeriesPoly,
    as_fraction,
    choose_u,
    cofactor_expand,
    graded_order,
    hensel_lift,
    is_distinguished,
    normalize_Qu,
    root_split,
)
from ..completion import CoefficientBudgetExceeded, CompletedElement, distance, distance_via_product, embed_blowup
from ..fields import BaseField, Poly, homogeneous_part, pdeg, pord, poly_str
from ..membership import artin_rees_probe, project_to_solution
from ..series import Series
from .engine import (
    BucketTable, BudgetExceeded, FormEvaluator, PrunedScan, Universe, canonical_key, iter_pairs,
)
from .params import ConfigError, ScanParams, parse_family_params
from .report import (
    COMPLETE, DEGENERATE, FAIL, INCONCLUSIVE, NOT_APPLICABLE, PASS, ScanReport, envelope_fit,
)

log = logging.getLogger(__name__)

CHUNKS = 16   # fixed partition of explicit scans; independent of the worker count


# -- helpers -------------------------------------------------------------------------


def universe(params: ScanParams, prec: Optional[int] = None, nvars: Optional[int] = None) -> Universe:
    return Universe(params.base_field, params.nvars if nvars is None else nvars,
                    params.degree_cutoff if prec is None else prec,
                    tuple(params.coefficient_values))


def names(nvars: int) -> List[str]:
    return [f"T{i + 1}" for i in range(nvars)]


def pstr(f: Poly, nvars: int) -> str:
    return poly_str(f, names(nvars), ascending=True)


def exact_prec(coeffs: Sequence[Series], prec: int) -> int:
    """A precision above every degree met when evaluating at polynomials of degree < prec."""
    d = len(coeffs) - 1
    top = max((c.degree() for c in coeffs), default=0)
    return (d + 1) * (top + prec) + 2


def as_series(f: Poly, prec: int, F: BaseField, nvars: int) -> Series:
    return Series(f, prec, F, nvars, check=False)


def swap_first_last(s: Series) -> Series:
    """Exchange ``T_1`` and ``T_N`` (the ``--swap-vars`` rotation)."""
    def sw(e):
        e = list(e)
        e[0], e[-1] = e[-1], e[0]
        return tuple(e)
    return Series({sw(e): c for e, c in s.coeffs.items()}, s.prec, s.field, s.nvars, check=False)


def _parallel(fn: Callable, args: Sequence, workers: int) -> List:
    if workers <= 1 or len(args) <= 1:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(max_workers=min(workers, len(args))) as pool:
        return list(pool.map(fn, args))


def _run_pruned_task(arg):
    scan, task = arg
    return scan.run_task(task)


def pruned_table(form: FormEvaluator, U: Universe, params: ScanParams) -> BucketTable:
    scan = PrunedScan(form, U, node_budget=params.budget)
    parts = _parallel(_run_pruned_task, [(scan, t) for t in scan.tasks()], params.worker_count())
    table = BucketTable()
    for p in parts:
        table.merge(p)
    return table


def form_evaluator(P: HomogForm) -> FormEvaluator:
    return FormEvaluator([c.coeffs for c in P.coeffs], P.field, P.nvars)


def _monotone(values: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))


# -- solution lines ------------------------------------------------------------------


@dataclass
class SolutionLine:
    """``u y = v x``: the pairs whose ratio ``x/y`` is the root ``u/v``."""

    u: Poly
    v: Poly
    source: str

    def describe(self, nvars: int) -> str:
        return f"({pstr(self.u, nvars)})*y = ({pstr(self.v, nvars)})*x"


def solution_lines(P: HomogForm, tprec: int = 12) -> Tuple[List[SolutionLine], Dict]:
    """Rational roots of ``P`` (lines through the origin on which ``P`` vanishes)."""
    F, n = P.field, P.nvars
    ev = form_evaluator(P)
    one = {(0,) * n: 1}
    lines: List[SolutionLine] = []
    info: Dict = {}
    coeffs = list(P.coeffs)
    if coeffs[-1].is_zero():
        lines.append(SolutionLine(one, {}, "a_d = 0"))
    if coeffs[0].is_zero():
        lines.append(SolutionLine({}, one, "a_0 = 0"))
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    while coeffs and coeffs[0].is_zero():
        coeffs.pop(0)
    if len(coeffs) >= 2:
        try:
            rs = root_split(SeriesPoly(coeffs), tprec)
        except (AlgebraError, ArithmeticError) as exc:
            info["root_split"] = f"inconclusive: {exc}"
            return lines, info
        info["root_split"] = {"roots": [str(z) for z, _ in rs.roots],
                              "multiplicities": [m for _, m in rs.roots], "q": rs.q}
        for z, _ in rs.roots:
            if z.is_zero():
                continue
            frac = as_fraction(z, n)
            if frac is None:
                continue
            u, v = frac
            if not ev.value(u.coeffs, v.coeffs):
                lines.append(SolutionLine(u.coeffs, v.coeffs, f"root {z}"))
    return lines, info


# -- Lojasiewicz -----------------------------------------------------------------------


def lojasiewicz_scan(P: HomogForm, params: ScanParams) -> ScanReport:
    """Max ``ord P(x, y)`` per bucket ``m = min(ord x, ord y)`` over pairs with ``P(x,y) != 0``."""
    U = universe(params)
    ev = form_evaluator(P)
    lines, info = solution_lines(P, params.tprec)
    flags: Dict = {}
    try:
        if params.mode == "exhaustive":
            table = pruned_table(ev, U, params)
        else:
            table = _sampled_table(ev, U, params)
    except BudgetExceeded as exc:
        return ScanReport("loja", params.to_json(), _LOJA_COLS, [], verdict=INCONCLUSIVE,
                          flags={"budget": str(exc)})
    rows, points, bad = [], [], 0
    for m, e in sorted(table.entries.items()):
        ok = pord(ev.value(e.x, e.y)) == e.value and PrunedScan._key(e.x, e.y) == m
        bad += not ok
        rows.append({"min_ord": m, "max_ordP": e.value, "witness_x": pstr(e.x, U.nvars),
                     "witness_y": pstr(e.y, U.nvars), "pairs": e.count})
        points.append((m, e.value))
    fit = envelope_fit(points)
    maxima = [v for _, v in points]
    flags["monotone"] = _monotone(maxima)
    flags["witnesses_verified"] = bad == 0
    flags["envelope_sound"] = fit is None or all(fit.holds(k, v) for k, v in points)
    if lines:
        verdict = DEGENERATE
        flags["solution_lines"] = [ln.describe(U.nvars) for ln in lines]
    else:
        verdict = COMPLETE
    if bad or not flags["envelope_sound"]:
        verdict = FAIL
    counts = {"pairs": table.total(), "solutions": table.solutions, "origin": table.origin,
              "search_nodes": table.nodes, "universe": U.size() ** 2 if params.mode == "exhaustive" else None}
    extra = {"poly": str(P), "root_split": info.get("root_split")}
    return ScanReport("loja", params.to_json(), _LOJA_COLS, rows, fit, verdict, flags, counts,
                      extra, plot=points)


_LOJA_COLS = ["min_ord", "max_ordP", "witness_x", "witness_y", "pairs"]


def _sampled_chunk(arg):
    ev, U, mode, samples, seed, chunk, chunks = arg
    table = BucketTable()
    for x, y in iter_pairs(U, mode, samples, seed, chunk, chunks):
        v = pord(ev.value(x, y))
        if v is None:
            if x or y:
                table.solutions += 1
            else:
                table.origin += 1
            continue
        table.add(PrunedScan._key(x, y), v, x, y)
    return table


def _sampled_table(ev: FormEvaluator, U: Universe, params: ScanParams, mode: str = "sampled") -> BucketTable:
    args = [(ev, U, mode, params.samples, params.seed, k, CHUNKS) for k in range(CHUNKS)]
    table = BucketTable()
    for t in _parallel(_sampled_chunk, args, params.worker_count()):
        table.merge(t)
    return table


# -- Izumi -------------------------------------------------------------------------------


def normalized(Q: SeriesPoly) -> Tuple[SeriesPoly, Series]:
    if Q.is_monic() and is_distinguished(Q):
        return Q, Series.const(1, Q.prec, Q.field, Q.nvars)
    u = choose_u(Q)
    return normalize_Qu(Q, u), u


def izumi_probe(Q: SeriesPoly, params: ScanParams) -> ScanReport:
    """Fit ``A (ord_O(x - Zbar y) + ord_O(h)) + B >= ord P(x, y)`` over the scanned pairs."""
    Qn, u = normalized(Q)
    U = universe(params, nvars=Q.nvars)
    prec = exact_prec(Qn.coeffs, U.prec)
    Qn = SeriesPoly([c.with_prec(prec) for c in Qn.coeffs])   # polynomial input: exact
    R = QuotientRing(Qn)
    d = Qn.degree
    F, n = Qn.field, Qn.nvars
    oa0 = Qn.coeffs[0].ord()
    mode = _explicit_mode(U, params)
    best: Dict[int, Tuple[int, Poly, Poly]] = {}
    samples: Dict[Tuple[int, int], int] = {}
    skipped = case1 = case2 = case1_bad = 0
    case2_records = []
    zb = R.zbar(prec)
    for x, y in _pairs(U, mode, params):
        xs, ys = as_series(x, prec, F, n), as_series(y, prec, F, n)
        cf = cofactor_expand(Qn, xs, ys, want_f=bool(x))
        lin = R.sub(R.element(xs), R.scale(zb, ys))
        ol, oh, oP = graded_order(lin), graded_order(cf.h), cf.P_xy.ord()
        if not (ol.exact and oh.exact and oP.exact):
            skipped += 1
            continue
        key = ol.value + oh.value
        r = oP.value
        samples[(key, r)] = samples.get((key, r), 0) + 1
        cur = best.get(key)
        if cur is None or r > cur[0] or (r == cur[0] and (sorted(x.items()), sorted(y.items())) <
                                          (sorted(cur[1].items()), sorted(cur[2].items()))):
            best[key] = (r, x, y)
        oy = pord(y)
        ord_a0y = None if (oy is None or not oa0.exact) else oa0.value + d * oy
        if ord_a0y is not None and r <= ord_a0y:
            case1 += 1
            if r > d * oy + oa0.value:
                case1_bad += 1
        elif ord_a0y is not None:
            case2 += 1
            case2_records.append((oy, r))
    points = [(k, v[0]) for k, v in sorted(best.items())]
    fit = envelope_fit(points, min_slope=1, min_intercept=0)
    rows = [{"ord_sum": k, "max_ordP": v[0], "witness_x": pstr(v[1], n), "witness_y": pstr(v[2], n)}
            for k, v in sorted(best.items())]
    flags: Dict = {}
    if fit is None:
        return ScanReport("izumi", params.to_json(), _IZUMI_COLS, rows, None, INCONCLUSIVE,
                          {"reason": "no pair with exact orders"}, {"skipped": skipped})
    A, B = fit.slope, fit.intercept
    flags["all_samples_satisfy"] = all(A * k + B >= r for (k, r) in samples)
    bound4 = [A * d * oy + A * oa0.value + B for oy, _ in case2_records] if oa0.exact else []
    case2_bad = sum(r > b for (_, r), b in zip(case2_records, bound4))
    flags["case1_bound_violations"] = case1_bad
    flags["case2_bound_violations"] = case2_bad
    verdict = PASS if flags["all_samples_satisfy"] and not case1_bad and not case2_bad else FAIL
    counts = {"pairs": sum(samples.values()), "skipped": skipped, "case1": case1, "case2": case2}
    extra = {"A": _frac(A), "B": _frac(B), "u": str(u), "normalized": str(Qn)}
    return ScanReport("izumi", params.to_json(), _IZUMI_COLS, rows, fit, verdict, flags, counts,
                      extra, plot=points)


_IZUMI_COLS = ["ord_sum", "max_ordP", "witness_x", "witness_y"]


def _frac(v: Fraction):
    return v.numerator if v.denominator == 1 else str(v)


def _explicit_mode(U: Universe, params: ScanParams) -> str:
    if params.mode == "exhaustive" and U.size() ** 2 <= params.budget:
        return "exhaustive"
    if params.mode == "exhaustive":
        log.warning("pair universe %d exceeds budget %d: sampling %d pairs",
                    U.size() ** 2, params.budget, params.samples)
    return "sampled"


def _pairs(U: Universe, mode: str, params: ScanParams):
    return iter_pairs(U, mode, params.samples, params.seed)


# -- Artin function ------------------------------------------------------------------------


def artin_estimate(P: HomogForm, params: ScanParams) -> ScanReport:
    """``beta(i) = max ord P(x, y)`` over pairs with no solution within ``m^(i+1)``."""
    ev = form_evaluator(P)
    lines, info = solution_lines(P, params.tprec)
    n = P.nvars
    rows, points = [], []
    flags: Dict = {}
    for i in range(params.i_min, params.i_max + 1):
        prec_i = i + params.prec_offset if params.prec_offset is not None else params.degree_cutoff
        if prec_i <= i:
            raise ConfigError(f"i = {i} needs precision > i (got {prec_i})")
        U = universe(params, prec=prec_i)
        if not lines:
            try:
                table = pruned_table(ev, U, params) if params.mode == "exhaustive" \
                    else _sampled_table(ev, U, params)
            except BudgetExceeded as exc:
                return ScanReport("artin", params.to_json(), _ARTIN_COLS, rows, verdict=INCONCLUSIVE,
                                  flags={"budget": str(exc)})
            # only the origin is a solution: (x, y) is within m^(i+1) of it iff m >= i+1
            cands = [(e.value, k, e) for k, e in table.entries.items() if k <= i]
            v, _, e = max(cands, key=lambda c: (c[0], -c[1]))
            wx, wy = e.x, e.y
        else:
            v, wx, wy = _artin_explicit(ev, U, params, lines, i)
            if v is None:
                continue
        rows.append({"i": i, "beta": v, "prec": prec_i, "witness_x": pstr(wx, n),
                     "witness_y": pstr(wy, n)})
        points.append((i, v))
    betas = [v for _, v in points]
    flags["monotone"] = _monotone(betas)
    fit = envelope_fit(points)
    # proof shape 2 max{A,B} (i + i0) + C with empirical A, B, i0
    shape: Dict = {}
    try:
        Q = SeriesPoly(list(P.coeffs))
        izp = params.replace(prec=min(params.degree_cutoff, 3), cutoff=None, mode="exhaustive",
                             budget=min(params.budget, 2 ** 14))
        iz = izumi_probe(Q, izp)
        A, B = Fraction(iz.extra["A"]), Fraction(iz.extra["B"])
        shape["A"], shape["B"] = _frac(A), _frac(B)
    except (AlgebraError, ArithmeticError, KeyError, TypeError) as exc:
        A = B = None
        shape["izumi"] = f"unavailable: {exc}"
    i0 = 0
    if lines:
        i0s = []
        for ln in lines:
            K = params.degree_cutoff + 3
            u = as_series(ln.u, K + 1, P.field, n)
            v_ = as_series(ln.v, K + 1, P.field, n)
            if u.is_zero() or v_.is_zero():
                i0s.append(1)   # (x) or (y): principal, i0 = 1
                continue
            rep = artin_rees_probe(u, v_, params.i_max, K)
            i0s.append(rep.i0 if rep.i0 is not None else K)
        i0 = max(i0s)
    shape["i0"] = i0
    verdict = INCONCLUSIVE if fit is None else PASS
    if fit is not None and A is not None:
        slope_cap = 2 * max(A, B)
        C = max(Fraction(b) - slope_cap * (i + i0) for i, b in points)
        shape["slope_cap"] = _frac(slope_cap)
        shape["C"] = _frac(C)
        flags["slope_within_cap"] = fit.slope <= slope_cap
        if not flags["slope_within_cap"] or not flags["monotone"]:
            verdict = FAIL
    elif fit is not None and not flags["monotone"]:
        verdict = FAIL
    extra = {"poly": str(P), "shape": shape, "solution_lines": [ln.describe(n) for ln in lines]}
    return ScanReport("artin", params.to_json(), _ARTIN_COLS, rows, fit, verdict, flags, {},
                      extra, plot=points)


_ARTIN_COLS = ["i", "beta", "prec", "witness_x", "witness_y"]


def _artin_explicit(ev, U, params, lines, i):
    """Largest ``ord P`` over pairs far from every line and from the origin.

    Pairs are tried in decreasing ``ord P``, so the projection test only runs
    until the first far pair.
    """
    F, n = U.field, U.nvars
    K = 2 * U.prec + max(pdeg(ln.u) for ln in lines) + max(pdeg(ln.v) for ln in lines) + 2
    cands = []
    for x, y in _pairs(U, _explicit_mode(U, params), params):
        val = pord(ev.value(x, y))
        if val is None or PrunedScan._key(x, y) >= i + 1:
            continue
        cands.append((-val, canonical_key(x, y), x, y))
    cands.sort(key=lambda c: (c[0], c[1]))
    uv = [(as_series(ln.u, K, F, n), as_series(ln.v, K, F, n)) for ln in lines]
    for neg, _, x, y in cands:
        xs, ys = as_series(x, K, F, n), as_series(y, K, F, n)
        if not any(project_to_solution(xs, ys, u, v, i + 1, K, check_coprime=False) is not None
                   for u, v in uv):
            return -neg, x, y
    return None, None, None


# -- Greenberg (one variable) ------------------------------------------------------------


def greenberg_estimate(Q: SeriesPoly, params: ScanParams) -> ScanReport:
    """Artin function of one equation ``Q(z) = 0`` over ``k[[T]]``."""
    if Q.nvars != 1:
        raise ConfigError("greenberg needs N = 1")
    U = universe(params, nvars=1)
    if params.i_max >= U.prec:
        raise ConfigError(f"i_max = {params.i_max} must be below the precision {U.prec}")
    F = Q.field
    prec = exact_prec(Q.coeffs, U.prec)
    Qx = SeriesPoly([c.with_prec(prec) for c in Q.coeffs])
    tprec = U.prec + 2
    rs = root_split(Qx, tprec + 2)
    roots = [z for z, _ in rs.roots if z.ord_value() >= 0]
    flags: Dict = {"roots": [str(z) for z in roots], "rootless_degree": rs.q}
    mode = "exhaustive" if U.size() <= params.budget and params.mode == "exhaustive" else "sampled"
    zs = U.polys() if mode == "exhaustive" else (
        U.random_poly(random.Random(f"{params.seed}:{k}")) for k in range(params.samples))
    # per z: (ord Q(z), distance to the nearest root)
    best: Dict[int, Tuple[int, Poly]] = {}
    total = 0
    for z in zs:
        total += 1
        zs_ = as_series(z, prec, F, 1)
        val = Qx(zs_).ord()
        if not val.exact:
            continue      # z itself is a root
        near = -1
        ze = embed_blowup(zs_)
        for r in roots:
            near = max(near, (ze - r).ord_value())
        cur = best.get(near)
        if cur is None or val.value > cur[0] or (val.value == cur[0] and sorted(z.items()) < sorted(cur[1].items())):
            best[near] = (val.value, z)
    rows, points = [], []
    for i in range(params.i_min, params.i_max + 1):
        cands = [(v, z) for near, (v, z) in best.items() if near <= i]
        if not cands:
            continue
        v, z = max(cands, key=lambda c: c[0])
        rows.append({"i": i, "beta": v, "witness_z": pstr(z, 1)})
        points.append((i, v))
    betas = [v for _, v in points]
    flags["monotone"] = _monotone(betas)
    fit = envelope_fit(points)
    extra: Dict = {"poly": str(Q)}
    if not roots:
        extra["case"] = "constant"
        extra["c"] = max(betas) if betas else None
        ok = len(set(betas)) == 1
        flags["constant"] = ok
    else:
        extra["case"] = "affine"
        extra["lambda"] = _frac(fit.slope) if fit else None
        extra["mu"] = _frac(fit.intercept) if fit else None
        ok = fit is not None and fit.slope <= Q.degree
        flags["lambda_at_most_d"] = ok
    verdict = PASS if ok and flags["monotone"] else FAIL
    return ScanReport("greenberg", params.to_json(), ["i", "beta", "witness_z"], rows, fit, verdict,
                      flags, {"z_scanned": total, "mode": mode}, extra, plot=points)


# -- Diophantine scan ------------------------------------------------------------------------


def best_numerator(c: CompletedElement, U: Universe, oy: int):
    """Greedy ``x`` maximising ``ord(c - embed(x))`` over the universe.

    Embedded pieces of ``x`` occupy distinct powers of ``T_N``, so the optimum
    copies ``c_j`` while it is a polynomial of degree ``<= j`` with admissible
    coefficients. Returns ``(x, order, exact)``.
    """
    x: Poly = {}
    vals = set(U.values)
    j = 0
    while True:
        if j >= c.tprec:
            return x, j, False
        cj = c.coeffs.get(j)
        if cj is None:
            j += 1
            continue
        if j < U.prec and cj.is_polynomial() and all(c_ in vals for c_ in cj.num.values()) \
                and pdeg(cj.num) <= j:
            for e, v in cj.num.items():
                x[e + (j - sum(e),)] = v
            j += 1
            continue
        return x, j, True


def _dioph_chunk(arg):
    z, U, ys = arg
    F, n = U.field, U.nvars
    out = []
    prec = z.tprec + U.prec
    for y in ys:
        oy = pord(y)
        c = embed_blowup(as_series(y, prec, F, n), z.budget) * z
        x, o, exact = best_numerator(c, U, oy)
        out.append((oy, o - oy, exact, x, y))
    return out


def dioph_scan(Q: SeriesPoly, z: CompletedElement, params: ScanParams) -> ScanReport:
    """Max ``ord(z - x/y)`` per bucket ``ord y`` and the envelope ``a ord y + b``."""
    res = Q(z)
    need = min(params.tprec, z.tprec)
    if res.ord_value() < need:
        raise AlgebraError(f"z is not a root: ord Q(z) = {res.ord()} < {need}")
    U = universe(params)
    F, n = U.field, U.nvars
    ys = _dioph_ys(U, params)
    chunks = [(z, U, ys[k::CHUNKS]) for k in range(CHUNKS)]
    records = [r for part in _parallel(_dioph_chunk, chunks, params.worker_count()) for r in part]
    best: Dict[int, Tuple] = {}
    hits = []
    distinct: Dict[Tuple[int, int], int] = {}
    for oy, dist, exact, x, y in records:
        if not exact:
            hits.append((oy, dist, x, y))
            continue
        distinct[(oy, dist)] = distinct.get((oy, dist), 0) + 1
        cur = best.get(oy)
        key = (sorted(x.items()), sorted(y.items()))
        if cur is None or dist > cur[0] or (dist == cur[0] and key < cur[3]):
            best[oy] = (dist, x, y, key, 0)
    rows, points = [], []
    bad = 0
    for oy in sorted(best):
        dist, x, y, _, _ = best[oy]
        prec = z.tprec + U.prec
        xs, ys_ = as_series(x, prec, F, n), as_series(y, prec, F, n)
        d1 = distance_via_product(z, xs, ys_)
        try:
            d2 = distance(z, xs, ys_)
        except CoefficientBudgetExceeded:
            d2 = d1      # 1/y has too large coefficients; the product form stands alone
        bad += not (d1.exact and d1.value == dist and d2 == d1)
        count = sum(c for (o, _), c in distinct.items() if o == oy)
        rows.append({"ord_y": oy, "max_distance": dist, "witness_x": pstr(x, n),
                     "witness_y": pstr(y, n), "samples": count})
        points.append((oy, dist))
    fit = envelope_fit(points, min_slope=1)
    flags: Dict = {"exact_hits": len(hits), "witnesses_verified": bad == 0,
                   "zero_y_skipped": 1 if params.mode == "exhaustive" else 0}
    if fit is not None:
        flags["envelope_sound"] = all(fit.holds(k, v) for (k, v) in distinct)
        flags["slope_at_least_1"] = fit.slope >= 1
    if hits:
        verdict = NOT_APPLICABLE
        flags["note"] = "an approximant matches z to working precision (z looks rational)"
    elif fit is None:
        verdict = INCONCLUSIVE
    elif bad or not flags["envelope_sound"]:
        verdict = FAIL
    else:
        verdict = PASS
    extra = {"z": str(z), "poly": str(Q)}
    if fit is not None:
        extra["a"] = _frac(fit.slope)
        extra["minus_log_K"] = _frac(fit.intercept)
        extra["K"] = math.exp(-float(fit.intercept))
    if hits:
        oy, dist, x, y = hits[0]
        extra["hit"] = {"ord_y": oy, "distance_at_least": dist, "x": pstr(x, n), "y": pstr(y, n)}
    counts = {"y_scanned": len(ys), "mode": "exhaustive" if len(ys) == U.size() - 1 else "sampled"}
    return ScanReport("dioph", params.to_json(), _DIOPH_COLS, rows, fit, verdict, flags, counts,
                      extra, plot=points)


_DIOPH_COLS = ["ord_y", "max_distance", "witness_x", "witness_y", "samples"]


def _dioph_ys(U: Universe, params: ScanParams) -> List[Poly]:
    if params.mode == "exhaustive":
        if U.size() > params.budget:
            raise ConfigError(f"exhaustive dioph scan needs {U.size()} denominators, "
                              f"over the budget {params.budget}; use mode = sampled")
        return [y for y in U.polys() if y]
    # stratified by ord y; each stratum holds the monomials, sparse and dense draws
    per = max(1, params.samples // U.prec)
    nz = [v for v in U.values if v]
    out: List[Poly] = []
    seen = set()

    def push(y):
        key = tuple(sorted(y.items()))
        if y and key not in seen:
            seen.add(key)
            out.append(y)

    for m in range(U.prec):
        for e in U.monos(m):
            for c in nz:
                push({e: c})
        for k in range(per):
            rng = random.Random(f"{params.seed}:{m}:{k}")
            if k % 2:
                push(U.random_poly(rng, exact_ord=m))
                continue
            y = {}
            while not homogeneous_part(y, m):
                y = {e: rng.choice(nz) for d in range(m, U.prec) for e in U.monos(d)
                     if rng.random() < 0.2}
            push(y)
    return out


def lift_root(Q: SeriesPoly, seeds: Sequence[CompletedElement], tprec: int) -> CompletedElement:
    """Hensel-lift the first seed that works (rescaling by its own order if needed)."""
    errors = []
    for s in seeds:
        try:
            return hensel_lift(Q, s, tprec)
        except (NewtonError, PrecisionError) as exc:
            errors.append(str(exc))
        rs = root_split(Q, tprec, seeds=[s])
        if rs.roots:
            return rs.roots[0][0]
    raise AlgebraError("no seed could be lifted: " + "; ".join(errors))


# -- exponent-growth family hook ----------------------------------------------------------


def load_family(target: str) -> Callable:
    if ":" not in target:
        raise ConfigError(f"family must be 'module:callable', got {target!r}")
    mod, _, attr = target.partition(":")
    try:
        return getattr(importlib.import_module(mod), attr)
    except (ImportError, AttributeError) as exc:
        raise ConfigError(f"cannot load family {target!r}: {exc}") from None


def family_scan(params: ScanParams) -> ScanReport:
    """Distances of a user-supplied approximant sequence to a root.

    The callable receives the parsed ``family_params`` and returns a mapping
    with ``poly`` (:class:`SeriesPoly`), ``root`` (:class:`CompletedElement`)
    and ``approximants`` (iterable of ``(x, y)`` series pairs).
    """
    fam = load_family(params.family)(**parse_family_params(params.family_params))
    Q, z, approx = fam["poly"], fam["root"], list(fam["approximants"])
    n = Q.nvars
    rows, points = [], []
    for k, (x, y) in enumerate(approx):
        d = distance_via_product(z, x, y)
        oy = y.ord().require_exact()
        rows.append({"index": k, "ord_y": oy, "distance": d.value, "exact": d.exact,
                     "ratio": str(Fraction(d.value, oy)) if oy else None,
                     "x": pstr(x.coeffs, n), "y": pstr(y.coeffs, n)})
        if d.exact:
            points.append((oy, d.value))
    fit = envelope_fit(points, min_slope=1)
    verdict = COMPLETE if fit else INCONCLUSIVE
    extra = {"poly": str(Q), "z": str(z), "family": params.family,
             "a": _frac(fit.slope) if fit else None}
    return ScanReport("dioph-family", params.to_json(),
                      ["index", "ord_y", "distance", "exact", "ratio", "x", "y"], rows, fit,
                      verdict, {}, {"approximants": len(approx)}, extra, plot=points)
