"""Ideal membership in ``O_N`` modulo ``m^K`` by exact linear algebra.

``w = sum_j eps_j g_j (mod m^K)`` with ``ord eps_j >= i`` is a linear system
over ``k`` in the coefficients of the ``eps_j``; it is solved by Gauss-Jordan
elimination with exact field arithmetic. The same machinery gives the
Artin-Rees probe and the projection of an approximate solution of
``u y - v x = 0`` onto the solution line.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import BaseField, pgcd
from .series import Series, SeriesError, monomials

log = logging.getLogger(__name__)

Row = Dict[int, object]


# -- exact linear algebra -----------------------------------------------------


def _row_reduce(rows: List[Row], F: BaseField, aug: Optional[List] = None):
    """In-place Gauss-Jordan on sparse rows; returns pivot columns (row order).

    ``aug`` (if given) is the right-hand side, transformed alongside.
    """
    pivots: List[int] = []
    r = 0
    cols = sorted({c for row in rows for c in row})
    for c in cols:
        piv = next((k for k in range(r, len(rows)) if rows[k].get(c)), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        if aug is not None:
            aug[r], aug[piv] = aug[piv], aug[r]
        inv = F.inv(rows[r][c])
        rows[r] = {j: F.reduce(v * inv) for j, v in rows[r].items()}
        if aug is not None:
            aug[r] = F.reduce(aug[r] * inv)
        for k in range(len(rows)):
            if k != r and rows[k].get(c):
                f = rows[k][c]
                row = dict(rows[k])
                for j, v in rows[r].items():
                    nv = F.reduce(row.get(j, 0) - f * v)
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
                rows[k] = row
                if aug is not None:
                    aug[k] = F.reduce(aug[k] - f * aug[r])
        pivots.append(c)
        r += 1
    return pivots


def solve(rows: List[Row], rhs: List, ncols: int, F: BaseField) -> Optional[List]:
    """One solution of ``A x = b`` (free variables set to 0), or ``None``."""
    A = [dict(r) for r in rows]
    b = list(rhs)
    piv = _row_reduce(A, F, b)
    for k in range(len(piv), len(A)):
        if b[k]:
            return None
    x = [0] * ncols
    for k, c in enumerate(piv):
        x[c] = b[k]
    return x


def nullspace(rows: List[Row], ncols: int, F: BaseField) -> List[List]:
    """A basis of ``{x : A x = 0}``."""
    A = [dict(r) for r in rows]
    piv = _row_reduce(A, F)
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        x = [0] * ncols
        x[free] = 1
        for k, c in enumerate(piv):
            v = A[k].get(free)
            if v:
                x[c] = F.reduce(-v)
        basis.append(x)
    return basis


# -- membership ---------------------------------------------------------------


@dataclass
class MembershipWitness:
    eps: List[Series]
    min_orders: List[int]
    K: int

    def verify(self, w: Series, gens: Sequence[Series]) -> bool:
        """Re-check ``sum eps_j g_j = w (mod m^K)`` by series arithmetic."""
        total = None
        for e, g in zip(self.eps, gens):
            t = e * g
            total = t if total is None else total + t
        ok_orders = all(e.ord_value() >= m for e, m in zip(self.eps, self.min_orders))
        return ok_orders and (total - w).truncate(self.K).is_zero()


def _unknowns(nvars: int, gens: Sequence[Series], i: int, K: int):
    """Monomials ``(j, e)`` of ``eps_j`` that matter modulo ``m^K``."""
    cols = []
    for j, g in enumerate(gens):
        og = g.ord_value()
        for deg in range(i, max(i, K - og)):
            for e in monomials(nvars, deg):
                cols.append((j, e))
    return cols


def _product_columns(gens, cols, K, F):
    """Column ``c`` holds the coefficients of ``t^e * g_j`` below degree ``K``."""
    out = []
    for j, e in cols:
        colmap = {}
        for ge, c in gens[j].coeffs.items():
            m = tuple(a + b for a, b in zip(e, ge))
            if sum(m) < K:
                colmap[m] = c
        out.append(colmap)
    return out


def _check_inputs(w: Optional[Series], gens: Sequence[Series], i: int, K: int):
    if K < i:
        raise ValueError("need K >= i")
    for s in ([w] if w is not None else []) + list(gens):
        if s.prec < K:
            raise SeriesError(f"K = {K} exceeds input precision {s.prec}")


def in_ideal_mod(w: Series, gens: Sequence[Series], i: int, K: int):
    """Witness for ``w in (gens) m^i + m^K``, or ``None`` when the system is infeasible."""
    _check_inputs(w, gens, i, K)
    F = w.field
    nvars = w.nvars
    cols = _unknowns(nvars, gens, i, K)
    colmaps = _product_columns(gens, cols, K, F)
    eq_index: Dict[tuple, int] = {}
    for d in range(K):
        for e in monomials(nvars, d):
            eq_index[e] = len(eq_index)
    rows: List[Row] = [dict() for _ in eq_index]
    for c, cm in enumerate(colmaps):
        for m, v in cm.items():
            rows[eq_index[m]][c] = v
    rhs = [0] * len(eq_index)
    for e, v in w.coeffs.items():
        if sum(e) < K:
            rhs[eq_index[e]] = v
    x = solve(rows, rhs, len(cols), F)
    if x is None:
        return None
    eps_coeffs: List[dict] = [dict() for _ in gens]
    for (j, e), v in zip(cols, x):
        if v:
            eps_coeffs[j][e] = v
    prec = K
    eps = [Series(c, prec, F, nvars) for c in eps_coeffs]
    wit = MembershipWitness(eps, [i] * len(gens), K)
    if not wit.verify(w, gens):
        raise ArithmeticError("linear solver produced an invalid witness")
    return wit


# -- Artin-Rees probe ---------------------------------------------------------


@dataclass
class ArtinReesReport:
    generators: Tuple[Series, Series]
    i_max: int
    K: int
    i0: Optional[int]             # smallest verified shift, None when inconclusive
    tested: Dict[int, Dict[int, bool]] = field(default_factory=dict)
    basis_sizes: Dict[int, Dict[int, int]] = field(default_factory=dict)
    inconclusive: bool = False
    note: str = "empirical: verified only up to the tested (i_max, K, budget)"

    def to_json(self):
        return {
            "generators": [str(g) for g in self.generators],
            "i_max": self.i_max,
            "K": self.K,
            "i0": self.i0,
            "inconclusive": self.inconclusive,
            "tested": {str(a): {str(i): ok for i, ok in t.items()} for a, t in self.tested.items()},
            "note": self.note,
        }


def ideal_elements_in_power(gens: Sequence[Series], level: int, K: int) -> List[Series]:
    """Basis (mod ``m^K``) of ``(gens) ∩ m^level`` from combinations ``sum a_j g_j``."""
    F = gens[0].field
    nvars = gens[0].nvars
    cols = _unknowns(nvars, gens, 0, K)
    colmaps = _product_columns(gens, cols, K, F)
    low = [e for d in range(min(level, K)) for e in monomials(nvars, d)]
    idx = {e: n for n, e in enumerate(low)}
    rows: List[Row] = [dict() for _ in low]
    for c, cm in enumerate(colmaps):
        for m, v in cm.items():
            if m in idx:
                rows[idx[m]][c] = v
    basis = nullspace(rows, len(cols), F)
    out = []
    seen = set()
    for vec in basis:
        total: dict = {}
        for c, v in enumerate(vec):
            if v:
                for m, gv in colmaps[c].items():
                    total[m] = F.reduce(total.get(m, 0) + v * gv)
        s = Series({m: c for m, c in total.items() if c}, K, F, nvars)
        key = frozenset(s.coeffs.items())
        if s.coeffs and key not in seen:
            seen.add(key)
            out.append(s)
    return out


def artin_rees_probe(u: Series, v: Series, i_max: int, K: int, budget: int = 10 ** 4,
                     max_shift: Optional[int] = None) -> ArtinReesReport:
    """Smallest ``i0`` with ``(u,v) ∩ m^(i+i0) ⊂ (u,v) m^i`` for all ``i <= i_max`` (mod ``m^K``).

    Both sides are subspaces modulo ``m^K``, so testing a basis of the left side
    decides the inclusion at this truncation.
    """
    if u.is_zero() or v.is_zero():
        raise SeriesError("generators must be nonzero")
    _check_inputs(None, [u, v], 0, K)
    if max_shift is None:
        max_shift = K
    report = ArtinReesReport((u, v), i_max, K, None)
    spent = 0
    for i0 in range(max_shift + 1):
        ok_all = True
        report.tested[i0] = {}
        report.basis_sizes[i0] = {}
        for i in range(i_max + 1):
            elems = ideal_elements_in_power([u, v], i + i0, K)
            report.basis_sizes[i0][i] = len(elems)
            spent += len(elems)
            if spent > budget:
                report.inconclusive = True
                return report
            ok = all(in_ideal_mod(w, [u, v], i, K) is not None for w in elems)
            report.tested[i0][i] = ok
            if not ok:
                ok_all = False
                break
        if ok_all:
            report.i0 = i0
            return report
    report.inconclusive = True
    return report


# -- projection onto a solution line -----------------------------------------


def coprime(u: Series, v: Series) -> bool:
    """GCD test on the polynomial representatives (meaningful for N <= 3)."""
    if u.nvars > 3:
        log.warning("coprimality of (u, v) not checked for N > 3; assumed by the caller")
        return True
    g = pgcd(u.coeffs, v.coeffs, u.field, u.nvars)
    return all(not any(e) for e in g)


def project_to_solution(x: Series, y: Series, u: Series, v: Series, i: int, K: int,
                        check_coprime: bool = True) -> Optional[Tuple[Series, Series]]:
    """``(xbar, ybar)`` with ``u ybar = v xbar (mod m^K)`` and ``xbar - x, ybar - y`` in ``m^i``.

    Solves ``u y - v x = u eps1 - v eps2`` and sets ``ybar = y - eps1``,
    ``xbar = x - eps2``. Returns ``None`` when no such correction exists.
    """
    if check_coprime and not coprime(u, v):
        raise ValueError("u and v must be coprime")
    w = u * y - v * x
    wit = in_ideal_mod(w.truncate(K) if w.prec >= K else w, [u, -v], i, min(K, w.prec))
    if wit is None:
        return None
    e1, e2 = wit.eps
    ybar = y - e1
    xbar = x - e2
    assert (u * ybar - v * xbar).truncate(wit.K).is_zero()
    return xbar, ybar
