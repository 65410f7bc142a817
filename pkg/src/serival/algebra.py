"""Polynomials in ``Z`` over ``O_N`` and the constructions built on them.

* :class:`SeriesPoly` ``Q(Z) = a_0 + a_1 Z + ... + a_d Z^d`` and its homogeneous
  companion :class:`HomogForm` ``P(X, Y) = Y^d Q(X/Y)``;
* the monic rescaling ``Q_u``, initial-form / distinguishedness checks;
* :class:`QuotientRing`, ``O_{N+1}/(Q)`` as ``d``-tuples over ``O_N`` in the
  basis ``1, Zbar, ..., Zbar^{d-1}``, with the cofactor ``h`` of
  ``(x - Zbar y) h = P(x, y)`` and the graded order;
* Newton lifting of roots in the completion and the root split used by the
  experiments.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, lcm
from typing import Iterator, List, Optional, Sequence, Tuple

from .completion import CompletedElement, embed_blowup
from .fields import BaseField, RatFunc, pconst, pdivexact, pgcd, pmul
from .series import OrderValue, Series, exact_divide

log = logging.getLogger(__name__)


class AlgebraError(ArithmeticError):
    pass


class NewtonError(AlgebraError):
    pass


class PrecisionError(AlgebraError):
    pass


def omin(orders: Sequence[OrderValue]) -> OrderValue:
    """Minimum of orders, exact only when no lower bound could undercut it."""
    exact = [o.value for o in orders if o.exact]
    bounds = [o.value for o in orders if not o.exact]
    e = min(exact, default=None)
    b = min(bounds, default=None)
    if e is not None and (b is None or e <= b):
        return OrderValue(e)
    return OrderValue.at_least(b)


# ---------------------------------------------------------------------------
# polynomials over O_N


class SeriesPoly:
    """``a_0 + a_1 Z + ... + a_d Z^d`` with :class:`Series` coefficients."""

    def __init__(self, coeffs: Sequence[Series]):
        coeffs = list(coeffs)
        if len(coeffs) < 2:
            raise AlgebraError("a polynomial in Z needs degree >= 1")
        if coeffs[-1].is_zero():
            raise AlgebraError("leading coefficient a_d is zero at its precision")
        first = coeffs[0]
        for c in coeffs:
            if c.nvars != first.nvars or c.field != first.field:
                raise AlgebraError("coefficients live in different rings")
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def nvars(self) -> int:
        return self.coeffs[0].nvars

    @property
    def field(self) -> BaseField:
        return self.coeffs[0].field

    @property
    def prec(self) -> int:
        return min(c.prec for c in self.coeffs)

    def is_monic(self) -> bool:
        lead = self.coeffs[-1]
        return lead.coeffs == {(0,) * self.nvars: 1}

    def __call__(self, z):
        """Evaluate at a :class:`Series` or a :class:`CompletedElement` (Horner)."""
        if isinstance(z, CompletedElement):
            return self.embed()(z)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * z + c
        return acc

    def embed(self) -> "HatPoly":
        return HatPoly([embed_blowup(c) for c in self.coeffs])

    def truncate(self, prec: int) -> "SeriesPoly":
        return SeriesPoly([c.truncate(prec) for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, SeriesPoly) and self.coeffs == other.coeffs

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            body = str(c).rsplit(" @", 1)[0]
            z = "" if i == 0 else ("Z" if i == 1 else f"Z^{i}")
            if not z:
                terms.append(f"({body})")
            elif body == "1":
                terms.append(z)
            else:
                terms.append(f"({body})*{z}")
        return " + ".join(terms) + f" @{self.prec}"

    __repr__ = __str__


@dataclass
class HomogForm:
    """``P(X, Y) = a_0 Y^d + a_1 X Y^{d-1} + ... + a_d X^d``.

    Unlike :class:`SeriesPoly` the end coefficients may vanish (e.g. ``XY``).
    """

    coeffs: List[Series]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def nvars(self) -> int:
        return self.coeffs[0].nvars

    @property
    def field(self) -> BaseField:
        return self.coeffs[0].field

    def __call__(self, x: Series, y: Series) -> Series:
        return eval_P(self, x, y)

    def __str__(self):
        d = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in (("X", i), ("Y", d - i)) if k
            )
            body = str(c).rsplit(" @", 1)[0]
            terms.append(mono if body == "1" else f"({body})*{mono}")
        return " + ".join(terms) or "0"


def homogenize(Q: SeriesPoly) -> HomogForm:
    return HomogForm(list(Q.coeffs))


def dehomogenize(P: HomogForm, which: str = "Y=1") -> SeriesPoly:
    """``P(Z, 1)`` for ``which='Y=1'``; ``P(1, Z)`` for ``which='X=1'``."""
    w = which.replace(" ", "").upper()
    if w == "Y=1":
        return SeriesPoly(P.coeffs)
    if w == "X=1":
        return SeriesPoly(list(reversed(P.coeffs)))
    raise ValueError("which must be 'X=1' or 'Y=1'")


def eval_P(P: HomogForm, x: Series, y: Series) -> Series:
    """``sum_i a_i x^i y^(d-i)``; precision follows the series products."""
    d = P.degree
    xp = [None] * (d + 1)
    yp = [None] * (d + 1)
    xp[0] = Series.const(1, max(x.prec, y.prec), x.field, x.nvars)
    yp[0] = xp[0]
    for i in range(1, d + 1):
        xp[i] = xp[i - 1] * x
        yp[i] = yp[i - 1] * y
    total = None
    for i, a in enumerate(P.coeffs):
        term = a * xp[i] * yp[d - i]
        total = term if total is None else total + term
    return total


# ---------------------------------------------------------------------------
# Q_u and initial forms


def normalize_Qu(Q: SeriesPoly, u: Series) -> SeriesPoly:
    """``u^d a_d^(d-1) Q(Z/(u a_d))``: coefficients ``a_i u^(d-i) a_d^(d-i-1)``, monic."""
    if u.is_zero():
        raise AlgebraError("u must be nonzero")
    d = Q.degree
    ad = Q.coeffs[-1]
    out = []
    for i, a in enumerate(Q.coeffs[:-1]):
        out.append(a * u ** (d - i) * ad ** (d - i - 1))
    prec = max(c.prec for c in out) if out else Q.prec
    out.append(Series.const(1, prec, Q.field, Q.nvars))
    return SeriesPoly(out)


@dataclass
class DistinguishedReport:
    weighted_order: OrderValue
    initial_form: dict            # Z-power -> homogeneous Series piece
    initial_is_Zd: bool           # initial form is (unit) * Z^d
    weierstrass: bool             # a_d unit and a_i in m for i < d

    def __bool__(self):
        return self.initial_is_Zd


def is_distinguished(Q: SeriesPoly) -> DistinguishedReport:
    """Initial form of ``Q`` in the graded ring of ``O_{N+1}`` (``Z`` of weight 1)."""
    d = Q.degree
    weights = []
    for i, a in enumerate(Q.coeffs):
        weights.append(a.ord() + i)
    w = omin(weights)
    init = {}
    if w.exact:
        for i, a in enumerate(Q.coeffs):
            o = a.ord()
            if o.exact and o.value + i == w.value:
                init[i] = a.initial_form()
    ad = Q.coeffs[-1].ord()
    unit_lead = ad.exact and ad.value == 0
    zd = w.exact and w.value == d and list(init) == [d] and unit_lead
    weier = unit_lead and all(a.ord().value >= 1 for a in Q.coeffs[:-1])
    return DistinguishedReport(w, init, zd, weier)


def choose_u(Q: SeriesPoly, max_exponent: Optional[int] = None) -> Series:
    """Smallest power ``T_N^e`` making the initial form of ``Q_u`` equal ``Z^d``."""
    d = Q.degree
    if max_exponent is None:
        max_exponent = d * max(c.ord_value() for c in Q.coeffs) + d + 2
    big = Q.prec + max_exponent * d + d * d * (Q.coeffs[-1].ord_value() + 1)
    for e in range(max_exponent + 1):
        u = Series.monomial([0] * (Q.nvars - 1) + [e], big, Q.field, Q.nvars)
        if is_distinguished(normalize_Qu(Q, u)):
            return u
    raise AlgebraError("no power of T_N makes the initial form Z^d")


# ---------------------------------------------------------------------------
# the quotient ring O_{N+1}/(Q)


class QuotientRing:
    """Elements are ``d``-tuples over ``O_N`` in the basis ``1, Zbar, ..., Zbar^(d-1)``."""

    def __init__(self, Q: SeriesPoly):
        if not Q.is_monic():
            raise AlgebraError("quotient representation needs a monic Q (apply normalize_Qu)")
        self.Q = Q
        self.d = Q.degree
        self.field = Q.field
        self.nvars = Q.nvars

    def _zero(self, prec):
        return Series.zero(prec, self.field, self.nvars)

    def element(self, s: Series) -> tuple:
        return (s,) + tuple(self._zero(s.prec) for _ in range(self.d - 1))

    def zbar(self, prec: int) -> tuple:
        one = Series.const(1, prec, self.field, self.nvars)
        if self.d == 1:
            return (-self.Q.coeffs[0],)
        return tuple(one if i == 1 else self._zero(prec) for i in range(self.d))

    def reduce(self, coeffs: List[Series]) -> tuple:
        """Reduce a polynomial in ``Zbar`` of any degree using ``Q(Zbar) = 0``."""
        c = list(coeffs)
        d = self.d
        a = self.Q.coeffs
        while len(c) > d:
            top = c.pop()
            k = len(c) - d
            for i in range(d):
                c[k + i] = c[k + i] - top * a[i]
        prec = min((s.prec for s in c), default=0)
        while len(c) < d:
            c.append(self._zero(prec))
        return tuple(c)

    def add(self, f, g):
        return tuple(a + b for a, b in zip(f, g))

    def sub(self, f, g):
        return tuple(a - b for a, b in zip(f, g))

    def scale(self, f, s: Series):
        return tuple(a * s for a in f)

    def mul(self, f, g):
        out: List[Optional[Series]] = [None] * (2 * self.d - 1)
        for i, a in enumerate(f):
            for j, b in enumerate(g):
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return self.reduce(out)

    def is_zero(self, f) -> bool:
        return all(s.is_zero() for s in f)


def graded_order(g: Sequence[Series], Q: Optional[SeriesPoly] = None) -> OrderValue:
    """``min_i (ord(g_i) + i)``; valid when the initial form of ``Q`` is ``Z^d``."""
    if Q is not None and not is_distinguished(Q):
        raise AlgebraError("graded formula invalid: initial form of Q is not Z^d")
    return omin([s.ord() + i for i, s in enumerate(g)])


@dataclass
class Cofactor:
    b: List[tuple]     # b_0 .. b_{d-1} in the quotient ring
    h: tuple           # sum b_i x^i y^(d-1-i)
    f: Optional[List[Series]]    # f_0 .. f_{d-1} in O_N, h = sum f_i Zbar^i
    P_xy: Series


def cofactor_b(R: QuotientRing) -> List[tuple]:
    """``b_i = Zbar^(d-i-1) a_d + ... + a_(i+1)`` (already reduced)."""
    a = R.Q.coeffs
    d = R.d
    out = []
    for i in range(d):
        comps = [a[k] for k in range(i + 1, d + 1)]
        out.append(R.reduce(comps))
    return out


def cofactor_expand(Q: SeriesPoly, x: Series, y: Series,
                    zbar: Optional[CompletedElement] = None,
                    root_check_prec: Optional[int] = None, want_f: bool = True) -> Cofactor:
    """The cofactor ``h`` with ``(x - Zbar y) h = P(x, y)`` and its ``f_i`` expansion.

    When a completed root ``zbar`` is supplied it is first checked to be a root
    to ``root_check_prec`` (default: its own precision minus one).
    """
    R = QuotientRing(Q)
    d = R.d
    a = Q.coeffs
    if zbar is not None:
        res = Q(zbar)
        need = zbar.tprec - 1 if root_check_prec is None else root_check_prec
        if res.ord_value() < need:
            raise AlgebraError(f"residual too large: ord Q(zbar) = {res.ord()} < {need}")
    b = cofactor_b(R)
    # b_{d-1} = a_d and b_i = a_{i+1} + Zbar b_{i+1}
    zb = R.zbar(max(x.prec, y.prec, Q.prec))
    if not all(s.congruent(t) for s, t in zip(b[-1], R.element(a[-1]))):
        raise AlgebraError("b_{d-1} != a_d")
    for i in range(d - 1):
        rhs = R.add(R.element(a[i + 1]), R.mul(zb, b[i + 1]))
        if not all(s.congruent(t) for s, t in zip(b[i], rhs)):
            raise AlgebraError(f"b recurrence fails at i={i}")
    h = None
    xp = [Series.const(1, x.prec, x.field, x.nvars)]
    yp = [Series.const(1, y.prec, y.field, y.nvars)]
    for _ in range(d):
        xp.append(xp[-1] * x)
        yp.append(yp[-1] * y)
    for i in range(d):
        term = R.scale(b[i], xp[i] * yp[d - 1 - i])
        h = term if h is None else R.add(h, term)
    P = HomogForm(list(a))
    Pxy = eval_P(P, x, y)
    if not want_f:
        return Cofactor(b, h, None, Pxy)
    if x.is_zero():
        raise AlgebraError("f-sequence needs x with an exact order")
    fs = []
    partial = Pxy
    for i in range(d):
        # closed form sum_{k>i} a_k x^(k-i-1) y^(d-k+i), checked against the division
        fi = None
        for k in range(i + 1, d + 1):
            term = a[k] * xp[k - i - 1] * yp[d - k + i]
            fi = term if fi is None else fi + term
        partial = partial - a[i] * xp[i] * yp[d - i]
        q = exact_divide(partial, xp[i + 1])
        if not q:
            raise AlgebraError(f"f_{i}: division by x^{i + 1} is not exact ({q!r})")
        if not (q * yp[i]).congruent(fi):
            raise AlgebraError(f"f_{i}: quotient disagrees with the closed form")
        fs.append(fi)
    return Cofactor(b, h, fs, Pxy)


# ---------------------------------------------------------------------------
# polynomials over the completion, Newton lifting


class HatPoly:
    """A polynomial in ``Z`` with :class:`CompletedElement` coefficients."""

    def __init__(self, coeffs: Sequence[CompletedElement]):
        self.coeffs = list(coeffs)
        c0 = self.coeffs[0]
        self.field = c0.field
        self.nt = c0.nt

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: CompletedElement) -> CompletedElement:
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * z + c
        return acc

    def hasse(self, k: int) -> "HatPoly":
        """``k``-th Hasse derivative (``Q^(k)/k!`` with integral binomials)."""
        out = [c * comb(i, k) for i, c in enumerate(self.coeffs) if i >= k]
        if not out:
            out = [self.coeffs[0] * 0]
        return HatPoly(out)

    def derivative(self) -> "HatPoly":
        return self.hasse(1)

    def scaled(self, m: int) -> Tuple["HatPoly", int]:
        """``T^-mu Q(T^m W)`` with ``mu = min_i(ord a_i + m i)``; returns (poly, mu)."""
        mu = min(c.ord_value() + m * i for i, c in enumerate(self.coeffs))
        return HatPoly([c.shift(m * i - mu) for i, c in enumerate(self.coeffs)]), mu

    def deflate(self, z: CompletedElement) -> Tuple["HatPoly", CompletedElement]:
        """Synthetic division by ``Z - z``: returns (quotient, remainder)."""
        d = self.degree
        b = [None] * d
        b[d - 1] = self.coeffs[d]
        for i in range(d - 1, 0, -1):
            b[i - 1] = self.coeffs[i] + z * b[i]
        rem = self.coeffs[0] + z * b[0]
        return HatPoly(b), rem

    def newton_polygon(self) -> List[Tuple[int, int]]:
        """Lower convex hull vertices of ``(i, ord a_i)`` over nonzero coefficients."""
        pts = [(i, c.ord().value) for i, c in enumerate(self.coeffs) if c.ord().exact]
        hull: List[Tuple[int, int]] = []
        for p in pts:
            while len(hull) >= 2:
                (x1, y1), (x2, y2) = hull[-2], hull[-1]
                if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                    hull.pop()
                else:
                    break
            hull.append(p)
        return hull

    def __str__(self):
        return " + ".join(f"({c})*Z^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero())


def _as_hatpoly(Q) -> HatPoly:
    if isinstance(Q, HatPoly):
        return Q
    if isinstance(Q, SeriesPoly):
        return Q.embed()
    raise TypeError(f"expected SeriesPoly or HatPoly, got {type(Q).__name__}")


@dataclass
class NewtonStep:
    iteration: int
    residual: OrderValue
    derivative: OrderValue
    root: CompletedElement


def newton_steps(Q, seed: CompletedElement, target_tprec: int,
                 max_iter: int = 64) -> Iterator[NewtonStep]:
    """Iterate ``z <- z - Q(z)/Q'(z)`` from ``seed`` until ``ord Q(z) >= target``.

    Yields the state before each update (iteration 0 is the seed) and finally
    the converged root.
    """
    Qh = _as_hatpoly(Q)
    dQ = Qh.derivative()
    cap_guess = target_tprec + 2 * len(Qh.coeffs) + 2
    # a seed is a finite approximation: read it as exact up to the working cap
    z = CompletedElement(seed.coeffs, max(seed.tprec, cap_guess), seed.field, seed.nt, seed.budget)
    r = Qh(z)
    dz = dQ(z)
    if not dz.ord().exact:
        raise NewtonError("inseparable residual: Q'(seed) vanishes at working precision")
    v = dz.ord().value
    if not r.ord_value() > 2 * v:
        raise NewtonError(
            f"Newton condition fails: ord Q(seed) = {r.ord()}, ord Q'(seed) = {dz.ord()}"
        )
    cap = target_tprec + 2 * max(v, 0) + 2
    it = 0
    while True:
        yield NewtonStep(it, r.ord(), dz.ord(), z)
        if r.ord_value() >= target_tprec:
            return
        if not r.ord().exact and r.tprec < target_tprec:
            raise PrecisionError(
                f"residual known only to T-precision {r.tprec} < target {target_tprec}; "
                "raise the coefficient precision"
            )
        if it >= max_iter:
            raise NewtonError("Newton iteration did not converge")
        prev = r.ord_value()
        z = (z - r / dz).truncate(cap)
        r = Qh(z)
        dz = dQ(z)
        it += 1
        if not dz.ord().exact or dz.ord().value != v:
            raise NewtonError("derivative order changed during lifting")
        if r.ord_value() <= prev:
            if not r.ord().exact:
                raise PrecisionError(
                    f"residual at-least {r.ord_value()} stalls below target {target_tprec}"
                )
            raise NewtonError(f"residual order did not increase ({prev} -> {r.ord()})")
        log.debug("newton step %d: ord Q(z) = %s", it, r.ord())


def hensel_lift(Q, seed: CompletedElement, target_tprec: int) -> CompletedElement:
    """Newton-lift ``seed`` to a root with ``ord Q(z) >= target_tprec``."""
    last = None
    for step in newton_steps(Q, seed, target_tprec):
        last = step
    return last.root


# ---------------------------------------------------------------------------
# root split


@dataclass
class SlopeInfo:
    slope: Fraction            # T_N-order of the roots on this edge
    length: int                # number of roots (with multiplicity) on the edge
    integral: bool
    found: int = 0
    note: str = ""

    def to_json(self):
        return {"slope": str(self.slope), "length": self.length, "integral": self.integral,
                "found": self.found, "note": self.note}


@dataclass
class RootSplit:
    roots: List[Tuple[CompletedElement, int]]
    q: int
    lifted_precision: int
    slopes: List[SlopeInfo] = field(default_factory=list)
    remainder: Optional[HatPoly] = None

    @property
    def degree(self) -> int:
        return self.q + sum(n for _, n in self.roots)


def _constant_candidates(F: BaseField) -> List:
    if F.p is not None:
        return list(range(1, F.p))
    base = [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3), Fraction(1, 3),
            Fraction(4), Fraction(1, 4)]
    out = []
    for c in base:
        out += [F.reduce(c), F.reduce(-c)]
    return out


def _residual(Qs: HatPoly) -> List[RatFunc]:
    """Reduction mod T of a scaled polynomial (coefficients of T^0)."""
    F, nt = Qs.field, Qs.nt
    out = []
    for c in Qs.coeffs:
        out.append(c.coeffs.get(0) or RatFunc.const(0, F, nt))
    return out


def _eval_k(poly: List[RatFunc], w: RatFunc) -> RatFunc:
    acc = poly[-1]
    for c in reversed(poly[:-1]):
        acc = acc * w + c
    return acc


def _residual_multiplicity(poly: List[RatFunc], w: RatFunc) -> int:
    """Order of vanishing at ``w``: first Hasse derivative not vanishing there."""
    for k in range(len(poly)):
        hk = [c * comb(i, k) for i, c in enumerate(poly) if i >= k]
        if not _eval_k(hk, w).is_zero():
            return k
    return len(poly) - 1


def _ratio_candidates(F: BaseField, nt: int, bound: int) -> Iterator[RatFunc]:
    consts = _constant_candidates(F)
    for alpha in product(range(-bound, bound + 1), repeat=nt):
        for c in consts:
            yield RatFunc.monomial(c, alpha, F)


def residual_roots(poly: List[RatFunc], monomial_bound: Optional[int] = None) -> List[Tuple[RatFunc, int]]:
    """Nonzero roots in ``K`` of the residual polynomial among trial candidates.

    Candidates: nonzero constants (all of ``F_p``; a small set of rationals plus
    rational-root-theorem values over Q) times ratio monomials ``t^alpha`` with
    ``|alpha_i| <= monomial_bound``.
    """
    F = poly[0].field
    nt = poly[0].nvars
    if monomial_bound is None:
        monomial_bound = max(c.degree for c in poly) + 1
    seen = []
    cands = list(_ratio_candidates(F, nt, monomial_bound))
    if F.p is None and all(c.is_polynomial() and c.degree <= 0 for c in poly):
        cands = [RatFunc.const(F.reduce(r), F, nt) for r in _rational_root_candidates(poly)] + cands
    for w in cands:
        if w.is_zero() or any(w == s for s, _ in seen):
            continue
        m = _residual_multiplicity(poly, w)
        if m:
            seen.append((w, m))
    return seen


def _rational_root_candidates(poly: List[RatFunc]) -> List[Fraction]:
    vals = [Fraction(next(iter(c.num.values()), 0)) for c in poly]
    while vals and vals[-1] == 0:
        vals.pop()
    while vals and vals[0] == 0:
        vals.pop(0)
    if len(vals) < 2:
        return []
    L = lcm(*[v.denominator for v in vals])
    ints = [int(v * L) for v in vals]

    def divisors(n):
        n = abs(n)
        return [k for k in range(1, min(n, 10 ** 4) + 1) if n % k == 0]

    out = []
    for p in divisors(ints[0]):
        for q in divisors(ints[-1]):
            out += [Fraction(p, q), Fraction(-p, q)]
    return out


def _lift_scaled(Qs: HatPoly, w0: RatFunc, mult: int, target: int) -> Optional[CompletedElement]:
    """Lift a residual root of multiplicity ``mult`` of the scaled polynomial."""
    seed = CompletedElement.const(w0, target + 2, Qs.field, Qs.nt)
    seed.budget = Qs.coeffs[0].budget
    if Qs(seed).ord_value() >= target:
        return seed
    poly = Qs
    if mult > 1:
        poly = Qs.hasse(mult - 1)
    try:
        return hensel_lift(poly, seed, target)
    except (NewtonError, PrecisionError) as exc:
        log.info("lift of residual root %s failed: %s", w0, exc)
        return None


def root_split(Q, tprec: int, seeds: Optional[Sequence[CompletedElement]] = None,
               monomial_bound: Optional[int] = None) -> RootSplit:
    """Roots of ``Q`` in the completion with multiplicities and the rootless degree.

    With ``seeds`` the given approximations are lifted (after rescaling by their
    own ``T_N``-order); otherwise seeds come from the integral slopes of the
    Newton polygon and trial roots of the residual polynomials.
    """
    Qh = _as_hatpoly(Q)
    d = Qh.degree
    # roots with multiplicity at Z = 0 when a_0 vanishes at its precision
    work = Qh
    found: List[Tuple[CompletedElement, int]] = []
    slopes: List[SlopeInfo] = []
    zero_mult = 0
    while work.degree >= 1 and work.coeffs[0].is_zero():
        zero_mult += 1
        work = HatPoly(work.coeffs[1:])
    candidates: List[Tuple[CompletedElement, int]] = []
    if seeds is not None:
        for s in seeds:
            m = s.ord().require_exact()
            Qs, _ = work.scaled(m)
            res = _residual(Qs)
            w0 = s.shift(-m).coefficient(0)
            mult = max(_residual_multiplicity(res, w0), 1)
            w = _lift_scaled(Qs, w0, mult, tprec - m + 2)
            if w is not None:
                candidates.append((w.shift(m), mult))
    else:
        hull = work.newton_polygon()
        for (i1, o1), (i2, o2) in zip(hull, hull[1:]):
            slope = Fraction(o1 - o2, i2 - i1)
            info = SlopeInfo(slope, i2 - i1, slope.denominator == 1)
            slopes.append(info)
            if not info.integral:
                info.note = "non-integral slope: no root in the completion along this edge"
                continue
            m = int(slope)
            Qs, _ = work.scaled(m)
            for w0, mult in residual_roots(_residual(Qs), monomial_bound):
                w = _lift_scaled(Qs, w0, mult, tprec - m + 2)
                if w is None:
                    info.note = "residual root could not be lifted"
                    continue
                candidates.append((w.shift(m), mult))
                info.found += mult
            if info.found < info.length and not info.note:
                info.note = "residual roots outside the trial candidates"
    # multiplicities by repeated deflation
    check = max(tprec // 2, 1)
    cur = work
    for z, _ in candidates:
        z = z.truncate(tprec)
        n = 0
        while cur.degree >= 1:
            quo, rem = cur.deflate(z)
            if rem.ord_value() < check:
                break
            cur = quo
            n += 1
        if n:
            found.append((z, n))
    if zero_mult:
        zero = CompletedElement.zero(tprec, Qh.field, Qh.nt)
        found.insert(0, (zero, zero_mult))
    q = d - sum(n for _, n in found)
    return RootSplit(found, q, tprec, slopes, cur)


def as_fraction(z: CompletedElement, nvars: int) -> Optional[Tuple[Series, Series]]:
    """Write a finitely supported completed element as ``u/v`` with ``u, v`` coprime.

    Returns ``None`` when the element has no terms; the caller decides whether the
    finite support is trustworthy (e.g. by checking ``P(u, v) = 0``).
    """
    if not z.coeffs:
        return None
    F = z.field
    nt = z.nt
    den = pconst(1, nt)
    for c in z.coeffs.values():
        if len(c.den) > 1 or any(any(e) for e in c.den):
            g = pgcd(den, c.den, F, nt)
            den = pmul(den, pdivexact(c.den, g, F), F)

    def homog(poly, degree):
        # t-polynomial of degree <= `degree` -> homogeneous in T1..TN
        return {e + (degree - sum(e),): c for e, c in poly.items()}

    parts = []
    for j, c in z.coeffs.items():
        num = pdivexact(pmul(c.num, den, F), c.den, F)
        parts.append((j, num))
    dd = max(sum(e) for e in den)
    shift = max([dd] + [max(sum(e) for e in num) - j for j, num in parts])
    u: dict = {}
    for j, num in parts:
        deg = max(sum(e) for e in num)
        hom = homog(num, deg)
        extra = j - deg + shift
        for e, c in hom.items():
            key = e[:-1] + (e[-1] + extra,)
            u[key] = F.reduce(u.get(key, 0) + c)
    u = {e: c for e, c in u.items() if c}
    v = {e[:-1] + (e[-1] + shift - dd,): c for e, c in homog(den, dd).items()}
    g = pgcd(u, v, F, nvars)
    if g and any(any(e) for e in g):
        u, v = pdivexact(u, g, F), pdivexact(v, g, F)
    big = max(sum(e) for e in list(u) + list(v)) + 1
    return Series(u, big, F, nvars), Series(v, big, F, nvars)
