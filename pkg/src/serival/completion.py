"""The blow-up completion ``K[[T_N]]`` with ``K = k(t_1, ..., t_{N-1})``.

``embed_blowup`` substitutes ``T_i = t_i * T_N`` (``i < N``), which sends the
homogeneous degree-``m`` piece of a series to ``T_N^m`` times a polynomial in the
ratio variables. Orders are preserved, so the m-adic order of ``O_N`` becomes
the ``T_N``-adic order downstairs, where division is always possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from .fields import BaseField, RatFunc, pconst
from .series import OrderValue, Series, SeriesError

# Largest numerator/denominator degree a coefficient may reach.
DEFAULT_DEGREE_BUDGET = 96


class CoefficientBudgetExceeded(ArithmeticError):
    pass


class CompletedElement:
    """A truncated Laurent-in-``T_N`` element with rational-function coefficients.

    ``coeffs`` maps ``j`` to the nonzero coefficient of ``T_N^j``; everything at
    ``j >= tprec`` is unknown. Elements with a negative lowest exponent belong to
    the fraction field rather than the ring (see :attr:`in_ring`).
    """

    __slots__ = ("coeffs", "tprec", "field", "nt", "budget")

    def __init__(self, coeffs: Dict[int, RatFunc], tprec: int, field: BaseField, nt: int,
                 budget: int = DEFAULT_DEGREE_BUDGET):
        self.coeffs = {j: c for j, c in coeffs.items() if j < tprec and not c.is_zero()}
        self.tprec = tprec
        self.field = field
        self.nt = nt
        self.budget = budget
        for c in self.coeffs.values():
            if c.degree > budget:
                raise CoefficientBudgetExceeded(
                    f"coefficient degree {c.degree} exceeds budget {budget}"
                )

    # -- constructors
    @classmethod
    def zero(cls, tprec, field, nt):
        return cls({}, tprec, field, nt)

    @classmethod
    def const(cls, c, tprec, field, nt):
        if not isinstance(c, RatFunc):
            c = RatFunc.const(field(c), field, nt)
        return cls({0: c}, tprec, field, nt)

    @classmethod
    def monomial(cls, c, j: int, tprec, field, nt):
        if not isinstance(c, RatFunc):
            c = RatFunc.const(field(c), field, nt)
        return cls({j: c}, tprec, field, nt)

    def _new(self, coeffs, tprec):
        return CompletedElement(coeffs, tprec, self.field, self.nt, self.budget)

    def _k(self, c) -> RatFunc:
        return RatFunc.const(self.field(c), self.field, self.nt)

    # -- inspection
    def is_zero(self) -> bool:
        return not self.coeffs

    def ord(self) -> OrderValue:
        if not self.coeffs:
            return OrderValue.at_least(self.tprec)
        return OrderValue(min(self.coeffs))

    def ord_value(self) -> int:
        return min(self.coeffs, default=self.tprec)

    @property
    def in_ring(self) -> bool:
        """True when the element lies in ``K[[T_N]]`` (lowest exponent >= 0)."""
        return self.ord_value() >= 0

    def coefficient(self, j: int) -> RatFunc:
        if j >= self.tprec:
            raise SeriesError(f"coefficient of T^{j} is beyond precision {self.tprec}")
        return self.coeffs.get(j) or RatFunc.const(0, self.field, self.nt)

    def truncate(self, tprec: int) -> "CompletedElement":
        if tprec >= self.tprec:
            return self
        return self._new(self.coeffs, tprec)

    def leading_coefficient(self) -> RatFunc:
        o = self.ord()
        if not o.exact:
            raise SeriesError("leading coefficient of a truncated zero")
        return self.coeffs[o.value]

    # -- arithmetic
    def _check(self, other):
        if not isinstance(other, CompletedElement):
            raise TypeError(f"expected CompletedElement, got {type(other).__name__}")
        if other.field != self.field or other.nt != self.nt:
            raise SeriesError("mismatched completed rings")

    def _lift(self, other):
        if isinstance(other, CompletedElement):
            self._check(other)
            return other
        if isinstance(other, RatFunc):
            return CompletedElement({0: other}, self.tprec, self.field, self.nt, self.budget)
        return CompletedElement({0: self._k(other)}, self.tprec, self.field, self.nt, self.budget)

    def __add__(self, other):
        other = self._lift(other)
        p = min(self.tprec, other.tprec)
        out = {j: c for j, c in self.coeffs.items() if j < p}
        for j, c in other.coeffs.items():
            if j < p:
                out[j] = out[j] + c if j in out else c
        return self._new(out, p)

    __radd__ = __add__

    def __neg__(self):
        return self._new({j: -c for j, c in self.coeffs.items()}, self.tprec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, RatFunc)):
            c = other if isinstance(other, RatFunc) else self._k(other)
            if c.is_zero():
                return self._new({}, self.tprec)
            return self._new({j: v * c for j, v in self.coeffs.items()}, self.tprec)
        self._check(other)
        p = min(self.tprec + other.ord_value(), other.tprec + self.ord_value())
        out: Dict[int, RatFunc] = {}
        for j1, c1 in self.coeffs.items():
            for j2, c2 in other.coeffs.items():
                j = j1 + j2
                if j < p:
                    out[j] = out[j] + c1 * c2 if j in out else c1 * c2
        return self._new(out, p)

    __rmul__ = __mul__

    def shift(self, m: int) -> "CompletedElement":
        """Multiply by ``T_N^m`` (``m`` may be negative)."""
        return self._new({j + m: c for j, c in self.coeffs.items()}, self.tprec + m)

    def inverse(self) -> "CompletedElement":
        o = self.ord()
        if not o.exact:
            raise ZeroDivisionError("division by a truncated zero in the completion")
        v = o.value
        rel = self.tprec - v
        b0inv = self.coeffs[v].inverse()
        w = [b0inv]
        for n in range(1, rel):
            acc = None
            for k in range(1, n + 1):
                bk = self.coeffs.get(v + k)
                if bk is not None and not w[n - k].is_zero():
                    term = bk * w[n - k]
                    acc = term if acc is None else acc + term
            w.append(-(acc * b0inv) if acc is not None else RatFunc.const(0, self.field, self.nt))
        return self._new({n - v: c for n, c in enumerate(w)}, rel - v)

    def __truediv__(self, other):
        other = self._lift(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CompletedElement.const(1, self.tprec, self.field, self.nt)
        result.budget = self.budget
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, CompletedElement):
            return NotImplemented
        return (self.tprec, self.field, self.nt) == (other.tprec, other.field, other.nt) and \
            self.coeffs.keys() == other.coeffs.keys() and \
            all(self.coeffs[j] == other.coeffs[j] for j in self.coeffs)

    def agrees(self, other, tprec: Optional[int] = None) -> bool:
        """Equal below ``tprec`` (default: the common precision)."""
        d = self - self._lift(other)
        p = d.tprec if tprec is None else tprec
        return d.ord_value() >= p

    def __str__(self):
        if not self.coeffs:
            return f"0 @{self.tprec}"
        parts = []
        for j in sorted(self.coeffs):
            c = str(self.coeffs[j])
            if j == 0:
                parts.append(c)
                continue
            tn = "TN" if j == 1 else f"TN^{j}"
            if c == "1":
                parts.append(tn)
            elif c == "-1":
                parts.append(f"-{tn}")
            else:
                parts.append(f"({c})*{tn}")
        s = " + ".join(parts).replace("+ -", "- ")
        return f"{s} @{self.tprec}"

    def __repr__(self):
        return f"CompletedElement({self})"


def embed_blowup(s: Series, budget: int = DEFAULT_DEGREE_BUDGET) -> CompletedElement:
    """Substitute ``T_i = t_i T_N`` for ``i < N``; order and precision are kept."""
    nt = s.nvars - 1
    F = s.field
    pieces: Dict[int, dict] = {}
    for e, c in s.coeffs.items():
        pieces.setdefault(sum(e), {})[e[:-1]] = c
    one = pconst(1, nt)
    coeffs = {m: RatFunc(p, one, F, nt) for m, p in pieces.items()}
    return CompletedElement(coeffs, s.prec, F, nt, budget)


def ord_hat(e: CompletedElement) -> OrderValue:
    return e.ord()


def hat_arith(a: CompletedElement, b: CompletedElement, op: str) -> CompletedElement:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "x", "×"):
        return a * b
    if op in ("/", "÷"):
        return a / b
    raise ValueError(f"unsupported operation {op!r}")


@dataclass(frozen=True)
class SeriesFraction:
    """``x/y`` with ``x, y`` in ``O_N``: an element of the fraction field."""

    num: Series
    den: Series

    def __post_init__(self):
        if self.den.is_zero():
            raise SeriesError("denominator indistinguishable from 0 at this precision")

    @property
    def in_valuation_ring(self) -> bool:
        """Membership in the valuation ring dominating ``O_N``: ord(x) >= ord(y)."""
        return self.num.ord_value() >= self.den.ord().value

    def embed(self) -> CompletedElement:
        return embed_blowup(self.num) / embed_blowup(self.den)


def distance(z: CompletedElement, x: Series, y: Series) -> OrderValue:
    """``ord(z - x/y)`` in the completion: minus the log of ``|z - x/y|``."""
    if y.is_zero():
        raise SeriesError("denominator indistinguishable from 0 at this precision")
    diff = z - embed_blowup(x, z.budget) / embed_blowup(y, z.budget)
    return diff.ord()


def distance_via_product(z: CompletedElement, x: Series, y: Series) -> OrderValue:
    """Same value as :func:`distance`, computed as ``ord(y z - x) - ord(y)``.

    Avoids inverting ``y``; used by the scans.
    """
    oy = y.ord().require_exact()
    d = (embed_blowup(y, z.budget) * z - embed_blowup(x, z.budget)).ord()
    return OrderValue(d.value - oy, d.exact)
