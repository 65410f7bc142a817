"""Truncated power series in ``k[[T1, ..., TN]]`` and their m-adic order.

A :class:`Series` is a class modulo ``m^prec``: the stored terms all have total
degree below ``prec`` and nothing is known above it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Dict, Iterator, List, Optional

from .fields import (
    BaseField,
    Exp,
    Poly,
    grlex,
    homogeneous_part,
    padd,
    pdivexact,
    pmul,
    pneg,
    poly_str,
    pscale,
    psub,
    ptrunc,
)


class SeriesError(ArithmeticError):
    pass


@dataclass(frozen=True)
class OrderValue:
    """Either an exact order or a lower bound coming from truncation."""

    value: int
    exact: bool = True

    @classmethod
    def at_least(cls, bound: int) -> "OrderValue":
        return cls(bound, False)

    @property
    def is_exact(self) -> bool:
        return self.exact

    def require_exact(self) -> int:
        if not self.exact:
            raise SeriesError(f"order is only known to be >= {self.value}")
        return self.value

    def __add__(self, other):
        if isinstance(other, int):
            return OrderValue(self.value + other, self.exact)
        return OrderValue(self.value + other.value, self.exact and other.exact)

    __radd__ = __add__

    def __str__(self):
        return str(self.value) if self.exact else f">={self.value}"

    def to_json(self):
        return self.value if self.exact else {"at_least": self.value}


def monomials(nvars: int, degree: int) -> List[Exp]:
    """All exponent vectors of the given total degree, grlex-descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grlex, reverse=True)
    return out


def monomials_below(nvars: int, prec: int) -> List[Exp]:
    return [e for d in range(prec) for e in monomials(nvars, d)]


class Series:
    __slots__ = ("nvars", "field", "coeffs", "prec")

    def __init__(self, coeffs: Poly, prec: int, field: BaseField, nvars: int, *, check=True):
        if prec < 0:
            raise SeriesError("precision must be >= 0")
        if check:
            coeffs = {e: field.reduce(c) for e, c in coeffs.items() if sum(e) < prec}
            coeffs = {e: c for e, c in coeffs.items() if c}
            for e in coeffs:
                if len(e) != nvars or min(e) < 0:
                    raise SeriesError(f"bad exponent {e} for {nvars} variables")
        self.nvars = nvars
        self.field = field
        self.coeffs = coeffs
        self.prec = prec

    # -- constructors
    @classmethod
    def zero(cls, prec, field, nvars):
        return cls({}, prec, field, nvars, check=False)

    @classmethod
    def const(cls, c, prec, field, nvars):
        return cls({(0,) * nvars: field(c)}, prec, field, nvars)

    @classmethod
    def var(cls, i, prec, field, nvars):
        """The variable ``T_{i+1}`` (0-based index)."""
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, prec, field, nvars)

    @classmethod
    def monomial(cls, exps, prec, field, nvars, c=1):
        return cls({tuple(exps): c}, prec, field, nvars)

    # -- basics
    def _check(self, other: "Series"):
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if other.nvars != self.nvars or other.field != self.field:
            raise SeriesError("mismatched number of variables or field")

    def is_zero(self) -> bool:
        """True when the series vanishes at its precision (truncated zero)."""
        return not self.coeffs

    def ord(self) -> OrderValue:
        if not self.coeffs:
            return OrderValue.at_least(self.prec)
        return OrderValue(min(sum(e) for e in self.coeffs))

    def ord_value(self) -> int:
        """Order, or the precision for a truncated zero."""
        return min((sum(e) for e in self.coeffs), default=self.prec)

    def degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=-1)

    def homogeneous(self, degree: int) -> Poly:
        return homogeneous_part(self.coeffs, degree)

    def initial_form(self) -> "Series":
        o = self.ord()
        if not o.exact:
            raise SeriesError("initial form of a truncated zero")
        return Series(self.homogeneous(o.value), self.prec, self.field, self.nvars, check=False)

    def truncate(self, prec: int) -> "Series":
        """Lower the precision (raising it would invent information)."""
        if prec >= self.prec:
            return self
        return Series(ptrunc(self.coeffs, prec), prec, self.field, self.nvars, check=False)

    def with_prec(self, prec: int) -> "Series":
        """Reinterpret the stored terms at a new precision.

        Only meaningful when the series is known to be a polynomial (exact);
        lowering precision is always safe.
        """
        return Series(self.coeffs, prec, self.field, self.nvars)

    # -- arithmetic
    def __add__(self, other):
        if isinstance(other, int):
            other = Series.const(other, self.prec, self.field, self.nvars)
        self._check(other)
        p = min(self.prec, other.prec)
        return Series(ptrunc(padd(self.coeffs, other.coeffs, self.field), p), p,
                      self.field, self.nvars, check=False)

    __radd__ = __add__

    def __neg__(self):
        return Series(pneg(self.coeffs, self.field), self.prec, self.field, self.nvars, check=False)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Series.const(other, self.prec, self.field, self.nvars)
        self._check(other)
        p = min(self.prec, other.prec)
        return Series(ptrunc(psub(self.coeffs, other.coeffs, self.field), p), p,
                      self.field, self.nvars, check=False)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = min(self.prec + other.ord_value(), other.prec + self.ord_value())
        return Series(pmul(self.coeffs, other.coeffs, self.field, p), p,
                      self.field, self.nvars, check=False)

    __rmul__ = __mul__

    def scale(self, c) -> "Series":
        c = self.field(c) if not isinstance(c, int) or self.field.p else self.field.reduce(c)
        return Series(pscale(self.coeffs, c, self.field), self.prec, self.field, self.nvars,
                      check=False)

    def __pow__(self, n: int):
        if n < 0:
            raise SeriesError("negative power of a series")
        result = Series.const(1, self.prec, self.field, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.nvars, self.field, self.prec, self.coeffs) == \
            (other.nvars, other.field, other.prec, other.coeffs)

    def __hash__(self):
        return hash((self.nvars, self.field, self.prec, frozenset(self.coeffs.items())))

    def congruent(self, other: "Series", prec: Optional[int] = None) -> bool:
        """Equal modulo ``m^prec`` (default: the common precision)."""
        self._check(other)
        p = min(self.prec, other.prec) if prec is None else prec
        return (self - other).truncate(p).is_zero()

    def names(self):
        return [f"T{i + 1}" for i in range(self.nvars)]

    def __str__(self):
        return f"{poly_str(self.coeffs, self.names(), ascending=True)} @{self.prec}"

    def __repr__(self):
        return f"Series({self}, {self.field})"


class NotDivisible:
    """Result of :func:`exact_divide` when no quotient exists."""

    __slots__ = ("degree",)

    def __init__(self, degree: int):
        self.degree = degree

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NotDivisible(degree={self.degree})"


def ord(s: Series) -> OrderValue:  # noqa: A001 - mirrors the valuation's name
    return s.ord()


def initial_form(s: Series) -> Series:
    return s.initial_form()


def arith(a: Series, b: Series, op: str) -> Series:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "x", "×"):
        return a * b
    raise ValueError(f"unsupported operation {op!r}")


def exact_divide(x: Series, y: Series):
    """Solve ``x = q*y`` degree by degree.

    Returns ``q`` at precision ``min(prec_x, prec_y) - ord(y)``, or
    :class:`NotDivisible` carrying the first degree of ``x`` that cannot be
    matched.
    """
    x._check(y)
    oy = y.ord()
    if not oy.exact:
        raise SeriesError("divisor indistinguishable from 0 at this precision")
    v = oy.value
    top = min(x.prec, y.prec)
    F = x.field
    for d in range(min(v, top)):
        if x.homogeneous(d):
            return NotDivisible(d)
    if top <= v:
        # nothing of the quotient is determined at this precision
        return Series.zero(0, F, x.nvars)
    y0 = y.homogeneous(v)
    ypieces = {d: y.homogeneous(d) for d in range(v, top)}
    q: Poly = {}
    qpieces: Dict[int, Poly] = {}
    for k in range(top - v):
        rhs = x.homogeneous(k + v)
        for j, qj in qpieces.items():
            yk = ypieces.get(k + v - j)
            if yk and qj:
                rhs = psub(rhs, pmul(qj, yk, F), F)
        qk = pdivexact(rhs, y0, F)
        if qk is None:
            return NotDivisible(k + v)
        qpieces[k] = qk
        q.update(qk)
    return Series(q, top - v, F, x.nvars, check=False)


def random_series(nvars: int, prec: int, field: BaseField, density: float = 0.5,
                  seed=None, height: int = 1) -> Series:
    """Reproducible pseudorandom series.

    Each monomial of degree < ``prec`` is present with probability ``density``;
    present coefficients are uniform nonzero field elements (over Q: nonzero
    integers of absolute value <= ``height``).
    """
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    coeffs = {}
    for e in monomials_below(nvars, prec):
        if density == 1 or rng.random() < density:
            if field.p is None:
                c = rng.randint(1, height) * rng.choice((1, -1))
            else:
                c = rng.randrange(1, field.p)
            coeffs[e] = c
    return Series(coeffs, prec, field, nvars)


def coefficient_space_size(nvars: int, prec: int, q: int) -> int:
    """Number of truncated series with ``q`` choices per coefficient."""
    return q ** math.comb(prec + nvars - 1, nvars)


def iter_series(nvars: int, prec: int, values, field: BaseField, min_ord: int = 0) -> Iterator[Series]:
    """Every polynomial of degree < prec with coefficients drawn from ``values``."""
    from itertools import product

    monos = [e for e in monomials_below(nvars, prec) if sum(e) >= min_ord]
    for combo in product(values, repeat=len(monos)):
        yield Series({e: c for e, c in zip(monos, combo) if c}, prec, field, nvars,
                     check=False)
