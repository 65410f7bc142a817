"""Exact coefficient arithmetic.

Two layers live here:

* :class:`BaseField`, the ground field ``k`` (the rationals, or ``F_p``);
* sparse multivariate polynomials over ``k`` (plain ``dict`` objects mapping
  exponent tuples to nonzero coefficients) and :class:`RatFunc`, the field
  ``K = k(t_1, ..., t_{N-1})`` that carries the coefficients of the completed
  valuation ring.

Polynomial helpers take the field explicitly and never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

Exp = Tuple[int, ...]
Poly = Dict[Exp, object]

# RatFunc canonicalisation runs a real GCD only up to this many variables.
GCD_MAX_VARS = 2


class FieldError(ArithmeticError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class BaseField:
    """The ground field: ``BaseField()`` is Q, ``BaseField(p)`` is F_p.

    Rational elements are ints or :class:`fractions.Fraction` (integral values
    are always stored as ``int``); F_p elements are ints in ``range(p)``.
    """

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "BaseField":
        s = text.strip().lower()
        if s in ("q", "qq", "rationals", "rational"):
            return cls()
        for prefix in ("gf", "fp", "f"):
            if s.startswith(prefix) and s[len(prefix):].lstrip(":(").rstrip(")").isdigit():
                return cls(int(s[len(prefix):].lstrip(":(").rstrip(")")))
        raise FieldError(f"unknown field {text!r} (use q, f2, f3, gf7, ...)")

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def __str__(self):
        return self.name

    def __call__(self, value) -> object:
        """Coerce an int / Fraction / str into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p is None:
            return self.reduce(Fraction(value))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"{value} has no image in F{self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def reduce(self, c):
        if self.p is not None:
            return c % self.p
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def inv(self, c):
        if c == 0:
            raise ZeroDivisionError("division by zero in k")
        if self.p is not None:
            return pow(c, -1, self.p)
        if isinstance(c, int):
            return 1 if c == 1 else self.reduce(Fraction(1, c))
        return self.reduce(1 / c)

    def div(self, a, b):
        return self.reduce(a * self.inv(b))

    def elements(self) -> Iterable[int]:
        if self.p is None:
            raise FieldError("Q is infinite")
        return range(self.p)

    def to_fraction(self, c) -> Fraction:
        return Fraction(c)


# ---------------------------------------------------------------------------
# sparse polynomials


def grlex(e: Exp):
    """Sort key for graded lexicographic order with t1 > t2 > ..."""
    return (sum(e), e)


def padd(f: Poly, g: Poly, F: BaseField) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = dict(f)
    for e, c in g.items():
        v = F.reduce(out.get(e, 0) + c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def pneg(f: Poly, F: BaseField) -> Poly:
    return {e: F.reduce(-c) for e, c in f.items()}


def psub(f: Poly, g: Poly, F: BaseField) -> Poly:
    out = dict(f)
    for e, c in g.items():
        v = F.reduce(out.get(e, 0) - c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def pscale(f: Poly, c, F: BaseField) -> Poly:
    if not c:
        return {}
    return {e: F.reduce(v * c) for e, v in f.items()}


def pshift(f: Poly, m: Exp) -> Poly:
    return {tuple(a + b for a, b in zip(e, m)): c for e, c in f.items()}


def pmul(f: Poly, g: Poly, F: BaseField, limit: Optional[int] = None) -> Poly:
    """Product; with ``limit``, terms of total degree >= limit are dropped."""
    out: Poly = {}
    if not f or not g:
        return out
    if limit is None:
        for e1, c1 in f.items():
            for e2, c2 in g.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
    else:
        gd = [(e2, c2, sum(e2)) for e2, c2 in g.items()]
        for e1, c1 in f.items():
            d1 = sum(e1)
            if d1 >= limit:
                continue
            for e2, c2, d2 in gd:
                if d1 + d2 < limit:
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
    red = F.reduce
    return {e: v for e, v in ((e, red(v)) for e, v in out.items()) if v}


def ppow(f: Poly, n: int, F: BaseField, nvars: int, limit: Optional[int] = None) -> Poly:
    result = {(0,) * nvars: 1}
    base = f
    while n:
        if n & 1:
            result = pmul(result, base, F, limit)
        n >>= 1
        if n:
            base = pmul(base, base, F, limit)
    return result


def pdeg(f: Poly) -> int:
    return max((sum(e) for e in f), default=-1)


def pord(f: Poly) -> Optional[int]:
    return min((sum(e) for e in f), default=None)


def ptrunc(f: Poly, limit: int) -> Poly:
    return {e: c for e, c in f.items() if sum(e) < limit}


def homogeneous_part(f: Poly, degree: int) -> Poly:
    return {e: c for e, c in f.items() if sum(e) == degree}


def leading(f: Poly) -> Tuple[Exp, object]:
    e = max(f, key=grlex)
    return e, f[e]


def pmonic(f: Poly, F: BaseField) -> Poly:
    if not f:
        return f
    _, lc = leading(f)
    if lc == 1:
        return f
    return pscale(f, F.inv(lc), F)


def pconst(c, nvars: int) -> Poly:
    return {(0,) * nvars: c} if c else {}


def is_constant(f: Poly) -> bool:
    return not f or (len(f) == 1 and not any(next(iter(f))))


def pdivexact(f: Poly, g: Poly, F: BaseField) -> Optional[Poly]:
    """Return ``f / g`` if ``g`` divides ``f`` exactly, else ``None``.

    A single divisor is a Groebner basis of its ideal, so the plain division
    algorithm leaves remainder zero exactly when ``g | f``.
    """
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return {}
    lg, cg = leading(g)
    icg = F.inv(cg)
    r = dict(f)
    q: Poly = {}
    while r:
        lr, cr = leading(r)
        m = tuple(a - b for a, b in zip(lr, lg))
        if min(m) < 0:
            return None
        c = F.reduce(cr * icg)
        q[m] = c
        r = psub(r, pscale(pshift(g, m), c, F), F)
    return q


# -- gcd ---------------------------------------------------------------------


def _udivmod(a: list, b: list, F: BaseField):
    """Univariate division on dense coefficient lists (index = degree)."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    ib = F.inv(b[-1])
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        c = F.reduce(a[-1] * ib)
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] = F.reduce(a[i + shift] - c * bc)
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _ugcd(f: Poly, g: Poly, F: BaseField) -> Poly:
    def dense(p):
        n = pdeg(p)
        out = [0] * (n + 1)
        for (e,), c in p.items():
            out[e] = c
        return out

    a, b = dense(f), dense(g)
    while b:
        _, r = _udivmod(a, b, F)
        a, b = b, r
    return pmonic({(i,): c for i, c in enumerate(a) if c}, F)


def _split(f: Poly) -> Dict[int, Poly]:
    out: Dict[int, Poly] = {}
    for e, c in f.items():
        out.setdefault(e[0], {})[e[1:]] = c
    return out


def _join(parts: Dict[int, Poly]) -> Poly:
    return {(i,) + e: c for i, part in parts.items() for e, c in part.items()}


def _content(parts: Dict[int, Poly], F: BaseField, nvars: int) -> Poly:
    g: Poly = {}
    for part in parts.values():
        g = _gcd(g, part, F, nvars - 1)
        if is_constant(g) and g:
            break
    return g


def _prem(A: Dict[int, Poly], B: Dict[int, Poly], F: BaseField) -> Dict[int, Poly]:
    db = max(B)
    lcb = B[db]
    A = dict(A)
    while A and max(A) >= db:
        da = max(A)
        lca = A[da]
        new = {i: pmul(c, lcb, F) for i, c in A.items()}
        for i, c in B.items():
            j = i + da - db
            new[j] = psub(new.get(j, {}), pmul(c, lca, F), F)
        A = {i: c for i, c in new.items() if c}
    return A


def _gcd(f: Poly, g: Poly, F: BaseField, nvars: int) -> Poly:
    if not f:
        return pmonic(g, F)
    if not g:
        return pmonic(f, F)
    if nvars == 0:
        return {(): 1}
    if nvars == 1:
        return _ugcd(f, g, F)
    A, B = _split(f), _split(g)
    ca, cb = _content(A, F, nvars), _content(B, F, nvars)
    c = _gcd(ca, cb, F, nvars - 1)
    A = {i: pdivexact(p, ca, F) for i, p in A.items()}
    B = {i: pdivexact(p, cb, F) for i, p in B.items()}
    if max(A) < max(B):
        A, B = B, A
    while B:
        R = _prem(A, B, F)
        if R:
            cr = _content(R, F, nvars)
            R = {i: pdivexact(p, cr, F) for i, p in R.items()}
        A, B = B, R
    if max(A) == 0:
        prim = pconst(1, nvars)
    else:
        ca = _content(A, F, nvars)
        prim = _join({i: pdivexact(p, ca, F) for i, p in A.items()})
    return pmonic(pmul(prim, {(0,) + e: v for e, v in c.items()}, F), F)


def pgcd(f: Poly, g: Poly, F: BaseField, nvars: int) -> Poly:
    """Monic (grlex) GCD of two polynomials in ``nvars`` variables."""
    return _gcd(f, g, F, nvars)


def poly_str(f: Poly, names, ascending: bool = False) -> str:
    if not f:
        return "0"
    out = []
    if ascending:
        order = sorted(f, key=lambda e: (sum(e), tuple(-a for a in e)))
    else:
        order = sorted(f, key=grlex, reverse=True)
    for e in order:
        c = f[e]
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
        )
        neg = isinstance(c, (int, Fraction)) and c < 0
        mag = -c if neg else c
        if not mono:
            term = str(mag)
        elif mag == 1:
            term = mono
        else:
            term = f"{mag}*{mono}"
        out.append(("- " if neg else "+ ") + term)
    s = " ".join(out)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """An element of ``k(t_1, ..., t_n)`` in canonical form.

    Canonical means: numerator and denominator coprime (for ``n <= 2``), the
    denominator monic for grlex with ``t1 > t2 > ...``, zero stored as ``0/1``.
    For more variables only the monic normalisation happens and equality
    falls back to cross-multiplication.
    """

    __slots__ = ("num", "den", "field", "nvars", "_hash")

    def __init__(self, num: Poly, den: Poly, field: BaseField, nvars: int):
        # trusted constructor; use ratfunc_normalize for arbitrary input
        self.num = num
        self.den = den
        self.field = field
        self.nvars = nvars
        self._hash = None

    # -- constructors
    @classmethod
    def const(cls, c, field: BaseField, nvars: int) -> "RatFunc":
        c = field.reduce(c)
        return cls(pconst(c, nvars), pconst(1, nvars), field, nvars)

    @classmethod
    def poly(cls, num: Poly, field: BaseField, nvars: int) -> "RatFunc":
        return cls(num, pconst(1, nvars), field, nvars)

    @classmethod
    def monomial(cls, c, exps: Exp, field: BaseField) -> "RatFunc":
        """``c * t^exps`` with possibly negative exponents."""
        n = len(exps)
        num = tuple(max(a, 0) for a in exps)
        den = tuple(max(-a, 0) for a in exps)
        c = field.reduce(c)
        if not c:
            return cls.const(0, field, n)
        return cls({num: c}, {den: 1}, field, n)

    # -- predicates
    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == self.den

    def __bool__(self):
        return bool(self.num)

    @property
    def degree(self) -> int:
        return max(pdeg(self.num), pdeg(self.den))

    def is_polynomial(self) -> bool:
        return is_constant(self.den)

    # -- arithmetic
    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.field != self.field or other.nvars != self.nvars:
                raise FieldError("mismatched rational function fields")
            return other
        return RatFunc.const(self.field(other), self.field, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return ratfunc_normalize(padd(self.num, other.num, F), self.den, F, self.nvars)
        num = padd(pmul(self.num, other.den, F), pmul(other.num, self.den, F), F)
        return ratfunc_normalize(num, pmul(self.den, other.den, F), F, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num, self.field), self.den, self.field, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.field
        if not self.num or not other.num:
            return RatFunc.const(0, F, self.nvars)
        if is_constant(self.den) and is_constant(other.den):
            return RatFunc(pmul(self.num, other.num, F), self.den, F, self.nvars)
        return ratfunc_normalize(
            pmul(self.num, other.num, F), pmul(self.den, other.den, F), F, self.nvars
        )

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("division by zero in K")
        return ratfunc_normalize(self.den, self.num, self.field, self.nvars)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFunc.const(1, self.field, self.nvars)
        for _ in range(n):
            out = out * self
        return out

    # -- comparison
    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = self._coerce(other)
            except (FieldError, TypeError, ValueError):
                return NotImplemented
        if self.nvars <= GCD_MAX_VARS:
            return self.num == other.num and self.den == other.den
        F = self.field
        return pmul(self.num, other.den, F) == pmul(other.num, self.den, F)

    def __hash__(self):
        if self.nvars > GCD_MAX_VARS:
            raise TypeError("RatFunc in more than 2 variables is unhashable")
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    def names(self):
        return [f"t{i + 1}" for i in range(self.nvars)]

    def __str__(self):
        names = self.names()
        n = poly_str(self.num, names)
        if is_constant(self.den):
            return n
        d = poly_str(self.den, names)
        if len(self.num) > 1 or "/" in n:
            n = f"({n})"
        if len(self.den) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


def ratfunc_normalize(num: Poly, den: Poly, field: BaseField, nvars: int) -> RatFunc:
    """Canonical form of ``num/den``; raises on a zero denominator."""
    if not den:
        raise ZeroDivisionError("division by zero in K")
    F = field
    if not num:
        return RatFunc.const(0, F, nvars)
    if is_constant(den):
        c = next(iter(den.values()))
        return RatFunc(num if c == 1 else pscale(num, F.inv(c), F), pconst(1, nvars), F, nvars)
    if len(den) == 1:
        # monomial denominator: the gcd is a monomial
        (de, dc), = den.items()
        common = tuple(min([d] + [e[i] for e in num]) for i, d in enumerate(de))
        if any(common):
            num = {tuple(a - b for a, b in zip(e, common)): c for e, c in num.items()}
            de = tuple(a - b for a, b in zip(de, common))
        inv = F.inv(dc)
        return RatFunc(pscale(num, inv, F) if dc != 1 else num, {de: 1}, F, nvars)
    if nvars <= GCD_MAX_VARS:
        g = pgcd(num, den, F, nvars)
        if not is_constant(g):
            num = pdivexact(num, g, F)
            den = pdivexact(den, g, F)
    _, lc = leading(den)
    if lc != 1:
        inv = F.inv(lc)
        num, den = pscale(num, inv, F), pscale(den, inv, F)
    if is_constant(den):
        return RatFunc(num, den, F, nvars)
    return RatFunc(num, den, F, nvars)
