"""Text syntax for field elements, series, completed elements and polynomials.

Grammar (``^`` and ``**`` both mean power, ``*`` may not be omitted)::

    series     := expr-in(T1..TN) [ "@" prec ]          1 + T1^2*T2 - 3*T2^3 @6
    ratfunc    := expr-in(t1..t{N-1})                    (t1^2+1)/(t1-1)
    completed  := sum of  ratfunc * TN^j  [ "@" tprec ]  (t1^2)*TN^2 + TN^3 @8
    poly in Z  := expr-in(Z, T1..TN)                     Z^2 - (T1^2 + T2^3)
    form       := homogeneous expr-in(X, Y, T1..TN)      X^2 - T1^3*Y^2
"""

from __future__ import annotations

import re
from tokenize import TokenError
from fractions import Fraction
from typing import Dict, Optional, Tuple

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .algebra import HomogForm, SeriesPoly
from .completion import CompletedElement
from .fields import BaseField, RatFunc, ratfunc_normalize
from .series import Series

_TRANSFORMS = standard_transformations + (convert_xor,)
_VAR = re.compile(r"\b([Tt])(\d+)\b")


class ParseError(ValueError):
    pass


def _split_prec(text: str) -> Tuple[str, Optional[int]]:
    if "@" in text:
        body, _, p = text.rpartition("@")
        try:
            return body.strip(), int(p)
        except ValueError:
            raise ParseError(f"bad precision annotation {p!r}") from None
    return text.strip(), None


def _sympify(text: str, names):
    syms = {n: sympy.Symbol(n) for n in names}
    try:
        expr = parse_expr(text, local_dict=syms, transformations=_TRANSFORMS, evaluate=True)
    except (SyntaxError, TypeError, sympy.SympifyError, TokenError) as exc:
        raise ParseError(f"cannot parse {text!r}: {exc}") from None
    stray = {str(s) for s in expr.free_symbols} - set(names)
    if stray:
        raise ParseError(f"unknown symbols {sorted(stray)} in {text!r}")
    return expr, [syms[n] for n in names]


def _coeff(c, F: BaseField):
    c = sympy.Rational(c)
    return F(Fraction(int(c.p), int(c.q)))


def _poly_dict(expr, gens, F: BaseField) -> Dict[tuple, object]:
    if not gens:
        if not expr.is_Rational:
            raise ParseError(f"{expr} is not a constant")
        c = _coeff(expr, F)
        return {(): c} if c else {}
    try:
        p = sympy.Poly(sympy.expand(expr), *gens)
    except sympy.PolynomialError as exc:
        raise ParseError(f"{expr} is not a polynomial: {exc}") from None
    out = {}
    for e, c in p.as_dict().items():
        if not c.is_Rational:
            raise ParseError(f"non-rational coefficient {c}")
        v = _coeff(c, F)
        if v:
            out[tuple(int(k) for k in e)] = v
    return out


def infer_nvars(*texts: str) -> int:
    idx = [int(m.group(2)) for t in texts for m in _VAR.finditer(t) if m.group(1) == "T"]
    return max(idx, default=1)


def parse_series(text: str, field: BaseField, nvars: Optional[int] = None,
                 prec: Optional[int] = None) -> Series:
    body, p = _split_prec(text)
    if nvars is None:
        nvars = infer_nvars(body)
    if p is None:
        p = prec
    if p is None:
        raise ParseError(f"series {text!r} needs a precision (suffix '@prec')")
    names = [f"T{i + 1}" for i in range(nvars)]
    expr, gens = _sympify(body, names)
    return Series(_poly_dict(expr, gens, field), p, field, nvars)


def parse_ratfunc(text: str, field: BaseField, nt: int) -> RatFunc:
    names = [f"t{i + 1}" for i in range(nt)]
    expr, gens = _sympify(text, names)
    num, den = sympy.fraction(sympy.together(expr))
    n = _poly_dict(num, gens, field)
    d = _poly_dict(den, gens, field)
    if not gens:
        n = n or {}
        d = d or {}
    if not d:
        raise ParseError(f"zero denominator in {text!r}")
    return ratfunc_normalize(n, d, field, nt)


def parse_completed(text: str, field: BaseField, nt: int,
                    tprec: Optional[int] = None) -> CompletedElement:
    body, p = _split_prec(text)
    if p is None:
        p = tprec
    if p is None:
        raise ParseError(f"completed element {text!r} needs '@tprec'")
    names = [f"t{i + 1}" for i in range(nt)] + ["TN"]
    expr, gens = _sympify(body, names)
    TN = gens[-1]
    expr = sympy.expand(expr)
    coeffs: Dict[int, RatFunc] = {}
    for term in sympy.Add.make_args(expr):
        j = 0
        rest = sympy.Integer(1)
        for f in sympy.Mul.make_args(term):
            b, e = f.as_base_exp()
            if b == TN:
                if not e.is_Integer:
                    raise ParseError(f"non-integral power of TN in {text!r}")
                j += int(e)
            else:
                rest *= f
        c = parse_ratfunc(str(rest), field, nt)
        coeffs[j] = coeffs[j] + c if j in coeffs else c
    return CompletedElement(coeffs, p, field, nt)


def parse_poly(text: str, field: BaseField, nvars: Optional[int] = None,
               prec: int = 16):
    """A polynomial in ``Z`` (-> :class:`SeriesPoly`) or a form in ``X, Y`` (-> :class:`HomogForm`)."""
    body, p = _split_prec(text)
    prec = p or prec
    if nvars is None:
        nvars = infer_nvars(body)
    tn = [f"T{i + 1}" for i in range(nvars)]
    has_xy = re.search(r"\b[XY]\b", body) is not None
    has_z = re.search(r"\bZ\b", body) is not None
    if has_xy and has_z:
        raise ParseError("mix of Z and X/Y in one polynomial")
    if not has_xy and not has_z:
        raise ParseError(f"{text!r} mentions neither Z nor X, Y")
    outer = ["X", "Y"] if has_xy else ["Z"]
    expr, gens = _sympify(body, outer + tn)
    try:
        P = sympy.Poly(sympy.expand(expr), *gens[: len(outer)])
    except sympy.PolynomialError as exc:
        raise ParseError(str(exc)) from None
    tgens = gens[len(outer):]
    terms = P.as_dict()
    if has_z:
        d = max(e[0] for e in terms)
        coeffs = [Series.zero(prec, field, nvars) for _ in range(d + 1)]
        for (i,), c in terms.items():
            coeffs[i] = Series(_poly_dict(c, tgens, field), prec, field, nvars)
        return SeriesPoly(coeffs)
    degs = {a + b for a, b in terms}
    if len(degs) != 1:
        raise ParseError(f"{text!r} is not homogeneous in X, Y")
    d = degs.pop()
    coeffs = [Series.zero(prec, field, nvars) for _ in range(d + 1)]
    for (a, _), c in terms.items():
        coeffs[a] = Series(_poly_dict(c, tgens, field), prec, field, nvars)
    return HomogForm(coeffs)
