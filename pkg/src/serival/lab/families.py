"""Approximant families for ``dioph --family``.

A family is any callable ``f(**params)`` returning a mapping with ``poly``,
``root`` and ``approximants``; see :func:`serival.lab.scans.family_scan`.
"""

from __future__ import annotations

from ..algebra import AlgebraError, as_fraction, root_split
from ..fields import BaseField, RatFunc
from ..completion import CompletedElement
from ..parsing import parse_poly


def binomial_root(p: int = 2, k: int = 6, field: str = "q"):
    """Truncations of the root of ``Z^p - (T1^p + T2^(p+1))`` near ``T1``.

    The ``j``-th approximant keeps the first ``j + 1`` terms of the root in
    ``T2`` and is written as a fraction ``u/v`` of polynomials.
    """
    F = BaseField.parse(field)
    Q = parse_poly(f"Z^{p} - (T1^{p} + T2^{p + 1})", F, nvars=2, prec=8 * (k + p))
    tprec = 2 * k + 4
    seed = CompletedElement.monomial(RatFunc.monomial(1, (1,), F), 1, tprec, F, 1)
    rs = root_split(Q, tprec, seeds=[seed])
    if not rs.roots:
        raise AlgebraError("the seed t1*TN does not lift over this field")
    z = rs.roots[0][0]
    approx = []
    for j in range(1, k + 1):
        frac = as_fraction(z.truncate(j + 1), 2)
        if frac is not None:
            u, v = frac    # polynomials, so exact at any precision
            approx.append((u.with_prec(4 * tprec), v.with_prec(4 * tprec)))
    return {"poly": Q, "root": z, "approximants": approx}
