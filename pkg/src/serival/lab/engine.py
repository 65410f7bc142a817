"""Enumeration of pairs ``(x, y)`` of truncated series and the ord-P bucket tables.

The universe is all pairs of polynomials of degree ``< prec`` whose
coefficients come from a finite set (all of ``F_p``, or ``{-h..h}`` over Q).
``ord P(x, y)`` is computed exactly (the polynomials are not truncated).

The pruned engine walks the pairs by homogeneous pieces (the degree-``D``
piece of ``x``, then of ``y``) and stops as soon as ``ord P`` is forced for a
whole subtree:

* Taylor bound: with ``x = x_k + X'``, ``y = y_k + Y'`` and
  ``ord X' >= e_x``, ``ord Y' >= e_y``, every term of
  ``P(x,y) - P(x_k,y_k)`` is a Hasse derivative ``H_{s,t}(x_k, y_k) X'^s Y'^t``
  of order at least ``ord a_i + (i-s) ord x_k + (d-i-t) ord y_k + s e_x + t e_y``.
  If ``P(x_k, y_k)`` has a term below that bound, its order is the order of
  every completion.
* Linear step: if the first derivative in the variable being extended is the
  only term that can reach the next degree, at most one choice of the new
  piece (an exact homogeneous quotient) avoids fixing the order.

Subtrees are counted, not visited, so the exhaustive scan at ``prec = 6`` over
``F_2`` (``2^42`` pairs) finishes in seconds.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..fields import BaseField, Poly, homogeneous_part, padd, pdivexact, pmul, pneg, pord
from ..series import monomials

log = logging.getLogger(__name__)

INF = float("inf")


class BudgetExceeded(RuntimeError):
    pass


# -- universe ------------------------------------------------------------------


@dataclass(frozen=True)
class Universe:
    field: BaseField
    nvars: int
    prec: int
    values: Tuple

    @property
    def q(self) -> int:
        return len(self.values)

    def monos(self, degree: int) -> List[tuple]:
        return monomials(self.nvars, degree)

    def free_from(self, degree: Optional[int]) -> int:
        """Number of coefficients of degree ``>= degree`` (``None``: none left)."""
        if degree is None or degree >= self.prec:
            return 0
        return sum(comb(k + self.nvars - 1, self.nvars - 1) for k in range(degree, self.prec))

    def size(self) -> int:
        return self.q ** self.free_from(0)

    def pieces(self, degree: int) -> Iterator[Poly]:
        ms = self.monos(degree)
        for combo in product(self.values, repeat=len(ms)):
            yield {e: c for e, c in zip(ms, combo) if c}

    def polys(self) -> Iterator[Poly]:
        ms = [e for d in range(self.prec) for e in self.monos(d)]
        for combo in product(self.values, repeat=len(ms)):
            yield {e: c for e, c in zip(ms, combo) if c}

    def random_poly(self, rng: random.Random, min_ord: int = 0, exact_ord: Optional[int] = None) -> Poly:
        while True:
            out = {}
            for d in range(min_ord if exact_ord is None else exact_ord, self.prec):
                for e in self.monos(d):
                    c = rng.choice(self.values)
                    if c:
                        out[e] = c
            if exact_ord is None or homogeneous_part(out, exact_ord):
                return out

    def in_box(self, piece: Poly) -> bool:
        vals = set(self.values)
        return all(c in vals for c in piece.values())


def canonical_key(x: Poly, y: Poly):
    return (tuple(sorted(x.items())), tuple(sorted(y.items())))


# -- bucket tables ---------------------------------------------------------------


@dataclass
class Entry:
    value: int
    x: Poly
    y: Poly
    count: int = 0

    def better_than(self, other: "Entry") -> bool:
        if self.value != other.value:
            return self.value > other.value
        return canonical_key(self.x, self.y) < canonical_key(other.x, other.y)


@dataclass
class BucketTable:
    """Bucket key -> max value with a witness; merge is a max-reduction."""

    entries: Dict[int, Entry] = field(default_factory=dict)
    solutions: int = 0        # pairs with P(x, y) = 0 other than (0, 0)
    origin: int = 0           # the pair (0, 0)
    nodes: int = 0

    def add(self, key: int, value: int, x: Poly, y: Poly, count: int = 1):
        cur = self.entries.get(key)
        new = Entry(value, x, y, count)
        if cur is None:
            self.entries[key] = new
            return
        total = cur.count + count
        if new.better_than(cur):
            new.count = total
            self.entries[key] = new
        else:
            cur.count = total

    def merge(self, other: "BucketTable") -> "BucketTable":
        for k, e in other.entries.items():
            self.add(k, e.value, e.x, e.y, e.count)
        self.solutions += other.solutions
        self.origin += other.origin
        self.nodes += other.nodes
        return self

    def total(self) -> int:
        return sum(e.count for e in self.entries.values()) + self.solutions + self.origin

    def maxima(self) -> Dict[int, int]:
        return {k: e.value for k, e in sorted(self.entries.items())}


# -- the form P ------------------------------------------------------------------


class FormEvaluator:
    """Exact evaluation of ``P(X,Y) = sum a_i X^i Y^(d-i)`` and its Hasse derivatives."""

    def __init__(self, coeffs: Sequence[Poly], F: BaseField, nvars: int):
        self.a = [dict(c) for c in coeffs]
        self.d = len(self.a) - 1
        self.F = F
        self.nvars = nvars
        self.oa = [pord(c) for c in self.a]
        p = F.characteristic

        def nz(n):
            return n % p != 0 if p else n != 0

        # (i, s, t) with a_i != 0 and binom(i,s) binom(d-i,t) != 0 in k
        self.terms = [
            (i, s, t)
            for i in range(self.d + 1) if self.a[i]
            for s in range(i + 1) for t in range(self.d - i + 1)
            if (s or t) and nz(comb(i, s) * comb(self.d - i, t))
        ]

    def _powers(self, f: Poly, n: int) -> List[Poly]:
        one = {(0,) * self.nvars: 1}
        out = [one]
        for _ in range(n):
            out.append(pmul(out[-1], f, self.F))
        return out

    def value(self, x: Poly, y: Poly) -> Poly:
        xp, yp = self._powers(x, self.d), self._powers(y, self.d)
        total: Poly = {}
        for i, a in enumerate(self.a):
            if a:
                total = padd(total, pmul(pmul(a, xp[i], self.F), yp[self.d - i], self.F), self.F)
        return total

    def hasse(self, x: Poly, y: Poly, s: int, t: int) -> Poly:
        xp, yp = self._powers(x, self.d), self._powers(y, self.d)
        total: Poly = {}
        for i, a in enumerate(self.a):
            if not a or i < s or self.d - i < t:
                continue
            c = comb(i, s) * comb(self.d - i, t)
            if self.F.reduce(c) == 0:
                continue
            term = pmul(pmul(a, xp[i - s], self.F), yp[self.d - i - t], self.F)
            total = padd(total, {e: self.F.reduce(v * c) for e, v in term.items()}, self.F)
        return total

    def bound(self, ox, oy, ex, ey, skip=(), linear=None) -> float:
        """Lower bound for ``ord(P(x,y) - P(x_k,y_k))``.

        ``ox``/``oy`` are the orders of the known parts (``None`` when zero),
        ``ex``/``ey`` the least degree still free (``None`` when nothing is).
        ``skip`` lists ``(s, t)`` terms to leave out; ``linear`` maps
        ``(s, t)`` to the exact order of that Hasse derivative.
        """
        best = INF
        for i, s, t in self.terms:
            if (s, t) in skip or (linear and (s, t) in linear):
                continue
            if (s and ex is None) or (t and ey is None):
                continue
            if (i - s and ox is None) or (self.d - i - t and oy is None):
                continue
            v = self.oa[i] + s * ex if s else self.oa[i]
            if t:
                v += t * ey
            if i - s:
                v += (i - s) * ox
            if self.d - i - t:
                v += (self.d - i - t) * oy
            best = min(best, v)
        if linear:
            for (s, t), o in linear.items():
                if (s, t) in skip or o is None:
                    continue
                e = ex if s else ey
                if e is not None:
                    best = min(best, o + e)
        return best


# -- pruned exhaustive engine -------------------------------------------------------


class PrunedScan:
    """Bucket by ``m = min(ord x, ord y)``; value ``max ord P(x, y)`` over ``P(x,y) != 0``."""

    def __init__(self, form: FormEvaluator, universe: Universe, node_budget: Optional[int] = None):
        self.P = form
        self.U = universe
        self.node_budget = node_budget

    # entry points
    def tasks(self) -> List[Poly]:
        """Top-level split: the constant term of ``x``."""
        return list(self.U.pieces(0)) if self.U.prec > 0 else []

    def run_task(self, x0: Poly) -> BucketTable:
        table = BucketTable()
        self._visit(0, 1, dict(x0), {}, table)
        return table

    def run(self) -> BucketTable:
        table = BucketTable()
        for t in self.tasks():
            table.merge(self.run_task(t))
        return table

    # recursion
    def _visit(self, D: int, stage: int, xk: Poly, yk: Poly, table: BucketTable):
        U, P = self.U, self.P
        table.nodes += 1
        if self.node_budget is not None and table.nodes > self.node_budget:
            raise BudgetExceeded(f"more than {self.node_budget} search nodes")
        ex = D if stage == 0 else D + 1
        ey = D
        ex = ex if ex < U.prec else None
        ey = ey if ey < U.prec else None
        free = U.free_from(ex) + U.free_from(ey)
        Pk = P.value(xk, yk)
        o = pord(Pk)
        o = INF if o is None else o
        if ex is None and ey is None:
            if o == INF:
                if xk or yk:
                    table.solutions += 1
                else:
                    table.origin += 1
            else:
                table.add(self._key(xk, yk), o, xk, yk)
            return
        if xk or yk:
            ox, oy = pord(xk), pord(yk)
            m = self._key(xk, yk)
            L = P.bound(ox, oy, ex, ey)
            if o < L:
                table.add(m, o, xk, yk, U.q ** free)
                return
            lin = {(1, 0): pord(P.hasse(xk, yk, 1, 0)) if ex is not None else None,
                   (0, 1): pord(P.hasse(xk, yk, 0, 1)) if ey is not None else None}
            L2 = P.bound(ox, oy, ex, ey, linear=lin)
            if o < L2:
                table.add(m, o, xk, yk, U.q ** free)
                return
            if self._linear_step(D, stage, xk, yk, Pk, o, ox, oy, ex, ey, m, free, table):
                return
        for piece in U.pieces(D):
            if stage == 0:
                self._visit(D, 1, padd(xk, piece, U.field), yk, table)
            else:
                self._visit(D + 1, 0, xk, padd(yk, piece, U.field), table)

    @staticmethod
    def _key(xk: Poly, yk: Poly) -> int:
        return min(o for o in (pord(xk), pord(yk)) if o is not None)

    def _linear_step(self, D, stage, xk, yk, Pk, o, ox, oy, ex, ey, m, free, table) -> bool:
        U, P, F = self.U, self.P, self.U.field
        st = (1, 0) if stage == 0 else (0, 1)
        c = P.hasse(xk, yk, *st)
        oc = pord(c)
        if oc is None:
            return False
        j0 = D + oc
        # the new piece has degree D; what is still free after it
        ex2 = ex if stage == 1 else (D + 1 if D + 1 < U.prec else None)
        ey2 = ey if stage == 0 else (D + 1 if D + 1 < U.prec else None)
        other = (0, 1) if stage == 0 else (1, 0)
        free_other = ey if stage == 0 else ex
        lin = {other: pord(P.hasse(xk, yk, *other)) if free_other is not None else None}
        rest = P.bound(ox, oy, ex, ey, skip=(st,), linear=lin)
        # same derivative against the still-free tail of the variable
        tail = ex2 if stage == 0 else ey2
        if tail is not None:
            rest = min(rest, oc + tail)
        if not j0 < rest or o < j0:
            return False
        target = homogeneous_part(Pk, j0)
        init_c = homogeneous_part(c, oc)
        star = pdivexact(pneg(target, F), init_c, F) if target else {}
        valid = star is not None and U.in_box(star)
        n_pieces = U.q ** len(U.monos(D))
        free_after = free - len(U.monos(D))
        others = n_pieces - (1 if valid else 0)
        if others:
            w = self._other_piece(D, star if valid else None)
            wx, wy = (padd(xk, w, F), yk) if stage == 0 else (xk, padd(yk, w, F))
            table.add(m, j0, wx, wy, others * U.q ** free_after)
        if valid:
            if stage == 0:
                self._visit(D, 1, padd(xk, star, F), yk, table)
            else:
                self._visit(D + 1, 0, xk, padd(yk, star, F), table)
        return True

    def _other_piece(self, D: int, star: Optional[Poly]) -> Poly:
        if star is None or star:
            return {}
        # star is the zero piece: the witness needs some nonzero piece
        e = self.U.monos(D)[0]
        c = next(v for v in self.U.values if v)
        return {e: c}


# -- explicit enumeration (oracle and small scans) ---------------------------------


def brute_force(form: FormEvaluator, universe: Universe) -> BucketTable:
    """Visit every pair; the reference for :class:`PrunedScan`."""
    table = BucketTable()
    polys = list(universe.polys())
    for x in polys:
        for y in polys:
            table.nodes += 1
            v = pord(form.value(x, y))
            if v is None:
                if x or y:
                    table.solutions += 1
                else:
                    table.origin += 1
                continue
            table.add(PrunedScan._key(x, y), v, x, y)
    return table


def iter_pairs(universe: Universe, mode: str, samples: int, seed: int,
               chunk: int = 0, chunks: int = 1) -> Iterator[Tuple[Poly, Poly]]:
    """Exhaustive pairs, or ``samples`` uniform pairs from the seeded generator.

    Chunks partition the stream deterministically so workers can split it.
    """
    if mode == "exhaustive":
        polys = list(universe.polys())
        n = 0
        for x in polys:
            for y in polys:
                if n % chunks == chunk:
                    yield x, y
                n += 1
        return
    for k in range(samples):
        if k % chunks != chunk:
            continue
        rng = random.Random(f"{seed}:{k}")
        yield universe.random_poly(rng), universe.random_poly(rng)
