"""Zero-dimensional ideal machinery over the rationals.

Buchberger's algorithm (normal selection strategy plus both classical
pair criteria) produces reduced Groebner bases; from those the module
derives normal forms, ideal-triviality tests, standard-monomial bases
and multiplication matrices of the quotient algebra.

Internally all reductions run on integer coefficient dictionaries with
a tracked denominator, which is much faster than per-step Fraction
arithmetic and just as exact; Fractions appear only at the public
boundary.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .poly import Mono, Polynomial

IntPoly = dict[Mono, int]


class MonomialOrder(Enum):
    """Monomial order with the fixed variable order x > y > z."""

    DEGREVLEX = "degrevlex"
    DEGLEX = "deglex"
    LEX = "lex"

    def key(self, m: Mono) -> tuple[int, int, int]:
        if self is MonomialOrder.DEGREVLEX:
            return (m[0] + m[1] + m[2], -m[2], -m[1])
        if self is MonomialOrder.DEGLEX:
            return (m[0] + m[1] + m[2], m[0], m[1])
        return m

    def heap_key(self, m: Mono) -> tuple[int, int, int]:
        # negated sort key: heapq is a min-heap, reductions pop the maximum
        k = self.key(m)
        return (-k[0], -k[1], -k[2])


DEGREVLEX = MonomialOrder.DEGREVLEX
DEGLEX = MonomialOrder.DEGLEX
LEX = MonomialOrder.LEX


def _divides(a: Mono, b: Mono) -> bool:
    return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2]


def _mono_mul(a: Mono, b: Mono) -> Mono:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _mono_lcm(a: Mono, b: Mono) -> Mono:
    return (max(a[0], b[0]), max(a[1], b[1]), max(a[2], b[2]))


def _content(p: IntPoly) -> int:
    g = 0
    for c in p.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def _primitive(p: IntPoly, order: MonomialOrder) -> IntPoly:
    """Divide by the content and normalize the leading coefficient positive."""
    if not p:
        return {}
    g = _content(p)
    lead = max(p, key=order.key)
    if p[lead] < 0:
        g = -g
    if g != 1:
        return {m: c // g for m, c in p.items()}
    return dict(p)


class _Reducer:
    """One basis element prepared for fast divisibility tests."""

    __slots__ = ("lm", "lc", "tail")

    def __init__(self, p: IntPoly, order: MonomialOrder):
        self.lm = max(p, key=order.key)
        self.lc = p[self.lm]
        self.tail = [(m, c) for m, c in p.items() if m != self.lm]


def _reduce(
    p: IntPoly,
    reducers: Sequence[_Reducer],
    order: MonomialOrder,
) -> tuple[IntPoly, int]:
    """Full reduction of ``p`` modulo ``reducers``.

    Returns (R, D) with R/D the exact normal form of p.  The remainder R
    collects monomials divisible by no leading monomial; every reduction
    step only introduces strictly smaller monomials, so a lazy max-heap
    drives termination.
    """
    work: IntPoly = dict(p)
    heap = [(order.heap_key(m), m) for m in work]
    heapq.heapify(heap)
    remainder: IntPoly = {}
    denom = 1
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        coeff = work.pop(m, 0)
        if coeff == 0:
            continue
        red = None
        for candidate in reducers:
            lm = candidate.lm
            if lm[0] <= m[0] and lm[1] <= m[1] and lm[2] <= m[2]:
                red = candidate
                break
        if red is None:
            remainder[m] = coeff
            continue
        shift = (m[0] - red.lm[0], m[1] - red.lm[1], m[2] - red.lm[2])
        d0 = gcd(coeff, red.lc)
        scale = red.lc // d0
        mult = coeff // d0
        if scale < 0:
            scale, mult = -scale, -mult
        if scale != 1:
            for k in work:
                work[k] *= scale
            for k in remainder:
                remainder[k] *= scale
            denom *= scale
        for tm, tc in red.tail:
            nm = (shift[0] + tm[0], shift[1] + tm[1], shift[2] + tm[2])
            old = work.get(nm)
            if old is None:
                work[nm] = -mult * tc
                heapq.heappush(heap, (order.heap_key(nm), nm))
            else:
                new = old - mult * tc
                if new:
                    work[nm] = new
                else:
                    del work[nm]
        steps += 1
        if steps % 64 == 0 and denom > 1:
            g = denom
            for c in work.values():
                g = gcd(g, c)
                if g == 1:
                    break
            else:
                for c in remainder.values():
                    g = gcd(g, c)
                    if g == 1:
                        break
            if g > 1:
                denom //= g
                for k in work:
                    work[k] //= g
                for k in remainder:
                    remainder[k] //= g
    if denom > 1:
        g = denom
        for c in remainder.values():
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            denom //= g
            remainder = {m: c // g for m, c in remainder.items()}
    return remainder, denom


def _spoly(g1: _Reducer, g2: _Reducer) -> IntPoly:
    lcm = _mono_lcm(g1.lm, g2.lm)
    s1 = (lcm[0] - g1.lm[0], lcm[1] - g1.lm[1], lcm[2] - g1.lm[2])
    s2 = (lcm[0] - g2.lm[0], lcm[1] - g2.lm[1], lcm[2] - g2.lm[2])
    d = gcd(g1.lc, g2.lc)
    c1 = g2.lc // d
    c2 = g1.lc // d
    out: IntPoly = {}
    for tm, tc in g1.tail:
        nm = _mono_mul(s1, tm)
        out[nm] = out.get(nm, 0) + c1 * tc
    for tm, tc in g2.tail:
        nm = _mono_mul(s2, tm)
        new = out.get(nm, 0) - c2 * tc
        if new:
            out[nm] = new
        else:
            out.pop(nm, None)
    # the leading terms at lcm cancel by construction and tails stay below it
    return {m: c for m, c in out.items() if c}


def _to_int_poly(p: Polynomial) -> tuple[IntPoly, int]:
    denom = 1
    for c in p.terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    return (
        {m: int(c * denom) for m, c in p.terms.items()},
        denom,
    )


def _to_polynomial(p: IntPoly, denom: int) -> Polynomial:
    return Polynomial({m: Fraction(c, denom) for m, c in p.items()})


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic, interreduced, canonical per order."""

    generators: tuple[Polynomial, ...]
    order: MonomialOrder
    _reducers: list = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        reducers = []
        for g in self.generators:
            ip, _ = _to_int_poly(g)
            reducers.append(_Reducer(ip, self.order))
        object.__setattr__(self, "_reducers", reducers)

    def leading_monomials(self) -> list[Mono]:
        return [r.lm for r in self._reducers]


def buchberger(
    gens: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Uses the normal selection strategy (smallest pair lcm first) with
    the coprimality and chain criteria.  A nonzero constant entering the
    basis short-circuits to the unit ideal.
    """
    if not gens:
        raise ValueError("buchberger requires at least one generator")
    basis: list[_Reducer] = []
    for g in gens:
        ip, _ = _to_int_poly(g)
        ip = _primitive(ip, order)
        if not ip:
            continue
        if max(ip, key=order.key) == (0, 0, 0):
            return _unit_basis(order)
        basis.append(_Reducer(ip, order))
    if not basis:
        return GroebnerBasis(generators=(), order=order)

    pending: set[tuple[int, int]] = set()
    heap: list[tuple[tuple[int, int, int], int, int]] = []
    for i, j in itertools.combinations(range(len(basis)), 2):
        lcm = _mono_lcm(basis[i].lm, basis[j].lm)
        heapq.heappush(heap, (order.key(lcm), i, j))
        pending.add((i, j))

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        gi, gj = basis[i], basis[j]
        lcm = _mono_lcm(gi.lm, gj.lm)
        if _mono_mul(gi.lm, gj.lm) == lcm:
            continue  # coprime leading monomials: S-polynomial reduces to zero
        if _chain_criterion(basis, pending, i, j, lcm):
            continue
        s = _spoly(gi, gj)
        if not s:
            continue
        r, _ = _reduce(s, basis, order)
        r = _primitive(r, order)
        if not r:
            continue
        if max(r, key=order.key) == (0, 0, 0):
            return _unit_basis(order)
        basis.append(_Reducer(r, order))
        t = len(basis) - 1
        for k in range(t):
            lcm = _mono_lcm(basis[k].lm, basis[t].lm)
            heapq.heappush(heap, (order.key(lcm), k, t))
            pending.add((k, t))

    return _interreduce(basis, order)


def _chain_criterion(basis, pending, i, j, lcm) -> bool:
    for k in range(len(basis)):
        if k == i or k == j:
            continue
        if not _divides(basis[k].lm, lcm):
            continue
        pik = (min(i, k), max(i, k))
        pjk = (min(j, k), max(j, k))
        if pik not in pending and pjk not in pending:
            return True
    return False


def _unit_basis(order: MonomialOrder) -> GroebnerBasis:
    return GroebnerBasis(generators=(Polynomial.constant(1),), order=order)


def _interreduce(basis: list[_Reducer], order: MonomialOrder) -> GroebnerBasis:
    # minimalize: drop any element whose lead is a multiple of another lead
    basis = sorted(basis, key=lambda r: order.key(r.lm))
    kept: list[_Reducer] = []
    for r in basis:
        if any(_divides(other.lm, r.lm) for other in kept):
            continue
        kept.append(r)
    # tail-reduce each element against the others
    final: list[Polynomial] = []
    for idx, r in enumerate(kept):
        others = kept[:idx] + kept[idx + 1 :]
        full: IntPoly = {r.lm: r.lc}
        full.update({m: c for m, c in r.tail})
        reduced, denom = _reduce(full, others, order) if others else (full, 1)
        lead_coeff = Fraction(reduced[max(reduced, key=order.key)], denom)
        final.append(
            Polynomial({m: Fraction(c, denom) / lead_coeff for m, c in reduced.items()})
        )
    final.sort(key=lambda p: order.key(max(p.terms, key=order.key)))
    return GroebnerBasis(generators=tuple(final), order=order)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique remainder of ``p`` modulo the basis.

    No term of the result is divisible by any leading monomial; the map
    p -> normal_form(p) is linear and realizes the quotient algebra.
    """
    if not gb.generators:
        return p
    ip, denom0 = _to_int_poly(p)
    if not ip:
        return Polynomial()
    remainder, denom = _reduce(ip, gb._reducers, gb.order)
    return _to_polynomial(remainder, denom0 * denom)


def contains_one(gb: GroebnerBasis) -> bool:
    """True iff the ideal is the whole ring (reduced basis is {1})."""
    return len(gb.generators) == 1 and gb.generators[0] == Polynomial.constant(1)


class InfiniteDimensional:
    """Signal value: the quotient algebra is not finite-dimensional."""

    def __repr__(self) -> str:
        return "InfiniteDimensional"


INFINITE_DIMENSIONAL = InfiniteDimensional()


@dataclass
class QuotientAlgebra:
    """Finite-dimensional quotient by a zero-dimensional ideal.

    Column j of ``mult_v`` holds the coordinates, in the standard
    monomial basis, of the normal form of v * (basis monomial j).  The
    three matrices commute pairwise.
    """

    basis_monomials: list[Mono]
    dim: int
    mult_x: list[list[Fraction]]
    mult_y: list[list[Fraction]]
    mult_z: list[list[Fraction]]
    _index: dict[Mono, int] = field(default=None, repr=False)
    _mono_mats: list | None = field(default=None, repr=False)
    _trace_vec: list | None = field(default=None, repr=False)
    _trace_rows: list | None = field(default=None, repr=False)

    def __post_init__(self):
        self._index = {m: i for i, m in enumerate(self.basis_monomials)}

    def index(self, m: Mono) -> int:
        return self._index[m]

    def coords(self, p: Polynomial) -> list[Fraction]:
        """Coordinate vector of a polynomial already in normal form."""
        vec = [Fraction(0)] * self.dim
        for m, c in p.terms.items():
            vec[self._index[m]] = c
        return vec

    def monomial_matrices(self) -> list[list[list[Fraction]]]:
        """Multiplication matrix of every standard monomial, in basis order."""
        if self._mono_mats is None:
            mats: list = [None] * self.dim
            by_var = (self.mult_x, self.mult_y, self.mult_z)
            for i, m in enumerate(self.basis_monomials):
                if m == (0, 0, 0):
                    mats[i] = [
                        [Fraction(int(r == c)) for c in range(self.dim)]
                        for r in range(self.dim)
                    ]
                    continue
                var = next(v for v in range(3) if m[v] > 0)
                smaller = list(m)
                smaller[var] -= 1
                prev = mats[self._index[tuple(smaller)]]
                mats[i] = mat_mul(by_var[var], prev)
            self._mono_mats = mats
        return self._mono_mats

    def trace_vector(self) -> list[Fraction]:
        """Trace of multiplication by each standard monomial."""
        if self._trace_vec is None:
            self._trace_vec = [
                sum(mat[i][i] for i in range(self.dim))
                for mat in self.monomial_matrices()
            ]
        return self._trace_vec

    def trace_rows(self) -> list[list[Fraction]]:
        """Row k is trace_vector . mult-matrix of basis monomial k."""
        if self._trace_rows is None:
            t = self.trace_vector()
            rows = []
            for mat in self.monomial_matrices():
                rows.append(
                    [
                        sum(t[i] * mat[i][j] for i in range(self.dim))
                        for j in range(self.dim)
                    ]
                )
            self._trace_rows = rows
        return self._trace_rows


def mat_mul(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        row_a = a[i]
        row_out = out[i]
        for k in range(n):
            aik = row_a[k]
            if not aik:
                continue
            row_b = b[k]
            for j in range(n):
                if row_b[j]:
                    row_out[j] += aik * row_b[j]
    return out


def quotient_basis(gb: GroebnerBasis) -> QuotientAlgebra | InfiniteDimensional:
    """Standard monomials and multiplication matrices, or the
    InfiniteDimensional signal when the ideal is not zero-dimensional.

    Finite dimension holds iff, for every variable, some leading
    monomial is a pure power of it (the unit ideal gives dimension 0).
    """
    if contains_one(gb):
        return QuotientAlgebra(
            basis_monomials=[], dim=0, mult_x=[], mult_y=[], mult_z=[]
        )
    leads = gb.leading_monomials()
    bounds = []
    for var in range(3):
        pure = [
            lm[var]
            for lm in leads
            if lm[var] > 0 and all(lm[w] == 0 for w in range(3) if w != var)
        ]
        if not pure:
            return INFINITE_DIMENSIONAL
        bounds.append(min(pure))
    monomials = [
        m
        for m in itertools.product(
            range(bounds[0]), range(bounds[1]), range(bounds[2])
        )
        if not any(_divides(lm, m) for lm in leads)
    ]
    monomials.sort(key=gb.order.key)
    dim = len(monomials)
    index = {m: i for i, m in enumerate(monomials)}

    def build(var: int) -> list[list[Fraction]]:
        matrix = [[Fraction(0)] * dim for _ in range(dim)]
        for j, m in enumerate(monomials):
            shifted = list(m)
            shifted[var] += 1
            sh = tuple(shifted)
            if sh in index:
                matrix[index[sh]][j] = Fraction(1)
                continue
            nf = normal_form(Polynomial({sh: 1}), gb)
            for mono, coeff in nf.terms.items():
                matrix[index[mono]][j] = coeff
        return matrix

    return QuotientAlgebra(
        basis_monomials=monomials,
        dim=dim,
        mult_x=build(0),
        mult_y=build(1),
        mult_z=build(2),
    )


def mult_matrix(
    u: Polynomial, qa: QuotientAlgebra, gb: GroebnerBasis
) -> list[list[Fraction]]:
    """Matrix of multiplication by ``u`` on the quotient algebra."""
    ubar = normal_form(u, gb)
    out = [[Fraction(0)] * qa.dim for _ in range(qa.dim)]
    mats = qa.monomial_matrices()
    for mono, coeff in ubar.terms.items():
        mat = mats[qa.index(mono)]
        for i in range(qa.dim):
            row = mat[i]
            out_row = out[i]
            for j in range(qa.dim):
                if row[j]:
                    out_row[j] += coeff * row[j]
    return out
