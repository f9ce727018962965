"""Derived fields and pointwise classification of swallowtail singularities.

For a polynomial map f = (f1, f2, f3) the critical locus is the zero set
of J = det[Df].  Along it the kernel of Df is spanned by one of the
kernel fields K_ij = grad(f_i) x grad(f_j); iterating the directional
derivative along K produces the chain

    X = <grad J, K>,   Y = <grad X, K>,   Z = <grad Y, K>.

A point with rank Df = 2 where H = (J, X, Y) has a simple zero is a
simple swallowtail; its sign is sgn(Z * det[DH]).  The sign does not
depend on which nonvanishing kernel field is used, which this module
exploits by fixing the witness order (1,2), (1,3), (2,3).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .poly import (
    CoeffLike,
    Polynomial,
    PolyMap,
    PolyVector,
    cross,
    det3,
    dot,
    gradient,
    minors2,
)

PAIRS: tuple[tuple[int, int], ...] = ((1, 2), (1, 3), (2, 3))


@dataclass
class PairChain:
    """The derived chain attached to one kernel-field index pair."""

    k: PolyVector
    x: Polynomial
    y: Polynomial
    z: Polynomial
    det_dh: Polynomial
    _g: Polynomial | None = field(default=None, repr=False)

    @property
    def g(self) -> Polynomial:
        """Sign weight Z * det[DH]; built on first access (it is large)."""
        if self._g is None:
            self._g = self.z * self.det_dh
        return self._g


@dataclass
class SingularityData:
    """All derived fields of one map: J plus the chain for each pair."""

    j: Polynomial
    chains: dict[tuple[int, int], PairChain]

    def chain(self, i: int, j: int) -> PairChain:
        return self.chains[(i, j)]


def derive(f: PolyMap) -> SingularityData:
    """Compute J and, for every index pair, K, X, Y, Z and det[DH]."""
    grads = f.jacobian()
    j = det3(grads)
    grad_j = gradient(j)
    chains: dict[tuple[int, int], PairChain] = {}
    for (a, b) in PAIRS:
        k = cross(grads[a - 1], grads[b - 1])
        x = dot(grad_j, k)
        grad_x = gradient(x)
        y = dot(grad_x, k)
        grad_y = gradient(y)
        z = dot(grad_y, k)
        det_dh = det3([grad_j, grad_x, grad_y])
        chains[(a, b)] = PairChain(k=k, x=x, y=y, z=z, det_dh=det_dh)
    return SingularityData(j=j, chains=chains)


@dataclass
class GenericityGenerators:
    """Generator lists of the four ideals guarding the counting theorems.

    i1: J and its three partials (critical locus is smooth).
    i2: J and the nine 2x2 minors of Df (corank is exactly one).
    i3: J, the three X fields and the eighteen 2x2 minors of
        D(J, X12, X13, X23) (the fold curve is smooth).
    i:  J, all X and all Y; its variety is the swallowtail locus.
    """

    i1: list[Polynomial]
    i2: list[Polynomial]
    i3: list[Polynomial]
    i: list[Polynomial]


def genericity_generators(f: PolyMap) -> GenericityGenerators:
    """Build the four generator lists in a fixed, documented order."""
    data = derive(f)
    j = data.j
    grad_j = gradient(j)
    xs = [data.chain(a, b).x for (a, b) in PAIRS]
    ys = [data.chain(a, b).y for (a, b) in PAIRS]

    i1 = [j, *grad_j]
    i2 = [j, *minors2(f.jacobian())]
    x_jac = [gradient(j)] + [gradient(x) for x in xs]
    i3 = [j, *xs, *minors2(x_jac)]
    i_full = [j, *xs, *ys]
    return GenericityGenerators(i1=i1, i2=i2, i3=i3, i=i_full)


class Verdict(str, Enum):
    REGULAR = "Regular"
    SINGULAR_NOT_SWALLOWTAIL = "SingularNotSwallowtail"
    SIMPLE_SWALLOWTAIL = "SimpleSwallowtail"
    DEGENERATE_OR_UNCERTAIN = "DegenerateOrUncertain"


@dataclass
class Diagnostics:
    h_values: tuple[Fraction, Fraction, Fraction] | None
    df_rank: int
    g_value: Fraction | None


@dataclass
class PointClassification:
    verdict: Verdict
    sign: int | None
    witness_pair: tuple[int, int] | None
    diagnostics: Diagnostics


def _rank3(m: list[list[Fraction]]) -> int:
    rows = [row[:] for row in m]
    rank = 0
    for col in range(3):
        pivot = next((r for r in range(rank, 3) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        head = rows[rank][col]
        for r in range(rank + 1, 3):
            if rows[r][col] != 0:
                factor = rows[r][col] / head
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def classify_point(
    f: PolyMap,
    point: Sequence[CoeffLike],
    witness: tuple[int, int] | None = None,
) -> PointClassification:
    """Classify one rational point of the domain, exactly.

    Verdicts: Regular when J(p) != 0; SingularNotSwallowtail when the
    rank of Df(p) drops below 2 or H = (J, X, Y) fails to vanish for the
    witness pair; SimpleSwallowtail (with sign) when H(p) = 0 and
    Z(p) * det[DH(p)] != 0; DegenerateOrUncertain when that product is 0.

    The witness pair is the first of (1,2), (1,3), (2,3) whose kernel
    field is nonzero at the point; `witness` forces a specific pair,
    which must be admissible.
    """
    p = tuple(Fraction(c) for c in point)
    grads = f.jacobian()
    j = det3(grads)
    j_val = j.evaluate(p)

    df_at_p = [[entry.evaluate(p) for entry in row] for row in grads]
    rank = _rank3(df_at_p)

    if j_val != 0:
        return PointClassification(
            verdict=Verdict.REGULAR,
            sign=None,
            witness_pair=None,
            diagnostics=Diagnostics(h_values=None, df_rank=rank, g_value=None),
        )

    if rank <= 1:
        return PointClassification(
            verdict=Verdict.SINGULAR_NOT_SWALLOWTAIL,
            sign=None,
            witness_pair=None,
            diagnostics=Diagnostics(h_values=None, df_rank=rank, g_value=None),
        )

    pair = witness
    k_vec: PolyVector | None = None
    if pair is None:
        for (a, b) in PAIRS:
            candidate = cross(grads[a - 1], grads[b - 1])
            if any(comp.evaluate(p) != 0 for comp in candidate):
                pair = (a, b)
                k_vec = candidate
                break
    else:
        k_vec = cross(grads[pair[0] - 1], grads[pair[1] - 1])
        if all(comp.evaluate(p) == 0 for comp in k_vec):
            raise ValueError(f"kernel field for pair {pair} vanishes at the point")
    if pair is None or k_vec is None:
        # rank 2 guarantees a nonvanishing kernel field, so this is unreachable
        raise AssertionError("no admissible kernel field at a rank-2 point")

    # Only the witness chain is needed, and only its values at p; Z and
    # det[DH] are evaluated numerically from gradients instead of being
    # expanded symbolically.
    grad_j = gradient(j)
    x = dot(grad_j, k_vec)
    grad_x = gradient(x)
    y = dot(grad_x, k_vec)
    grad_y = gradient(y)

    h_values = (j_val, x.evaluate(p), y.evaluate(p))
    if h_values[1] != 0 or h_values[2] != 0:
        return PointClassification(
            verdict=Verdict.SINGULAR_NOT_SWALLOWTAIL,
            sign=None,
            witness_pair=pair,
            diagnostics=Diagnostics(h_values=h_values, df_rank=rank, g_value=None),
        )

    k_at_p = [comp.evaluate(p) for comp in k_vec]
    grad_y_at_p = [comp.evaluate(p) for comp in grad_y]
    z_val = sum(a * b for a, b in zip(grad_y_at_p, k_at_p))
    dh_at_p = [
        [comp.evaluate(p) for comp in grad_j],
        [comp.evaluate(p) for comp in grad_x],
        grad_y_at_p,
    ]
    det_dh_val = _det3_scalar(dh_at_p)
    g_val = z_val * det_dh_val

    if g_val == 0:
        verdict = Verdict.DEGENERATE_OR_UNCERTAIN
        sign = None
    else:
        verdict = Verdict.SIMPLE_SWALLOWTAIL
        sign = 1 if g_val > 0 else -1
    return PointClassification(
        verdict=verdict,
        sign=sign,
        witness_pair=pair,
        diagnostics=Diagnostics(h_values=h_values, df_rank=rank, g_value=g_val),
    )


def _det3_scalar(m: Sequence[Sequence[Fraction]]) -> Fraction:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def compose_linear(
    f: PolyMap,
    a: Sequence[Sequence[CoeffLike]],
    b: Sequence[CoeffLike],
) -> PolyMap:
    """Precompose with the affine change phi(q) = A q + b, exactly.

    Returns f o phi.  A singular matrix A is rejected: it is not a
    change of coordinates.
    """
    matrix = [[Fraction(entry) for entry in row] for row in a]
    shift = [Fraction(entry) for entry in b]
    if _det3_scalar(matrix) == 0:
        raise ValueError("coordinate change matrix is singular")
    substitutions = []
    for i in range(3):
        s = Polynomial(
            {
                (1, 0, 0): matrix[i][0],
                (0, 1, 0): matrix[i][1],
                (0, 0, 1): matrix[i][2],
                (0, 0, 0): shift[i],
            }
        )
        substitutions.append(s)
    return PolyMap(*(_substitute(c, substitutions) for c in f.components))


def post_compose_linear(
    f: PolyMap,
    a: Sequence[Sequence[CoeffLike]],
    b: Sequence[CoeffLike],
) -> PolyMap:
    """Postcompose with the affine change psi(v) = A v + b on the target."""
    matrix = [[Fraction(entry) for entry in row] for row in a]
    shift = [Fraction(entry) for entry in b]
    if _det3_scalar(matrix) == 0:
        raise ValueError("coordinate change matrix is singular")
    comps = f.components
    new = []
    for i in range(3):
        acc = Polynomial.constant(shift[i])
        for jx in range(3):
            if matrix[i][jx]:
                acc = acc + matrix[i][jx] * comps[jx]
        new.append(acc)
    return PolyMap(*new)


def _substitute(p: Polynomial, subs: Sequence[Polynomial]) -> Polynomial:
    powers: list[dict[int, Polynomial]] = [
        {0: Polynomial.constant(1)} for _ in range(3)
    ]

    def power(var: int, e: int) -> Polynomial:
        cache = powers[var]
        if e not in cache:
            cache[e] = power(var, e - 1) * subs[var]
        return cache[e]

    total = Polynomial()
    for (e0, e1, e2), coeff in p.terms.items():
        term = power(0, e0) * power(1, e1) * power(2, e2)
        total = total + coeff * term
    return total
