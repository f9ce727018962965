"""Floating-point cross-check of the exact swallowtail counts.

The real points of a zero-dimensional ideal are recovered numerically:
left eigenvectors of a random real combination of the multiplication
matrices are evaluation functionals, so coordinates read off as ratios
of eigenvector entries.  Each located point is then classified by direct
sign evaluation of the derived chain.  This is deliberately independent
of the trace-form route and is never the source of truth.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .groebner import GroebnerBasis, QuotientAlgebra, normal_form
from .poly import Polynomial, PolyMap
from .singularity import PAIRS, derive
from .traceforms import CountReport


@dataclass(frozen=True)
class Tolerances:
    """Desk-scale defaults for quotient dimensions up to about 100."""

    imag: float = 1e-8
    residual: float = 1e-6
    cluster: float = 1e-6
    sign: float = 1e-9


DEFAULT_TOLERANCES = Tolerances()


class NumericBreakdown(RuntimeError):
    """Eigenvalue iteration failed; callers may retry with a new seed."""


@dataclass
class ApproxPoint:
    coords: tuple[float, float, float]
    residual: float
    cluster_size: int


@dataclass
class OracleReport:
    points: list[ApproxPoint]
    signs: list[int]
    total: int
    positive: int
    negative: int
    agrees_with: CountReport
    agreement: bool
    problems: list[str] = field(default_factory=list)
    point_signs: list[int | None] = field(default_factory=list)  # aligned to points


def eval_float(p: Polynomial, point: Sequence[float]) -> float:
    x, y, z = point
    total = 0.0
    for (e0, e1, e2), coeff in p.terms.items():
        total += float(coeff) * x**e0 * y**e1 * z**e2
    return total


def solve_variety(
    qa: QuotientAlgebra,
    gb: GroebnerBasis,
    gens: Sequence[Polynomial],
    tol: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
) -> list[ApproxPoint]:
    """Approximate real points of the ideal, deterministically per seed.

    Points whose coordinates carry imaginary parts above ``tol.imag`` or
    whose residual (max |generator value|) exceeds ``tol.residual`` are
    dropped; survivors closer than ``tol.cluster`` merge into one point
    with a cluster size.
    """
    if qa.dim == 0:
        return []
    rng = random.Random(seed)
    weights = [rng.uniform(-1.0, 1.0) for _ in range(3)]
    while max(abs(w) for w in weights) < 0.1:
        weights = [rng.uniform(-1.0, 1.0) for _ in range(3)]

    mats = [
        np.array([[float(c) for c in row] for row in m], dtype=float)
        for m in (qa.mult_x, qa.mult_y, qa.mult_z)
    ]
    combo = weights[0] * mats[0] + weights[1] * mats[1] + weights[2] * mats[2]
    try:
        _, vectors = np.linalg.eig(combo.T)
    except np.linalg.LinAlgError as exc:
        raise NumericBreakdown(f"eigenvalue iteration failed: {exc}") from exc

    one_index = qa.index((0, 0, 0))
    coord_vecs = []
    for var in ("x", "y", "z"):
        nf = normal_form(Polynomial.variable(var), gb)
        vec = np.zeros(qa.dim)
        for mono, coeff in nf.terms.items():
            vec[qa.index(mono)] = float(coeff)
        coord_vecs.append(vec)

    raw: list[tuple[float, float, float, float]] = []
    for col in range(vectors.shape[1]):
        v = vectors[:, col]
        denom = v[one_index]
        if abs(denom) < 1e-12 * np.linalg.norm(v):
            continue
        coords = [complex(np.dot(cv, v) / denom) for cv in coord_vecs]
        if any(abs(c.imag) >= tol.imag for c in coords):
            continue
        pt = (coords[0].real, coords[1].real, coords[2].real)
        residual = max(abs(eval_float(g, pt)) for g in gens) if gens else 0.0
        if residual >= tol.residual:
            continue
        raw.append((*pt, residual))

    raw.sort()
    clusters: list[list[float]] = []  # x, y, z, residual, size
    for x, y, z, residual in raw:
        merged = False
        for cl in clusters:
            if (cl[0] - x) ** 2 + (cl[1] - y) ** 2 + (cl[2] - z) ** 2 < tol.cluster**2:
                size = cl[4]
                cl[0] = (cl[0] * size + x) / (size + 1)
                cl[1] = (cl[1] * size + y) / (size + 1)
                cl[2] = (cl[2] * size + z) / (size + 1)
                cl[3] = max(cl[3], residual)
                cl[4] = size + 1
                merged = True
                break
        if not merged:
            clusters.append([x, y, z, residual, 1])
    return [
        ApproxPoint(coords=(c[0], c[1], c[2]), residual=c[3], cluster_size=int(c[4]))
        for c in clusters
    ]


def oracle_count(
    f: PolyMap,
    points: Sequence[ApproxPoint],
    report: CountReport,
    u: Polynomial | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> OracleReport:
    """Classify the located points by direct evaluation and compare
    against an exact count report.

    For each point the witness pair is the kernel field with the largest
    norm there; the recorded sign is sgn(Z * det[DH]).  A sign weight
    smaller than ``tol.sign`` leaves the point unresolved, which fails
    the agreement.
    """
    data = derive(f)
    grad_cache: dict[tuple[int, int], tuple] = {}
    signs: list[int] = []
    point_signs: list[int | None] = []
    problems: list[str] = []
    in_counts = {"total": 0, "positive": 0, "negative": 0}

    for pt in points:
        coords = pt.coords
        best_pair = None
        best_norm = 0.0
        for pair in PAIRS:
            k = data.chain(*pair).k
            norm = sum(eval_float(comp, coords) ** 2 for comp in k)
            if norm > best_norm:
                best_norm = norm
                best_pair = pair
        if best_pair is None or best_norm == 0.0:
            problems.append(f"kernel fields vanish numerically at {coords}")
            point_signs.append(None)
            continue
        chain = data.chain(*best_pair)
        if best_pair not in grad_cache:
            grad_cache[best_pair] = (
                tuple(data.j.partial(v) for v in "xyz"),
                tuple(chain.x.partial(v) for v in "xyz"),
                tuple(chain.y.partial(v) for v in "xyz"),
            )
        grad_j, grad_x, grad_y = grad_cache[best_pair]
        rows = [
            [eval_float(g, coords) for g in grad_j],
            [eval_float(g, coords) for g in grad_x],
            [eval_float(g, coords) for g in grad_y],
        ]
        det_dh = (
            rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
        )
        z_val = eval_float(chain.z, coords)
        g_val = z_val * det_dh
        if abs(g_val) < tol.sign:
            problems.append(
                f"unresolved sign at {coords}: |Z*det DH| = {abs(g_val):.3e}"
            )
            point_signs.append(None)
            continue
        sign = 1 if g_val > 0 else -1
        signs.append(sign)
        point_signs.append(sign)
        if u is not None:
            u_val = eval_float(u, coords)
            if abs(u_val) < tol.sign:
                problems.append(
                    f"point {coords} is on the region boundary within tolerance"
                )
            elif u_val > 0:
                in_counts["total"] += 1
                in_counts["positive" if sign > 0 else "negative"] += 1

    total = len(points)
    positive = sum(1 for s in signs if s > 0)
    negative = sum(1 for s in signs if s < 0)

    agreement = not problems
    if report.status != "ok":
        agreement = False
        problems.append(f"exact pipeline reported status {report.status!r}")
    else:
        if total != report.total:
            agreement = False
            problems.append(f"point count {total} != exact total {report.total}")
        if positive != report.positive or negative != report.negative:
            agreement = False
            problems.append(
                f"signed counts ({positive}, {negative}) != exact "
                f"({report.positive}, {report.negative})"
            )
        if u is not None and report.in_region is not None:
            expected = report.in_region
            if (
                in_counts["total"] != expected.total_in
                or in_counts["positive"] != expected.positive_in
                or in_counts["negative"] != expected.negative_in
            ):
                agreement = False
                problems.append(
                    f"region counts {in_counts} != exact "
                    f"({expected.total_in}, {expected.positive_in}, "
                    f"{expected.negative_in})"
                )

    return OracleReport(
        points=list(points),
        signs=signs,
        total=total,
        positive=positive,
        negative=negative,
        agrees_with=report,
        agreement=agreement,
        problems=problems,
        point_signs=point_signs,
    )
