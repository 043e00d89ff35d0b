"""Riemann-Roch dimensions on canonically embedded curves.

For an effective divisor D on a canonical curve C in P^{g-1}, geometric
Riemann-Roch reads l(D) = deg D - s where s is the projective dimension
of the linear span of D.  Multiplicity m at a point contributes the first
m osculating rows of a local power-series expansion, so the span matrix
has exactly deg D rows once every conjugate of every closed point is
included.  All ranks are taken over the smallest field containing every
coordinate; rank is invariant under field extension, so this is safe.

Only valid on canonical models: the curve must be non-hyperelliptic
(callers assert this from classification input, never silently).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .fields import FF, ff
from .linalg import Budget, rank, solve
from .model import ModelError, QuadricModel, jacobian_at
from .points import ClosedPoint, Point, closed_points


@dataclass(frozen=True)
class EffectiveDivisor:
    model_hash: str
    base_p: int
    points: tuple[tuple[ClosedPoint, int], ...]  # (closed point, multiplicity)

    def __post_init__(self):
        for cp, m in self.points:
            if m < 1:
                raise ValueError("multiplicities must be >= 1")

    @property
    def degree(self) -> int:
        return sum(cp.degree * m for cp, m in self.points)


def divisor(model: QuadricModel, items) -> EffectiveDivisor:
    """Build a divisor from (ClosedPoint, multiplicity) pairs, merging
    repeats and fixing a deterministic order."""
    if model.field is None:
        raise ModelError("divisors live on a reduced model")
    acc: dict[ClosedPoint, int] = {}
    for cp, m in items:
        acc[cp] = acc.get(cp, 0) + m
    pts = tuple(sorted(((cp, m) for cp, m in acc.items() if m),
                       key=lambda im: (im[0].degree, im[0].orbit)))
    return EffectiveDivisor(model.content_hash(), model.field.p, pts)


def divisor_sub(a: EffectiveDivisor, b: EffectiveDivisor) -> EffectiveDivisor:
    """a - b, defined only when b <= a pointwise."""
    acc = dict(a.points)
    for cp, m in b.points:
        if acc.get(cp, 0) < m:
            raise ValueError("subtrahend is not dominated by the divisor")
        acc[cp] -= m
    pts = tuple(sorted(((cp, m) for cp, m in acc.items() if m),
                       key=lambda im: (im[0].degree, im[0].orbit)))
    return EffectiveDivisor(a.model_hash, a.base_p, pts)


@dataclass(frozen=True)
class RRResult:
    ell: int        # l(D) = dim of the Riemann-Roch space
    span_dim: int   # projective dimension of the span of D
    degree: int

    @property
    def rank(self) -> int:
        return self.ell - 1


def local_expansion(field: FF, model: QuadricModel, point: Point, order: int) -> list[Point]:
    """Coordinates of the curve expanded to the given order at a smooth point.

    Returns rows a_0 .. a_{order-1} with x(t) = sum a_j t^j satisfying every
    quadric mod t^order.  a_0 is the point itself, a_1 a tangent vector.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    n = model.dim
    pt = list(point)
    i0 = next(i for i, c in enumerate(pt) if not field.is_zero(c))
    # work in the affine chart x_{i0} = 1
    s = field.inv(pt[i0])
    pt = [field.mul(s, c) for c in pt]
    rows: list[list] = [pt]
    if order == 1:
        return [tuple(r) for r in rows]

    jac = jacobian_at(field, model, tuple(pt))
    # tangent direction: J v = 0 with the chart coordinate frozen
    chart_cols = [j for j in range(n) if j != i0]
    sol = _solve_pinned(field, jac, [field.zero] * len(jac), chart_cols, homogeneous=True)
    if sol is None:
        raise ModelError("point is singular on the model")
    v = [field.zero] * n
    for j, val in zip(chart_cols, sol):
        v[j] = val
    i1 = next(j for j in chart_cols if not field.is_zero(v[j]))
    s = field.inv(v[i1])
    v = [field.mul(s, c) for c in v]  # local parameter t = x_{i1}/x_{i0} - pt[i1]
    rows.append(v)

    free_cols = [j for j in range(n) if j not in (i0, i1)]
    for m in range(2, order):
        rhs = []
        for q in model.quadrics:
            # t^m coefficient of q(x(t)) with the unknown row left out
            acc = field.zero
            for mono, c in q:
                idx = [i for i, e in enumerate(mono) for _ in range(e)]
                a, b = idx if len(idx) == 2 else (idx[0], idx[0])
                conv = field.zero
                for u in range(1, m):
                    conv = field.add(conv, field.mul(rows[u][a], rows[m - u][b] if m - u < len(rows) else field.zero))
                # u=0 and u=m cross terms with the known row a_0 stay in the
                # Jacobian part; only 1..m-1 are known here
                conv = field.mul(field.from_int(c), conv)
                acc = field.add(acc, conv)
            rhs.append(field.neg(acc))
        sol = _solve_pinned(field, jac, rhs, free_cols, homogeneous=False)
        if sol is None:
            raise ModelError("expansion lift failed; point not smooth?")
        row = [field.zero] * n
        for j, val in zip(free_cols, sol):
            row[j] = val
        rows.append(row)
    return [tuple(r) for r in rows]


def _solve_pinned(field, jac, rhs, cols, homogeneous):
    """Solve jac[:,cols] x = rhs.  For the homogeneous tangent system the
    one-dimensional kernel is returned as a single nonzero vector."""
    a = [[row[j] for j in cols] for row in jac]
    if not homogeneous:
        return solve(field, a, rhs)
    from .linalg import kernel_basis

    ker = kernel_basis(field, a)
    if len(ker) != 1:
        return None
    return ker[0]


def _lift_orbits(model: QuadricModel, div: EffectiveDivisor):
    """Common field F_{p^L} plus every (conjugate point, multiplicity)."""
    p = model.field.p
    degs = [cp.field_degree for cp, _ in div.points] or [1]
    big = ff(p, lcm(*degs)) if len(degs) > 1 else ff(p, degs[0])
    lifted = []
    for cp, m in div.points:
        small = ff(p, cp.field_degree)
        emb = big.embedding_from(small) if big is not small else (lambda x: x)
        for conj in cp.orbit:
            lifted.append((tuple(emb(c) for c in conj), m))
    return big, lifted


def riemann_roch(model: QuadricModel, div: EffectiveDivisor,
                 budget: Budget | None = None) -> RRResult:
    """Geometric Riemann-Roch: span-matrix rank over the common field."""
    if model.field is None:
        raise ModelError("riemann_roch needs a reduced model")
    if div.model_hash != model.content_hash():
        raise ModelError("divisor belongs to a different model")
    d = div.degree
    if d == 0:
        return RRResult(1, -1, 0)
    big, lifted = _lift_orbits(model, div)
    span_rows = []
    for pt, m in lifted:
        span_rows.extend(local_expansion(big, model, pt, m))
    r = rank(big, [list(row) for row in span_rows], budget)
    s = r - 1
    ell = d - s
    if not 1 <= ell <= d:
        raise ModelError(f"inconsistent rank {r} for degree {d}")  # pragma: no cover
    return RRResult(ell, s, d)


def hyperplane_valuation(field: FF, model: QuadricModel, h, point: Point,
                         max_order: int) -> int:
    """Intersection multiplicity of the hyperplane h (coefficient tuple over
    the base prime field) with the curve at the point."""
    hf = [field.from_int(c) for c in h]
    for order in range(1, max_order + 1):
        rows = local_expansion(field, model, point, order)
        coeff = field.zero
        for c, x in zip(hf, rows[order - 1]):
            coeff = field.add(coeff, field.mul(c, x))
        if not field.is_zero(coeff):
            return order - 1
    raise ModelError(f"hyperplane vanishes beyond order {max_order} at {point}")


def section_divisor(model: QuadricModel, h: tuple[int, ...], max_degree: int,
                    budget: Budget | None = None,
                    pool: list[ClosedPoint] | None = None) -> EffectiveDivisor:
    """The divisor cut by the hyperplane h (integer coefficients), provided
    it splits into closed points of degree <= max_degree.

    This is the canonical divisor class: deg = 2g-2 is verified and a
    non-splitting hyperplane is rejected rather than truncated.
    """
    if model.field is None:
        raise ModelError("section_divisor needs a reduced model")
    g = model.genus
    p = model.field.p
    items = []
    total = 0
    for cp in (pool if pool is not None else closed_points(model, max_degree, budget)):
        fld = ff(p, cp.field_degree)
        hv = [fld.from_int(c) for c in h]
        acc = fld.zero
        for c, x in zip(hv, cp.rep):
            acc = fld.add(acc, fld.mul(c, x))
        if not fld.is_zero(acc):
            continue
        m = hyperplane_valuation(fld, model, h, cp.rep, 2 * g)
        items.append((cp, m))
        total += m * cp.degree
    if total != 2 * g - 2:
        raise ModelError(
            f"hyperplane section does not split over degrees <= {max_degree}: "
            f"found degree {total} of {2 * g - 2}")
    return divisor(model, items)
