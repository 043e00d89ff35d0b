"""Point enumeration on quadric models over finite fields and over Q.

Projective points are normalised so the first nonzero coordinate is 1
(over Q: first nonzero coordinate positive, integral, content 1).  The
finite-field enumerator walks all but the last free coordinate of each
affine chart and solves the remaining univariate quadratic, which keeps
the cost near q^(dim-2) per chart instead of q^(dim-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from .fields import FF
from .linalg import Budget, BudgetExceeded
from .model import QuadricModel, evaluate_quadric, on_model

Point = tuple[int, ...]


@dataclass(frozen=True)
class ClosedPoint:
    """A Frobenius orbit of conjugate points; degree = orbit length."""

    degree: int
    field_degree: int  # the orbit lives in F_{p^field_degree}
    orbit: tuple[Point, ...]

    @property
    def rep(self) -> Point:
        return self.orbit[0]


def _quadric_z_split(quadric, zi: int):
    """Split terms by their degree in coordinate zi: (z^2, z^1, z^0 parts)."""
    sq, lin, const = [], [], []
    for mono, c in quadric:
        e = mono[zi]
        if e == 2:
            sq.append(c)
        elif e == 1:
            j = next(i for i, ei in enumerate(mono) if ei and i != zi)
            lin.append((j, c))
        else:
            const.append((mono, c))
    return sq, lin, const


def _roots_deg2(field: FF, a2, a1, a0) -> list:
    """Roots of a2 z^2 + a1 z + a0 over field (a2 or a1 nonzero)."""
    if field.is_zero(a2):
        return [field.mul(field.neg(a0), field.inv(a1))]
    if field.p == 2 or getattr(field, "_exp", None) is None:
        return [z for z in field.elements()
                if field.is_zero(field.add(field.mul(a2, field.mul(z, z)),
                                           field.add(field.mul(a1, z), a0)))]
    disc = field.sub(field.mul(a1, a1), field.mul(field.from_int(4), field.mul(a2, a0)))
    s = field.sqrt(disc)
    if s is None:
        return []
    inv2a = field.inv(field.mul(field.from_int(2), a2))
    r1 = field.mul(field.sub(s, a1), inv2a)
    r2 = field.mul(field.sub(field.neg(s), a1), inv2a)
    return [r1] if r1 == r2 else sorted((r1, r2))


def enumerate_points(field: FF, model: QuadricModel, budget: Budget | None = None) -> list[Point]:
    """All normalised points of the model over the given field, sorted."""
    n = model.dim
    if budget is not None and field.q ** max(n - 2, 0) > budget.cap:
        raise BudgetExceeded(
            f"enumeration of ~{field.q}^{n - 2} prefixes exceeds the budget cap"
        )
    pts: list[Point] = []
    elements = list(field.elements())
    for chart in range(n):
        if chart == n - 1:
            cand = tuple([0] * (n - 1) + [1])
            if on_model(field, model, cand):
                pts.append(cand)
            continue
        zi = n - 1
        splits = [_quadric_z_split(q, zi) for q in model.quadrics]
        free = list(range(chart + 1, n - 1))
        for assign in product(elements, repeat=len(free)):
            if budget is not None:
                budget.charge(8 * len(splits))
            point = [field.zero] * n
            point[chart] = field.one
            for idx, v in zip(free, assign):
                point[idx] = v
            coeffs = []
            for sq, lin, const in splits:
                a2 = field.zero
                for c in sq:
                    a2 = field.add(a2, field.from_int(c))
                a1 = field.zero
                for j, c in lin:
                    a1 = field.add(a1, field.mul(field.from_int(c), point[j]))
                a0 = field.zero
                for mono, c in const:
                    term = field.from_int(c)
                    for i, e in enumerate(mono):
                        for _ in range(e):
                            term = field.mul(term, point[i])
                    a0 = field.add(a0, term)
                coeffs.append((a2, a1, a0))
            solver = next(
                (t for t in coeffs if not (field.is_zero(t[0]) and field.is_zero(t[1]))),
                None,
            )
            if solver is None:
                if all(field.is_zero(a0) for _, _, a0 in coeffs):
                    candidates = elements
                else:
                    continue
            else:
                candidates = _roots_deg2(field, *solver)
            for z in candidates:
                point[zi] = z
                if all(
                    field.is_zero(
                        field.add(
                            field.mul(a2, field.mul(z, z)),
                            field.add(field.mul(a1, z), a0),
                        )
                    )
                    for a2, a1, a0 in coeffs
                ):
                    pts.append(tuple(point))
    return sorted(pts)


def enumerate_points_bruteforce(field: FF, model: QuadricModel) -> list[Point]:
    """Independent oracle: walk every normalised point of P^{n-1} directly."""
    n = model.dim
    pts = []
    elements = list(field.elements())
    for chart in range(n):
        for tail in product(elements, repeat=n - 1 - chart):
            cand = tuple([0] * chart + [1] + list(tail))
            if on_model(field, model, cand):
                pts.append(cand)
    return sorted(pts)


def count_points(model: QuadricModel, k: int, budget: Budget | None = None) -> int:
    """#X(F_{p^k}) for a model already reduced mod p."""
    if model.field is None:
        raise ValueError("count_points needs a reduced model")
    from .fields import ff

    field = ff(model.field.p, k)
    return len(enumerate_points(field, model, budget))


def frobenius_orbit(field: FF, point: Point) -> tuple[Point, ...]:
    orbit = [point]
    cur = tuple(field.frobenius(c) for c in point)
    while cur != point:
        orbit.append(cur)
        cur = tuple(field.frobenius(c) for c in cur)
    start = min(range(len(orbit)), key=lambda i: orbit[i])
    return tuple(orbit[start:] + orbit[:start])


def closed_points(model: QuadricModel, max_degree: int, budget: Budget | None = None) -> list[ClosedPoint]:
    """All closed points of degree <= max_degree, one per orbit, sorted."""
    if model.field is None:
        raise ValueError("closed_points needs a reduced model")
    from .fields import ff

    p = model.field.p
    out: list[ClosedPoint] = []
    for e in range(1, max_degree + 1):
        field = ff(p, e)
        seen: set[Point] = set()
        for pt in enumerate_points(field, model, budget):
            if pt in seen:
                continue
            orbit = frobenius_orbit(field, pt)
            seen.update(orbit)
            if len(orbit) == e:
                out.append(ClosedPoint(e, e, orbit))
    out.sort(key=lambda cp: (cp.degree, cp.orbit))
    return out


def rational_points_q(model: QuadricModel, height: int) -> list[tuple[int, ...]]:
    """Primitive integer points with |coords| <= height on an integer model."""
    if model.field is not None:
        raise ValueError("rational point search runs on the integer model")
    n = model.dim
    pts = []
    span = range(-height, height + 1)

    def eval_int(quadric, v):
        total = 0
        for mono, c in quadric:
            term = c
            for i, e in enumerate(mono):
                for _ in range(e):
                    term *= v[i]
            total += term
        return total

    for chart in range(n):
        for lead in range(1, height + 1):
            for tail in product(span, repeat=n - 1 - chart):
                v = tuple([0] * chart + [lead] + list(tail))
                g = 0
                for x in v:
                    g = gcd(g, x)
                if g != 1:
                    continue
                if all(eval_int(q, v) == 0 for q in model.quadrics):
                    pts.append(v)
    return sorted(pts)


def load_point_pool(path, model: QuadricModel):
    """Read a shipped closed-point pool; every orbit is revalidated.

    Format: header lines `label`, `model_hash`, `p`; then `point e c0 .. c_{g-1}`
    rows (representative over F_{p^e}) and optionally one
    `split_hyperplane h0 .. h_{g-1}` row.  Returns (pool, hyperplane or None).
    """
    from .fields import ff

    if model.field is None:
        raise ValueError("pool loading needs a reduced model")
    pool: list[ClosedPoint] = []
    hyperplane = None
    p = model.field.p
    with open(path) as f:
        for line in f:
            parts = line.split()
            if not parts:
                continue
            key = parts[0]
            if key == "model_hash":
                if parts[1] != model.content_hash():
                    raise ValueError("point pool does not match the model")
            elif key == "p":
                if int(parts[1]) != p:
                    raise ValueError("point pool is for a different prime")
            elif key == "point":
                e = int(parts[1])
                rep = tuple(int(c) for c in parts[2:])
                field = ff(p, e)
                if not on_model(field, model, rep):
                    raise ValueError(f"pool point {rep} is not on the model")
                orbit = frobenius_orbit(field, rep)
                if len(orbit) != e:
                    raise ValueError(f"pool point {rep} has degree {len(orbit)}, not {e}")
                pool.append(ClosedPoint(e, e, orbit))
            elif key == "split_hyperplane":
                hyperplane = tuple(int(c) for c in parts[1:])
    pool.sort(key=lambda cp: (cp.degree, cp.orbit))
    return pool, hyperplane
