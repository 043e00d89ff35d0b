"""Certified gonality bounds on explicit curve models.

Lower bounds over F_p: if every effective F_p-rational divisor of degree d
has Riemann-Roch dimension 1, there is no function of degree <= d, so
gon_{F_p} > d.  Two sound prunings cut the divisor enumeration:

  * translating a function by a constant puts any chosen rational point in
    its polar divisor, so when the curve has a rational point only shapes
    with at least one degree-1 part need checking;
  * if #C(F_p) > k(p+1), some fiber of a degree-d map contains at least
    k+1 rational points, forcing that many degree-1 parts.

Upper bounds: any effective divisor with l(D) >= 2 found in a point pool
is a witness for gon <= deg D over the field of the pool.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import ceil

from .fields import QQ
from .linalg import Budget, BudgetExceeded, rank
from .model import ModelError, QuadricModel
from .points import ClosedPoint, closed_points, enumerate_points, rational_points_q
from .rr import divisor, local_expansion, riemann_roch

Shape = tuple[int, ...]


@dataclass(frozen=True)
class GonalityCertificate:
    kind: str            # "fp_lower" | "upper_witness"
    field_desc: str      # e.g. "F_3" or "Q"
    degree: int
    certified: bool
    shapes: tuple[Shape, ...]
    witness: str | None  # counterexample / witness divisor, human-readable
    model_hash: str
    searched: int

    def statement(self) -> str:
        if self.kind == "fp_lower":
            rel = ">" if self.certified else "<="
            return f"gon_{self.field_desc} {rel} {self.degree}"
        return (f"gon_{self.field_desc} <= {self.degree}"
                if self.certified else "no witness found")


def format_certificate(cert: GonalityCertificate) -> str:
    lines = [
        f"kind {cert.kind}",
        f"field {cert.field_desc}",
        f"degree {cert.degree}",
        f"certified {'yes' if cert.certified else 'no'}",
        f"shapes {' '.join('+'.join(map(str, s)) for s in cert.shapes) or '-'}",
        f"witness {cert.witness or '-'}",
        f"model {cert.model_hash}",
        f"searched {cert.searched}",
        f"statement {cert.statement()}",
    ]
    return "\n".join(lines) + "\n"


def min_rational_parts(count: int, p: int) -> int:
    """Degree-1 parts forced in a fiber divisor by pigeonhole (0 if the
    curve has no rational points)."""
    if count == 0:
        return 0
    return ceil(count / (p + 1))


def admissible_shapes(d: int, min_rational: int) -> tuple[Shape, ...]:
    """Partitions of d with at least min_rational parts equal to 1,
    sorted deterministically."""
    out: list[Shape] = []

    def rec(rest: int, max_part: int, acc: list[int]):
        if rest == 0:
            s = tuple(sorted(acc))
            if s.count(1) >= min_rational:
                out.append(s)
            return
        for part in range(min(rest, max_part), 0, -1):
            rec(rest - part, part, acc + [part])

    rec(d, d, [])
    return tuple(sorted(out))


def _divisors_of_shape(model, shape: Shape, by_degree: dict[int, list[ClosedPoint]]):
    """All effective divisors whose closed-point degrees realise the shape."""
    groups = sorted(set(shape))
    choices = []
    for e in groups:
        n = shape.count(e)
        pts = by_degree.get(e, [])
        choices.append(list(combinations_with_replacement(pts, n)))
    stack = [()]
    for ch in choices:
        stack = [prev + pick for prev in stack for pick in ch]
    for pick in stack:
        if pick:
            yield divisor(model, [(cp, 1) for cp in pick])


def gonality_lower_bound(model: QuadricModel, d: int,
                         budget: Budget | None = None,
                         pool: list[ClosedPoint] | None = None,
                         prune: bool = True) -> GonalityCertificate:
    """Search all admissible degree-d divisors; certify gon_{F_p} > d when
    every l(D) = 1."""
    if model.field is None:
        raise ModelError("lower-bound search needs a reduced model")
    p = model.field.p
    if pool is None:
        pool = closed_points(model, d, budget)
    by_degree: dict[int, list[ClosedPoint]] = {}
    for cp in pool:
        by_degree.setdefault(cp.degree, []).append(cp)
    count = len(by_degree.get(1, []))
    min_rat = min_rational_parts(count, p) if prune else 0
    shapes = admissible_shapes(d, min_rat)
    searched = 0
    for shape in shapes:
        for D in _divisors_of_shape(model, shape, by_degree):
            searched += 1
            if riemann_roch(model, D, budget).ell >= 2:
                return GonalityCertificate(
                    "fp_lower", f"F_{p}", d, False, shapes,
                    _describe(D), model.content_hash(), searched)
    return GonalityCertificate("fp_lower", f"F_{p}", d, True, shapes, None,
                               model.content_hash(), searched)


def _describe(D) -> str:
    parts = []
    for cp, m in D.points:
        parts.append(f"{m}x deg{cp.degree} {cp.rep}")
    return "; ".join(parts)


def gonality_upper_search(model: QuadricModel, d: int,
                          budget: Budget | None = None,
                          pool: list[ClosedPoint] | None = None) -> GonalityCertificate:
    """Look for a degree-d divisor with l(D) >= 2 in the point pool.

    A hit certifies gon <= d over the base field; absence is only a report
    on the searched pool, never a lower bound.
    """
    if model.field is None:
        raise ModelError("upper search over F_p needs a reduced model")
    p = model.field.p
    if pool is None:
        pool = closed_points(model, d, budget)
    by_degree: dict[int, list[ClosedPoint]] = {}
    for cp in pool:
        by_degree.setdefault(cp.degree, []).append(cp)
    if not pool:
        return GonalityCertificate("upper_witness", f"F_{p}", d, False, (),
                                   None, model.content_hash(), 0)
    shapes = admissible_shapes(d, 0)
    searched = 0
    for shape in shapes:
        for D in _divisors_of_shape(model, shape, by_degree):
            searched += 1
            if riemann_roch(model, D, budget).ell >= 2:
                return GonalityCertificate(
                    "upper_witness", f"F_{p}", d, True, shapes,
                    _describe(D), model.content_hash(), searched)
    return GonalityCertificate("upper_witness", f"F_{p}", d, False, shapes,
                               None, model.content_hash(), searched)


def gonality_upper_search_q(model: QuadricModel, d: int, height: int = 30,
                            budget: Budget | None = None) -> GonalityCertificate:
    """Upper-bound witness over Q from bounded-height rational points."""
    if model.field is not None:
        raise ModelError("the Q search runs on the integer model")
    pts = rational_points_q(model, height)
    if not pts:
        return GonalityCertificate("upper_witness", "Q", d, False, (), None,
                                   model.content_hash(), 0)
    qpts = [tuple(QQ.from_int(c) for c in pt) for pt in pts]
    searched = 0
    shapes = (tuple([1] * d),)
    for pick in combinations_with_replacement(range(len(qpts)), d):
        searched += 1
        mult: dict[int, int] = {}
        for i in pick:
            mult[i] = mult.get(i, 0) + 1
        rows = []
        for i, m in mult.items():
            rows.extend(list(r) for r in local_expansion(QQ, model, qpts[i], m))
        ell = d - rank(QQ, rows, budget) + 1
        if ell >= 2:
            wit = "; ".join(f"{m}x deg1 {pts[i]}" for i, m in sorted(mult.items()))
            return GonalityCertificate("upper_witness", "Q", d, True, shapes,
                                       wit, model.content_hash(), searched)
    return GonalityCertificate("upper_witness", "Q", d, False, shapes, None,
                               model.content_hash(), searched)
