"""Graded Betti number beta_{2,2} of a canonical coordinate ring.

beta_{2,2} is the dimension of the middle homology of

    Lambda^3 V (x) R_1  ->  Lambda^2 V (x) R_2  ->  Lambda^1 V (x) R_3

where V = R_1 is the space of linear forms and R_d the degree-d piece of
the homogeneous coordinate ring.  Vanishing over F_p for a good prime
implies vanishing in characteristic zero (ranks can only drop on
specialisation, so Betti numbers can only grow), which is the direction
the gonality rule consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

import numpy as np

from .linalg import Budget, rank, rank_modp
from .model import ModelError, QuadricModel

Monomial = tuple[int, ...]


def _monomials(n: int, d: int) -> list[Monomial]:
    out = []
    for comb in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in comb:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)  # graded lex, deterministic


def _rref(field, rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not field.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, v) for v in m[r]]
        for i in range(len(m)):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


@dataclass(frozen=True)
class GradedPieces:
    genus: int
    monomials2: tuple[Monomial, ...]
    monomials3: tuple[Monomial, ...]
    basis2: tuple[int, ...]  # indices of monomials spanning R_2
    basis3: tuple[int, ...]
    nf2: dict  # monomial index -> coefficient vector over basis2
    nf3: dict

    @property
    def dim_r2(self) -> int:
        return len(self.basis2)

    @property
    def dim_r3(self) -> int:
        return len(self.basis3)


@dataclass(frozen=True)
class KoszulResult:
    beta22: int
    field_desc: str
    rank_first: int   # Lambda^3 V (x) R_1 -> Lambda^2 V (x) R_2
    rank_second: int  # Lambda^2 V (x) R_2 -> Lambda^1 V (x) R_3
    dim_middle: int


def _quadric_vector(field, quadric, index2) -> list:
    v = [field.zero] * len(index2)
    for mono, c in quadric:
        v[index2[mono]] = field.add(v[index2[mono]], field.from_int(c))
    return v


def _normal_forms(field, rref_rows, pivots, nmono):
    """Map each monomial index to its class in the quotient basis."""
    piv_set = set(pivots)
    free = [c for c in range(nmono) if c not in piv_set]
    free_pos = {c: i for i, c in enumerate(free)}
    nf = {}
    for c in free:
        vec = [field.zero] * len(free)
        vec[free_pos[c]] = field.one
        nf[c] = vec
    for r, c in enumerate(pivots):
        vec = [field.neg(rref_rows[r][j]) for j in free]
        nf[c] = vec
    return free, nf


def graded_pieces(model: QuadricModel, field=None) -> GradedPieces:
    """Monomial bases of R_2 and R_3 with normal-form tables.

    Requires a canonical model whose ideal is generated by the quadrics
    (non-trigonal, not a plane quintic); the dimension checks reject
    anything else.
    """
    g = model.genus
    if g < 5:
        raise ModelError("graded pieces need genus >= 5")
    if field is None:
        if model.field is None:
            from .fields import QQ

            field = QQ
        else:
            field = model.field
    mon2 = _monomials(g, 2)
    mon3 = _monomials(g, 3)
    index2 = {m: i for i, m in enumerate(mon2)}
    index3 = {m: i for i, m in enumerate(mon3)}

    q_rows = [_quadric_vector(field, q, index2) for q in model.quadrics]
    rref2, piv2 = _rref(field, q_rows)
    if len(piv2) != (g - 2) * (g - 3) // 2:
        raise ModelError(f"{model.label}: quadrics are linearly dependent mod ideal")
    basis2, nf2 = _normal_forms(field, rref2, piv2, len(mon2))
    if len(basis2) != 3 * (g - 1):
        raise ModelError(
            f"{model.label}: dim R_2 = {len(basis2)}, expected {3 * (g - 1)}")

    cubic_rows = []
    for i in range(g):
        for q in model.quadrics:
            v = [field.zero] * len(mon3)
            for mono, c in q:
                e = list(mono)
                e[i] += 1
                j = index3[tuple(e)]
                v[j] = field.add(v[j], field.from_int(c))
            cubic_rows.append(v)
    rref3, piv3 = _rref(field, cubic_rows)
    basis3, nf3 = _normal_forms(field, rref3, piv3, len(mon3))
    if len(basis3) != 5 * (g - 1):
        raise ModelError(
            f"{model.label}: dim R_3 = {len(basis3)}, expected {5 * (g - 1)}")
    return GradedPieces(g, tuple(mon2), tuple(mon3),
                        tuple(basis2), tuple(basis3), nf2, nf3)


def _mul_index(mono: Monomial, i: int) -> Monomial:
    e = list(mono)
    e[i] += 1
    return tuple(e)


def betti_22(model: QuadricModel, field=None, budget: Budget | None = None) -> KoszulResult:
    """Exact beta_{2,2} by ranks of the two Koszul differentials."""
    gp = graded_pieces(model, field)
    if field is None:
        if model.field is None:
            from .fields import QQ

            field = QQ
        else:
            field = model.field
    g = gp.genus
    index2 = {m: i for i, m in enumerate(gp.monomials2)}
    index3 = {m: i for i, m in enumerate(gp.monomials3)}
    pairs = list(combinations(range(g), 2))
    pair_pos = {pq: i for i, pq in enumerate(pairs)}
    triples = list(combinations(range(g), 3))
    d2_cols = g * gp.dim_r3
    dim_middle = len(pairs) * gp.dim_r2

    # second map: (e_i ^ e_j) (x) r  |->  e_i (x) x_j r - e_j (x) x_i r
    d2_rows = []
    for (i, j) in pairs:
        for b in gp.basis2:
            row = [field.zero] * d2_cols
            mono = gp.monomials2[b]
            for sign, tgt, mul in ((field.one, i, j), (field.neg(field.one), j, i)):
                vec = gp.nf3[index3[_mul_index(mono, mul)]]
                off = tgt * gp.dim_r3
                for t, val in enumerate(vec):
                    row[off + t] = field.add(row[off + t], field.mul(sign, val))
            d2_rows.append(row)

    # first map: (e_i ^ e_j ^ e_k) (x) x_l |-> alternating sum of pairs
    d3_rows = []
    for (i, j, k) in triples:
        for l in range(g):
            row = [field.zero] * dim_middle
            for sign_int, pq, mul in ((1, (i, j), k), (-1, (i, k), j), (1, (j, k), i)):
                vec = gp.nf2[index2[_mul_index(_unit(g, l), mul)]]
                sign = field.from_int(sign_int)
                off = pair_pos[pq] * gp.dim_r2
                for t, val in enumerate(vec):
                    row[off + t] = field.add(row[off + t], field.mul(sign, val))
            d3_rows.append(row)

    if getattr(field, "k", None) == 1:
        r2 = rank_modp(np.array(d2_rows, dtype=np.int64), field.p)
        r3 = rank_modp(np.array(d3_rows, dtype=np.int64), field.p)
    else:
        r2 = rank(field, d2_rows, budget)
        r3 = rank(field, d3_rows, budget)
    beta = (dim_middle - r2) - r3
    if beta < 0:
        raise ModelError(f"{model.label}: negative beta_22 = {beta}")  # pragma: no cover
    return KoszulResult(beta, repr(field), r3, r2, dim_middle)


def _unit(g: int, l: int) -> Monomial:
    e = [0] * g
    e[l] += 1
    return tuple(e)
