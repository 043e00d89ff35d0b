"""Canonical curve models cut out by quadrics, and their reductions.

A model lives in P^{g-1} with integer coefficients; reducing mod a good
prime gives the object the point/divisor machinery works on.  The file
format is line based:

    label  g5-fixture-a
    N      0
    delta  -
    genus  5
    good_primes 3 5 7
    quadric x0^2 + 2*x1*x2 - x3^2
    ...

Synthetic fixtures use N = 0 and delta "-"; modular models carry the level
and a generator list.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

from .fields import FF

Monomial = tuple[int, ...]  # exponent vector, length = ambient dim = genus
Quadric = tuple[tuple[Monomial, int], ...]


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class QuadricModel:
    label: str
    N: int
    delta_gens: tuple[int, ...]
    genus: int
    good_primes: tuple[int, ...]
    quadrics: tuple[Quadric, ...]
    field: FF | None = None  # None = integer model over Q

    def __post_init__(self):
        g = self.genus
        expected = (g - 2) * (g - 3) // 2
        if len(self.quadrics) != expected:
            raise ModelError(
                f"{self.label}: genus {g} needs {expected} quadrics, "
                f"got {len(self.quadrics)}"
            )
        for q in self.quadrics:
            for mono, _ in q:
                if len(mono) != g or sum(mono) != 2:
                    raise ModelError(f"{self.label}: non-quadric monomial {mono}")

    @property
    def dim(self) -> int:
        """Number of ambient coordinates (= genus for a canonical model)."""
        return self.genus

    def content_hash(self) -> str:
        return hashlib.sha256(format_model(self).encode()).hexdigest()[:16]


def reduce_model(model: QuadricModel, field: FF) -> QuadricModel:
    """Reduce an integer model mod p; monomials with vanishing coefficient
    are dropped.  Smoothness is re-checked by the caller via points."""
    if model.field is not None:
        raise ModelError("model already reduced")
    p = field.p
    if p not in model.good_primes:
        raise ModelError(f"{p} is not a good prime for {model.label}")
    if model.N and model.N % p == 0:
        raise ModelError(f"p={p} divides the level N={model.N}")
    quadrics = []
    for q in model.quadrics:
        terms = tuple((mono, c % p) for mono, c in q if c % p)
        if not terms:
            raise ModelError(f"{model.label}: a quadric vanishes identically mod {p}")
        quadrics.append(terms)
    return QuadricModel(
        model.label, model.N, model.delta_gens, model.genus,
        model.good_primes, tuple(quadrics), field,
    )


def evaluate_quadric(field, quadric: Quadric, point: tuple) -> object:
    acc = field.zero
    for mono, c in quadric:
        term = field.from_int(c)
        for i, e in enumerate(mono):
            for _ in range(e):
                term = field.mul(term, point[i])
        acc = field.add(acc, term)
    return acc


def on_model(field, model: QuadricModel, point: tuple) -> bool:
    return all(field.is_zero(evaluate_quadric(field, q, point)) for q in model.quadrics)


def jacobian_at(field, model: QuadricModel, point: tuple) -> list[list]:
    """Rows = quadrics, columns = coordinates; entries dQ/dx_j at point."""
    n = model.dim
    rows = []
    for q in model.quadrics:
        row = [field.zero] * n
        for mono, c in q:
            coeff = field.from_int(c)
            for j, e in enumerate(mono):
                if e == 0:
                    continue
                # derivative of the monomial w.r.t. x_j
                term = field.mul(coeff, field.from_int(e))
                for i, ei in enumerate(mono):
                    rep = ei - 1 if i == j else ei
                    for _ in range(rep):
                        term = field.mul(term, point[i])
                row[j] = field.add(row[j], term)
        rows.append(row)
    return rows


def is_smooth_at(field, model: QuadricModel, point: tuple) -> bool:
    from .linalg import rank

    return rank(field, jacobian_at(field, model, point)) == model.dim - 2


# -- file format -------------------------------------------------------------

_TERM_RE = re.compile(r"^(?:(\d+)\s*\*?\s*)?((?:x\d+(?:\^\d+)?\s*\*?\s*)*)$")
_VAR_RE = re.compile(r"x(\d+)(?:\^(\d+))?")


def _parse_quadric(line: str, g: int) -> Quadric:
    # split into signed terms
    text = line.replace("-", "+-").replace(" ", "")
    terms = [t for t in text.split("+") if t]
    out = []
    for t in terms:
        sign = 1
        if t.startswith("-"):
            sign, t = -1, t[1:]
        m = _TERM_RE.match(t)
        if not m:
            raise ModelError(f"cannot parse quadric term {t!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        expo = [0] * g
        for vm in _VAR_RE.finditer(m.group(2) or ""):
            idx = int(vm.group(1))
            if idx >= g:
                raise ModelError(f"variable x{idx} out of range for genus {g}")
            expo[idx] += int(vm.group(2)) if vm.group(2) else 1
        if sum(expo) != 2:
            raise ModelError(f"term {t!r} is not quadratic")
        out.append((tuple(expo), sign * coeff))
    merged: dict[Monomial, int] = {}
    for mono, c in out:
        merged[mono] = merged.get(mono, 0) + c
    return tuple(sorted((m, c) for m, c in merged.items() if c))


def parse_model(text: str) -> QuadricModel:
    header: dict[str, str] = {}
    quadric_lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key == "quadric":
            quadric_lines.append(rest.strip())
        else:
            header[key] = rest.strip()
    try:
        label = header["label"]
        N = int(header["N"])
        genus = int(header["genus"])
        primes = tuple(int(x) for x in header["good_primes"].split())
    except KeyError as e:
        raise ModelError(f"missing model header field: {e}") from None
    delta_raw = header.get("delta", "-")
    delta_gens = () if delta_raw in ("-", "") else tuple(
        int(x) for x in delta_raw.split(",")
    )
    quadrics = tuple(_parse_quadric(l, genus) for l in quadric_lines)
    return QuadricModel(label, N, delta_gens, genus, primes, quadrics)


def _format_term(mono: Monomial, c: int) -> str:
    vars_part = "*".join(
        f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(mono) if e
    )
    mag = abs(c)
    body = vars_part if mag == 1 else f"{mag}*{vars_part}"
    return ("- " if c < 0 else "+ ") + body


def format_model(model: QuadricModel) -> str:
    lines = [
        f"label {model.label}",
        f"N {model.N}",
        "delta " + (",".join(map(str, model.delta_gens)) if model.delta_gens else "-"),
        f"genus {model.genus}",
        "good_primes " + " ".join(map(str, model.good_primes)),
    ]
    for q in model.quadrics:
        parts = [_format_term(m, c) for m, c in q]
        body = " ".join(parts)
        if body.startswith("+ "):
            body = body[2:]
        lines.append(f"quadric {body}")
    return "\n".join(lines) + "\n"


def load_model(path) -> QuadricModel:
    from pathlib import Path

    return parse_model(Path(path).read_text())
