"""Citable input facts for the bound-propagation engine.

Facts are line-based records.  Every line is `kind payload... source=...`;
a non-empty source is mandatory because these records are exactly the
boundary between what this package computes and what it ingests from the
literature or a database.

Curve references:
  * in-lattice curves are written `N:t1,t2,...` where the tokens generate
    the subgroup together with -1 (tokens may be negative or use `b^e`
    power notation, resolved mod N);
  * external curves (no level/subgroup structure here) are `ext:<label>`;
  * `P1` denotes the projective line (gonality 1).

Malformed generator tokens are rejected with a diagnostic, never guessed
at: a stray `^-1` or a decimal like `-1.4` aborts the parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .arith import DirichletSubgroup, subgroup_from_generators

KINDS = {
    "classification",   # curve flag
    "global_class",     # lattice-wide classification statement
    "point_count",      # curve p k count
    "fp_lower",         # curve p lo          (gon_{F_p} >= lo, a certificate)
    "gonality",         # curveref field lo|hi value
    "genus",            # ext:label g
    "map",              # curve target degree (dominant rational map)
    "betti22",          # curve field value   (field: prime or 0 for Q)
}

CLASS_FLAGS = {
    "hyperelliptic", "not_hyperelliptic",
    "trigonal_q", "not_trigonal_q",
}

GLOBAL_FLAGS = {
    "rational_cusp",          # every X_Delta(N) has a rational point
    "only_hyperelliptic",     # payload: the unique hyperelliptic curve
    "trigonal_genus_le_4",    # every trigonal curve has genus <= 4
}


class FactError(ValueError):
    pass


_TOKEN_RE = re.compile(r"^-?\d+(\^\d+)?$")


def parse_generator_token(token: str, n: int) -> int:
    """One generator: an integer or `b^e`, reduced mod n."""
    if not _TOKEN_RE.match(token):
        raise FactError(f"malformed generator token {token!r} (level {n})")
    if "^" in token:
        base, exp = token.split("^")
        return pow(int(base), int(exp), n)
    return int(token) % n


def parse_curve_ref(ref: str) -> DirichletSubgroup:
    """`N:t1,t2,...` -> the subgroup <-1, t1, t2, ...> of (Z/N)^x."""
    if ":" not in ref:
        raise FactError(f"bad curve reference {ref!r}")
    head, tail = ref.split(":", 1)
    try:
        n = int(head)
    except ValueError:
        raise FactError(f"bad level in curve reference {ref!r}") from None
    gens = [parse_generator_token(t, n) for t in tail.split(",") if t]
    return subgroup_from_generators(n, [-1] + gens)


def format_curve(delta: DirichletSubgroup) -> str:
    gens = [g for g in delta.generators if g not in (1, delta.N - 1)]
    return f"{delta.N}:" + ",".join(str(g) for g in gens)


@dataclass(frozen=True)
class Fact:
    kind: str
    payload: tuple[str, ...]
    source: str

    def __post_init__(self):
        if not self.source:
            raise FactError("every fact needs a source")
        if self.kind not in KINDS:
            raise FactError(f"unknown fact kind {self.kind!r}")


def parse_facts(text: str) -> list[Fact]:
    facts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        src = None
        payload = []
        for tok in parts[1:]:
            if tok.startswith("source="):
                src = tok[len("source="):]
            else:
                payload.append(tok)
        kind = parts[0]
        try:
            fact = Fact(kind, tuple(payload), src or "")
            _validate(fact)
        except FactError as e:
            raise FactError(f"line {lineno}: {e}") from None
        facts.append(fact)
    return facts


def _validate(fact: Fact):
    p = fact.payload
    if fact.kind == "classification":
        if len(p) != 2 or p[1] not in CLASS_FLAGS:
            raise FactError(f"bad classification payload {p}")
        parse_curve_ref(p[0])
    elif fact.kind == "global_class":
        if not p or p[0] not in GLOBAL_FLAGS:
            raise FactError(f"bad global classification {p}")
        if p[0] == "only_hyperelliptic":
            parse_curve_ref(p[1])
    elif fact.kind == "point_count":
        if len(p) != 4:
            raise FactError(f"point_count needs curve p k count, got {p}")
        parse_curve_ref(p[0])
        if int(p[3]) < 0 or int(p[1]) < 2 or int(p[2]) < 1:
            raise FactError("non-positive point-count payload")
    elif fact.kind == "fp_lower":
        parse_curve_ref(p[0])
        if len(p) != 3 or int(p[2]) < 1:
            raise FactError(f"bad fp_lower payload {p}")
    elif fact.kind == "gonality":
        if len(p) != 4 or p[1] not in ("Q", "C") or p[2] not in ("lo", "hi"):
            raise FactError(f"bad gonality payload {p}")
        if not p[0].startswith("ext:"):
            parse_curve_ref(p[0])
        if int(p[3]) < 1:
            raise FactError("gonality values are positive")
    elif fact.kind == "genus":
        if len(p) != 2 or not p[0].startswith("ext:") or int(p[1]) < 0:
            raise FactError(f"bad genus payload {p}")
    elif fact.kind == "map":
        if len(p) != 3:
            raise FactError(f"map needs curve target degree, got {p}")
        parse_curve_ref(p[0])
        if p[1] != "P1" and not p[1].startswith("ext:"):
            parse_curve_ref(p[1])
        if int(p[2]) < 1:
            raise FactError("map degree is positive")
    elif fact.kind == "betti22":
        if len(p) != 3 or int(p[2]) < 0:
            raise FactError(f"bad betti22 payload {p}")
        parse_curve_ref(p[0])


def load_facts(path) -> list[Fact]:
    with open(path) as f:
        return parse_facts(f.read())
