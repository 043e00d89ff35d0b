"""Bound propagation for gonality intervals over a subgroup lattice.

Every curve carries intervals gon_Q in [lo,hi], gon_C in [lo,hi] and
gon_{F_p} in [lo,hi] per prime.  Rules only ever narrow intervals, so the
fixed point exists, is reached in finitely many passes, and is independent
of the order in which rules fire.  Every improvement is recorded as a
replayable Derivation; an interval with lo > hi is a hard error naming the
clashing derivations, since it means a wrong input fact or a bug.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, gcd

from .arith import DirichletSubgroup, enumerate_deltas, minimal_generators, unit_group
from .congruence import curve_invariants, kim_sarnak_floor, projection_degree
from .facts import Fact, FactError, parse_curve_ref

INF = None  # open upper bound


class EngineError(RuntimeError):
    pass


def canonical_label(delta: DirichletSubgroup) -> str:
    gens = minimal_generators(delta)
    shown = [str(g) if g != delta.N - 1 else "-1" for g in gens]
    return f"{delta.N}:" + ",".join(shown)


@dataclass
class CurveState:
    key: str
    delta: DirichletSubgroup | None  # None for external curves
    genus: int | None
    mu: int | None
    q_lo: int = 1
    q_hi: int | None = INF
    c_lo: int = 1
    c_hi: int | None = INF
    fp_lo: dict = field(default_factory=dict)  # prime -> lower bound
    flags: set = field(default_factory=set)

    def interval(self, fld: str) -> tuple[int, int | None]:
        return (self.q_lo, self.q_hi) if fld == "Q" else (self.c_lo, self.c_hi)


@dataclass(frozen=True)
class Derivation:
    rule: str
    curve: str
    fld: str       # "Q", "C", or "F_p"
    bound: str     # "lo" | "hi"
    value: int
    premises: tuple[str, ...]


class BoundLedger:
    def __init__(self):
        self.curves: dict[str, CurveState] = {}
        self.derivations: list[Derivation] = []

    def state(self, key: str) -> CurveState:
        return self.curves[key]

    def snapshot(self) -> dict:
        return {k: (s.q_lo, s.q_hi, s.c_lo, s.c_hi, dict(s.fp_lo))
                for k, s in sorted(self.curves.items())}

    def _apply(self, d: Derivation) -> bool:
        s = self.curves[d.curve]
        if d.fld.startswith("F_"):
            p = int(d.fld[2:])
            if d.value <= s.fp_lo.get(p, 1):
                return False
            s.fp_lo[p] = d.value
            self.derivations.append(d)
            return True
        lo, hi = s.interval(d.fld)
        if d.bound == "lo":
            if d.value <= lo:
                return False
            lo = d.value
        else:
            if hi is not INF and d.value >= hi:
                return False
            hi = d.value
        if hi is not INF and lo > hi:
            clash = [x for x in self.derivations
                     if x.curve == d.curve and x.fld == d.fld]
            raise EngineError(
                f"inconsistent interval for {d.curve} over {d.fld}: "
                f"[{lo},{hi}] after {d}; prior derivations: {clash}")
        if d.fld == "Q":
            s.q_lo, s.q_hi = lo, hi
        else:
            s.c_lo, s.c_hi = lo, hi
        self.derivations.append(d)
        return True


def _resolve_targets(facts: list[Fact]) -> dict[str, dict]:
    """External curves mentioned in facts, with their cited attributes."""
    ext: dict[str, dict] = {}
    for f in facts:
        for i, tok in enumerate(f.payload):
            if isinstance(tok, str) and tok.startswith("ext:"):
                ext.setdefault(tok, {})
    for f in facts:
        if f.kind == "genus" and f.payload[0].startswith("ext:"):
            ext[f.payload[0]]["genus"] = int(f.payload[1])
    return ext


def build_ledger(levels, facts: list[Fact]) -> BoundLedger:
    """Universe: every proper intermediate subgroup at each level, plus the
    external curves the facts cite."""
    ledger = BoundLedger()
    for n in sorted(set(levels)):
        for delta in enumerate_deltas(n, proper_only=True):
            inv = curve_invariants(n, delta)
            key = canonical_label(delta)
            ledger.curves[key] = CurveState(key, delta, inv.genus, inv.mu)
    for label, attrs in sorted(_resolve_targets(facts).items()):
        ledger.curves[label] = CurveState(label, None, attrs.get("genus"), None)
    return ledger


def _fact_curve_key(ref: str) -> str:
    if ref.startswith("ext:"):
        return ref
    return canonical_label(parse_curve_ref(ref))


def _global_flags(facts: list[Fact]) -> dict:
    out = {"rational_cusp": False, "only_hyperelliptic": None,
           "trigonal_genus_le_4": False}
    for f in facts:
        if f.kind != "global_class":
            continue
        if f.payload[0] == "rational_cusp":
            out["rational_cusp"] = True
        elif f.payload[0] == "only_hyperelliptic":
            out["only_hyperelliptic"] = _fact_curve_key(f.payload[1])
        elif f.payload[0] == "trigonal_genus_le_4":
            out["trigonal_genus_le_4"] = True
    return out


def _is_nonhyperelliptic(ledger, key, gflags) -> bool:
    s = ledger.curves.get(key)
    if s is None:
        return False
    if "not_hyperelliptic" in s.flags:
        return True
    if "hyperelliptic" in s.flags:
        return False
    if s.delta is not None and gflags["only_hyperelliptic"] is not None:
        return key != gflags["only_hyperelliptic"] and (s.genus or 0) >= 3
    return False


# ---------------------------------------------------------------------------
# rules: each yields Derivation proposals; _apply keeps only improvements


def rule_trivial_bounds(ledger, facts, gflags, edges):
    for key, s in ledger.curves.items():
        if s.genus is None:
            continue
        if s.genus >= 1:
            for fld in ("Q", "C"):
                yield Derivation("R-positive-genus", key, fld, "lo", 2,
                                 (f"g={s.genus}>=1",))
        if s.genus >= 2:
            for fld in ("Q", "C"):
                yield Derivation("R-poonen-iii", key, fld, "hi", 2 * s.genus - 2,
                                 (f"g={s.genus}",))
            if gflags["rational_cusp"] and s.delta is not None:
                yield Derivation("R-poonen-iv", key, "Q", "hi", s.genus,
                                 (f"g={s.genus}", "rational point (cusp)"))
            yield Derivation("R-poonen-v", key, "C", "hi", (s.genus + 3) // 2,
                             (f"g={s.genus}",))


def rule_field_comparison(ledger, facts, gflags, edges):
    for key, s in ledger.curves.items():
        if s.q_hi is not INF:
            yield Derivation("R-c-le-q", key, "C", "hi", s.q_hi,
                             (f"gon_Q <= {s.q_hi}",))
        if s.c_lo > 1:
            yield Derivation("R-c-le-q", key, "Q", "lo", s.c_lo,
                             (f"gon_C >= {s.c_lo}",))
        for p, lo in sorted(s.fp_lo.items()):
            yield Derivation("R-fp-le-q", key, "Q", "lo", lo,
                             (f"gon_F_{p} >= {lo}",))


def rule_point_count(ledger, facts, gflags, edges):
    for f in facts:
        if f.kind != "point_count":
            continue
        key = _fact_curve_key(f.payload[0])
        if key not in ledger.curves:
            continue
        p, k, count = int(f.payload[1]), int(f.payload[2]), int(f.payload[3])
        s = ledger.curves[key]
        if s.delta is not None and s.delta.N % p == 0:
            raise EngineError(f"point count at bad prime {p} for {key}")
        q = p ** k
        lo = ceil(count / (q + 1))
        if lo > 1:
            yield Derivation("R-point-count", key, "Q", "lo", lo,
                             (f"#C(F_{q})={count} > {lo - 1}*({q}+1)",
                              f"source={f.source}"))


def rule_fp_lower_facts(ledger, facts, gflags, edges):
    for f in facts:
        if f.kind != "fp_lower":
            continue
        key = _fact_curve_key(f.payload[0])
        if key not in ledger.curves:
            continue
        p, lo = int(f.payload[1]), int(f.payload[2])
        s = ledger.curves[key]
        if s.delta is not None and s.delta.N % p == 0:
            raise EngineError(f"F_p bound at bad prime {p} for {key}")
        yield Derivation("R-fp-cert", key, f"F_{p}", "lo", lo,
                         (f"source={f.source}",))


def rule_gonality_facts(ledger, facts, gflags, edges):
    for f in facts:
        if f.kind != "gonality":
            continue
        key = _fact_curve_key(f.payload[0])
        if key not in ledger.curves:
            continue
        fld, bound, value = f.payload[1], f.payload[2], int(f.payload[3])
        yield Derivation("R-cited-gonality", key, fld, bound, value,
                         (f"source={f.source}",))


def _ingest_flags(ledger, facts):
    for f in facts:
        if f.kind != "classification":
            continue
        key = _fact_curve_key(f.payload[0])
        if key in ledger.curves:
            ledger.curves[key].flags.add(f.payload[1])


def rule_classification(ledger, facts, gflags, edges):
    for key, s in ledger.curves.items():
        g = s.genus
        if g is None:
            continue
        if "hyperelliptic" in s.flags or (
                gflags["only_hyperelliptic"] == key and s.delta is not None):
            yield Derivation("R-hyperelliptic", key, "C", "hi", 2,
                             ("cited hyperelliptic",))
            continue
        if g >= 3 and _is_nonhyperelliptic(ledger, key, gflags):
            yield Derivation("R-non-hyperelliptic", key, "C", "lo", 3,
                             (f"g={g}", "not hyperelliptic"))
            if g >= 5 and gflags["trigonal_genus_le_4"]:
                yield Derivation("R-non-trigonal", key, "C", "lo", 4,
                                 (f"g={g}>=5", "trigonal curves have g<=4"))
        if "trigonal_q" in s.flags:
            yield Derivation("R-trigonal-q", key, "Q", "hi", 3,
                             ("cited Q-trigonal map",))
        if "not_trigonal_q" in s.flags and s.q_lo >= 3:
            yield Derivation("R-not-trigonal-q", key, "Q", "lo", 4,
                             ("not Q-trigonal", f"gon_Q >= {s.q_lo} >= 3"))


def rule_kim_sarnak(ledger, facts, gflags, edges):
    for key, s in ledger.curves.items():
        if s.mu is None:
            continue
        d = 1
        while s.mu > kim_sarnak_floor(d):
            d += 1
        if d > 1:
            yield Derivation("R-kim-sarnak", key, "C", "lo", d,
                             (f"mu={s.mu} > floor(12000*{d - 1}/119)"
                              f"={kim_sarnak_floor(d - 1)}",))


def rule_castelnuovo_severi(ledger, facts, gflags, edges):
    for f in facts:
        if f.kind != "map" or f.payload[1] == "P1":
            continue
        key = _fact_curve_key(f.payload[0])
        tgt = _fact_curve_key(f.payload[1])
        if key not in ledger.curves or tgt not in ledger.curves:
            continue
        s, t = ledger.curves[key], ledger.curves[tgt]
        if s.genus is None or t.genus is None:
            continue
        m = int(f.payload[2])
        gx, gy = s.genus, t.genus
        n = max(s.c_lo, 2)
        fired = []
        while gx > m * gy + (n - 1) * (m - 1):
            if gcd(m, n) == 1:
                fired.append(f"n={n}: coprime degrees")
            elif m == 2 and n == 4 and _is_nonhyperelliptic(ledger, tgt, gflags):
                fired.append(f"n={n}: degree-2 target not hyperelliptic")
            else:
                break  # factorisation not excluded; stop raising
            n += 1
        if fired and n > s.c_lo:
            yield Derivation(
                "R-castelnuovo-severi", key, "C", "lo", n,
                (f"map of degree {m} to {tgt} (g={gy})", f"g(X)={gx}",
                 *fired, f"source={f.source}"))


def rule_maps(ledger, facts, gflags, edges):
    # Poonen (vi)/(vii) over cited maps and lattice projections
    seen = []
    for f in facts:
        if f.kind != "map":
            continue
        key = _fact_curve_key(f.payload[0])
        if key not in ledger.curves:
            continue
        deg = int(f.payload[2])
        if f.payload[1] == "P1":
            for fld in ("Q", "C"):
                yield Derivation("R-poonen-vi", key, fld, "hi", deg,
                                 (f"degree-{deg} map to P1",
                                  f"source={f.source}"))
            continue
        tgt = _fact_curve_key(f.payload[1])
        if tgt in ledger.curves:
            seen.append((key, tgt, deg, f"source={f.source}"))
    seen.extend(edges)
    for key, tgt, deg, src in seen:
        t = ledger.curves[tgt]
        for fld in ("Q", "C"):
            lo_t, hi_t = t.interval(fld)
            if hi_t is not INF:
                yield Derivation("R-poonen-vi", key, fld, "hi", deg * hi_t,
                                 (f"degree-{deg} map to {tgt}",
                                  f"gon_{fld}({tgt}) <= {hi_t}", src))
            if lo_t > 1:
                yield Derivation("R-poonen-vii", key, fld, "lo", lo_t,
                                 (f"dominant map to {tgt}",
                                  f"gon_{fld}({tgt}) >= {lo_t}", src))


def rule_tower(ledger, facts, gflags, edges):
    if not gflags["rational_cusp"]:
        return
    for key, s in ledger.curves.items():
        if s.delta is None or s.genus is None:
            continue
        if s.genus >= 10 and s.q_lo >= 5:
            yield Derivation(
                "R-tower", key, "C", "lo", 5,
                (f"g={s.genus}>=10", f"gon_Q >= {s.q_lo} >= 5",
                 "rational point (cusp)",
                 "degree-4 map over C would force d'|4 with g(C') <= (4/d'-1)^2"))


def rule_betti(ledger, facts, gflags, edges):
    for f in facts:
        if f.kind != "betti22":
            continue
        key = _fact_curve_key(f.payload[0])
        if key not in ledger.curves or int(f.payload[2]) != 0:
            continue
        s = ledger.curves[key]
        if s.genus is None or s.genus < 5:
            raise EngineError(f"betti rule needs genus >= 5, got {s.genus} for {key}")
        if not _is_nonhyperelliptic(ledger, key, gflags):
            continue  # refuse without the classification
        if not gflags["trigonal_genus_le_4"]:
            continue
        fdesc = "Q" if f.payload[1] == "0" else f"F_{f.payload[1]}"
        yield Derivation("R-betti", key, "C", "lo", 5,
                         (f"beta_2,2 = 0 over {fdesc}", f"g={s.genus}>=5",
                          "not hyperelliptic, not trigonal",
                          f"source={f.source}"))


RULES = (
    rule_trivial_bounds,
    rule_classification,
    rule_gonality_facts,
    rule_point_count,
    rule_fp_lower_facts,
    rule_kim_sarnak,
    rule_castelnuovo_severi,
    rule_maps,
    rule_tower,
    rule_betti,
    rule_field_comparison,
)


def _lattice_edges(ledger) -> list[tuple[str, str, int, str]]:
    edges = []
    by_level: dict[int, list] = {}
    for key, s in ledger.curves.items():
        if s.delta is not None:
            by_level.setdefault(s.delta.N, []).append((key, s.delta))
    for n, items in sorted(by_level.items()):
        for k1, d1 in items:
            for k2, d2 in items:
                if d1 is d2 or not d2.contains(d1):
                    continue
                deg = projection_degree(d1, d2)
                edges.append((k1, k2, deg, "lattice projection"))
    return edges


def propagate(levels, facts: list[Fact], rules=RULES,
              max_rounds: int = 64) -> BoundLedger:
    ledger = build_ledger(levels, facts)
    gflags = _global_flags(facts)
    _ingest_flags(ledger, facts)
    edges = _lattice_edges(ledger)
    for _ in range(max_rounds):
        changed = False
        for rule in rules:
            proposals = sorted(rule(ledger, facts, gflags, edges),
                               key=lambda d: (d.rule, d.curve, d.fld, d.bound))
            for d in proposals:
                changed |= ledger._apply(d)
        if not changed:
            break
    else:
        raise EngineError("propagation did not reach a fixed point")
    _check_lattice_coherence(ledger, edges)
    return ledger


def _check_lattice_coherence(ledger, edges):
    for k1, k2, _, _ in edges:
        s1, s2 = ledger.curves[k1], ledger.curves[k2]
        if s1.q_lo < s2.q_lo or s1.c_lo < s2.c_lo:
            raise EngineError(
                f"lattice coherence violated: {k1} below its quotient {k2}")


def replay(levels, facts: list[Fact], derivations) -> BoundLedger:
    """Reapply a derivation list to fresh initial state; used to audit that
    the ledger is reproducible from its own log."""
    ledger = build_ledger(levels, facts)
    _ingest_flags(ledger, facts)
    for d in derivations:
        ledger._apply(d)
    return ledger
