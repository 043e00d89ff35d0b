"""Acceptance gate: one test per criterion, each emitting a PASS line with
its measured runtime. Tolerances are exact unless stated in the assert."""

import random
import time
from math import lcm

from modgon.engine import canonical_label, propagate
from modgon.facts import parse_curve_ref
from modgon.fields import ff
from modgon.gonality import (format_certificate, gonality_lower_bound,
                             gonality_upper_search)
from modgon.koszul import betti_22, graded_pieces
from modgon.linalg import rank
from modgon.model import ModelError
from modgon.report import compare_to_golden, parse_golden, render_json_lines, table_rows
from modgon.rr import (divisor, divisor_sub, local_expansion, riemann_roch,
                       section_divisor)
from modgon.congruence import curve_invariants


def _report(criterion, elapsed, detail):
    print(f"CRITERION {criterion} PASS ({elapsed:.1f}s): {detail}")


def test_criterion_1_genus_regression(data_dir):
    t0 = time.time()
    golden = parse_golden((data_dir / "table1_golden.txt").read_text())
    assert len(golden) == 39
    for row in golden:
        n = int(row.curve.split(":", 1)[0])
        delta = parse_curve_ref(row.curve)
        assert curve_invariants(n, delta).genus == row.genus, row.curve
    elapsed = time.time() - t0
    assert elapsed < 60
    _report(1, elapsed, "genus matches the published table on all 39 rows")


# (curve, published index); the 1763 entry is printed as such in the source
# table but is not a multiple of [SL2(Z):Gamma_0(103)] = 104, so no subgroup
# can attain it; the arithmetically forced value for <-1,5^17> is 1768.
KS_TABLE = [
    ("53:2^13", 702), ("58:3^7", 630), ("66:5^5", 720), ("67:2^11", 748),
    ("69:2^11", 1056), ("75:2^5", 600), ("79:3^13", 1040), ("87:2^7", 840),
    ("88:21,5^5", 720), ("89:3^11", 990), ("92:3^11", 1584), ("98:3^7", 1176),
    ("100:3^5", 900), ("101:2^5", 510), ("103:5^17", 1763), ("121:32", 660),
    ("121:2^11", 1452), ("125:32", 750), ("131:2^5", 660), ("131:2^13", 1716),
    ("142:7^5", 1080), ("142:7^7", 1512), ("143:2^5", 840), ("191:19^5", 960),
    ("191:19^19", 3648),
]


def test_criterion_2_index_regression():
    t0 = time.time()
    flagged = []
    for ref, published in KS_TABLE:
        delta = parse_curve_ref(ref)
        mu = curve_invariants(delta.N, delta).mu
        if ref == "103:5^17":
            assert published % 104 != 0  # published cell is impossible
            assert mu == 1768
            flagged.append(f"{ref}: published {published}, computed {mu}")
        else:
            assert mu == published, ref
    elapsed = time.time() - t0
    assert elapsed < 60
    _report(2, elapsed,
            f"24/25 indices exact; flagged impossible cell: {flagged[0]}")


def test_criterion_3_rule_level_reproduction(paper_facts):
    t0 = time.time()
    cs_rows = ["48:7", "48:17", "50:7", "62:5,25", "72:17,19,35",
               "74:23", "98:27"]
    pc_rows = ["71:5", "78:5,31", "80:3,49", "88:21,25", "91:2",
               "96:5", "104:3,25", "104:5,27", "143:8"]
    levels = sorted({parse_curve_ref(r).N for r, _ in KS_TABLE}
                    | {parse_curve_ref(r).N for r in cs_rows + pc_rows}
                    | {36})
    led = propagate(levels, paper_facts)
    for ref, _ in KS_TABLE:
        assert led.state(canonical_label(parse_curve_ref(ref))).c_lo >= 6, ref
    for ref in cs_rows:
        assert led.state(canonical_label(parse_curve_ref(ref))).c_lo >= 6, ref
    for ref in pc_rows:
        assert led.state(canonical_label(parse_curve_ref(ref))).q_lo >= 6, ref
    elapsed = time.time() - t0
    assert elapsed < 10
    _report(3, elapsed, "Kim-Sarnak, Castelnuovo-Severi and point-count "
            "rows all reach their published lower bounds")


def test_criterion_4_table_reproduction(paper_facts, data_dir):
    t0 = time.time()
    ledger = propagate(list(range(21, 41)), paper_facts)
    golden = parse_golden((data_dir / "table1_golden.txt").read_text())
    cmp = compare_to_golden(ledger, golden)
    assert cmp.ok, cmp.mismatches
    assert cmp.matches == 39
    elapsed = time.time() - t0
    assert elapsed < 300
    _report(4, elapsed, "gon_Q exact on all 39 rows; gon_C exact where "
            "the table is definite; 1 malformed cell flagged")


def test_criterion_5_fp_certification(g5, g5_pool):
    t0 = time.time()
    pruned = gonality_lower_bound(g5, 4, pool=g5_pool, prune=True)
    oracle = gonality_lower_bound(g5, 4, pool=g5_pool, prune=False)
    assert pruned.certified == oracle.certified  # identical verdicts
    assert not pruned.certified  # the fixture is tetragonal over F_3
    upper = gonality_upper_search(g5, 4, pool=g5_pool)
    assert upper.certified and upper.witness
    lower3 = gonality_lower_bound(g5, 3, pool=g5_pool)
    assert lower3.certified  # gon_{F_3} > 3, so gon_{F_3} = 4 exactly
    elapsed = time.time() - t0
    assert elapsed < 1800
    _report(5, elapsed, "pruned == unpruned verdict at d=4; upper witness "
            "found; gon_{F_3} = 4 certified exactly")


def _split_section_g5(model, pool):
    from itertools import product
    for h in product(range(3), repeat=5):
        if not any(h) or next(c for c in h if c) != 1:
            continue
        try:
            return section_divisor(model, h, 4, pool=pool)
        except ModelError:
            continue
    raise AssertionError("no split hyperplane on the genus-5 fixture")


def test_criterion_6_riemann_roch_properties(g5, g5_pool, g10, g10_pool):
    t0 = time.time()
    pool10, h10 = g10_pool
    sections = {
        "g5": (g5, _split_section_g5(g5, g5_pool)),
        "g10": (g10, section_divisor(g10, h10, 4, pool=pool10)),
    }
    # l(hyperplane section) = g and deg = 2g-2 on every fixture
    for model, sec in sections.values():
        assert sec.degree == 2 * model.genus - 2
        assert riemann_roch(model, sec).ell == model.genus
    # l(single rational point) = 1
    for model, pool in ((g5, g5_pool), (g10, pool10)):
        for cp in pool:
            if cp.degree == 1:
                assert riemann_roch(model, divisor(model, [(cp, 1)])).ell == 1
    rng = random.Random(20240817)
    checked = 0
    failures = 0
    while checked < 500:
        name = "g5" if checked % 5 else "g10"
        model, sec = sections[name]
        items = [(cp, rng.randint(0, m)) for cp, m in sec.points]
        sub = divisor(model, [(cp, m) for cp, m in items if m])
        if sub.degree in (0, sec.degree):
            continue
        l_d = riemann_roch(model, sub).ell
        l_k = riemann_roch(model, divisor_sub(sec, sub)).ell
        if l_d - l_k != sub.degree - model.genus + 1:
            failures += 1
        # field-extension invariance on a sample of the multiplicity-free part
        if checked % 50 == 0:
            free = [cp for cp, _ in sub.points][:3]
            div0 = divisor(model, [(cp, 1) for cp in free])
            base = riemann_roch(model, div0)
            big = ff(3, 2 * lcm(*[cp.field_degree for cp in free]))
            rows = []
            for cp in free:
                emb = big.embedding_from(ff(3, cp.field_degree))
                for conj in cp.orbit:
                    pt = tuple(emb(c) for c in conj)
                    rows.extend(list(r) for r in local_expansion(big, model, pt, 1))
            if rank(big, rows) - 1 != base.span_dim:
                failures += 1
        checked += 1
    assert failures == 0
    elapsed = time.time() - t0
    assert elapsed < 600
    _report(6, elapsed, "500 random divisors: duality, section dimension, "
            "single-point and extension-invariance checks all pass")


def test_criterion_7_koszul_certification(g5, g5_int, g10):
    t0 = time.time()
    for model in (g5, g10):
        gp = graded_pieces(model)
        assert gp.dim_r2 == 3 * (model.genus - 1)
        assert gp.dim_r3 == 5 * (model.genus - 1)
    # vanishing certificate on the general fixture (mod 3 certifies char 0
    # by semicontinuity)
    assert betti_22(g10, field=ff(3, 1)).beta22 == 0
    # non-vanishing control: the tetragonal complete intersection
    assert betti_22(g5, field=ff(3, 1)).beta22 == 3
    assert betti_22(g5_int).beta22 == 3  # over Q directly
    elapsed = time.time() - t0
    assert elapsed < 300
    _report(7, elapsed, "beta_2,2 = 0 certified on the general fixture, "
            "= 3 on the tetragonal control; graded dimensions exact")


def test_criterion_8_determinism(paper_facts, g5, g5_pool):
    t0 = time.time()
    reports = []
    for _ in range(2):
        ledger = propagate(list(range(21, 41)), paper_facts)
        reports.append(render_json_lines(table_rows(ledger)).encode())
    assert reports[0] == reports[1]
    certs = [format_certificate(
        gonality_lower_bound(g5, 3, pool=g5_pool)).encode()
        for _ in range(2)]
    assert certs[0] == certs[1]
    elapsed = time.time() - t0
    assert elapsed < 300
    _report(8, elapsed, "consecutive runs byte-identical for reports "
            "and certificates")
