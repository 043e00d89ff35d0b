import random

import pytest

from modgon.engine import (RULES, EngineError, canonical_label, propagate,
                           replay)
from modgon.facts import parse_curve_ref, parse_facts


def key(ref):
    return canonical_label(parse_curve_ref(ref))


def test_table_run_is_consistent(table_ledger):
    for state in table_ledger.curves.values():
        assert state.q_hi is None or state.q_lo <= state.q_hi
        assert state.c_hi is None or state.c_lo <= state.c_hi


def test_c_gonality_never_exceeds_q(table_ledger):
    for s in table_ledger.curves.values():
        if s.q_hi is not None and s.c_hi is not None:
            assert s.c_hi <= s.q_hi
        assert s.q_lo >= s.c_lo


def test_sample_conclusions(table_ledger):
    s = table_ledger.state(key("29:12"))
    assert (s.q_lo, s.q_hi, s.c_lo, s.c_hi) == (6, 6, 5, 5)
    s = table_ledger.state(key("25:7"))
    assert (s.q_lo, s.q_hi, s.c_lo, s.c_hi) == (4, 4, 3, 3)
    s = table_ledger.state(key("21:8"))
    assert (s.q_hi, s.c_hi) == (2, 2)


def test_projection_lower_bounds_respected(table_ledger):
    # (41-style) lattice coherence at level 40: the big curve dominates
    big = table_ledger.state(key("40:9"))
    small = table_ledger.state(key("40:9,11"))
    assert big.q_lo >= small.q_lo


def test_order_independence(paper_facts):
    base = propagate(list(range(21, 41)), paper_facts).snapshot()
    for seed in (1, 2, 3):
        rules = list(RULES)
        random.Random(seed).shuffle(rules)
        shuffled = propagate(list(range(21, 41)), paper_facts,
                             rules=tuple(rules)).snapshot()
        assert shuffled == base


def test_replay_reproduces_ledger(paper_facts):
    ledger = propagate(list(range(21, 41)), paper_facts)
    again = replay(list(range(21, 41)), paper_facts, ledger.derivations)
    assert again.snapshot() == ledger.snapshot()


def test_every_derivation_has_premises(table_ledger):
    for d in table_ledger.derivations:
        assert d.premises
        assert d.rule.startswith("R-")


def test_inconsistent_facts_raise(paper_facts):
    poison = parse_facts("gonality 29:12 Q hi 2 source=bogus\n")
    with pytest.raises(EngineError):
        propagate([29], paper_facts + poison)


def test_bad_prime_rejected(paper_facts):
    poison = parse_facts("point_count 26:5 2 1 40 source=bogus\n")
    with pytest.raises(EngineError, match="bad prime"):
        propagate([26], paper_facts + poison)


def test_tower_rule_fires_only_with_rational_point(paper_facts):
    no_cusp = [f for f in paper_facts
               if not (f.kind == "global_class"
                       and f.payload[0] == "rational_cusp")]
    led = propagate(list(range(33, 36)), no_cusp)
    assert not any(d.rule == "R-tower" for d in led.derivations)


def test_ablation_withholding_fp_bounds_weakens_rows(paper_facts):
    kept = [f for f in paper_facts if f.kind != "fp_lower"]
    led = propagate(list(range(21, 41)), kept)
    s = led.state(key("29:12"))
    assert s.q_lo < 6  # the certificate was the only source of this bound


def test_external_curves_enter_ledger(paper_facts):
    led = propagate([34], paper_facts)
    ext = led.state("ext:17.72.1.a.2")
    assert ext.q_hi == 2
