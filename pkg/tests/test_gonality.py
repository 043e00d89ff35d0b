import pytest

from modgon.gonality import (admissible_shapes, format_certificate,
                             gonality_lower_bound, gonality_upper_search,
                             gonality_upper_search_q, min_rational_parts)
from modgon.linalg import Budget, BudgetExceeded


def test_min_rational_parts():
    assert min_rational_parts(0, 3) == 0
    assert min_rational_parts(1, 3) == 1
    assert min_rational_parts(6, 3) == 2  # ceil(6/4)
    assert min_rational_parts(9, 3) == 3


def test_admissible_shapes():
    assert admissible_shapes(3, 0) == ((1, 1, 1), (1, 2), (3,))
    assert admissible_shapes(3, 2) == ((1, 1, 1),)
    assert admissible_shapes(4, 2) == ((1, 1, 1, 1), (1, 1, 2))
    assert admissible_shapes(2, 3) == ()


def test_lower_bound_degree_three_certified(g5, g5_pool):
    cert = gonality_lower_bound(g5, 3, pool=g5_pool)
    assert cert.certified
    assert cert.kind == "fp_lower"
    assert cert.witness is None
    assert cert.searched > 0
    assert "gon_F_3 > 3" in cert.statement()


def test_lower_bound_degree_four_finds_tetragonal_witness(g5, g5_pool):
    cert = gonality_lower_bound(g5, 4, pool=g5_pool)
    assert not cert.certified
    assert cert.witness is not None


def test_prune_agrees_with_unpruned_oracle(g5, g5_pool):
    for d in (2, 3):
        pruned = gonality_lower_bound(g5, d, pool=g5_pool, prune=True)
        oracle = gonality_lower_bound(g5, d, pool=g5_pool, prune=False)
        assert pruned.certified == oracle.certified
        # pruning must never search more divisors than the oracle
        assert pruned.searched <= oracle.searched


def test_upper_witness(g5, g5_pool):
    cert = gonality_upper_search(g5, 4, pool=g5_pool)
    assert cert.certified
    assert "deg1" in cert.witness
    assert cert.statement() == "gon_F_3 <= 4"


def test_no_upper_witness_below_gonality(g5, g5_pool):
    cert = gonality_upper_search(g5, 3, pool=g5_pool)
    assert not cert.certified


def test_upper_search_q(g5_int):
    cert = gonality_upper_search_q(g5_int, 4, height=6)
    assert cert.field_desc == "Q"
    if cert.certified:       # witness only exists if enough small points
        assert "deg1" in cert.witness


def test_certificate_rendering_is_stable(g5, g5_pool):
    a = format_certificate(gonality_lower_bound(g5, 3, pool=g5_pool))
    b = format_certificate(gonality_lower_bound(g5, 3, pool=g5_pool))
    assert a == b
    assert a.endswith("\n")


def test_budget_aborts_search(g5):
    with pytest.raises(BudgetExceeded):
        gonality_lower_bound(g5, 3, budget=Budget(5))
