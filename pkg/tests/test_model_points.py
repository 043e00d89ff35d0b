import pytest

from modgon.fields import ff
from modgon.model import (ModelError, format_model, is_smooth_at, on_model,
                          parse_model)
from modgon.points import (closed_points, count_points, enumerate_points,
                           enumerate_points_bruteforce, frobenius_orbit,
                           rational_points_q)


def test_parse_format_roundtrip(g5_int):
    text = format_model(g5_int)
    again = parse_model(text)
    assert again == g5_int
    assert again.content_hash() == g5_int.content_hash()


def test_content_hash_fixed(g5_int, g5, g10):
    # frozen: any change to the shipped models must be deliberate
    assert g5_int.content_hash() == "07590b742caacd64"
    assert g5.content_hash() == "7d40e74a5da6649a"
    assert g10.content_hash() == "b3dd89fe6aa4d13f"


def test_parse_rejects_garbage():
    with pytest.raises(ModelError):
        parse_model("label x\nN 0\ngenus 5\ngood_primes 3\nquadric x0*x1*x2\n")
    with pytest.raises(ModelError):
        parse_model("label x\nN 0\ngenus 5\ngood_primes 3\nquadric x9^2\n")


def test_point_counts_match_bruteforce(g5):
    for k in (1, 2):
        fast = count_points(g5, k)
        slow = len(enumerate_points_bruteforce(ff(3, k), g5))
        assert fast == slow


def test_point_counts_frozen(g5, g10):
    assert [count_points(g5, k) for k in (1, 2, 3)] == [6, 16, 39]
    assert count_points(g10, 1) == 4


def test_all_enumerated_points_on_model_and_smooth(g5):
    for k in (1, 2):
        field = ff(3, k)
        for pt in enumerate_points(field, g5):
            assert on_model(field, g5, pt)
            assert is_smooth_at(field, g5, pt)


def test_frobenius_orbit_degree_divides(g5):
    field = ff(3, 2)
    for pt in enumerate_points(field, g5):
        orbit = frobenius_orbit(field, pt)
        assert len(orbit) in (1, 2)


def test_closed_points_histogram(g5_pool):
    hist = {}
    for cp in g5_pool:
        hist[cp.degree] = hist.get(cp.degree, 0) + 1
    assert hist == {1: 6, 2: 5, 3: 11, 4: 23}


def test_closed_points_consistent_with_counts(g5, g5_pool):
    # N_k = sum over d | k of d * (#closed points of degree d)
    hist = {}
    for cp in g5_pool:
        hist[cp.degree] = hist.get(cp.degree, 0) + 1
    for k in (1, 2, 3):
        total = sum(d * n for d, n in hist.items() if k % d == 0)
        assert total == count_points(g5, k)


def test_rational_points_q(g5_int, g5):
    from math import gcd
    with pytest.raises(ValueError):
        rational_points_q(g5, 3)  # reduced models are rejected
    pts = rational_points_q(g5_int, 3)
    assert pts == sorted(pts)
    for pt in pts:  # primitive and on the model (may be empty at this height)
        assert gcd(*pt) == 1
        for q in g5_int.quadrics:
            val = 0
            for mono, c in q:
                term = c
                for i, e in enumerate(mono):
                    term *= pt[i] ** e
                val += term
            assert val == 0
