import pytest

from modgon.fields import ff
from modgon.koszul import betti_22, graded_pieces
from modgon.model import ModelError, QuadricModel, parse_model


def test_graded_dimensions(g5, g10):
    gp5 = graded_pieces(g5)
    assert gp5.dim_r2 == 3 * (g5.genus - 1) == 12
    assert gp5.dim_r3 == 5 * (g5.genus - 1) == 20
    gp10 = graded_pieces(g10)
    assert gp10.dim_r2 == 27
    assert gp10.dim_r3 == 45


def test_betti_complete_intersection_control(g5, g5_int):
    # a (2,2,2) complete intersection canonical curve has beta_2,2 = 3
    for field in (ff(3, 1), ff(5, 1)):
        model = g5 if field.p == 3 else g5_int
        res = betti_22(model, field=field)
        assert res.beta22 == 3
    assert betti_22(g5_int).beta22 == 3  # over Q


def test_betti_vanishes_on_general_curve(g10):
    res = betti_22(g10, field=ff(3, 1))
    assert res.beta22 == 0
    assert res.dim_middle == 1215
    assert (res.rank_first, res.rank_second) == (828, 387)


def test_betti_extension_invariance(g5):
    assert betti_22(g5, field=ff(3, 2)).beta22 == \
        betti_22(g5, field=ff(3, 1)).beta22


def test_low_genus_rejected():
    text = ("label tiny\nN 0\ngenus 4\ngood_primes 3\n"
            "quadric x0^2 + x1*x2\n")
    with pytest.raises(ModelError):
        graded_pieces(parse_model(text))


def test_quadric_count_checked(g5):
    # (g-2)(g-3)/2 quadrics are required at model construction already
    with pytest.raises(ModelError):
        QuadricModel(g5.label, g5.N, g5.delta_gens, g5.genus,
                     g5.good_primes, g5.quadrics[:2], g5.field)
