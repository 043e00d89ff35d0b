from hypothesis import given, strategies as st

from modgon.arith import (DirichletSubgroup, enumerate_deltas, euler_phi,
                          minimal_generators, multiplicative_order,
                          subgroup_from_generators, unit_group)


def test_euler_phi_small():
    assert [euler_phi(n) for n in range(1, 13)] == \
        [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_multiplicative_order():
    assert multiplicative_order(2, 29) == 28
    assert multiplicative_order(12, 29) == 4
    assert multiplicative_order(8, 21) == 2


def test_unit_group_structures():
    assert unit_group(21).structure() == "C2xC6"
    assert unit_group(24).structure() == "C2xC2xC2"
    assert unit_group(40).structure() == "C2xC2xC4"
    assert unit_group(41).structure() == "C40"
    assert unit_group(29).structure() == "C28"


def test_subgroup_from_generators():
    delta = subgroup_from_generators(21, [-1, 8])
    assert delta.elements == (1, 8, 13, 20)
    assert delta.order == 4
    assert delta.contains(subgroup_from_generators(21, [-1]))


def test_minimal_generators_regenerate():
    for n in (21, 33, 40, 41):
        for delta in enumerate_deltas(n):
            gens = minimal_generators(delta)
            assert subgroup_from_generators(n, list(gens)) == delta


def test_enumerate_deltas_counts():
    # proper subgroups strictly between {+-1} and the full unit group
    assert len(enumerate_deltas(41, proper_only=True)) == 4
    assert enumerate_deltas(23, proper_only=True) == []
    assert enumerate_deltas(1, proper_only=True) == []


def test_enumerate_deltas_all_contain_minus_one():
    for n in range(3, 60):
        for delta in enumerate_deltas(n):
            assert (n - 1) in delta.elements


@given(st.integers(min_value=3, max_value=200))
def test_unit_group_order_is_phi(n):
    assert unit_group(n).order == euler_phi(n)


@given(st.integers(min_value=3, max_value=80), st.data())
def test_subgroup_closure(n, data):
    units = unit_group(n).elements
    gens = data.draw(st.lists(st.sampled_from(units), min_size=1, max_size=3))
    delta = subgroup_from_generators(n, [-1] + gens)
    elems = set(delta.elements)
    for a in elems:
        for b in elems:
            assert (a * b) % n in elems
