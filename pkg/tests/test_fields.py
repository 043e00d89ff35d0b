import pytest
from hypothesis import given, settings, strategies as st

from modgon.fields import QQ, ff
from modgon.linalg import Budget, BudgetExceeded, kernel_basis, rank, solve

FIELDS = [ff(3, 1), ff(3, 2), ff(5, 1), ff(7, 2), ff(2, 4)]


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f"F{f.p}^{f.k}")
def test_field_axioms_exhaustive(field):
    elems = field.elements()
    assert len(elems) == field.p ** field.k
    for a in elems[:25]:
        assert field.add(a, field.zero) == a
        assert field.mul(a, field.one) == a
        if not field.is_zero(a):
            assert field.mul(a, field.inv(a)) == field.one
        assert field.pow(a, field.p ** field.k) == a  # Frobenius fixes F_q


def test_frobenius_fixed_field():
    big = ff(3, 4)
    fixed = [a for a in big.elements() if big.frobenius(a) == a]
    assert len(fixed) == 3  # prime field


def test_embedding_is_ring_hom():
    small, big = ff(3, 2), ff(3, 4)
    emb = big.embedding_from(small)
    for a in small.elements():
        for b in small.elements()[:5]:
            assert emb(small.add(a, b)) == big.add(emb(a), emb(b))
            assert emb(small.mul(a, b)) == big.mul(emb(a), emb(b))


def test_sqrt():
    field = ff(7, 1)
    for a in field.elements():
        r = field.sqrt(a)
        if r is not None:
            assert field.mul(r, r) == a
    squares = sum(1 for a in field.elements() if field.sqrt(a) is not None)
    assert squares == 4  # 0 and the three quadratic residues


def test_rationals():
    a = QQ.from_int(3)
    half = QQ.mul(QQ.from_int(1), QQ.inv(QQ.from_int(2)))
    assert QQ.add(half, half) == QQ.one
    assert QQ.mul(a, QQ.inv(a)) == QQ.one


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_field_associativity(x, y, z):
    field = ff(3, 2)
    els = field.elements()
    a, b, c = els[x], els[y], els[z]
    assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
    assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
    assert field.mul(a, field.add(b, c)) == \
        field.add(field.mul(a, b), field.mul(a, c))


def test_rank_and_solve_modp():
    f3 = ff(3, 1)
    rows = [[1, 2, 0], [0, 1, 0], [0, 0, 1]]
    assert rank(f3, rows) == 3
    assert rank(f3, [[1, 2], [0, 1]]) == 2
    assert rank(f3, [[1, 2], [2, 1]]) == 1  # second row = 2 * first mod 3
    sol = solve(f3, [[1, 1], [0, 1]], [2, 1])
    assert sol == [1, 1]


def test_kernel_basis():
    f5 = ff(5, 1)
    ker = kernel_basis(f5, [[1, 2, 3]])
    assert len(ker) == 2
    for v in ker:
        assert (v[0] + 2 * v[1] + 3 * v[2]) % 5 == 0


def test_rank_over_q():
    rows = [[QQ.from_int(1), QQ.from_int(2)],
            [QQ.from_int(2), QQ.from_int(4)]]
    assert rank(QQ, rows) == 1


def test_budget_exhaustion():
    with pytest.raises(BudgetExceeded):
        rank(ff(3, 1), [[1] * 30] * 30, Budget(10))
