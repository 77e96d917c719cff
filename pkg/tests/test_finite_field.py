import pytest
from hypothesis import given, settings, strategies as st

from wittgroup.errors import DivisionByZero, NotPrime, UnsupportedSize
from wittgroup.finite_field import (
    canonical_modulus,
    ff_create,
    format_element,
    frobenius,
    is_irreducible,
    multiplicative_generator,
    parse_element,
)

FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (2, 4)]


def naive_mul(a, b, modulus, p):
    """Schoolbook product of coefficient lists reduced by a monic modulus."""
    d = len(modulus) - 1
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k] % p
        for j in range(d + 1):
            prod[k - d + j] -= c * modulus[j]
    return [c % p for c in prod[:d]]


@pytest.mark.parametrize("p,d", FIELDS)
def test_multiplication_matches_schoolbook(p, d):
    F = ff_create(p, d)
    for a in range(F.size):
        for b in range(0, F.size, max(1, F.size // 7)):
            assert F.coeffs(F.mul(a, b)) == tuple(naive_mul(F.coeffs(a), F.coeffs(b), F.modulus, p))


def test_f4_table_by_hand():
    F = ff_create(2, 2)
    # codes: 0, 1, x=2, x+1=3 modulo x^2+x+1
    assert F.mul(2, 2) == 3
    assert F.mul(2, 3) == 1
    assert F.mul(3, 3) == 2
    assert F.add(2, 3) == 1


@pytest.mark.parametrize("p,d", FIELDS)
def test_modulus_is_irreducible_and_units_invert(p, d):
    F = ff_create(p, d)
    assert is_irreducible(list(F.modulus), p)
    for a in range(1, F.size):
        assert F.mul(a, F.inv(a)) == 1
    with pytest.raises(DivisionByZero):
        F.inv(0)


def test_reducible_polynomials_detected():
    assert not is_irreducible([1, 0, 1], 2)  # x^2 + 1 = (x + 1)^2
    assert not is_irreducible([0, 1, 1], 3)
    assert canonical_modulus(2, 2) == (1, 1, 1)


@pytest.mark.parametrize("p,d", [(2, 2), (3, 2), (2, 3)])
def test_frobenius_is_additive_and_has_order_d(p, d):
    F = ff_create(p, d)
    for a in range(F.size):
        x = F.element(a)
        y = x
        for _ in range(d):
            y = frobenius(y)
        assert y == x
        for b in range(F.size):
            assert frobenius(x + F.element(b)) == frobenius(x) + frobenius(F.element(b))


@pytest.mark.parametrize("p,d", FIELDS)
def test_generator_has_full_order(p, d):
    F = ff_create(p, d)
    g = multiplicative_generator(F)
    assert F.order_of(g.code) == F.size - 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pd, data):
    F = ff_create(*pd)
    a, b, c = (data.draw(st.integers(0, F.size - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.pow(a, F.size) == a


def test_element_text_round_trip():
    F = ff_create(3, 2)
    for a in range(F.size):
        x = F.element(a)
        assert parse_element(format_element(x)) == x
    with pytest.raises(ValueError):
        parse_element("3^2:[1]")


def test_bad_parameters():
    with pytest.raises(NotPrime):
        ff_create(4, 1)
    with pytest.raises(UnsupportedSize):
        ff_create(2, 40)
