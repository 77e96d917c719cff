import itertools

import pytest
from hypothesis import given, settings, strategies as st

from wittgroup.errors import ParseError
from wittgroup.finite_field import ff_create
from wittgroup.galois_ring import (
    dual_create,
    from_digit_codes,
    gr_create,
    parse_ring,
    section_s,
    surjection,
    teichmuller_digit_codes,
)


def z4x_mul(a, b):
    """Product in Z/4[x]/(x^2 + x + 1) on coefficient pairs, written out by hand."""
    a0, a1 = a
    b0, b1 = b
    # x^2 = -x - 1
    c0 = a0 * b0 - a1 * b1
    c1 = a0 * b1 + a1 * b0 - a1 * b1
    return (c0 % 4, c1 % 4)


def test_gr42_against_hand_multiplication(gr42):
    R = gr42
    for a in range(R.size):
        for b in range(R.size):
            assert R.coeffs(R.mul(a, b)) == z4x_mul(R.coeffs(a), R.coeffs(b))


@pytest.mark.parametrize("p,m,d", [(2, 2, 2), (2, 3, 2), (3, 2, 2), (3, 3, 2), (5, 2, 1), (2, 2, 3)])
def test_teichmuller_is_multiplicative_fixed_point(p, m, d):
    R = gr_create(p, m, d)
    k = R.residue_field
    q = k.size
    for a in range(k.size):
        t = R.teichmuller(a)
        assert R.pow(t, q) == t
        assert R.residue(t) == a
        for b in range(k.size):
            assert R.mul(t, R.teichmuller(b)) == R.teichmuller(k.mul(a, b))


@pytest.mark.parametrize("p,m,d", [(2, 2, 2), (2, 3, 2), (3, 2, 2), (3, 3, 1)])
def test_digit_expansion_round_trip(p, m, d):
    R = gr_create(p, m, d)
    for x in range(R.size):
        digits = teichmuller_digit_codes(R, x)
        assert len(digits) == m
        assert from_digit_codes(R, digits) == x


def test_section_keeps_digits():
    R = gr_create(3, 2, 2)
    for x in range(0, R.size, 7):
        y = section_s(R.element(x))
        assert teichmuller_digit_codes(y.ring, y.code)[:2] == teichmuller_digit_codes(R, x)
        assert teichmuller_digit_codes(y.ring, y.code)[2] == 0


@pytest.mark.parametrize("src,dst", [((2, 2, 2), None), ((2, 3, 2), (2, 2, 2)), ((3, 2, 1), None)])
def test_reduction_is_a_surjective_hom_with_square_zero_kernel(src, dst):
    A = gr_create(*src)
    B = gr_create(*dst) if dst else A.residue_field
    pi = surjection(A, B)
    assert len(pi.kernel) == A.size // B.size
    for a, b in itertools.product(pi.kernel, repeat=2):
        assert A.mul(a, b) == 0
    for v in itertools.product(range(A.p), repeat=pi.kernel_dim):
        assert pi.kernel_coords[pi.from_kernel_coords(v)] == v


def test_dual_numbers():
    k = ff_create(2, 2)
    D = dual_create(2, 2)
    eps = D.eps(1)
    assert D.mul(eps, eps) == 0
    for a in range(k.size):
        for b in range(k.size):
            x = D.join(a, b)
            assert D.split(x) == (a, b)
            assert D.residue(x) == a
    # (a + eps b)(c + eps e) = ac + eps (ae + bc)
    x, y = D.join(2, 3), D.join(3, 1)
    assert D.split(D.mul(x, y)) == (k.mul(2, 3), k.add(k.mul(2, 1), k.mul(3, 3)))
    pi = surjection(D, k)
    assert pi.kernel_dim == 2


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(2, 2, 2), (3, 2, 2), (2, 3, 1), (5, 2, 1)]), st.data())
def test_ring_axioms_and_units(prm, data):
    R = gr_create(*prm)
    a, b, c = (data.draw(st.integers(0, R.size - 1)) for _ in range(3))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    if R.is_unit(a):
        assert R.mul(a, R.inv(a)) == 1


def test_parse_ring_grammar():
    assert repr(parse_ring("gr:2,2,2")) == "GR(2^2,2)"
    assert parse_ring("gr:p=2,m=2,d=2") is gr_create(2, 2, 2)
    assert parse_ring("zmod:9") is gr_create(3, 2, 1)
    assert parse_ring("dual:2,2") is dual_create(2, 2)
    for bad in ["gr", "gr:2,x,2", "foo:1", "zmod:12"]:
        with pytest.raises(ParseError):
            parse_ring(bad)
