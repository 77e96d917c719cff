import itertools

import numpy as np
import pytest

from wittgroup.errors import CapExceeded
from wittgroup.finite_field import ff_create
from wittgroup.galois_ring import dual_create, gr_create, surjection
from wittgroup.matgroup import (
    RingMatrix,
    group_closure,
    induced_hom,
    kernel_module_vectors,
    preimage,
    sl_group,
    sl_order,
    sylow,
)


@pytest.mark.parametrize("ring,order", [
    (ff_create(2, 1), 6), (ff_create(2, 2), 60), (ff_create(5, 1), 120), (ff_create(7, 1), 336),
    (gr_create(2, 2, 1), 48), (gr_create(3, 2, 1), 648), (gr_create(2, 2, 2), 3840), (gr_create(5, 2, 1), 15000),
])
def test_sl2_orders(ring, order):
    assert len(sl_group(2, ring)) == order
    ratio = ring.size // ring.residue_field.size
    assert sl_order(2, ring.residue_field.size, ratio) == order


def test_sl3_f4_order():
    assert len(sl_group(3, ff_create(2, 2))) == 60480 == sl_order(3, 4)


def test_sl2_z4_by_enumeration():
    count = sum((a * d - b * c) % 4 == 1 for a, b, c, d in itertools.product(range(4), repeat=4))
    assert count == len(sl_group(2, gr_create(2, 2, 1)))


def test_dual_number_generators_give_constants():
    # elementary generators over k[eps] with Teichmuller entries generate SL_2(k) inside SL_2(k[eps])
    assert len(sl_group(2, dual_create(2, 2))) == 60


def test_det_and_inverse(gr42):
    R = gr42
    rng = np.random.default_rng(0)
    for _ in range(50):
        M = RingMatrix(R, 2, tuple(int(x) for x in rng.integers(0, R.size, 4)))
        a, b, c, d = M.entries
        assert M.det() == R.sub(R.mul(a, d), R.mul(b, c))
        if R.is_unit(M.det()):
            assert (M @ M.inverse()).is_identity()


def test_group_axioms_on_table(mods_f4):
    G = mods_f4.G
    T = G.mul_table()
    n = len(G)
    assert (T[0] == np.arange(n)).all() and (T[:, 0] == np.arange(n)).all()
    rng = np.random.default_rng(1)
    for a, b, c in rng.integers(0, n, (200, 3)):
        assert T[T[a, b], c] == T[a, T[b, c]]
    assert all(T[g, G.inv(g)] == 0 for g in range(n))


def test_reduction_kernel_and_preimage(sl2_gr42, gr42):
    pi = surjection(gr42, ff_create(2, 2))
    hom, image = induced_hom(sl2_gr42, pi)
    assert len(image) == 60 and hom.is_surjective()
    assert len(hom.kernel) == 64
    vecs = kernel_module_vectors(sl2_gr42, pi)
    assert vecs.shape == (6, 8)
    P = sylow(image, 2)
    pre = preimage(hom, P)
    assert len(pre) == 4 * 64


@pytest.mark.parametrize("ring,p,expected", [(ff_create(2, 2), 2, 4), (ff_create(2, 2), 5, 5),
                                              (gr_create(2, 2, 2), 2, 256), (ff_create(7, 1), 7, 7),
                                              (ff_create(5, 1), 2, 8)])
def test_sylow_orders(ring, p, expected):
    P = sylow(sl_group(2, ring), p)
    assert len(P) == expected


def test_closure_cap():
    with pytest.raises(CapExceeded):
        group_closure([1], lambda a, b: (a + b) % 100, lambda a: (-a) % 100, 0, cap=10)
