import itertools

import numpy as np
import pytest

from wittgroup.cohomology import (
    Cocycle2,
    ExtensionDescription,
    extension_cocycle,
    h1,
    h2,
    same_class2,
    split_check,
)
from wittgroup.errors import CocycleInvalid
from wittgroup.extensions import matrix_extension
from wittgroup.finite_field import ff_create
from wittgroup.galois_ring import gr_create, surjection
from wittgroup.gmodule import GModule, MatrixModules, trivial_module
from wittgroup.matgroup import group_closure, identity_codes, inverse_codes, mat_mul_codes, sl_group
from conftest import sl2_mods


def cyclic(n):
    return group_closure([1], lambda a, b: (a + b) % n, lambda a: (-a) % n, 0, name=f"C{n}")


def perm_group(gens):
    def mul(a, b):  # apply b first
        return tuple(a[i] for i in b)

    def inv(a):
        out = [0] * len(a)
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    return group_closure([tuple(g) for g in gens], mul, inv, tuple(range(len(gens[0]))))


S3 = perm_group([(1, 0, 2), (1, 2, 0)])
A5 = perm_group([(1, 2, 0, 3, 4), (0, 1, 3, 4, 2)])


@pytest.mark.parametrize("n,p,dim", [(2, 2, 1), (4, 2, 1), (6, 3, 1), (5, 2, 0), (9, 3, 1), (7, 5, 0)])
def test_cyclic_groups(n, p, dim):
    # H^1 = Hom(C_n, F_p) and H^2 = F_p / n F_p for trivial coefficients
    M = trivial_module(cyclic(n), p)
    assert h1(M).dim_H == dim
    assert h2(M).dim_H == dim


def test_s3_trivial_coefficients():
    assert len(S3) == 6 and len(A5) == 60
    assert h1(trivial_module(S3, 2)).dim_H == 1
    assert h2(trivial_module(S3, 2)).dim_H == 1
    assert h1(trivial_module(S3, 3)).dim_H == 0
    assert h2(trivial_module(S3, 3)).dim_H == 0


def test_a5_schur_multiplier():
    """H^2(A_5, F_2) = Hom(Z/2, F_2) is one-dimensional; SL_2(F_4) is isomorphic to A_5."""
    assert h1(trivial_module(A5, 2)).dim_H == 0
    assert h2(trivial_module(A5, 2)).dim_H == 1
    G = sl_group(2, ff_create(2, 2))
    assert h2(trivial_module(G, 2)).dim_H == 1


def _brute_h1(M):
    """|Z^1| / |B^1| by enumerating every function G -> M."""
    G, p, D = M.group, M.p, M.dim
    T = G.mul_table()
    vecs = [np.array(v) for v in itertools.product(range(p), repeat=D)]
    z = 0
    for f in itertools.product(range(len(vecs)), repeat=len(G) - 1):
        vals = [vecs[0]] + [vecs[i] for i in f]
        if all(((vals[g] + M.act_vec(g, vals[h]) - vals[T[g, h]]) % p == 0).all()
               for g in range(len(G)) for h in range(len(G))):
            z += 1
    b = len({tuple(tuple((M.act_vec(g, m) - m) % p) for g in range(len(G))) for m in vecs})
    return round(np.log(z // b) / np.log(p))


@pytest.mark.parametrize("which", ["M0", "S", "V"])
def test_h1_sl2_f2_against_enumeration(which):
    mods = sl2_mods(2, 1)
    M = getattr(mods, which)
    assert h1(M).dim_H == _brute_h1(M)


def test_h1_h2_dims_against_known_values(mods_f4, mods_f5):
    assert h1(mods_f5.M0).dim_H == 1
    assert h1(mods_f4.M0).k_dim() == 1
    # the class of SL_2(Z/25) -> SL_2(F_5)
    assert h2(mods_f5.M0).dim_H == 1


def test_cocycle_law_is_checked():
    M = trivial_module(S3, 2)
    H = h2(M)
    rng = np.random.default_rng(0)
    X = next(X for X in rng.integers(0, 2, (50, H.ncols)) if not H.is_cocycle(X))
    with pytest.raises(CocycleInvalid):
        Cocycle2.from_X(M, H.gens, X, check=True)


def _psl2_f5():
    k = ff_create(5, 1)
    neg = (4, 0, 0, 4)
    ident = identity_codes(2)

    def mul(a, b):
        return mat_mul_codes(k, 2, a, b)

    def canon(a):
        return min(a, mul(neg, a))

    SL = sl_group(2, k)
    G = group_closure([canon(SL.elements[g]) for g in SL.generators], lambda a, b: canon(mul(a, b)),
                      lambda a: canon(inverse_codes(k, 2, a)), ident)
    Z = trivial_module(G, 2)
    E = ExtensionDescription(G, Z, mul, lambda a: inverse_codes(k, 2, a), ident,
                             lambda a: G.index[canon(a)], list(G.elements),
                             lambda a: np.array([0 if a == ident else 1]),
                             lambda v: neg if v[0] % 2 else ident)
    return E, G


def test_sl2_f5_central_extension_nonsplit():
    E, G = _psl2_f5()
    assert len(G) == 60 and E.validate()
    res = split_check(E, brute_force=True)
    assert not res.split and res.brute_force


def test_section_change_moves_cocycle_by_coboundary():
    A, B = gr_create(2, 2, 1), ff_create(2, 1)
    pi = surjection(A, B)
    G = sl_group(2, B)
    E = matrix_extension(G, pi, "M", MatrixModules(G))
    x = extension_cocycle(E)
    rng = np.random.default_rng(3)
    shifts = [np.zeros(4, dtype=np.int64)] + [rng.integers(0, 2, 4) for _ in range(len(G) - 1)]
    section2 = [E.mul(E.kernel_element(c), s) for c, s in zip(shifts, E.section)]
    E2 = ExtensionDescription(G, E.module, E.mul, E.inv, E.identity, E.project, section2,
                              E.kernel_coords, E.kernel_element)
    y = extension_cocycle(E2)
    assert same_class2(x, y)
    assert not np.array_equal(x.table, y.table)


def test_custom_module_validation():
    G = cyclic(2)
    M = GModule(G, 2, [np.array([[0, 1], [1, 0]])])
    assert M.validate()
    assert h1(M).dim_H == 0 and h2(M).dim_H == 0
