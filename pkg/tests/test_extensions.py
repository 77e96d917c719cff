import numpy as np
import pytest

from wittgroup.cohomology import Cocycle2, Obstruction, extension_cocycle, h1, split_check
from wittgroup.errors import ActionMismatch, KernelMismatch, NotSurjective
from wittgroup.extensions import (
    CoordinateChart,
    TwistedProduct,
    chart_conjugation_action,
    conjugate_by_kernel,
    cyclic_toy_extension,
    matrix_extension,
    prop22_analyze,
    prop22_trivialize,
)
from wittgroup.finite_field import ff_create
from wittgroup.galois_ring import gr_create, surjection
from wittgroup.structure_theorem import gr_extension
from conftest import sl2_mods


@pytest.fixture(scope="module")
def ext_f4():
    E, G, mods = gr_extension(2, 1, 2, "M0")
    return E, G, mods


def test_cyclic_toy():
    E = cyclic_toy_extension()
    x = extension_cocycle(E)
    assert x.table[1, 1].tolist() == [1]
    T = TwistedProduct(x)
    grp = T.as_group()
    assert len(grp) == 4
    assert max(grp.element_order(i) for i in range(4)) == 4
    assert not split_check(E).split


def test_twisted_product_matches_extension(ext_f4):
    E, G, mods = ext_f4
    x = extension_cocycle(E)
    T = TwistedProduct(x)
    assert T.order == 3840
    assert len(T.as_group()) == 3840
    chart = CoordinateChart(E, x)
    SL = [E.mul(E.kernel_element(v), s) for s in E.section[:40] for v in np.eye(6, dtype=np.int64)]
    assert chart.check(SL, samples=2000)


def test_chart_bijective_on_small_extension():
    A, B = gr_create(3, 2, 1), ff_create(3, 1)
    from wittgroup.matgroup import sl_group
    from wittgroup.gmodule import MatrixModules

    G = sl_group(2, B)
    E = matrix_extension(G, surjection(A, B), "M0", MatrixModules(G), total=sl_group(2, A).elements)
    chart = CoordinateChart(E)
    images = {chart.forward(h) for h in E.total}
    assert len(images) == len(E.total) == 648
    assert chart.check(E.total, samples=5000)


def test_conjugation_action(ext_f4):
    E, G, mods = ext_f4
    T = TwistedProduct(extension_cocycle(E))
    assert chart_conjugation_action(T)["holds"]
    T._acts = np.broadcast_to(np.eye(6, dtype=np.int64), T._acts.shape)
    with pytest.raises(ActionMismatch):
        chart_conjugation_action(T)


def _split_product(M):
    G = M.group
    zero = Cocycle2(M, G.generators, np.zeros((len(G), len(G.generators), M.dim), dtype=np.int64))
    return TwistedProduct(zero)


def test_prop22_trivializes_conjugate(mods_f4):
    M0, S = mods_f4.M0, mods_f4.S
    G = M0.group
    T = _split_product(M0)
    m0 = np.array([1, 0, 0, 1, 1, 0])
    H = [conjugate_by_kernel(T, -m0 % 2, T.element(S.embed(np.array(n)), g))
         for g in range(len(G)) for n in np.ndindex(2, 2)]
    an = prop22_analyze(H, S)
    m, report = prop22_trivialize(an, H)
    assert report["verified_elements"] == 4 * len(G)
    back = {conjugate_by_kernel(T, m, h) for h in H}
    assert all(S.contains(np.array(v)) for v, g in back)


def test_prop22_obstruction_when_class_nonzero():
    mods = sl2_mods(5, 1)
    M0 = mods.M0
    G = M0.group
    xi = h1(M0).cocycle(0).values
    H = [(tuple(int(c) for c in xi[g]), g) for g in range(len(G))]
    an = prop22_analyze(H, M0.zero())
    assert isinstance(prop22_trivialize(an), Obstruction)


def test_prop22_input_errors(mods_f4):
    M0, S = mods_f4.M0, mods_f4.S
    with pytest.raises(NotSurjective):
        prop22_analyze([((0,) * 6, 0)], S)
    G = M0.group
    H = [((0,) * 6, g) for g in range(len(G))]
    with pytest.raises(KernelMismatch):
        prop22_analyze(H, S)
