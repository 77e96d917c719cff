import numpy as np
import pytest

from wittgroup.errors import ClassificationFailure, NotInvariant
from wittgroup.gmodule import (
    classify_submodules,
    gaussian_binomial,
    hom_space,
    matrix_vector,
    spin,
    submodule_lattice,
    subspace_count,
)
from conftest import sl2_mods


def test_conjugation_action_example(mods_f4):
    """(I + e12) e21 (I - e12) = e11 + e12 + e21 + e22 over F_4 (hand computed)."""
    G, k = mods_f4.G, mods_f4.k
    g = G.index[(1, 1, 0, 1)]
    v = matrix_vector(k, 2, (0, 0, 1, 0))
    assert mods_f4.M.act_vec(g, v).tolist() == [1, 0, 1, 0, 1, 0, 1, 0]
    g = G.index[(1, 0, 1, 1)]
    v = matrix_vector(k, 2, (1, 0, 0, 0))
    assert mods_f4.M.act_vec(g, v).tolist() == [1, 0, 0, 0, 1, 0, 0, 0]


def test_module_dimensions(mods_f4, mods_f5):
    assert (mods_f4.M.dim, mods_f4.M0.dim, mods_f4.S.dim, mods_f4.V.dim) == (8, 6, 2, 4)
    assert (mods_f5.M0.dim, mods_f5.S.dim, mods_f5.V.dim) == (3, 0, 3)
    for M in (mods_f4.M, mods_f4.M0, mods_f4.V, mods_f5.M0):
        assert M.validate()


def test_submodule_lattice_f4(mods_f4):
    lattice = submodule_lattice(mods_f4.M0)
    assert sorted(s.dim for s in lattice) == [0, 1, 1, 1, 2, 6]
    S = mods_f4.S
    for sub in lattice:
        assert sub.dim == 6 or S.contains(sub.basis) or sub.dim == 0


def test_spin_outside_s_is_everything(mods_f4):
    M0 = mods_f4.M0
    rng = np.random.default_rng(5)
    for _ in range(20):
        v = rng.integers(0, 2, M0.dim)
        sub = spin(M0, [v])
        inS = mods_f4.S.contains(v)
        assert (sub.dim <= 2) if inS else (sub.dim == 6)


def test_f2_lemma_fails_with_witness():
    r = classify_submodules(sl2_mods(2, 1))
    assert not r["lemma_holds"] and r["witness"] is not None


def test_classification_f5_and_n3():
    assert classify_submodules(sl2_mods(5, 1))["submodule_dims"] == [0, 3]
    assert classify_submodules(sl2_mods(2, 2, n=3))["lemma_holds"]


def test_hom_spaces(mods_f4, mods_f5):
    assert len(hom_space(mods_f4.M0, mods_f4.M0)) == 2
    assert len(hom_space(mods_f5.M0, mods_f5.M0)) == 1
    homs = hom_space(mods_f4.M0, mods_f4.V)
    assert len(homs) == 2
    for phi in homs:
        assert phi.is_equivariant()
        assert not (phi.matrix @ mods_f4.S.basis.T % 2).any()


def test_non_invariant_subspace_rejected(mods_f4):
    M0 = mods_f4.M0
    v = next(row for row in np.eye(6, dtype=np.int64) if not mods_f4.S.contains(row))
    with pytest.raises(NotInvariant):
        M0.submodule(v[None, :])


def test_quotient_is_a_module(mods_f4):
    V = mods_f4.V
    proj = V.projection()
    assert proj.is_equivariant()
    assert proj.rank() == 4


def test_subspace_counts():
    assert gaussian_binomial(4, 2, 2) == 35
    assert subspace_count(2, 2) == 5


def test_classification_failure_type():
    assert issubclass(ClassificationFailure, Exception)


def test_spin_of_scalars(mods_f4):
    """F_2-spinning the identity gives a line; adding omega*I gives all of S."""
    S, M0 = mods_f4.S, mods_f4.M0
    rows = S.embed(np.eye(2, dtype=np.int64))
    assert spin(M0, rows[:1]).dim == 1
    assert spin(M0, rows).dim == 2 and S.contains(spin(M0, rows).basis)
