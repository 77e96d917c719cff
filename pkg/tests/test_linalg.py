import itertools

import numpy as np
import pytest

from wittgroup.linalg import QuotientSpace, RowSpace, intersect, nullspace, rank, rref, solve, span


def brute_kernel_size(A, p):
    n = A.shape[1]
    return sum(not (A @ np.array(v) % p).any() for v in itertools.product(range(p), repeat=n))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_nullity_against_enumeration(p):
    rng = np.random.default_rng(p)
    for _ in range(15):
        A = rng.integers(0, p, (rng.integers(1, 6), rng.integers(1, 6)))
        r = rank(A, p)
        K = nullspace(A, p, A.shape[1])
        assert K.shape[0] == A.shape[1] - r
        assert not (A @ K.T % p).any()
        assert p ** K.shape[0] == brute_kernel_size(A, p)


@pytest.mark.parametrize("p", [2, 3, 7])
def test_rref_is_reduced(p):
    rng = np.random.default_rng(11)
    A = rng.integers(0, p, (30, 40))
    R, piv = rref(A, p)
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert (R[:, c] != 0).sum() == 1
    assert span(R, 40, p).rank == len(piv)


def test_large_random_rank_is_generic():
    rng = np.random.default_rng(3)
    B = rng.integers(0, 2, (40, 300))
    C = rng.integers(0, 2, (200, 40))
    assert rank(C @ B % 2, 2) <= 40
    assert rank(np.vstack([B, B]), 2) == rank(B, 2)


def test_solve_and_inconsistency():
    p = 5
    A = np.array([[1, 2], [2, 4]])
    assert solve(A, np.array([1, 3]), p) is None
    x = solve(A, np.array([1, 2]), p)
    assert not ((A @ x - np.array([1, 2])) % p).any()


def test_intersection_and_quotient():
    p = 3
    U = np.array([[1, 0, 0, 0], [0, 1, 0, 0]])
    W = np.array([[0, 1, 0, 0], [0, 0, 1, 0]])
    I = intersect(U, W, p)
    assert I.shape[0] == 1 and span(I, 4, p).contains(np.array([0, 1, 0, 0]))
    Q = QuotientSpace(I, U, 4, p)
    assert Q.dim == 1
    rs = RowSpace(4, p)
    rs.add(U)
    assert rs.contains(np.array([2, 1, 0, 0])) and not rs.contains(np.array([0, 0, 1, 0]))
