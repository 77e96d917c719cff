"""Dense linear algebra over F_p.

Rows are numpy arrays with entries in ``[0, p)``.  Large systems are fed to
``RowSpace`` in chunks: each chunk is first reduced against the current
reduced-echelon basis with one matrix product (float64 is exact here since
every dot product is bounded by ``rank * (p-1)**2 < 2**53``), and only the
surviving rows are eliminated pivot by pivot.
"""

from __future__ import annotations

import numpy as np

CHUNK = 512


def _inv_mod(a, p):
    return pow(int(a), p - 2, p)


def rref(A, p):
    """Reduced row echelon form of ``A`` over F_p; returns ``(R, pivots)``."""
    X = np.mod(np.asarray(A, dtype=np.float64), p)
    if X.ndim == 1:
        X = X[None, :]
    rows, cols = X.shape
    pivots = []
    r = 0
    col = 0
    while r < rows and col < cols:
        nz = np.flatnonzero(X[r:, col:].any(axis=0))
        if nz.size == 0:
            break
        col += int(nz[0])
        piv_row = r + int(np.flatnonzero(X[r:, col])[0])
        if piv_row != r:
            X[[r, piv_row]] = X[[piv_row, r]]
        inv = _inv_mod(X[r, col], p)
        if inv != 1:
            X[r] = np.mod(X[r] * inv, p)
        factors = X[:, col].copy()
        factors[r] = 0
        nzr = np.flatnonzero(factors)
        if nzr.size:
            X[nzr] = np.mod(X[nzr] - np.outer(factors[nzr], X[r]), p)
        pivots.append(col)
        r += 1
        col += 1
    return X[:r].astype(np.int64), pivots


class RowSpace:
    """Incrementally maintained row space in reduced echelon form."""

    def __init__(self, ncols, p):
        self.ncols = ncols
        self.p = p
        self._B = np.zeros((0, ncols), dtype=np.float64)
        self.pivots = []

    @property
    def rank(self):
        return len(self.pivots)

    @property
    def basis(self):
        return self._B.astype(np.int64)

    def _reduce_float(self, X):
        if self.pivots:
            X = np.mod(X - X[:, self.pivots] @ self._B, self.p)
        return X

    def add(self, rows):
        rows = np.asarray(rows)
        if rows.ndim == 1:
            rows = rows[None, :]
        for start in range(0, rows.shape[0], CHUNK):
            X = np.mod(rows[start:start + CHUNK].astype(np.float64), self.p)
            X = self._reduce_float(X)
            X = X[X.any(axis=1)]
            if X.shape[0] == 0:
                continue
            R, piv = rref(X, self.p)
            if not piv:
                continue
            R = R.astype(np.float64)
            if self.pivots:
                self._B = np.mod(self._B - self._B[:, piv] @ R, self.p)
            self._B = np.vstack([self._B, R])
            self.pivots.extend(piv)
        return self

    def reduce(self, vecs):
        """Normal forms of ``vecs`` modulo the space (zero iff contained)."""
        X = np.mod(np.atleast_2d(np.asarray(vecs, dtype=np.float64)), self.p)
        return self._reduce_float(X).astype(np.int64)

    def contains(self, v):
        return not self.reduce(v).any()

    def coordinates(self, v):
        """Coefficients of ``v`` in ``basis``; assumes membership."""
        v = np.mod(np.asarray(v, dtype=np.int64), self.p)
        return v[..., self.pivots]

    def nullspace(self):
        """Basis of {x : B x = 0} for the stored rows B."""
        free = [c for c in range(self.ncols) if c not in set(self.pivots)]
        N = np.zeros((len(free), self.ncols), dtype=np.int64)
        B = self.basis
        for i, f in enumerate(free):
            N[i, f] = 1
            if self.pivots:
                N[i, self.pivots] = (-B[:, f]) % self.p
        return N


def rank(A, p):
    A = np.atleast_2d(np.asarray(A))
    if A.size == 0:
        return 0
    return RowSpace(A.shape[1], p).add(A).rank


def span(rows, ncols, p):
    rs = RowSpace(ncols, p)
    rows = np.asarray(rows)
    if rows.size:
        rs.add(rows)
    return rs


def nullspace(A, p, ncols=None):
    """Basis (as rows) of the right kernel of ``A``."""
    A = np.asarray(A)
    if ncols is None:
        ncols = A.shape[1]
    rs = RowSpace(ncols, p)
    if A.size:
        rs.add(A)
    return rs.nullspace()


def solve(A, b, p):
    """One solution of ``A x = b`` over F_p, or None if inconsistent."""
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    n = A.shape[1]
    rs = RowSpace(n + 1, p).add(np.hstack([A, b]))
    if n in rs.pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    B = rs.basis
    for i, c in enumerate(rs.pivots):
        x[c] = B[i, n]
    return x


def solve_many(A, rhs_rows, p):
    """Solve ``A x = b`` for each row ``b`` of ``rhs_rows``; None where inconsistent."""
    return [solve(A, b, p) for b in np.atleast_2d(rhs_rows)]


def intersect(U, W, p):
    """Basis of rowspan(U) cap rowspan(W) (all rows of length n)."""
    U = np.atleast_2d(np.asarray(U, dtype=np.int64))
    W = np.atleast_2d(np.asarray(W, dtype=np.int64))
    if U.shape[0] == 0 or W.shape[0] == 0 or U.size == 0 or W.size == 0:
        n = U.shape[1] if U.ndim == 2 else W.shape[1]
        return np.zeros((0, n), dtype=np.int64)
    # a U = b W  <=>  [a, -b] in left kernel of [U; W]
    K = nullspace(np.vstack([U, W]).T, p)
    vecs = np.mod(K[:, : U.shape[0]] @ U, p)
    return span(vecs, U.shape[1], p).basis


def mat_inv(A, p):
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, piv = rref(np.hstack([A, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular")
    return R[:, n:]


class QuotientSpace:
    """Normal forms and coordinates for ``big / small`` (small inside big)."""

    def __init__(self, small_rows, big_rows, ncols, p):
        self.p = p
        self.small = span(small_rows, ncols, p)
        reduced = self.small.reduce(big_rows) if np.asarray(big_rows).size else np.zeros((0, ncols), np.int64)
        self.complement = RowSpace(ncols, p)
        if reduced.size:
            self.complement.add(reduced)
        self.dim = self.complement.rank

    def normal_form(self, v):
        return self.small.reduce(v)

    def coordinates(self, v):
        """Coordinates of the class of ``v`` w.r.t. ``complement.basis``."""
        return np.mod(self._solve_rows(self.small.reduce(v)), self.p)

    def _solve_rows(self, r):
        B = self.complement.basis
        if B.shape[0] == 0:
            return np.zeros((r.shape[0], 0), dtype=np.int64)
        coeffs = r[:, self.complement.pivots]
        # both r and B vanish on the pivots of ``small``, so the residue is exact
        if np.mod(r - coeffs @ B, self.p).any():
            raise ValueError("vector is not in the big space")
        return coeffs
