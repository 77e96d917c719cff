"""Finite F_p[G]-modules given by generator action matrices.

A module over a ``FiniteGroup`` ``G`` stores one ``D x D`` matrix per entry of
``G.generators``; group elements act on column vectors, ``g.v = A_g @ v``.
Vectors passed around as numpy rows are acted on by ``v @ A_g.T``.

The matrix modules M(k), M_0(k), S and V use F_p-coordinates on n x n
matrices over k: the entry ``(i, j)`` with k-basis element ``x^l`` sits at
position ``(i*n + j)*d + l``.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ClassificationFailure, DescriptorMismatch, NotEquivariant, NotInvariant, SizeExceeded
from .linalg import RowSpace, intersect as _intersect_rows, nullspace, rref, span

CLASSIFY_CAP = 2**20
LATTICE_CAP = 4096


def _as_rows(vecs, dim):
    a = np.asarray(vecs, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, dim), dtype=np.int64)
    return a.reshape(-1, dim)


class GModule:
    """F_p[G]-module of dimension ``dim`` with generator actions."""

    def __init__(self, group, p, gen_actions, dim=None, name=None, field_degree=1):
        self.group = group
        self.p = p
        self.gen_actions = [np.mod(np.asarray(a, dtype=np.int64), p) for a in gen_actions]
        if dim is None:
            dim = self.gen_actions[0].shape[0] if self.gen_actions else 0
        self.dim = dim
        self.name = name
        self.field_degree = field_degree
        if len(self.gen_actions) != len(group.generators):
            raise DescriptorMismatch("one action matrix per group generator is required")

    def __repr__(self):
        return f"<{self.name or 'module'} of dimension {self.dim} over F_{self.p}>"

    @property
    def size(self):
        return self.p**self.dim

    @cached_property
    def act_all(self):
        """Action matrices of every group element, shape (|G|, D, D)."""
        G, D, p = self.group, self.dim, self.p
        tree = G.tree
        out = np.empty((len(G), D, D), dtype=np.int64)
        out[0] = np.eye(D, dtype=np.int64)
        gens = self.gen_actions
        for h in tree.order[1:]:
            out[h] = out[tree.parent[h]] @ gens[tree.parent_gen[h]] % p
        return out

    def act(self, g):
        return self.act_all[g]

    def act_vec(self, g, v):
        return np.asarray(v) @ self.act_all[g].T % self.p

    def actions_for(self, gens):
        """Action matrices for an arbitrary list of element indices."""
        if list(gens) == list(self.group.generators):
            return self.gen_actions
        return [self.act_all[g] for g in gens]

    def validate(self, samples=200, seed=7):
        import random

        p = self.p
        for A in self.gen_actions:
            if span(A, self.dim, p).rank != self.dim:
                raise NotInvariant("action matrix is not invertible")
        G = self.group
        rng = random.Random(seed)
        acts = self.act_all
        for _ in range(samples):
            a, b = rng.randrange(len(G)), rng.randrange(len(G))
            if not np.array_equal(acts[G.mult(a, b)], acts[a] @ acts[b] % p):
                raise NotInvariant("action is not a homomorphism")
        return True

    def is_invariant(self, rows):
        rows = _as_rows(rows, self.dim)
        if rows.shape[0] == 0:
            return True
        rs = span(rows, self.dim, self.p)
        return all(not rs.reduce(rows @ A.T % self.p).any() for A in self.gen_actions)

    def submodule(self, rows, check=True, name=None):
        rows = _as_rows(rows, self.dim)
        basis = span(rows, self.dim, self.p).basis if rows.shape[0] else rows
        if check and not self.is_invariant(basis):
            raise NotInvariant("subspace is not invariant under the group")
        return SubModule(self, basis, name=name)

    def zero(self):
        return self.submodule(np.zeros((0, self.dim), dtype=np.int64), name="0")

    def whole(self):
        return self.submodule(np.eye(self.dim, dtype=np.int64), name=self.name)

    def quotient(self, sub, name=None):
        return QuotientModule(self, sub, name=name)

    def restrict(self, subgroup, name=None):
        """The same module viewed over a subgroup (``subgroup.parent_index`` maps into ``self.group``)."""
        acts = [self.act_all[int(subgroup.parent_index[g])] for g in subgroup.generators]
        return GModule(subgroup, self.p, acts, dim=self.dim, name=name or self.name,
                       field_degree=self.field_degree)

    def inflate(self, hom, name=None):
        """Pull back along ``hom: source -> self.group``."""
        acts = [self.act_all[hom(g)] for g in hom.source.generators]
        return GModule(hom.source, self.p, acts, dim=self.dim, name=name or self.name,
                       field_degree=self.field_degree)

    def vectors(self):
        """All vectors, one per row, in lexicographic (base-p integer) order."""
        if self.size > CLASSIFY_CAP:
            raise SizeExceeded(f"module has {self.size} vectors")
        D, p = self.dim, self.p
        codes = np.arange(p**D, dtype=np.int64)
        return (codes[:, None] // (p ** np.arange(D, dtype=np.int64))) % p

    def encode(self, vecs):
        return np.asarray(vecs, dtype=np.int64) @ (self.p ** np.arange(self.dim, dtype=np.int64))

    def fixed_points(self):
        """Basis of M^G."""
        if not self.gen_actions:
            return np.eye(self.dim, dtype=np.int64)
        eye = np.eye(self.dim, dtype=np.int64)
        return nullspace(np.vstack([A - eye for A in self.gen_actions]), self.p, self.dim)


class SubModule(GModule):
    """Submodule with basis rows (reduced echelon form) in the parent's coordinates."""

    def __init__(self, parent, basis, name=None):
        self.parent = parent
        self.basis = np.asarray(basis, dtype=np.int64).reshape(-1, parent.dim)
        self.pivots = [int(np.flatnonzero(r)[0]) for r in self.basis]
        acts = [self._induced(A) for A in parent.gen_actions]
        GModule.__init__(self, parent.group, parent.p, acts, dim=self.basis.shape[0], name=name,
                         field_degree=parent.field_degree)

    def _induced(self, A):
        if self.basis.shape[0] == 0:
            return np.zeros((0, 0), dtype=np.int64)
        return (A @ self.basis.T % self.parent.p)[self.pivots, :]

    def coords(self, vecs):
        """Coordinates of parent vectors lying in the submodule."""
        v = np.asarray(vecs, dtype=np.int64)
        return v[..., self.pivots] % self.p

    def embed(self, coords):
        return np.asarray(coords, dtype=np.int64) @ self.basis % self.p

    def contains(self, vecs):
        rows = _as_rows(vecs, self.parent.dim)
        return not (self.embed(self.coords(rows)) - rows % self.p).any()

    def inclusion(self):
        return ModuleMap(self, self.parent, self.basis.T.copy())

    @cached_property
    def rowspace(self):
        return span(self.basis, self.parent.dim, self.p)

    def key(self):
        return self.basis.tobytes()

    def __eq__(self, other):
        return isinstance(other, SubModule) and other.parent is self.parent and np.array_equal(other.basis, self.basis)

    def __hash__(self):
        return hash((id(self.parent), self.key()))

    def __le__(self, other):
        return self.parent is other.parent and other.contains(self.basis)


class QuotientModule(GModule):
    """``parent / sub`` with coordinates on the non-pivot columns of ``sub``."""

    def __init__(self, parent, sub, name=None):
        if sub.parent is not parent:
            raise DescriptorMismatch("submodule of a different module")
        self.parent = parent
        self.sub = sub
        piv = set(sub.pivots)
        self.free = [c for c in range(parent.dim) if c not in piv]
        acts = [self._induced(A) for A in parent.gen_actions]
        GModule.__init__(self, parent.group, parent.p, acts, dim=len(self.free), name=name,
                         field_degree=parent.field_degree)

    def _reduce(self, rows):
        return self.sub.rowspace.reduce(rows) if self.sub.dim else np.mod(rows, self.parent.p)

    def _induced(self, A):
        cols = (A[:, self.free]).T
        return self._reduce(cols)[:, self.free].T.copy() if self.free else np.zeros((0, 0), np.int64)

    def project(self, vecs):
        rows = _as_rows(vecs, self.parent.dim)
        out = self._reduce(rows)[:, self.free]
        return out[0] if np.asarray(vecs).ndim == 1 else out

    def lift(self, coords):
        c = np.asarray(coords, dtype=np.int64)
        out = np.zeros(c.shape[:-1] + (self.parent.dim,), dtype=np.int64)
        out[..., self.free] = c
        return out

    def projection(self):
        M = self._reduce(np.eye(self.parent.dim, dtype=np.int64))[:, self.free].T
        return ModuleMap(self.parent, self, M.copy())


class ModuleMap:
    """F_p[G]-linear map given by a ``D_target x D_source`` matrix."""

    def __init__(self, source, target, matrix, check=True):
        self.source = source
        self.target = target
        self.matrix = np.mod(np.asarray(matrix, dtype=np.int64), source.p).reshape(target.dim, source.dim)
        if check and not self.is_equivariant():
            raise NotEquivariant("map does not commute with the group action")

    def is_equivariant(self):
        T, p = self.matrix, self.source.p
        return all(np.array_equal(T @ A % p, B @ T % p)
                   for A, B in zip(self.source.gen_actions, self.target.gen_actions))

    def __call__(self, vecs):
        return np.asarray(vecs, dtype=np.int64) @ self.matrix.T % self.source.p

    def compose(self, other):
        """``self o other``."""
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix, check=False)

    def kernel(self):
        return self.source.submodule(nullspace(self.matrix, self.source.p, self.source.dim), check=False)

    def rank(self):
        return span(self.matrix.T, self.target.dim, self.source.p).rank if self.matrix.size else 0


# ---------------------------------------------------------------------------
# matrix modules


def _conjugation_matrix(k, n, g, ginv):
    """F_p-matrix of v -> g v g^-1 on M(k); ``g`` and ``ginv`` are k-code tuples."""
    d, p = k.d, k.p
    D = n * n * d
    out = np.zeros((D, D), dtype=np.int64)
    basis = k.basis_codes
    for i in range(n):
        for j in range(n):
            for l, x in enumerate(basis):
                col = (i * n + j) * d + l
                for a in range(n):
                    gai = g[a * n + i]
                    if not gai:
                        continue
                    left = k.mul(gai, x)
                    for b in range(n):
                        gjb = ginv[j * n + b]
                        if gjb:
                            val = k.mul(left, gjb)
                            base = (a * n + b) * d
                            out[base:base + d, col] += k.coeffs(val)
    return out % p


def matrix_vector(k, n, entries):
    """M(k)-coordinates of an n x n matrix of k-codes."""
    return np.array([c for e in entries for c in k.coeffs(e)], dtype=np.int64)


def vector_matrix(k, n, vec):
    """Inverse of ``matrix_vector``."""
    d = k.d
    v = np.asarray(vec, dtype=np.int64) % k.p
    return tuple(k.code([int(c) for c in v[i * d:(i + 1) * d]]) for i in range(n * n))


def residue_conjugation_actions(G, k, gens=None):
    """Conjugation action of residue(g) on M(k) for each listed group element."""
    if G.ring.residue_field is not k:
        raise DescriptorMismatch("module field must be the residue field of the group ring")
    res = G.ring.residue
    from .matgroup import inverse_codes

    out = []
    for g in (G.generators if gens is None else gens):
        gr = tuple(res(x) for x in G.elements[g])
        out.append(_conjugation_matrix(k, G.n, gr, inverse_codes(k, G.n, gr)))
    return out


def matrix_module(G, k, name="M"):
    """M(k) with the conjugation action of G through its residue field."""
    return GModule(G, k.p, residue_conjugation_actions(G, k), dim=G.n * G.n * k.d,
                   name=name, field_degree=k.d)


def trace_zero_rows(k, n):
    d = k.d
    D = n * n * d
    rows = []
    for i in range(n):
        for j in range(n):
            for l in range(d):
                v = np.zeros(D, dtype=np.int64)
                if i != j:
                    v[(i * n + j) * d + l] = 1
                elif i < n - 1:
                    v[(i * n + i) * d + l] = 1
                    v[((n - 1) * n + n - 1) * d + l] = k.p - 1
                else:
                    continue
                rows.append(v)
    return np.array(rows, dtype=np.int64)


def scalar_rows(k, n):
    d = k.d
    rows = []
    for l in range(d):
        v = np.zeros(n * n * d, dtype=np.int64)
        for i in range(n):
            v[(i * n + i) * d + l] = 1
        rows.append(v)
    return np.array(rows, dtype=np.int64)


class MatrixModules:
    """The family M, M_0, S, V for a matrix group G and its residue field k."""

    def __init__(self, G, k=None):
        self.G = G
        self.k = k or G.ring.residue_field
        self.n = G.n
        self.p = self.k.p
        self.M = matrix_module(G, self.k)
        self.M0 = self.M.submodule(trace_zero_rows(self.k, self.n), check=False, name="M0")
        if self.n % self.p == 0:
            srows = self.M0.coords(scalar_rows(self.k, self.n))
        else:
            srows = np.zeros((0, self.M0.dim), dtype=np.int64)
        self.S = self.M0.submodule(srows, check=False, name="S")
        self.V = self.M0.quotient(self.S, name="V")
        self.scalars_in_M = self.M.submodule(scalar_rows(self.k, self.n), check=False, name="S_M")

    def get(self, which):
        return {"M": self.M, "M0": self.M0, "S": self.S, "V": self.V}[which]


def build_module(which, n=None, k=None, G=None):
    """One of ``M``, ``M0``, ``S``, ``V`` for the matrix group ``G``."""
    if G is None:
        raise ValueError("a group is required")
    if n is not None and n != G.n:
        raise DescriptorMismatch("n does not match the group")
    return MatrixModules(G, k).get(which.upper() if which.lower() != "m0" else "M0")


def trivial_module(G, p, dim=1, name=None, field_degree=1):
    return GModule(G, p, [np.eye(dim, dtype=np.int64) for _ in G.generators], dim=dim,
                   name=name or f"F_{p}^{dim}", field_degree=field_degree)


def direct_power(M, r, name=None):
    D = M.dim
    acts = []
    for A in M.gen_actions:
        B = np.zeros((r * D, r * D), dtype=np.int64)
        for i in range(r):
            B[i * D:(i + 1) * D, i * D:(i + 1) * D] = A
        acts.append(B)
    return GModule(M.group, M.p, acts, dim=r * D, name=name or f"{M.name}^{r}",
                   field_degree=M.field_degree)


def direct_sum(M, N, name=None):
    if M.group is not N.group:
        raise DescriptorMismatch("modules over different groups")
    acts = []
    for A, B in zip(M.gen_actions, N.gen_actions):
        C = np.zeros((M.dim + N.dim,) * 2, dtype=np.int64)
        C[:M.dim, :M.dim] = A
        C[M.dim:, M.dim:] = B
        acts.append(C)
    return GModule(M.group, M.p, acts, dim=M.dim + N.dim, name=name)


# ---------------------------------------------------------------------------
# spinning and lattices


def spin(M, seeds, stop_if=None):
    """Smallest invariant subspace containing ``seeds`` (as a SubModule of M).

    ``stop_if(rows)`` may short-circuit: if it returns True for a batch of new
    vectors the whole module is returned.
    """
    p, D = M.p, M.dim
    rs = RowSpace(D, p)
    seeds = _as_rows(seeds, D) % p
    if seeds.shape[0]:
        rs.add(seeds)
    frontier = rs.basis
    while frontier.shape[0] and rs.rank < D:
        imgs = np.vstack([frontier @ A.T % p for A in M.gen_actions]) if M.gen_actions else frontier[:0]
        if stop_if is not None and stop_if(imgs):
            return M.whole()
        red = rs.reduce(imgs) if imgs.shape[0] else imgs
        red = red[red.any(axis=1)]
        if red.shape[0] == 0:
            break
        R, _ = rref(red, p)
        rs.add(R)
        frontier = R
    return M.submodule(rs.basis, check=False)


def orbits(M, extra_actions=()):
    """Orbit labels of all vectors of M under the group (and any extra matrices)."""
    vecs = M.vectors()
    N = vecs.shape[0]
    src, dst = [], []
    for A in list(M.gen_actions) + list(extra_actions):
        src.append(np.arange(N))
        dst.append(M.encode(vecs @ A.T % M.p))
    src = np.concatenate(src) if src else np.zeros(0, dtype=np.int64)
    dst = np.concatenate(dst) if dst else np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return vecs, labels


def field_scalar_action(mods: MatrixModules, module):
    """Matrix of multiplication by a generator of k^x on a matrix module (if defined)."""
    k = mods.k
    g = k.generator_code
    n = mods.n
    Mfull = np.zeros((mods.M.dim, mods.M.dim), dtype=np.int64)
    for idx in range(n * n):
        for l, x in enumerate(k.basis_codes):
            Mfull[idx * k.d:(idx + 1) * k.d, idx * k.d + l] = k.coeffs(k.mul(g, x))
    if module is mods.M:
        return Mfull
    if module is mods.M0:
        return (Mfull @ mods.M0.basis.T % k.p)[mods.M0.pivots, :]
    if module is mods.S:
        M0act = (Mfull @ mods.M0.basis.T % k.p)[mods.M0.pivots, :]
        return mods.S._induced(M0act)
    if module is mods.V:
        M0act = (Mfull @ mods.M0.basis.T % k.p)[mods.M0.pivots, :]
        return mods.V._induced(M0act)
    raise DescriptorMismatch("not one of the family's modules")


def cyclic_submodules(M):
    """Distinct spin(v) over all v, using orbit representatives."""
    vecs, labels = orbits(M)
    reps = {}
    for i, lab in enumerate(labels):
        reps.setdefault(int(lab), i)
    subs = {}
    for lab, i in reps.items():
        sub = spin(M, vecs[i])
        subs.setdefault(sub.key(), sub)
    return list(subs.values())


def submodule_lattice(M):
    """All submodules, as sums of cyclic submodules."""
    if M.size > LATTICE_CAP * 16:
        raise SizeExceeded("module too large for lattice enumeration")
    cyc = cyclic_submodules(M)
    found = {s.key(): s for s in cyc}
    frontier = list(found.values())
    while frontier:
        new = []
        for a in frontier:
            for c in cyc:
                s = sum_submodules(a, c)
                if s.key() not in found:
                    found[s.key()] = s
                    new.append(s)
        frontier = new
    return sorted(found.values(), key=lambda s: (s.dim, s.key()))


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(dim, p):
    return sum(gaussian_binomial(dim, i, p) for i in range(dim + 1))


def classify_submodules(mods: MatrixModules, lattice_cap=LATTICE_CAP):
    """Check the dichotomy "X inside S or X = M_0" by exhaustion over vectors of M_0.

    Vectors in one orbit of G x k^x span isomorphic cyclic submodules, so
    one spin per orbit covers every vector.  Returns a report dict.
    """
    M0, S = mods.M0, mods.S
    if M0.size > CLASSIFY_CAP:
        raise SizeExceeded(f"M_0 has {M0.size} vectors")
    scal = field_scalar_action(mods, M0)
    vecs, labels = orbits(M0, [scal])
    full_seen = set()
    checked = 0
    reps = {}
    for i, lab in enumerate(labels):
        reps.setdefault(int(lab), i)
    in_S = S.contains if S.dim else (lambda rows: not np.asarray(rows).any())
    lemma_applies = not (mods.n == 2 and mods.k.size == 2)
    witness = None
    for lab, i in sorted(reps.items(), key=lambda t: t[1]):
        v = vecs[i]
        if not v.any():
            continue
        checked += 1
        sub = spin(M0, v)
        if in_S(v[None, :]):
            ok = sub.dim == 0 if S.dim == 0 else S.contains(sub.basis)
        else:
            ok = sub.dim == M0.dim
        if sub.dim == M0.dim:
            full_seen.add(lab)
        if not ok and witness is None:
            witness = v
    report = {
        "n": mods.n,
        "k": repr(mods.k),
        "p": mods.p,
        "dims": {"M0": M0.dim, "S": S.dim, "V": mods.V.dim},
        "orbits": len(reps),
        "orbit_representatives_checked": checked,
        "vectors_covered": int(vecs.shape[0]),
        "lemma_applies": lemma_applies,
        "lemma_holds": witness is None,
        "witness": None if witness is None else witness.tolist(),
    }
    if M0.size <= lattice_cap:
        lattice = submodule_lattice(M0)
        report["submodule_count"] = len(lattice)
        report["submodule_dims"] = [s.dim for s in lattice]
    elif witness is None:
        report["submodule_count"] = subspace_count(S.dim, mods.p) + (1 if M0.dim > S.dim else 0)
    if witness is not None and lemma_applies:
        raise ClassificationFailure("a submodule outside the dichotomy was found", witness=witness.tolist())
    return report


# ---------------------------------------------------------------------------
# Hom spaces and lattice operations


def hom_space(M, N):
    """Basis of Hom_G(M, N), each as a ``ModuleMap``."""
    if M.group is not N.group:
        raise DescriptorMismatch("modules over different groups")
    p, Dm, Dn = M.p, M.dim, N.dim
    if Dm == 0 or Dn == 0:
        return []
    eqs = []
    Im, In = np.eye(Dm, dtype=np.int64), np.eye(Dn, dtype=np.int64)
    for A, B in zip(M.gen_actions, N.gen_actions):
        eqs.append(np.kron(In, A.T) - np.kron(B, Im))
    if eqs:
        K = nullspace(np.vstack(eqs) % p, p, Dm * Dn)
    else:
        K = np.eye(Dm * Dn, dtype=np.int64)
    return [ModuleMap(M, N, row.reshape(Dn, Dm), check=False) for row in K]


def _same_parent(A, B):
    if not (isinstance(A, SubModule) and isinstance(B, SubModule)) or A.parent is not B.parent:
        raise DescriptorMismatch("submodules of different modules")


def intersect_submodules(A, B):
    _same_parent(A, B)
    if A.dim == 0 or B.dim == 0:
        return A.parent.zero()
    return A.parent.submodule(_intersect_rows(A.basis, B.basis, A.p), check=False)


def sum_submodules(A, B):
    _same_parent(A, B)
    rows = np.vstack([A.basis, B.basis])
    return A.parent.submodule(rows, check=False)


def module_ops(op, *args):
    if op == "intersect":
        return intersect_submodules(*args)
    if op == "sum":
        return sum_submodules(*args)
    if op == "quotient":
        M, N = args
        return M.quotient(N)
    if op == "direct_power":
        return direct_power(*args)
    raise ValueError(f"unknown module operation {op!r}")


def all_subspaces(M, sub):
    """Every F_p-subspace of the submodule ``sub`` (as SubModules of M, unchecked)."""
    p, d = M.p, sub.dim
    seen = {}
    for r in range(d + 1):
        for combo in itertools.product(range(p), repeat=r * d):
            rows = np.array(combo, dtype=np.int64).reshape(r, d)
            s = M.submodule(sub.embed(rows) if r else np.zeros((0, M.dim), np.int64), check=False)
            seen.setdefault(s.key(), s)
    return list(seen.values())
