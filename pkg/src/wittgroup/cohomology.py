"""Low-degree group cohomology over F_p with cochains parametrized on a Cayley tree.

Cocycles are stored by their values on generators only:

* a normalized 1-cocycle by ``xi(s)`` for ``s`` in a generator list ``S``;
* a normalized 2-cocycle by ``x(g, s)`` for ``g`` in G and ``s`` in ``S``.

All other values follow from the cocycle law along the BFS tree of the right
Cayley graph, and the law holds everywhere iff it holds on the non-tree
edges (each non-tree edge closes one fundamental cycle).  This keeps the
H^1 systems at ``|S| * D`` unknowns and makes coboundary tests cheap even
for groups far beyond the direct H^2 cap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    ClassesDiffer,
    CocycleInvalid,
    DescriptorMismatch,
    KernelNotAbelianP,
    NotEquivariant,
    SectionInvalid,
    SizeExceeded,
    CapExceeded,
)
from .linalg import QuotientSpace, RowSpace, solve, span
from .matgroup import sylow as _sylow, is_p_power

H1_VARIABLE_CAP = 2**22
H2_GROUP_CAP = 256


def _gens(G, gens):
    return list(G.generators if gens is None else gens)


# ---------------------------------------------------------------------------
# cochains


class Cocycle1:
    """Normalized 1-cocycle given by its values on a generator list."""

    def __init__(self, module, gens, gen_values, check=True):
        self.module = module
        self.group = module.group
        self.gens = list(gens)
        self.gen_values = np.mod(np.asarray(gen_values, dtype=np.int64).reshape(len(self.gens), module.dim),
                                 module.p)
        if check:
            self.validate()

    @classmethod
    def from_values(cls, module, values, gens=None, check=True):
        """From a full table ``values[g]`` (shape |G| x D)."""
        G = module.group
        gens = _gens(G, gens)
        values = np.asarray(values, dtype=np.int64)
        c = cls(module, gens, values[gens], check=False)
        if check:
            if not np.array_equal(c.values % module.p, values % module.p):
                raise CocycleInvalid("values do not satisfy the 1-cocycle law")
        return c

    @property
    def X(self):
        return self.gen_values.reshape(-1)

    @cached_property
    def values(self):
        """``xi(g)`` for every g (shape |G| x D)."""
        G, M = self.group, self.module
        tree = G.cayley(self.gens)
        out = np.zeros((len(G), M.dim), dtype=np.int64)
        acts = M.act_all
        for h in tree.order[1:]:
            ph, s = tree.parent[h], tree.parent_gen[h]
            out[h] = (out[ph] + acts[ph] @ self.gen_values[s]) % M.p
        return out

    @property
    def vector(self):
        """Flat ``|G| * D`` vector with one block per element."""
        return self.values.reshape(-1)

    def validate(self):
        """Check the law on every edge ``(g, s)`` of the Cayley graph."""
        G, M = self.group, self.module
        tree = G.cayley(self.gens)
        vals, acts, p = self.values, M.act_all, M.p
        lhs = vals[tree.right]  # (|G|, |S|, D)
        rhs = vals[:, None, :] + np.einsum("gij,sj->gsi", acts, self.gen_values)
        if (np.mod(lhs - rhs, p)).any():
            raise CocycleInvalid("1-cocycle law fails on a Cayley edge")
        return True

    def check_law(self, samples=10000, seed=7):
        G, M = self.group, self.module
        rng = random.Random(seed)
        vals, acts = self.values, M.act_all
        for _ in range(samples):
            g, h = rng.randrange(len(G)), rng.randrange(len(G))
            if ((vals[G.mult(g, h)] - vals[g] - acts[g] @ vals[h]) % M.p).any():
                return False
        return True

    def __add__(self, other):
        return Cocycle1(self.module, self.gens, self.gen_values + other.gen_values, check=False)

    def scale(self, c):
        return Cocycle1(self.module, self.gens, self.gen_values * c, check=False)


def coboundary1(module, m, gens=None):
    """The 1-coboundary ``g -> g.m - m``."""
    G = module.group
    gens = _gens(G, gens)
    m = np.asarray(m, dtype=np.int64)
    vals = [(module.act_all[s] @ m - m) % module.p for s in gens]
    return Cocycle1(module, gens, vals, check=False)


class Cocycle2:
    """Normalized 2-cocycle given by ``xs[g, i] = x(g, gens[i])`` (``xs[0] = 0``)."""

    def __init__(self, module, gens, xs, check=True):
        self.module = module
        self.group = module.group
        self.gens = list(gens)
        self.xs = np.mod(np.asarray(xs, dtype=np.int64).reshape(len(self.group), len(self.gens), module.dim),
                         module.p)
        if self.xs[0].any():
            raise CocycleInvalid("cocycle is not normalized: x(e, s) != 0")
        if check and not self.satisfies_tree_law():
            raise CocycleInvalid("2-cocycle law fails")

    @classmethod
    def from_function(cls, module, fn, gens=None, check=True):
        """From a callable ``fn(g, h) -> vector``."""
        G = module.group
        gens = _gens(G, gens)
        xs = np.zeros((len(G), len(gens), module.dim), dtype=np.int64)
        for g in range(1, len(G)):
            for i, s in enumerate(gens):
                xs[g, i] = fn(g, s)
        return cls(module, gens, xs, check=check)

    @property
    def X(self):
        return self.xs[1:].reshape(-1)

    @classmethod
    def from_X(cls, module, gens, X, check=False):
        G = module.group
        xs = np.zeros((len(G), len(gens), module.dim), dtype=np.int64)
        xs[1:] = np.asarray(X, dtype=np.int64).reshape(len(G) - 1, len(gens), module.dim)
        return cls(module, gens, xs, check=check)

    def value(self, g, h):
        """``x(g, h)`` by the recursion ``x(g, hs) = x(g, h) + x(gh, s) - g.x(h, s)``."""
        G, M = self.group, self.module
        tree = G.cayley(self.gens)
        acc = np.zeros(M.dim, dtype=np.int64)
        cur = 0
        ag = M.act_all[g]
        for s in tree.word(h):
            acc += self.xs[G.mult(g, cur), s] - ag @ self.xs[cur, s]
            cur = int(tree.right[cur, s])
        return acc % M.p

    @cached_property
    def table(self):
        """All values ``x(g, h)``, shape (|G|, |G|, D); needs the multiplication table."""
        G, M = self.group, self.module
        T = G.mul_table()
        tree = G.cayley(self.gens)
        out = np.zeros((len(G), len(G), M.dim), dtype=np.int64)
        acts = M.act_all
        for h in tree.order[1:]:
            ph, s = tree.parent[h], tree.parent_gen[h]
            out[:, h] = (out[:, ph] + self.xs[T[:, ph], s] - acts @ self.xs[ph, s]) % M.p
        return out

    def satisfies_tree_law(self):
        """The law on non-tree edges, for every first argument."""
        G, M = self.group, self.module
        if len(G) > 4096:
            return self.check_law(samples=2000)
        tab = self.table
        tree = G.cayley(self.gens)
        T = G.mul_table()
        acts = M.act_all
        for i in range(len(self.gens)):
            hs = tree.right[:, i]
            # x(g, h s) - x(g, h) - x(gh, s) + g x(h, s) for all g, h
            lhs = tab[:, hs] - tab - self.xs[T, i] + np.einsum("gab,hb->gha", acts, self.xs[:, i])
            if (lhs % M.p).any():
                return False
        return True

    def check_law(self, samples=2000, seed=7):
        G, M = self.group, self.module
        rng = random.Random(seed)
        for _ in range(samples):
            g, h, k = (rng.randrange(len(G)) for _ in range(3))
            val = (M.act_all[g] @ self.value(h, k) - self.value(G.mult(g, h), k)
                   + self.value(g, G.mult(h, k)) - self.value(g, h))
            if (val % M.p).any():
                return False
        return True

    def __add__(self, other):
        return Cocycle2(self.module, self.gens, self.xs + other.xs, check=False)

    def __sub__(self, other):
        return Cocycle2(self.module, self.gens, self.xs - other.xs, check=False)

    def scale(self, c):
        return Cocycle2(self.module, self.gens, self.xs * c, check=False)

    def push(self, modmap):
        """Image under a module map (``modmap.source`` must be this module)."""
        T = modmap.matrix
        return Cocycle2(modmap.target, self.gens, self.xs @ T.T, check=False)


def coboundary2(module, c_values, gens=None):
    """``(dc)(g, h) = g.c(h) - c(gh) + c(g)`` from a normalized 1-cochain table."""
    G = module.group
    gens = _gens(G, gens)
    c = np.asarray(c_values, dtype=np.int64)
    tree = G.cayley(gens)
    acts = module.act_all
    xs = np.zeros((len(G), len(gens), module.dim), dtype=np.int64)
    for i, s in enumerate(gens):
        xs[:, i] = acts @ c[s] - c[tree.right[:, i]] + c
    return Cocycle2(module, gens, xs, check=False)


# ---------------------------------------------------------------------------
# cohomology spaces


class CohomologySpace:
    """Z, B and a complement basis of H = Z/B in generator-value coordinates."""

    def __init__(self, degree, module, gens, Z_basis, B_rows, ncols):
        self.degree = degree
        self.module = module
        self.group = module.group
        self.gens = list(gens)
        self.p = module.p
        self.ncols = ncols
        self.Z = span(Z_basis, ncols, self.p)
        self.B = span(B_rows, ncols, self.p)
        self.quotient = QuotientSpace(self.B.basis, self.Z.basis, ncols, self.p)
        self.dim_Z = self.Z.rank
        self.dim_B = self.B.rank
        self.dim_H = self.dim_Z - self.dim_B
        if self.quotient.dim != self.dim_H:
            raise ArithmeticError("B is not contained in Z")

    @property
    def basis(self):
        """Representatives of an F_p-basis of H (rows)."""
        return self.quotient.complement.basis

    def k_dim(self):
        d = self.module.field_degree
        return self.dim_H / d if d else self.dim_H

    def coordinates_of(self, c):
        """Flat vector of a cochain, re-expressed on this space's generators if needed."""
        if isinstance(c, Cocycle1):
            if c.gens != self.gens:
                c = Cocycle1(self.module, self.gens, c.values[self.gens], check=False)
            return c.X
        if isinstance(c, Cocycle2):
            if c.gens != self.gens:
                c = Cocycle2.from_function(self.module, c.value, self.gens, check=False)
            return c.X
        return np.asarray(c, dtype=np.int64)

    def is_cocycle(self, X):
        return self.Z.contains(self.coordinates_of(X))

    def class_coords(self, X):
        return self.quotient.coordinates(np.atleast_2d(self.coordinates_of(X)))[0]

    def is_zero(self, X):
        return not self.B.reduce(self.coordinates_of(X)).any()

    def cocycle(self, i):
        return self.wrap(self.basis[i])

    def wrap(self, X):
        if self.degree == 1:
            return Cocycle1(self.module, self.gens, X, check=False)
        return Cocycle2.from_X(self.module, self.gens, X)

    def summary(self):
        return {"degree": self.degree, "dim_Z": self.dim_Z, "dim_B": self.dim_B, "dim_H": self.dim_H}


def _h1_linear_maps(module, gens):
    """``L[g]`` with ``xi(g) = L[g] @ X`` for X the stacked generator values."""
    G, D = module.group, module.dim
    S = len(gens)
    tree = G.cayley(gens)
    L = np.zeros((len(G), D, S * D), dtype=np.int64)
    acts = module.act_all
    for h in tree.order[1:]:
        ph, s = tree.parent[h], tree.parent_gen[h]
        L[h] = L[ph]
        L[h][:, s * D:(s + 1) * D] += acts[ph]
        L[h] %= module.p
    return L, tree


def h1(module, gens=None) -> CohomologySpace:
    G, D, p = module.group, module.dim, module.p
    gens = _gens(G, gens)
    S = len(gens)
    if len(G) * D > H1_VARIABLE_CAP:
        raise SizeExceeded(f"|G|*D = {len(G) * D} exceeds the H^1 budget")
    ncols = S * D
    if D == 0 or S == 0:
        return CohomologySpace(1, module, gens, np.zeros((0, ncols)), np.zeros((0, ncols)), ncols)
    L, tree = _h1_linear_maps(module, gens)
    acts = module.act_all
    rs = RowSpace(ncols, p)
    nontree = np.argwhere(~tree.tree_edges)
    chunk = max(1, 4096 // D)
    for start in range(0, len(nontree), chunk):
        rows = []
        for g, i in nontree[start:start + chunk]:
            y = tree.right[g, i]
            R = L[g] - L[y]
            R[:, i * D:(i + 1) * D] += acts[g]
            rows.append(R)
        rs.add(np.vstack(rows) % p)
    Z = rs.nullspace()
    eye = np.eye(D, dtype=np.int64)
    B = np.hstack([(acts[s] - eye).T for s in gens]) % p  # row j: (s.e_j - e_j)_s
    return CohomologySpace(1, module, gens, Z, B, ncols)


def _path_edges(tree, h):
    out = []
    while h != 0:
        ph = int(tree.parent[h])
        out.append((ph, int(tree.parent_gen[h])))
        h = ph
    return out[::-1]


def _fundamental_cycle(tree, h, i):
    """Signed tree/non-tree edges of ``path(h) + (h, i) - path(h s_i)``."""
    a = _path_edges(tree, h)
    b = _path_edges(tree, int(tree.right[h, i]))
    k = 0
    while k < len(a) and k < len(b) and a[k] == b[k]:
        k += 1
    return [(g, s, 1) for g, s in a[k:]] + [(h, i, 1)] + [(g, s, -1) for g, s in b[k:]]


def h2(module, gens=None, cap=H2_GROUP_CAP) -> CohomologySpace:
    G, D, p = module.group, module.dim, module.p
    if len(G) > cap:
        raise SizeExceeded(f"direct H^2 is capped at |G| <= {cap}")
    if gens is None:
        gens = G.small_generators()
    gens = list(gens)
    S, N = len(gens), len(G)
    ncols = (N - 1) * S * D
    if ncols == 0:
        return CohomologySpace(2, module, gens, np.zeros((0, 0)), np.zeros((0, 0)), 0)
    T = G.mul_table()
    tree = G.cayley(gens)
    acts = module.act_all

    def block(g, i):
        return ((g - 1) * S + i) * D

    rs = RowSpace(ncols, p)
    gs = np.arange(1, N)
    for h, i in np.argwhere(~tree.tree_edges):
        cyc = _fundamental_cycle(tree, int(h), int(i))
        R = np.zeros((N - 1, D, ncols), dtype=np.int64)
        for hp, sp, sign in cyc:
            # + sign * x(g hp, sp)
            ghp = T[gs, hp]
            for r, gh in enumerate(ghp):
                if gh:
                    R[r, :, block(gh, sp):block(gh, sp) + D] += sign * np.eye(D, dtype=np.int64)
            # - sign * g.x(hp, sp)
            if hp:
                R[:, :, block(hp, sp):block(hp, sp) + D] -= sign * acts[gs]
        rs.add(R.reshape(-1, ncols) % p)
    Z = rs.nullspace()
    # coboundaries of normalized 1-cochains c, c-basis (g0, j)
    B = np.zeros(((N - 1) * D, ncols), dtype=np.int64)
    for g in range(1, N):
        for i, s in enumerate(gens):
            col = block(g, i)
            # + g.c(s)
            if s:
                B[(s - 1) * D:s * D, col:col + D] += acts[g].T
            # - c(g s)
            gs_ = int(tree.right[g, i])
            if gs_:
                B[(gs_ - 1) * D:gs_ * D, col:col + D] -= np.eye(D, dtype=np.int64)
            # + c(g)
            B[(g - 1) * D:g * D, col:col + D] += np.eye(D, dtype=np.int64)
    return CohomologySpace(2, module, gens, Z, B % p, ncols)


def h0(module):
    return module.fixed_points()


# ---------------------------------------------------------------------------
# coboundary solvers


@dataclass
class Obstruction:
    """A cocycle that is not a coboundary, kept as a value for downstream checks."""

    degree: int
    module: object
    cocycle: object
    class_coords: list | None = None
    note: str = ""

    @property
    def vector(self):
        return self.cocycle.X

    def to_json(self):
        return {"degree": self.degree, "cocycle": [int(v) for v in self.vector],
                "class_coords": self.class_coords, "note": self.note}


def solve_h1_coboundary(xi: Cocycle1):
    """m with ``xi(s) = s.m - m`` for all generators, or None."""
    M = xi.module
    D = M.dim
    if D == 0:
        return np.zeros(0, dtype=np.int64)
    eye = np.eye(D, dtype=np.int64)
    A = np.vstack([(M.act_all[s] - eye) for s in xi.gens]) % M.p
    return solve(A, xi.gen_values.reshape(-1), M.p)


def coboundary_solve1(xi: Cocycle1, sub=None, quotient=None):
    """m in M with ``xi(g) - (g.m - m)`` in ``sub`` for all g, or an ``Obstruction``.

    ``xi`` takes values in M (the parent of ``sub``).  When ``sub`` is given
    the solve happens in M/sub and the lift of the solution is returned.
    """
    M = xi.module
    if sub is None:
        m = solve_h1_coboundary(xi)
        if m is None:
            return Obstruction(1, M, xi, note="not a coboundary in M")
        return m
    Q = quotient or M.quotient(sub)
    xq = Cocycle1(Q, xi.gens, Q.project(xi.gen_values), check=False)
    mq = solve_h1_coboundary(xq)
    if mq is None:
        H = h1(Q, xi.gens)
        return Obstruction(1, Q, xq, class_coords=H.class_coords(xq.X).tolist(),
                           note="nonzero class in H^1(G, M/N)")
    return Q.lift(mq)


def _affine_tree_solver(module, gens, xs):
    """Solve ``x(g, s) = g.c(s) - c(gs) + c(g)`` for a normalized 1-cochain c."""
    G, D, p = module.group, module.dim, module.p
    S = len(gens)
    tree = G.cayley(gens)
    acts = module.act_all
    N = len(G)
    K = np.zeros((N, D, S * D), dtype=np.int64)
    k = np.zeros((N, D), dtype=np.int64)
    for h in tree.order[1:]:
        ph, s = tree.parent[h], tree.parent_gen[h]
        K[h] = K[ph]
        K[h][:, s * D:(s + 1) * D] += acts[ph]
        K[h] %= p
        k[h] = (k[ph] - xs[ph, s]) % p
    rows, rhs = [], []
    for g, i in np.argwhere(~tree.tree_edges):
        y = tree.right[g, i]
        R = K[g] - K[y]
        R[:, i * D:(i + 1) * D] += acts[g]
        rows.append(R % p)
        rhs.append((xs[g, i] + k[y] - k[g]) % p)
    if not rows:
        Y = np.zeros(S * D, dtype=np.int64)
    else:
        Y = solve(np.vstack(rows), np.concatenate(rhs), p)
        if Y is None:
            return None
    return (np.einsum("gij,j->gi", K, Y) + k) % p


def is_coboundary2(x: Cocycle2):
    """Full table of a normalized 1-cochain c with ``dc = x``, or None."""
    if x.module.dim == 0:
        return np.zeros((len(x.group), 0), dtype=np.int64)
    return _affine_tree_solver(x.module, x.gens, x.xs)


def same_class2(x: Cocycle2, y: Cocycle2):
    return is_coboundary2(x - y) is not None


# ---------------------------------------------------------------------------
# restriction and inflation


def restrict(c, subgroup, sub_module=None):
    """Restriction of a cocycle to a subgroup (``subgroup.parent_index`` into c's group)."""
    M = c.module
    Mp = sub_module or M.restrict(subgroup)
    idx = subgroup.parent_index
    gens = subgroup.generators
    if isinstance(c, Cocycle1):
        vals = c.values[idx[gens]]
        return Cocycle1(Mp, gens, vals, check=False)
    xs = np.zeros((len(subgroup), len(gens), M.dim), dtype=np.int64)
    for g in range(1, len(subgroup)):
        for i, t in enumerate(gens):
            xs[g, i] = c.value(int(idx[g]), int(idx[t]))
    return Cocycle2(Mp, gens, xs, check=False)


def inflate(c, hom, module=None):
    """Pull back along ``hom: E -> G``."""
    M = c.module
    E = hom.source
    Mi = module or M.inflate(hom)
    gens = E.generators
    if isinstance(c, Cocycle1):
        return Cocycle1(Mi, gens, c.values[hom.images[gens]], check=False)
    xs = np.zeros((len(E), len(gens), M.dim), dtype=np.int64)
    for a in range(1, len(E)):
        for i, t in enumerate(gens):
            xs[a, i] = c.value(hom(a), hom(t))
    return Cocycle2(Mi, gens, xs, check=False)


def sylow(G, p, seed=7):
    return _sylow(G, p, seed=seed)


# ---------------------------------------------------------------------------
# extensions


class ExtensionDescription:
    """An extension ``0 -> M -> E -> G -> 1`` with abelian kernel, via callbacks.

    ``mul``/``inv`` act on hashable elements of E; ``project(e)`` returns a G
    index; ``section[g]`` is an element of E over g with ``section[0]`` the
    identity; ``kernel_coords(e)`` gives module coordinates of a kernel element
    and ``kernel_element(v)`` is the inverse injection.  ``total`` may hold the
    enumerated E.
    """

    def __init__(self, G, module, mul, inv, identity, project, section, kernel_coords, kernel_element,
                 total=None, name=None):
        self.G = G
        self.module = module
        self.mul = mul
        self.inv = inv
        self.identity = identity
        self.project = project
        self.section = list(section)
        self.kernel_coords = kernel_coords
        self.kernel_element = kernel_element
        self.total = total
        self.name = name
        if self.section[0] != identity:
            raise SectionInvalid("section must send e to e")

    def validate(self, samples=200, seed=7):
        """Section property, kernel injectivity/equivariance on samples."""
        G, M = self.G, self.module
        for g, s in enumerate(self.section):
            if self.project(s) != g:
                raise SectionInvalid(f"section is not over element {g}")
        rng = random.Random(seed)
        basis = np.eye(M.dim, dtype=np.int64)
        for i in range(M.dim):
            e = self.kernel_element(basis[i])
            if self.project(e) != 0 or not np.array_equal(self.kernel_coords(e), basis[i]):
                raise SectionInvalid("kernel injection is inconsistent")
            for j in range(M.dim):
                f = self.kernel_element(basis[j])
                if self.mul(e, f) != self.kernel_element((basis[i] + basis[j]) % M.p):
                    raise KernelNotAbelianP("kernel is not an elementary abelian p-group")
        for _ in range(samples if M.dim else 0):
            g = rng.randrange(len(G))
            v = np.array([rng.randrange(M.p) for _ in range(M.dim)], dtype=np.int64)
            s = self.section[g]
            conj = self.mul(self.mul(s, self.kernel_element(v)), self.inv(s))
            if not np.array_equal(self.kernel_coords(conj), M.act_vec(g, v)):
                raise NotEquivariant("conjugation does not match the module action")
        return True

    def restrict(self, subgroup):
        """The extension over a subgroup of G (its preimage in E)."""
        idx = subgroup.parent_index
        lookup = {int(a): i for i, a in enumerate(idx)}

        def project(e):
            return lookup[self.project(e)]

        return ExtensionDescription(
            subgroup, self.module.restrict(subgroup), self.mul, self.inv, self.identity, project,
            [self.section[int(a)] for a in idx], self.kernel_coords, self.kernel_element,
            name=f"{self.name}|{subgroup.name}")

    def cocycle_value(self, g, h):
        s = self.section
        G = self.G
        return self.kernel_coords(self.mul(self.mul(s[g], s[h]), self.inv(s[G.mult(g, h)])))


def extension_cocycle(E: ExtensionDescription, gens=None) -> Cocycle2:
    """``x(g, h)`` = coordinates of ``s(g) s(h) s(gh)^-1``, stored on generators."""
    G, M = E.G, E.module
    gens = _gens(G, gens)
    xs = np.zeros((len(G), len(gens), M.dim), dtype=np.int64)
    tree = G.cayley(gens)
    s = E.section
    inv_s = [E.inv(t) for t in s]
    for g in range(1, len(G)):
        sg = s[g]
        for i, t in enumerate(gens):
            gh = int(tree.right[g, i])
            xs[g, i] = E.kernel_coords(E.mul(E.mul(sg, s[t]), inv_s[gh]))
    return Cocycle2(M, gens, xs, check=False)


def transgression(E: ExtensionDescription, phi, target=None, random_lifts=False, seed=7, gens=None):
    """The 2-cocycle ``dpi(g1, g2) = pi(a1) + a1 pi(a2) a1^-1 - pi(a1 a2)``.

    ``pi(j(v) s(g)) = phi(v)`` for the G-map ``phi`` (a ``ModuleMap`` out of
    the kernel module, or a matrix).  Lifts ``a_i`` are the section values,
    or seeded random elements of the fibres when ``random_lifts`` is set.
    """
    from .gmodule import ModuleMap

    G, K = E.G, E.module
    if isinstance(phi, ModuleMap):
        Phi, Mt = phi.matrix, phi.target
        if not phi.is_equivariant():
            raise NotEquivariant("phi is not a G-map")
    else:
        Phi = np.asarray(phi, dtype=np.int64)
        Mt = target or K
        if any(not np.array_equal(Phi @ A % K.p, B @ Phi % K.p) for A, B in zip(K.gen_actions, Mt.gen_actions)):
            raise NotEquivariant("phi is not a G-map")
    p = K.p
    gens = _gens(G, gens)
    s = E.section
    inv_s = [E.inv(t) for t in s]

    def pi(a):
        g = E.project(a)
        return Phi @ E.kernel_coords(E.mul(a, inv_s[g])) % p

    rng = random.Random(seed)

    def lift(g):
        if not random_lifts or K.dim == 0:
            return s[g]
        v = np.array([rng.randrange(p) for _ in range(K.dim)], dtype=np.int64)
        return E.mul(E.kernel_element(v), s[g])

    lifts = [lift(g) for g in range(len(G))]
    lifts[0] = E.identity
    G.cayley(gens)
    xs = np.zeros((len(G), len(gens), Mt.dim), dtype=np.int64)
    for g in range(1, len(G)):
        a1 = lifts[g]
        pa1 = pi(a1)
        for i, t in enumerate(gens):
            a2 = lifts[t]
            xs[g, i] = pa1 + Mt.act_vec(g, pi(a2)) - pi(E.mul(a1, a2))
    # random lifts of e would break normalization; lifts[0] is the identity
    return Cocycle2(Mt, gens, xs, check=False)


# ---------------------------------------------------------------------------
# splitting


@dataclass
class SplitResult:
    split: bool
    sylow_order: int
    method: str
    sylow_section: dict | None = None
    section: dict | None = None
    certificate: dict = field(default_factory=dict)
    brute_force: bool | None = None

    def to_json(self):
        return {"verdict": "Split" if self.split else "NonSplit", "sylow_order": self.sylow_order,
                "method": self.method, "brute_force_agrees": self.brute_force,
                "certificate": self.certificate}


def _section_from_cochain(E, c_values):
    """``theta(g) = j(-c(g)) s(g)``: a homomorphic section when ``dc = x``."""
    p = E.module.p
    return [E.mul(E.kernel_element((-c_values[g]) % p), E.section[g]) for g in range(len(E.G))]


def verify_section(E, theta, exhaustive_limit=4096, samples=20000, seed=7):
    """Check ``theta(g) theta(h) = theta(gh)`` (exhaustively when small)."""
    G = E.G
    N = len(G)
    if any(E.project(t) != g for g, t in enumerate(theta)):
        return False
    if N <= exhaustive_limit // 8:
        pairs = ((g, h) for g in range(N) for h in range(N))
    else:
        rng = random.Random(seed)
        pairs = ((rng.randrange(N), rng.randrange(N)) for _ in range(samples))
    for g, h in pairs:
        if E.mul(theta[g], theta[h]) != theta[G.mult(g, h)]:
            return False
    return True


def cohomological_split(E: ExtensionDescription, seed=7, P=None):
    """Gaschutz: decide splitting at a Sylow p-subgroup; returns ``(split, P, section_over_P)``."""
    p = E.module.p
    P = P or _sylow(E.G, p, seed=seed)
    EP = E.restrict(P)
    x = extension_cocycle(EP)
    c = is_coboundary2(x)
    if c is None:
        return False, P, x
    theta = _section_from_cochain(EP, c)
    if not verify_section(EP, theta):
        raise ArithmeticError("constructed Sylow section is not a homomorphism")
    return True, P, theta


def _element_order(E, a, limit):
    k, x = 1, a
    while x != E.identity:
        x = E.mul(x, a)
        k += 1
        if k > limit:
            return None
    return k


def brute_force_section(E: ExtensionDescription, budget=2**20, seed=7, gens=None):
    """Search lifts of a small generating set whose closure maps bijectively onto G.

    Returns the section as a list (or None when none exists), and raises
    ``SizeExceeded`` when the search space is over budget.
    """
    G, K = E.G, E.module
    gens = list(gens) if gens is not None else G.small_generators(seed=seed)
    q = K.p**K.dim
    if q ** len(gens) > budget:
        raise SizeExceeded("lift search space exceeds the budget")
    kernel = [E.kernel_element(v) for v in _all_vectors(K.dim, K.p)]
    N = len(G)
    # candidates per generator: lifts with the same order as the generator
    cands = []
    for t in gens:
        o = G.element_order(t)
        lifts = [E.mul(k, E.section[t]) for k in kernel]
        cands.append([a for a in lifts if _element_order(E, a, o) == o])
    # short words whose orders must be preserved
    words = []
    if len(gens) >= 2:
        for w in [(0, 1), (0, 0, 1), (0, 1, 1), (0, 1, 0, 1, 1)]:
            g = 0
            for i in w:
                g = G.mult(g, gens[i])
            words.append((w, G.element_order(g)))
    from .matgroup import group_closure

    for combo in _product(cands):
        ok = True
        for w, o in words:
            a = E.identity
            for i in w:
                a = E.mul(a, combo[i])
            if _element_order(E, a, o) != o:
                ok = False
                break
        if not ok:
            continue
        try:
            H = group_closure(list(combo), E.mul, E.inv, E.identity, cap=N)
        except CapExceeded:
            continue
        if len(H) != N:
            continue
        theta = [None] * N
        for a in H.elements:
            g = E.project(a)
            if theta[g] is not None:
                break
            theta[g] = a
        else:
            return theta
    return None


def _product(lists):
    import itertools

    return itertools.product(*lists)


def _all_vectors(D, p):
    import itertools

    for combo in itertools.product(range(p), repeat=D):
        yield np.array(combo[::-1], dtype=np.int64)


def split_check(E: ExtensionDescription, seed=7, brute_force=True, budget=2**20, P=None):
    """Split/NonSplit with a certificate; runs both strategies where feasible."""
    K = E.module
    if K.dim and not is_p_power(K.p, K.p):
        raise KernelNotAbelianP("kernel must be an F_p-module")
    split, P, data = cohomological_split(E, seed=seed, P=P)
    cert = {"sylow_order": len(P), "sylow_generators": len(P.generators)}
    res = SplitResult(split=split, sylow_order=len(P), method="sylow-coboundary")
    if split:
        res.sylow_section = {"elements": len(data)}
    else:
        cert["restricted_cocycle_nonzero"] = True
        cert["restricted_cocycle"] = [int(v) for v in data.X]
    res.certificate = cert
    if brute_force:
        try:
            theta = brute_force_section(E, budget=budget, seed=seed)
        except SizeExceeded:
            theta = "skipped"
        if isinstance(theta, str):
            res.brute_force = None
        else:
            found = theta is not None
            if found and not verify_section(E, theta):
                raise ArithmeticError("brute-force section failed verification")
            res.brute_force = found == split
            if found:
                res.section = {"verified": True}
                res._theta = theta
            if found != split:
                raise ArithmeticError("splitting strategies disagree")
    return res


# ---------------------------------------------------------------------------
# maps on H^2


def h2_induced_matrix(Hs: CohomologySpace, Ht: CohomologySpace, modmap):
    """Matrix of the induced map on H^2 in the chosen bases (rows: source basis)."""
    T = modmap.matrix
    out = []
    for X in Hs.basis:
        xs = X.reshape(-1, Hs.module.dim)
        img = (xs @ T.T % Hs.p).reshape(-1)
        out.append(Ht.class_coords(img))
    return np.array(out, dtype=np.int64).reshape(Hs.dim_H, Ht.dim_H)


def h2_map_injectivity(N, M=None, gens=None):
    """Whether ``H^2(G, N) -> H^2(G, M)`` is injective for a submodule N of M."""
    M = M or N.parent
    if N.parent is not M:
        raise DescriptorMismatch("N must be a submodule of M")
    G = M.group
    gens = list(gens) if gens is not None else G.small_generators()
    HN = h2(N, gens)
    HM = h2(M, gens)
    if HN.dim_H == 0:
        return {"injective": True, "dim_H2_N": 0, "dim_H2_M": HM.dim_H, "rank": 0}
    A = h2_induced_matrix(HN, HM, N.inclusion())
    rank = span(A, HM.dim_H, M.p).rank if HM.dim_H else 0
    return {"injective": rank == HN.dim_H, "dim_H2_N": HN.dim_H, "dim_H2_M": HM.dim_H, "rank": rank}


def h2_intersection_descent(x: Cocycle2, y: Cocycle2, Msub, Nsub):
    """Given ``[x] = [y]`` in H^2(M + N), build z with values in M cap N.

    ``x`` and ``y`` are cocycles into the common ambient module with values
    in ``Msub`` and ``Nsub`` respectively.  Returns the ambient cocycle z and
    verifies ``[z] = [x]`` in H^2(M) and ``[z] = [y]`` in H^2(N).
    """
    from .gmodule import intersect_submodules, sum_submodules

    A = x.module
    if Msub.parent is not A or Nsub.parent is not A:
        raise DescriptorMismatch("submodules must live in the cocycles' module")
    p = A.p
    Ssum = sum_submodules(Msub, Nsub)
    diff = Cocycle2(Ssum, x.gens, Ssum.coords(x.xs - y.xs), check=False)
    c = is_coboundary2(diff)
    if c is None:
        raise ClassesDiffer("[x] and [y] differ in H^2(M + N)")
    c_amb = Ssum.embed(c)
    # split c = cM - cN with cM in M, cN in N
    stack = np.vstack([Msub.basis, Nsub.basis]).T
    cM = np.zeros_like(c_amb)
    cN = np.zeros_like(c_amb)
    for g in range(len(c_amb)):
        if not c_amb[g].any():
            continue
        sol = solve(stack, c_amb[g], p)
        cM[g] = sol[:Msub.dim] @ Msub.basis % p
        cN[g] = (-(sol[Msub.dim:] @ Nsub.basis)) % p
    z = Cocycle2(A, x.gens, x.xs - coboundary2(A, cM, x.gens).xs, check=False)
    z2 = Cocycle2(A, x.gens, y.xs - coboundary2(A, cN, x.gens).xs, check=False)
    if not np.array_equal(z.xs, z2.xs):
        raise ArithmeticError("descent produced inconsistent cocycles")
    inter = intersect_submodules(Msub, Nsub)
    if not inter.contains(z.xs.reshape(-1, A.dim)):
        raise ArithmeticError("descended cocycle is not in the intersection")
    zM = Cocycle2(Msub, x.gens, Msub.coords(z.xs), check=False)
    xM = Cocycle2(Msub, x.gens, Msub.coords(x.xs), check=False)
    zN = Cocycle2(Nsub, x.gens, Nsub.coords(z.xs), check=False)
    yN = Cocycle2(Nsub, x.gens, Nsub.coords(y.xs), check=False)
    if not (same_class2(zM, xM) and same_class2(zN, yN)):
        raise ClassesDiffer("descended class does not restrict correctly")
    z_int = Cocycle2(inter, x.gens, inter.coords(z.xs), check=False)
    return z, z_int
