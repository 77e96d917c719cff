"""Matrices over the coded local rings and enumerated finite groups.

Group elements are hashable objects (for matrix groups: the row-major tuple of
entry codes).  ``group_closure`` enumerates the group by breadth-first search,
multiplying on the right by generators; the resulting spanning tree
(``parent``/``parent_gen``) is reused by the cohomology solvers.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._ring import CodedRing
from .errors import CapExceeded, NonUnitDeterminant, NotClosed, DescriptorMismatch
from .galois_ring import RingSurjection, subfield_embedding
from .linalg import RowSpace

DEFAULT_CAP = 2**20
TABLE_LIMIT = 4096


# ---------------------------------------------------------------------------
# raw matrix arithmetic on code tuples


def _tables(ring):
    return ring.add_table, ring.mul_table


def mat_mul_codes(ring: CodedRing, n: int, a, b):
    addt, mult = _tables(ring)
    if addt is not None and n == 2:
        a0, a1, a2, a3 = a
        b0, b1, b2, b3 = b
        ma, mb, mc, md = mult[a0], mult[a1], mult[a2], mult[a3]
        return (
            addt[ma[b0]][mb[b2]],
            addt[ma[b1]][mb[b3]],
            addt[mc[b0]][md[b2]],
            addt[mc[b1]][md[b3]],
        )
    add, mul = ring.add, ring.mul
    out = []
    for i in range(n):
        row = a[i * n:(i + 1) * n]
        for j in range(n):
            acc = 0
            for k in range(n):
                if row[k] and b[k * n + j]:
                    acc = add(acc, mul(row[k], b[k * n + j]))
            out.append(acc)
    return tuple(out)


def mat_add_codes(ring, a, b):
    return tuple(ring.add(x, y) for x, y in zip(a, b))


def mat_sub_codes(ring, a, b):
    return tuple(ring.sub(x, y) for x, y in zip(a, b))


def identity_codes(n):
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def _eliminate(ring, n, a, want_inverse):
    """Gauss-Jordan with unit pivots (always available in a local ring)."""
    M = [list(a[i * n:(i + 1) * n]) for i in range(n)]
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if want_inverse else None
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if ring.is_unit(M[r][c])), None)
        if piv is None:
            return 0 if not want_inverse else None, None
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            if inv is not None:
                inv[c], inv[piv] = inv[piv], inv[c]
            det = ring.neg(det)
        pv = M[c][c]
        det = ring.mul(det, pv)
        pinv = ring.inv(pv)
        M[c] = [ring.mul(pinv, x) for x in M[c]]
        if inv is not None:
            inv[c] = [ring.mul(pinv, x) for x in inv[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(M[r], M[c])]
                if inv is not None:
                    inv[r] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(inv[r], inv[c])]
    return det, inv


def det_codes(ring, n, a):
    if n == 1:
        return a[0]
    if n == 2:
        return ring.sub(ring.mul(a[0], a[3]), ring.mul(a[1], a[2]))
    # a non-invertible matrix may still have a nonzero determinant in a
    # non-field; fall back to the Leibniz expansion in that case
    det, _ = _eliminate(ring, n, a, False)
    if det:
        return det
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for i, j in enumerate(perm):
            term = ring.mul(term, a[i * n + j])
            if not term:
                break
        if term:
            inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
            total = ring.sub(total, term) if inversions % 2 else ring.add(total, term)
    return total


def inverse_codes(ring, n, a):
    if n == 2:
        d = det_codes(ring, 2, a)
        if not ring.is_unit(d):
            raise NonUnitDeterminant("determinant is not a unit")
        di = ring.inv(d)
        return (
            ring.mul(di, a[3]),
            ring.mul(di, ring.neg(a[1])),
            ring.mul(di, ring.neg(a[2])),
            ring.mul(di, a[0]),
        )
    _, inv = _eliminate(ring, n, a, True)
    if inv is None:
        raise NonUnitDeterminant("determinant is not a unit")
    return tuple(x for row in inv for x in row)


# ---------------------------------------------------------------------------
# user-facing matrix type


@dataclass(frozen=True)
class RingMatrix:
    ring: CodedRing
    n: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.n * self.n:
            raise ValueError("entry count does not match size")

    @classmethod
    def from_rows(cls, ring, rows):
        n = len(rows)
        return cls(ring, n, tuple(int(x) for row in rows for x in row))

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, n, identity_codes(n))

    @classmethod
    def unit(cls, ring, n, i, j, t=1):
        """``t * e_ij``."""
        e = [0] * (n * n)
        e[i * n + j] = t
        return cls(ring, n, tuple(e))

    @classmethod
    def elementary(cls, ring, n, i, j, t):
        """``I + t * e_ij``."""
        e = list(identity_codes(n))
        e[i * n + j] = ring.add(e[i * n + j], t)
        return cls(ring, n, tuple(e))

    def _check(self, other):
        if other.ring is not self.ring or other.n != self.n:
            raise DescriptorMismatch("matrices over different rings or sizes")

    def __matmul__(self, other):
        self._check(other)
        return RingMatrix(self.ring, self.n, mat_mul_codes(self.ring, self.n, self.entries, other.entries))

    __mul__ = __matmul__

    def __add__(self, other):
        self._check(other)
        return RingMatrix(self.ring, self.n, mat_add_codes(self.ring, self.entries, other.entries))

    def __sub__(self, other):
        self._check(other)
        return RingMatrix(self.ring, self.n, mat_sub_codes(self.ring, self.entries, other.entries))

    def __neg__(self):
        return RingMatrix(self.ring, self.n, tuple(self.ring.neg(x) for x in self.entries))

    def scale(self, c):
        return RingMatrix(self.ring, self.n, tuple(self.ring.mul(c, x) for x in self.entries))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = RingMatrix.identity(self.ring, self.n), self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def det(self):
        return det_codes(self.ring, self.n, self.entries)

    def inverse(self):
        return RingMatrix(self.ring, self.n, inverse_codes(self.ring, self.n, self.entries))

    def trace(self):
        t = 0
        for i in range(self.n):
            t = self.ring.add(t, self.entries[i * self.n + i])
        return t

    def is_identity(self):
        return self.entries == identity_codes(self.n)

    def entry(self, i, j):
        return self.entries[i * self.n + j]

    def rows(self):
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def map_entries(self, fn, ring):
        return RingMatrix(ring, self.n, tuple(fn(x) for x in self.entries))

    def apply(self, pi: RingSurjection):
        if pi.source is not self.ring:
            raise DescriptorMismatch("surjection source does not match matrix ring")
        return self.map_entries(pi, pi.target)

    def residue(self):
        return self.map_entries(self.ring.residue, self.ring.residue_field)

    def __repr__(self):
        return f"RingMatrix({self.ring!r}, {self.rows()})"


def mat_arith(op, A: RingMatrix, B: RingMatrix) -> RingMatrix:
    if op == "add":
        return A + B
    if op == "sub":
        return A - B
    if op == "mul":
        return A @ B
    raise ValueError(f"unknown matrix operation {op!r}")


def det(A: RingMatrix):
    return A.det()


def inverse(A: RingMatrix) -> RingMatrix:
    return A.inverse()


# ---------------------------------------------------------------------------
# enumerated groups


class CayleyTree:
    """BFS spanning tree of the right Cayley graph for a generator list.

    ``right[g, i]`` is the index of ``g * gens[i]``; ``parent[g] * gens[parent_gen[g]] == g``
    for every non-identity ``g``; ``order`` lists indices in BFS order.
    """

    def __init__(self, group, gens, right=None):
        self.group = group
        self.gens = list(gens)
        N, S = len(group), len(self.gens)
        if right is None:
            right = np.empty((N, S), dtype=np.int64)
            els, idx, mul = group.elements, group.index, group._mul
            for g in range(N):
                x = els[g]
                for i, s in enumerate(self.gens):
                    right[g, i] = idx[mul(x, els[s])]
        self.right = right
        parent = np.full(N, -1, dtype=np.int64)
        parent_gen = np.full(N, -1, dtype=np.int64)
        seen = np.zeros(N, dtype=bool)
        seen[0] = True
        order = [0]
        head = 0
        while head < len(order):
            g = order[head]
            head += 1
            for i in range(S):
                h = int(right[g, i])
                if not seen[h]:
                    seen[h] = True
                    parent[h] = g
                    parent_gen[h] = i
                    order.append(h)
        if len(order) != N:
            raise ValueError("generators do not generate the group")
        self.parent = parent
        self.parent_gen = parent_gen
        self.order = np.array(order, dtype=np.int64)

    @cached_property
    def tree_edges(self):
        """Boolean mask over (g, i): True when the edge g -> g*gens[i] is a tree edge."""
        mask = np.zeros(self.right.shape, dtype=bool)
        for h in self.order[1:]:
            mask[self.parent[h], self.parent_gen[h]] = True
        return mask

    def word(self, g):
        """Generator positions ``w`` with ``g = gens[w[0]] * ... * gens[w[-1]]``."""
        out = []
        while g != 0:
            out.append(int(self.parent_gen[g]))
            g = int(self.parent[g])
        return out[::-1]

    @cached_property
    def depth(self):
        d = np.zeros(len(self.parent), dtype=np.int64)
        for h in self.order[1:]:
            d[h] = d[self.parent[h]] + 1
        return d


class FiniteGroup:
    """Enumerated group with a multiplication callback on hashable elements."""

    def __init__(self, elements, generators, mul, inv, right=None, name=None):
        self.elements = elements
        self.index = {x: i for i, x in enumerate(elements)}
        self.generators = list(generators)
        self._mul = mul
        self._inv = inv
        self.name = name
        self._trees = {}
        if right is not None:
            self._trees[tuple(self.generators)] = CayleyTree(self, self.generators, right)

    def __len__(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __repr__(self):
        return f"<{self.name or 'group'} of order {len(self)}>"

    def element(self, i):
        return self.elements[i]

    def index_of(self, x):
        return self.index[x]

    def __contains__(self, x):
        return x in self.index

    def mult(self, i, j):
        t = self._table
        if t is not None:
            return int(t[i, j])
        return self.index[self._mul(self.elements[i], self.elements[j])]

    def mul_elements(self, x, y):
        return self._mul(x, y)

    def inv(self, i):
        return int(self.inverses[i])

    @cached_property
    def inverses(self):
        inv, idx, els = self._inv, self.index, self.elements
        return np.array([idx[inv(x)] for x in els], dtype=np.int64)

    def cayley(self, gens=None) -> CayleyTree:
        key = tuple(self.generators if gens is None else gens)
        tree = self._trees.get(key)
        if tree is None:
            tree = CayleyTree(self, key)
            self._trees[key] = tree
        return tree

    @property
    def tree(self):
        return self.cayley()

    @cached_property
    def _table(self):
        return None

    def mul_table(self, limit=TABLE_LIMIT):
        """Full multiplication table (numpy), built column by column along the tree."""
        N = len(self)
        if N > limit:
            raise CapExceeded(f"group of order {N} exceeds the table limit {limit}")
        tree = self.tree
        T = np.empty((N, N), dtype=np.int32)
        T[:, 0] = np.arange(N)
        for h in tree.order[1:]:
            T[:, h] = tree.right[T[:, tree.parent[h]], tree.parent_gen[h]]
        self.__dict__["_table"] = T
        return T

    def element_order(self, i):
        k, x = 1, i
        while x != 0:
            x = self.mult(x, i)
            k += 1
        return k

    def power(self, i, e):
        result, base = 0, i
        while e:
            if e & 1:
                result = self.mult(result, base)
            base = self.mult(base, base)
            e >>= 1
        return result

    def conj(self, g, h):
        """``g h g^-1``."""
        return self.mult(self.mult(g, h), self.inv(g))

    def subgroup(self, gens, cap=None, name=None):
        """Closure of the given element indices, as a ``Subgroup``."""
        return Subgroup.closure(self, gens, cap=cap, name=name)

    def subgroup_from_indices(self, indices, gens, name=None):
        """Wrap a known subgroup (index set closed under products) with generators."""
        return Subgroup.from_indices(self, indices, gens, name=name)

    def small_generators(self, seed=7, tries=200):
        """A short generating list (usually two elements) found by seeded search."""
        N = len(self)
        if N == 1:
            return []
        rng = random.Random(seed)
        for _ in range(tries):
            a, b = rng.randrange(1, N), rng.randrange(1, N)
            try:
                if len(self.subgroup([a, b], cap=N)) == N:
                    return [a, b] if a != b else [a]
            except CapExceeded:
                pass
        # greedy fallback
        gens = []
        current = {0}
        for g in range(1, N):
            if g not in current:
                gens.append(g)
                current = set(self.subgroup(gens).parent_index.tolist())
                if len(current) == N:
                    break
        return gens

    def is_abelian(self):
        gs = self.generators
        return all(self.mult(a, b) == self.mult(b, a) for a in gs for b in gs)


class Subgroup(FiniteGroup):
    """A subgroup with ``parent_index[i]`` giving the ambient index of element i."""

    ambient: FiniteGroup

    @classmethod
    def closure(cls, ambient, gens, cap=None, name=None):
        els = [ambient.elements[g] for g in gens]
        sub = group_closure(els, ambient._mul, ambient._inv, identity=ambient.elements[0],
                            cap=cap or len(ambient), name=name, cls=cls)
        sub.ambient = ambient
        sub.parent_index = np.array([ambient.index[x] for x in sub.elements], dtype=np.int64)
        return sub

    @classmethod
    def from_indices(cls, ambient, indices, gens, name=None):
        sub = cls.closure(ambient, gens, cap=len(indices), name=name)
        if set(sub.parent_index.tolist()) != set(int(i) for i in indices):
            raise NotClosed("generators do not generate the given index set")
        return sub


def group_closure(gens, mul, inv, identity, cap=DEFAULT_CAP, name=None, cls=FiniteGroup, **extra):
    """BFS closure of ``gens`` under right multiplication; element 0 is the identity."""
    order = [identity]
    seen = {identity: 0}
    rows = []
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        row = []
        for g in gens:
            y = mul(x, g)
            j = seen.get(y)
            if j is None:
                j = len(order)
                seen[y] = j
                order.append(y)
                if len(order) > cap:
                    raise CapExceeded(f"closure exceeded cap {cap}")
            row.append(j)
        rows.append(row)
    right = np.array(rows, dtype=np.int64).reshape(len(order), len(gens))
    group = cls.__new__(cls)
    FiniteGroup.__init__(group, order, [seen[g] for g in gens], mul, inv, right=right, name=name)
    for k, v in extra.items():
        setattr(group, k, v)
    return group


class MatrixGroup(FiniteGroup):
    """Finite group of invertible n x n matrices over a coded ring."""

    ring: CodedRing
    n: int

    def matrix(self, i) -> RingMatrix:
        return RingMatrix(self.ring, self.n, self.elements[i])

    def index_of_matrix(self, M: RingMatrix):
        return self.index[M.entries]

    @cached_property
    def residue_matrices(self):
        """Residue-field entry codes of every element, shape (|G|, n*n)."""
        res = self.ring.residue
        return np.array([[res(x) for x in e] for e in self.elements], dtype=np.int64)


def _matrix_callbacks(ring, n):
    def mul(a, b):
        return mat_mul_codes(ring, n, a, b)

    def inv(a):
        return inverse_codes(ring, n, a)

    return mul, inv


def matrix_group(gens, cap=DEFAULT_CAP, name=None, ring=None, n=None) -> MatrixGroup:
    """Closure of a list of ``RingMatrix`` (or entry tuples with ``ring``/``n``)."""
    if gens and isinstance(gens[0], RingMatrix):
        ring, n = gens[0].ring, gens[0].n
        for g in gens:
            if g.ring is not ring or g.n != n:
                raise DescriptorMismatch("generators over different rings or sizes")
            if not ring.is_unit(g.det()):
                raise NonUnitDeterminant("generator is not invertible")
        codes = [g.entries for g in gens]
    else:
        codes = [tuple(g) for g in gens]
    if ring is None:
        raise ValueError("ring and n are required for an empty generator list")
    mul, inv = _matrix_callbacks(ring, n)
    return group_closure(codes, mul, inv, identity_codes(n), cap=cap, name=name,
                         cls=MatrixGroup, ring=ring, n=n)


def as_matrix_subgroup(sub: Subgroup, ring, n):
    sub.ring, sub.n = ring, n
    sub.__class__ = type("MatrixSubgroup", (Subgroup, MatrixGroup), {})
    return sub


def matrix_subgroup(G: MatrixGroup, gens, cap=None, name=None):
    sub = Subgroup.closure(G, gens, cap=cap, name=name)
    return as_matrix_subgroup(sub, G.ring, G.n)


def group_closure_matrices(gens, cap=DEFAULT_CAP):
    """Spec-facing alias: closure of ``RingMatrix`` generators."""
    return matrix_group(gens, cap=cap)


def teichmuller_basis(ring, k=None):
    """Teichmuller lifts in ``ring`` of an F_p-basis of ``k`` (default: residue field)."""
    res = ring.residue_field
    if k is None or k is res:
        codes = res.basis_codes
    else:
        emb = subfield_embedding(k, res)
        codes = [emb[c] for c in k.basis_codes]
    return [ring.teichmuller(c) for c in codes]


def sl_generators(n, ring, k=None):
    """``I + t e_ij`` for i != j and t over Teichmuller lifts of an F_p-basis of k.

    Over a Galois ring the closure is SL_n(ring); in general it is SL_n(W(k)_A).
    """
    ts = teichmuller_basis(ring, k)
    return [RingMatrix.elementary(ring, n, i, j, t)
            for i in range(n) for j in range(n) if i != j for t in ts]


def sl_group(n, ring, k=None, cap=DEFAULT_CAP, name=None) -> MatrixGroup:
    G = matrix_group(sl_generators(n, ring, k), cap=cap, ring=ring, n=n)
    G.name = name or f"SL_{n}({ring!r})"
    return G


def sl_order(n, q, size_ratio=1):
    """|SL_n(F_q)| times the kernel factor ``size_ratio ** (n*n - 1)``."""
    order = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= q**i - 1
    return order * size_ratio ** (n * n - 1)


# ---------------------------------------------------------------------------
# homomorphisms


class GroupHom:
    def __init__(self, source: FiniteGroup, target: FiniteGroup, images):
        self.source = source
        self.target = target
        self.images = np.asarray(images, dtype=np.int64)

    def __call__(self, i):
        return int(self.images[i])

    def validate(self, samples=2000, seed=7):
        S, T, im = self.source, self.target, self.images
        if im[0] != 0:
            raise ValueError("identity does not map to identity")
        pairs = [(a, b) for a in S.generators for b in S.generators]
        rng = random.Random(seed)
        pairs += [(rng.randrange(len(S)), rng.randrange(len(S))) for _ in range(samples)]
        for a, b in pairs:
            if im[S.mult(a, b)] != T.mult(im[a], im[b]):
                raise ValueError("map is not multiplicative")
        return True

    @cached_property
    def kernel(self):
        return np.flatnonzero(self.images == 0)

    def is_surjective(self):
        return len(set(self.images.tolist())) == len(self.target)


def induced_hom(G: MatrixGroup, pi: RingSurjection, name=None):
    """Entrywise reduction G -> pi(G); returns ``(hom, image_group)``."""
    if pi.source is not G.ring:
        raise DescriptorMismatch("surjection source does not match the group ring")
    tab = pi.table
    red = [tuple(tab[x] for x in e) for e in G.elements]
    gens = [red[g] for g in G.generators]
    image = matrix_group(gens, ring=pi.target, n=G.n, cap=len(G))
    image.name = name
    hom = GroupHom(G, image, [image.index[r] for r in red])
    return hom, image


def kernel_vectors(G: MatrixGroup, pi: RingSurjection, indices=None):
    """Coordinates in M(ker pi) of ``g - I`` for group elements with pi(g) = I."""
    n, tab, coords = G.n, pi.table, pi.kernel_coords
    ident = identity_codes(n)
    kd = pi.kernel_dim
    out = []
    found = []
    for g in range(len(G)) if indices is None else indices:
        e = G.elements[g]
        if all(tab[x] == y for x, y in zip(e, ident)):
            v = []
            for x, y in zip(e, ident):
                v.extend(coords[G.ring.sub(x, y)])
            out.append(v)
            found.append(g)
    return np.array(out, dtype=np.int64).reshape(len(out), n * n * kd), found


def kernel_module_vectors(H: MatrixGroup, pi: RingSurjection):
    """F_p-basis (rows in M(ker pi) coordinates) of {v : I + v in H, pi(I+v) = I}."""
    vecs, _ = kernel_vectors(H, pi)
    ncols = H.n * H.n * pi.kernel_dim
    rs = RowSpace(ncols, pi.p)
    if len(vecs):
        rs.add(vecs)
    if len(vecs) != pi.p**rs.rank:
        raise NotClosed("kernel elements do not form an F_p-subspace")
    return rs.basis


# ---------------------------------------------------------------------------
# Sylow subgroups


def _p_part(n, p):
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return a, n


def is_p_power(n, p):
    a, rest = _p_part(n, p)
    return rest == 1


def sylow(G: FiniteGroup, p, seed=7, tries=400):
    """A Sylow p-subgroup, grown one p-element at a time.

    Random p-parts of seeded random elements are tried first; if that stalls a
    deterministic scan over all elements finishes the job.
    """
    a, _ = _p_part(len(G), p)
    target = p**a
    if target == 1:
        return G.subgroup([])
    rng = random.Random(seed)
    gens = []
    current = G.subgroup([])

    def p_element(g):
        o = G.element_order(g)
        _, m = _p_part(o, p)
        return G.power(g, m)

    def try_add(y):
        nonlocal gens, current
        if y == 0 or (current.parent_index == y).any():
            return False
        try:
            cand = G.subgroup(gens + [y], cap=target)
        except CapExceeded:
            return False
        if not is_p_power(len(cand), p):
            return False
        gens = gens + [y]
        current = cand
        return True

    for _ in range(tries):
        if len(current) == target:
            break
        try_add(p_element(rng.randrange(len(G))))
    if len(current) < target:
        for g in range(1, len(G)):
            if len(current) == target:
                break
            try_add(p_element(g))
    if len(current) != target:
        raise ValueError("Sylow search failed")
    # shrink the generator list
    small = current.small_generators(seed=seed)
    final = G.subgroup([int(current.parent_index[i]) for i in small], cap=target)
    final.name = f"Sylow-{p}"
    if isinstance(G, MatrixGroup):
        as_matrix_subgroup(final, G.ring, G.n)
    return final


def preimage(hom: GroupHom, sub: Subgroup, name=None):
    """Full preimage in ``hom.source`` of a subgroup of ``hom.target``."""
    S = hom.source
    mask = np.isin(hom.images, sub.parent_index)
    indices = np.flatnonzero(mask)
    lifts = []
    for t in sub.generators:
        amb = sub.parent_index[t]
        lifts.append(int(indices[np.flatnonzero(hom.images[indices] == amb)[0]]))
    kernel = hom.kernel
    gens = lifts + [int(k) for k in kernel[1:]] if len(kernel) <= 8 else lifts + _kernel_generators(S, kernel)
    out = S.subgroup(gens, cap=len(indices), name=name)
    if len(out) != len(indices):
        raise NotClosed("preimage closure has the wrong size")
    if isinstance(S, MatrixGroup):
        as_matrix_subgroup(out, S.ring, S.n)
    return out


def _kernel_generators(G, kernel):
    """A generating list for the normal subgroup given by ``kernel`` indices."""
    gens = []
    have = {0}
    for k in kernel:
        k = int(k)
        if k not in have:
            gens.append(k)
            have = set(G.subgroup(gens, cap=len(kernel)).parent_index.tolist())
            if len(have) == len(kernel):
                break
    return gens
