"""Twisted semidirect products, matrix charts and the theta/xi trivializer.

Elements of ``V x_x G`` are pairs ``(v, g)`` with ``v`` a tuple of F_p
coordinates and ``g`` a group index, composed as
``(v1, g1)(v2, g2) = (x(g1, g2) + v1 + g1 v2, g1 g2)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .cohomology import (
    Cocycle1,
    Cocycle2,
    ExtensionDescription,
    Obstruction,
    coboundary_solve1,
    extension_cocycle,
)
from .errors import ActionMismatch, CocycleInvalid, KernelMismatch, NotSurjective
from .finite_field import FiniteField
from .galois_ring import DualNumbers, GaloisRing, from_digit_codes, teichmuller_digit_codes
from .gmodule import MatrixModules
from .matgroup import det_codes, group_closure, identity_codes, inverse_codes, mat_mul_codes


# ---------------------------------------------------------------------------
# twisted products


class TwistedProduct:
    def __init__(self, x: Cocycle2, check=True):
        self.x = x
        self.module = x.module
        self.G = x.group
        self.p = self.module.p
        if check and not x.satisfies_tree_law():
            raise CocycleInvalid("x is not a 2-cocycle")
        self._table = x.table
        self._acts = self.module.act_all
        self.identity = (tuple([0] * self.module.dim), 0)

    @property
    def order(self):
        return self.module.size * len(self.G)

    def mul(self, a, b):
        (v1, g1), (v2, g2) = a, b
        v = (self._table[g1, g2] + np.asarray(v1) + self._acts[g1] @ np.asarray(v2)) % self.p
        return (tuple(int(c) for c in v), self.G.mult(g1, g2))

    def inv(self, a):
        v, g = a
        gi = self.G.inv(g)
        w = -(self._acts[gi] @ (np.asarray(v) + self._table[g, gi])) % self.p
        return (tuple(int(c) for c in w), gi)

    def element(self, v, g):
        return (tuple(int(c) % self.p for c in v), g)

    def generators(self):
        D = self.module.dim
        gens = [((0,) * D, s) for s in self.G.generators]
        gens += [(tuple(int(i == j) for j in range(D)), 0) for i in range(D)]
        return gens

    def as_group(self, cap=None):
        return group_closure(self.generators(), self.mul, self.inv, self.identity,
                             cap=cap or self.order, name="twisted product")

    def extension(self) -> ExtensionDescription:
        D = self.module.dim
        zero = (0,) * D
        return ExtensionDescription(
            self.G, self.module, self.mul, self.inv, self.identity,
            project=lambda a: a[1],
            section=[(zero, g) for g in range(len(self.G))],
            kernel_coords=lambda a: np.asarray(a[0], dtype=np.int64),
            kernel_element=lambda v: (tuple(int(c) % self.p for c in v), 0),
            name="twisted product",
        )


def build_twisted(M, G, x: Cocycle2) -> TwistedProduct:
    if x.module is not M or M.group is not G:
        raise CocycleInvalid("cocycle does not belong to the given module and group")
    return TwistedProduct(x)


def chart_conjugation_action(T: TwistedProduct, elements=None):
    """Check ``(u, g)(v, e)(u, g)^-1 = (g v, e)`` for generators (u, g) and basis v."""
    D = T.module.dim
    elements = elements if elements is not None else T.generators() + [T.identity]
    count = 0
    for a in elements:
        ainv = T.inv(a)
        g = a[1]
        for i in range(D):
            v = tuple(int(i == j) for j in range(D))
            lhs = T.mul(T.mul(a, (v, 0)), ainv)
            rhs = (tuple(int(c) for c in T.module.act_vec(g, np.array(v))), 0)
            if lhs != rhs:
                raise ActionMismatch(f"conjugation by {a} does not act as g on basis vector {i}")
            count += 1
    return {"checked": count, "holds": True}


def conjugate_by_kernel(T: TwistedProduct, m, h):
    """``(m, e) h (m, e)^-1``."""
    me = T.element(m, 0)
    return T.mul(T.mul(me, h), T.inv(me))


def cyclic_toy_extension():
    """Z/4 as an extension of Z/2 by the trivial module F_2, with section 0, 1."""
    from .gmodule import trivial_module

    G = group_closure([1], lambda a, b: (a + b) % 2, lambda a: a, 0, name="Z/2")
    M = trivial_module(G, 2)
    return ExtensionDescription(
        G, M, lambda a, b: (a + b) % 4, lambda a: (-a) % 4, 0,
        project=lambda a: G.index[a % 2],
        section=[G.elements[g] for g in range(len(G))],
        kernel_coords=lambda a: np.array([a // 2], dtype=np.int64),
        kernel_element=lambda v: 2 * (int(v[0]) % 2),
        total=list(range(4)), name="Z/4",
    )


# ---------------------------------------------------------------------------
# matrix extensions and charts


def lift_code_table(pi):
    """A -> B section on ring codes: Teichmuller-digit padding (constants for k[eps])."""
    A, B = pi.source, pi.target
    if A is B:
        return list(range(B.size))
    if isinstance(A, DualNumbers):
        return [A.lift_residue(b) for b in range(B.size)]
    if isinstance(B, FiniteField):
        return [A.teichmuller(b) for b in range(B.size)]
    if isinstance(A, GaloisRing) and isinstance(B, GaloisRing):
        return [from_digit_codes(A, teichmuller_digit_codes(B, b)) for b in range(B.size)]
    raise ValueError(f"no section available for {A!r} -> {B!r}")


def matrix_section(pi, n, lift=None):
    """Matrix lift B -> A: entrywise digit lift, first column scaled by det^-1."""
    A = pi.source
    lift = lift or lift_code_table(pi)

    def s(entries):
        m = [lift[b] for b in entries]
        d = det_codes(A, n, tuple(m))
        if d != 1:
            di = A.inv(d)
            for i in range(n):
                m[i * n] = A.mul(m[i * n], di)
        return tuple(m)

    return s


def matrix_extension(G, pi, which="M0", mods=None, total=None, name=None):
    """Extension of G (matrices over pi.target) by the kernel of SL_n(A) -> SL_n(B)."""
    A = pi.source
    n = G.n
    mods = mods or MatrixModules(G)
    module = mods.M0 if which == "M0" else mods.M
    ident = identity_codes(n)
    coords, tab = pi.kernel_coords, pi.table
    s = matrix_section(pi, n)
    section = [s(e) for e in G.elements]
    section[0] = ident

    def mul(a, b):
        return mat_mul_codes(A, n, a, b)

    def inv(a):
        return inverse_codes(A, n, a)

    def project(a):
        return G.index[tuple(tab[x] for x in a)]

    def vM(a):
        out = []
        for x, y in zip(a, ident):
            out.extend(coords[A.sub(x, y)])
        return np.array(out, dtype=np.int64)

    if which == "M0":
        def kernel_coords(a):
            return mods.M0.coords(vM(a))

        def to_M(v):
            return mods.M0.embed(v)
    else:
        def kernel_coords(a):
            return vM(a)

        def to_M(v):
            return np.asarray(v, dtype=np.int64) % pi.p

    kd = pi.kernel_dim

    def kernel_element(v):
        w = to_M(v)
        return tuple(A.add(y, pi.from_kernel_coords(w[i * kd:(i + 1) * kd])) for i, y in enumerate(ident))

    ext = ExtensionDescription(G, module, mul, inv, ident, project, section, kernel_coords,
                               kernel_element, total=total, name=name)
    ext.pi = pi
    ext.mods = mods
    ext.vM = vM
    ext.to_M = to_M
    ext.matrix_section = s
    return ext


def quotient_extension(ext: ExtensionDescription, name=None):
    """Divide a matrix M_0-extension by its scalar kernel Z (identified with S); kernel V."""
    mods = ext.mods
    S, V, M0 = mods.S, mods.V, mods.M0
    p = M0.p
    Z = []
    for combo in np.ndindex(*([p] * S.dim)):
        Z.append(ext.kernel_element(S.embed(np.array(combo, dtype=np.int64))))

    def canon(a):
        return min(ext.mul(z, a) for z in Z)

    def mul(a, b):
        return canon(ext.mul(a, b))

    def inv(a):
        return canon(ext.inv(a))

    def kernel_coords(a):
        return V.project(ext.kernel_coords(a))

    def kernel_element(v):
        return canon(ext.kernel_element(V.lift(np.asarray(v, dtype=np.int64))))

    section = [canon(s) for s in ext.section]
    q = ExtensionDescription(ext.G, V, mul, inv, canon(ext.identity), ext.project, section,
                             kernel_coords, kernel_element, name=name)
    q.Z = Z
    q.canon = canon
    return q


class CoordinateChart:
    """``h = j(v) s(g) <-> (v, g)`` between an extension and ``M x_x G``."""

    def __init__(self, ext: ExtensionDescription, x: Cocycle2 = None):
        self.ext = ext
        self.x = x if x is not None else extension_cocycle(ext)
        self.target = TwistedProduct(self.x, check=False)
        self._sinv = [ext.inv(s) for s in ext.section]

    def forward(self, h):
        g = self.ext.project(h)
        v = self.ext.kernel_coords(self.ext.mul(h, self._sinv[g]))
        return (tuple(int(c) for c in v), g)

    def backward(self, a):
        v, g = a
        return self.ext.mul(self.ext.kernel_element(np.asarray(v)), self.ext.section[g])

    def check(self, elements, samples=10000, seed=7):
        """Bijectivity on ``elements`` and multiplicativity on seeded random pairs."""
        rng = random.Random(seed)
        els = list(elements)
        for h in els[: min(len(els), 2000)]:
            if self.backward(self.forward(h)) != h:
                return False
        for _ in range(samples):
            a, b = rng.choice(els), rng.choice(els)
            if self.forward(self.ext.mul(a, b)) != self.target.mul(self.forward(a), self.forward(b)):
                return False
        return True


# ---------------------------------------------------------------------------
# theta / xi analysis


@dataclass
class Prop22Analysis:
    G: object
    M: object
    N: object
    Q: object
    xi_values: np.ndarray
    xi_bar: Cocycle1
    cocycle_ok: bool
    info: dict = field(default_factory=dict)


def prop22_analyze(H_coords, N, M=None, x: Cocycle2 = None):
    """theta/xi data for a subgroup H of ``M x_x G`` given as coordinate pairs.

    ``H_coords`` is an iterable of ``(v, g)`` with v in M-coordinates; ``N`` a
    SubModule of M.  Checks that H surjects onto G with kernel exactly N and
    returns xi (a choice of H-coordinate over each g) with its class in M/N.
    """
    M = M or N.parent
    G = M.group
    p = M.p
    xi = np.zeros((len(G), M.dim), dtype=np.int64)
    seen = np.zeros(len(G), dtype=bool)
    kernel = []
    for v, g in H_coords:
        v = np.asarray(v, dtype=np.int64) % p
        if g == 0:
            kernel.append(v)
        if not seen[g]:
            xi[g], seen[g] = v, True
    if not seen.all():
        raise NotSurjective("H does not surject onto G")
    kernel = np.array(kernel, dtype=np.int64).reshape(-1, M.dim)
    if len(kernel) != N.size or (len(kernel) and not N.contains(kernel)):
        raise KernelMismatch("kernel of H -> G is not N")
    if x is not None and x.module is M and not N.contains(x.xs.reshape(-1, M.dim)):
        raise KernelMismatch("the cocycle x does not take values in N")
    Q = M.quotient(N)
    xbar = Q.project(xi)
    xi_bar = Cocycle1.from_values(Q, xbar, check=False)
    ok = np.array_equal(xi_bar.values % p, xbar % p) and xi_bar.check_law(samples=2000)
    if not ok:
        raise KernelMismatch("xi mod N is not a 1-cocycle; H is not closed over N")
    return Prop22Analysis(G, M, N, Q, xi, xi_bar, ok)


def prop22_trivialize(analysis: Prop22Analysis, H_coords=None):
    """m with ``xi(g) = g m - m (mod N)``; then (m,e) H (m,e)^-1 = N x_x G.

    Returns ``(m, report)`` or an ``Obstruction``.  When ``H_coords`` is
    given the conjugated set is checked elementwise: every element becomes
    ``(v + m - g m, g)`` with first coordinate in N, and the result has
    ``|N| * |G|`` distinct elements.
    """
    M, N, Q = analysis.M, analysis.N, analysis.Q
    xi_M = Cocycle1(M, analysis.xi_bar.gens, Q.lift(analysis.xi_bar.gen_values), check=False)
    res = coboundary_solve1(xi_M, N, quotient=Q)
    if isinstance(res, Obstruction):
        return res
    m = res
    report = {"m": m.tolist()}
    if H_coords is not None:
        acts = M.act_all
        seen = set()
        for v, g in H_coords:
            w = (np.asarray(v, dtype=np.int64) + m - acts[g] @ m) % M.p
            if not N.contains(w):
                raise KernelMismatch("conjugated element leaves N x G")
            seen.add((tuple(int(c) for c in w), g))
        if len(seen) != N.size * len(analysis.G):
            raise KernelMismatch("conjugated subgroup has the wrong size")
        report["verified_elements"] = len(seen)
    return m, report
