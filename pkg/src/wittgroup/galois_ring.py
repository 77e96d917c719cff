"""Galois rings GR(p^m, d) = W(k)/p^m, dual numbers k[eps], and Teichmuller machinery.

Ring elements are coded as integers; ``GaloisRingElement`` and
``DualNumberElement`` are thin value wrappers for callers who want operators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from ._ring import CodedRing, digits, poly_mulmod, undigits
from .errors import DescriptorMismatch, NoEmbedding, UnsupportedSize
from .finite_field import FieldElement, FiniteField, ff_create

MAX_RING_SIZE = 2**20


class GaloisRing(CodedRing):
    """(Z/p^m)[x]/(f) with f the integer lift of the canonical modulus of GF(p^d).

    Codes are ``sum(c_i * (p^m)**i)`` so that ``m == 1`` agrees with the
    field coding.
    """

    kind = "gr"

    def __init__(self, p, m, d):
        self.field = ff_create(p, d)
        self.p, self.m, self.d = p, m, d
        self.N = p**m
        self.size = self.N**d
        self.modulus = self.field.modulus

    def __repr__(self):
        if self.d == 1:
            return f"Z/{self.N}"
        return f"GR({self.p}^{self.m},{self.d})"

    def __reduce__(self):
        return (gr_create, (self.p, self.m, self.d))

    @property
    def characteristic(self):
        return self.N

    @property
    def residue_field(self):
        return self.field

    @property
    def nilpotency(self):
        """Least e with (maximal ideal)^e = 0."""
        return self.m

    def coeffs(self, code):
        return tuple(digits(code, self.N, self.d))

    def code(self, coeffs):
        return undigits([c % self.N for c in coeffs], self.N)

    def _add(self, a, b):
        N = self.N
        return undigits([(x + y) % N for x, y in zip(digits(a, N, self.d), digits(b, N, self.d))], N)

    def _neg(self, a):
        N = self.N
        return undigits([(-x) % N for x in digits(a, N, self.d)], N)

    def _mul(self, a, b):
        N = self.N
        return undigits(poly_mulmod(digits(a, N, self.d), digits(b, N, self.d), self.modulus, N), N)

    def residue(self, a):
        return self.field.code([c % self.p for c in self.coeffs(a)])

    def lift_residue(self, c):
        return self.code(self.field.coeffs(c))

    def times_p_power(self, a, e):
        """``p**e * a``."""
        return self.code([c * self.p**e for c in self.coeffs(a)])

    def element(self, code_or_coeffs) -> "GaloisRingElement":
        if isinstance(code_or_coeffs, int):
            return GaloisRingElement(self, self.coeffs(code_or_coeffs))
        return GaloisRingElement(self, tuple(c % self.N for c in code_or_coeffs))

    @cached_property
    def maximal_ideal_generators(self):
        return [self.scalar(self.p)] if self.m > 1 else []


class DualNumbers(CodedRing):
    """k[eps]/(eps^2); code ``a + q*b`` for ``a + b*eps``."""

    kind = "dual"

    def __init__(self, field: FiniteField):
        self.field = field
        self.p = field.p
        self.d = field.d
        self.m = 1
        self.size = field.size**2

    def __repr__(self):
        return f"GF({self.p}^{self.d})[eps]"

    def __reduce__(self):
        return (dual_create, (self.p, self.d))

    @property
    def characteristic(self):
        return self.p

    @property
    def residue_field(self):
        return self.field

    @property
    def nilpotency(self):
        return 2

    def split(self, code):
        return divmod(code, self.field.size)[::-1]

    def join(self, a, b):
        return a + self.field.size * b

    def _add(self, x, y):
        f = self.field
        (a, b), (c, d) = self.split(x), self.split(y)
        return self.join(f.add(a, c), f.add(b, d))

    def _neg(self, x):
        f = self.field
        a, b = self.split(x)
        return self.join(f.neg(a), f.neg(b))

    def _mul(self, x, y):
        f = self.field
        (a, b), (c, d) = self.split(x), self.split(y)
        return self.join(f.mul(a, c), f.add(f.mul(a, d), f.mul(b, c)))

    def residue(self, x):
        return self.split(x)[0]

    def lift_residue(self, c):
        return c

    def eps(self, b):
        """``b * eps`` for a field code ``b``."""
        return self.join(0, b)

    def element(self, code) -> "DualNumberElement":
        a, b = self.split(code)
        return DualNumberElement(self, self.field.element(a), self.field.element(b))

    @cached_property
    def maximal_ideal_generators(self):
        return [self.eps(1)]


@lru_cache(maxsize=None)
def gr_create(p: int, m: int, d: int) -> GaloisRing:
    field = ff_create(p, d)  # validates p and d
    if m < 1 or p ** (m * d) > MAX_RING_SIZE:
        raise UnsupportedSize(f"GR({p}^{m},{d}) is outside the supported range")
    del field
    return GaloisRing(p, m, d)


@lru_cache(maxsize=None)
def dual_create(p: int, d: int) -> DualNumbers:
    return DualNumbers(ff_create(p, d))


class _RingElement:
    ring: CodedRing

    @property
    def code(self):
        raise NotImplementedError

    def _other(self, b):
        if isinstance(b, int):
            return self.ring.scalar(b)
        if b.ring is not self.ring:
            raise DescriptorMismatch(f"{b.ring} vs {self.ring}")
        return b.code

    def _wrap(self, code):
        return self.ring.element(code)

    def __add__(self, b):
        return self._wrap(self.ring.add(self.code, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return self._wrap(self.ring.sub(self.code, self._other(b)))

    def __neg__(self):
        return self._wrap(self.ring.neg(self.code))

    def __mul__(self, b):
        return self._wrap(self.ring.mul(self.code, self._other(b)))

    __rmul__ = __mul__

    def __pow__(self, e):
        return self._wrap(self.ring.pow(self.code, e))

    def inverse(self):
        return self._wrap(self.ring.inv(self.code))

    def residue(self) -> FieldElement:
        return self.ring.field.element(self.ring.residue(self.code))


@dataclass(frozen=True, eq=True)
class GaloisRingElement(_RingElement):
    ring: GaloisRing
    coeffs: tuple

    @property
    def code(self):
        return undigits(list(self.coeffs), self.ring.N)

    def __str__(self):
        return f"{self.ring!r}:[{','.join(map(str, self.coeffs))}]"


@dataclass(frozen=True, eq=True)
class DualNumberElement(_RingElement):
    ring: DualNumbers
    a: FieldElement
    b: FieldElement

    @property
    def code(self):
        return self.ring.join(self.a.code, self.b.code)

    def __str__(self):
        return f"{self.a}+eps*{self.b}"


def gr_element(ring, value):
    """Ring element from a code (int) or coefficient tuple."""
    return ring.element(value)


def teichmuller(a: FieldElement, target: CodedRing):
    """Teichmuller lift of ``a`` into ``target`` (residue field must be a's field)."""
    if a.field is not target.residue_field:
        raise DescriptorMismatch(f"{a.field} is not the residue field of {target!r}")
    return target.element(target.teichmuller(a.code))


def teichmuller_digit_codes(ring: GaloisRing, x: int):
    """Residue codes ``a_i`` with ``x = sum teich(a_i) p^i``."""
    p, f = ring.p, ring.field
    cur = list(ring.coeffs(x))
    out = []
    for i in range(ring.m):
        mod = p ** (ring.m - i)
        a = f.code([c % p for c in cur])
        out.append(a)
        t = ring.coeffs(ring.teichmuller(a))
        cur = [((c - tc) % mod) // p for c, tc in zip(cur, t)]
    return out


def teichmuller_digits(x: GaloisRingElement):
    return [x.ring.field.element(a) for a in teichmuller_digit_codes(x.ring, x.code)]


def from_digit_codes(ring: GaloisRing, digit_codes):
    acc = 0
    for i, a in enumerate(digit_codes[: ring.m]):
        if a:
            acc = ring.add(acc, ring.times_p_power(ring.teichmuller(a), i))
    return acc


def section_s(x: GaloisRingElement) -> GaloisRingElement:
    """Digit-padding lift W_m -> W_{m+1}: same Teichmuller digits, new top digit 0."""
    src = x.ring
    dst = gr_create(src.p, src.m + 1, src.d)
    return dst.element(from_digit_codes(dst, teichmuller_digit_codes(src, x.code)))


def reduce_code(src: GaloisRing, dst: GaloisRing, x: int) -> int:
    return dst.code([c % dst.N for c in src.coeffs(x)])


def reduce(x: GaloisRingElement, target_m: int) -> GaloisRingElement:
    src = x.ring
    if target_m > src.m:
        raise ValueError("cannot reduce to a finer precision")
    dst = gr_create(src.p, target_m, src.d)
    return dst.element(reduce_code(src, dst, x.code))


def residue(x) -> FieldElement:
    return x.residue()


def subfield_embedding(k: FiniteField, kp: FiniteField):
    """Field homomorphism k -> k' as a code table, or raise NoEmbedding.

    The generator of k is sent to the first primitive element of the subfield
    of k' (walking powers of ``g'^((|k'|-1)/(|k|-1))``) whose induced map is
    additive.
    """
    if k.p != kp.p or kp.d % k.d:
        raise NoEmbedding(f"{k} does not embed in {kp}")
    if k is kp:
        return list(range(k.size))
    qk, qkp = k.size, kp.size
    beta = kp.pow(kp.generator_code, (qkp - 1) // (qk - 1))
    g = k.generator_code
    log = {}
    x = 1
    for i in range(qk - 1):
        log[x] = i
        x = k.mul(x, g)
    from math import gcd

    for j in range(1, qk - 1 + 1):
        if gcd(j, qk - 1) != 1:
            continue
        img_gen = kp.pow(beta, j)
        table = [0] * qk
        for c, i in log.items():
            table[c] = kp.pow(img_gen, i)
        if all(table[k.add(a, b)] == kp.add(table[a], table[b]) for a in range(qk) for b in range(qk)):
            return table
    raise NoEmbedding(f"no homomorphism {k} -> {kp} found")  # unreachable for valid inputs


def witt_subring(A: CodedRing, k: FiniteField):
    """Codes of W(k)_A: the subring of A generated by Teichmuller lifts of k."""
    emb = subfield_embedding(k, A.residue_field)
    gens = {A.teichmuller(emb[c]) for c in range(k.size)}
    found = set(gens) | {0, 1}
    frontier = list(found)
    while frontier:
        new = []
        current = list(found)
        for a in frontier:
            for b in current:
                for c in (A.add(a, b), A.mul(a, b), A.neg(a)):
                    if c not in found:
                        found.add(c)
                        new.append(c)
        frontier = new
    return sorted(found)


class RingSurjection:
    """Entrywise-applied surjection pi: A -> B with m_A * ker(pi) = 0.

    ``kernel_basis`` is an F_p-basis of ker(pi); ``kernel_coords`` maps kernel
    codes to coordinate tuples in that basis.
    """

    def __init__(self, source: CodedRing, target: CodedRing, table, kernel_basis):
        self.source = source
        self.target = target
        self.table = table
        self.kernel_basis = list(kernel_basis)
        self.p = source.p
        self.kernel_coords = {}
        for combo in itertools.product(range(self.p), repeat=len(self.kernel_basis)):
            acc = 0
            for c, b in zip(combo, self.kernel_basis):
                acc = source.add(acc, source.mul(source.scalar(c), b))
            self.kernel_coords[acc] = combo
        self.kernel = sorted(self.kernel_coords)
        self.validate()

    def __call__(self, a):
        return self.table[a]

    @property
    def kernel_dim(self):
        return len(self.kernel_basis)

    def from_kernel_coords(self, vec):
        acc = 0
        A = self.source
        for c, b in zip(vec, self.kernel_basis):
            if c % self.p:
                acc = A.add(acc, A.mul(A.scalar(int(c)), b))
        return acc

    def validate(self, exhaustive_limit=256):
        A, B, t = self.source, self.target, self.table
        rng = range(A.size)
        if A.size <= exhaustive_limit:
            pairs = itertools.product(rng, rng)
        else:
            import random

            r = random.Random(0)
            pairs = [(r.randrange(A.size), r.randrange(A.size)) for _ in range(20000)]
        for a, b in pairs:
            if t[A.add(a, b)] != B.add(t[a], t[b]) or t[A.mul(a, b)] != B.mul(t[a], t[b]):
                raise ValueError("map is not a ring homomorphism")
        if len(set(t)) != B.size:
            raise ValueError("map is not surjective")
        kernel = [a for a in rng if t[a] == 0]
        if sorted(kernel) != self.kernel:
            raise ValueError("kernel basis does not span the kernel")
        for x in A.maximal_ideal_generators:
            for y in self.kernel_basis:
                if A.mul(x, y) != 0:
                    raise ValueError("maximal ideal does not kill the kernel")


def surjection(A: CodedRing, B: CodedRing) -> RingSurjection:
    """The canonical surjection between supported rings.

    GR(p^m,d) -> GR(p^(m-1),d) or GF(p^d) when m == 1 target, and k[eps] -> k.
    """
    if isinstance(A, GaloisRing):
        mB = B.m
        if B.p != A.p or B.residue_field is not A.field or mB not in (A.m - 1, A.m):
            raise ValueError(f"no canonical surjection {A!r} -> {B!r} with square-zero kernel")
        if mB == A.m:
            return RingSurjection(A, B, list(range(A.size)), [])
        NB = A.p**mB
        table = [B.code([c % NB for c in A.coeffs(a)]) for a in range(A.size)]
        basis = [A.times_p_power(A.code([0] * i + [1]), mB) for i in range(A.d)]
        return RingSurjection(A, B, table, basis)
    if isinstance(A, DualNumbers):
        if B.residue_field is not A.field or B.m != 1:
            raise ValueError(f"no canonical surjection {A!r} -> {B!r}")
        table = [A.residue(a) for a in range(A.size)]
        basis = [A.eps(c) for c in A.field.basis_codes]
        return RingSurjection(A, B, table, basis)
    if isinstance(A, FiniteField) and B.size == A.size:
        return RingSurjection(A, B, list(range(A.size)), [])
    raise ValueError(f"unsupported surjection {A!r} -> {B!r}")


def parse_ring(text: str) -> CodedRing:
    """Ring spec: ``gr:p,m,d`` / ``gr:p=2,m=2,d=2`` / ``dual:p,d`` / ``zmod:N`` / ``gf:p,d``."""
    from .errors import ParseError
    from .finite_field import is_prime

    kind, _, body = text.strip().partition(":")
    if not body:
        raise ParseError(f"ring spec {text!r} lacks ':'", position=len(kind))
    parts = [s.strip() for s in body.split(",")]
    try:
        vals = [int(s.split("=")[-1]) for s in parts]
    except ValueError:
        raise ParseError(f"non-integer parameter in ring spec {text!r}", position=len(kind) + 1) from None
    if kind == "gr" and len(vals) == 3:
        return gr_create(*vals)
    if kind == "dual" and len(vals) == 2:
        return dual_create(*vals)
    if kind == "gf" and len(vals) == 2:
        return ff_create(*vals)
    if kind == "zmod" and len(vals) == 1:
        n = vals[0]
        for p in range(2, n + 1):
            if n % p == 0:
                break
        m = 0
        while n % p == 0:
            n //= p
            m += 1
        if n != 1 or not is_prime(p):
            raise ParseError(f"zmod:{vals[0]} is not a prime power", position=5)
        return gr_create(p, m, 1)
    raise ParseError(f"unrecognised ring spec {text!r}", position=0)
