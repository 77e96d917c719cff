"""Exact arithmetic in GF(p^d).

Elements are coefficient vectors of polynomials modulo the canonical
irreducible modulus, ascending degree.  Internally an element is also
addressed by its integer code ``sum(c_i * p**i)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

from ._ring import CodedRing, digits, poly_mulmod, undigits
from .errors import DescriptorMismatch, DivisionByZero, NotPrime, UnsupportedSize

MAX_DEGREE = 8
MAX_FIELD_SIZE = 512


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _monic_polys(p, deg):
    # coefficient lists ascending, leading 1; lexicographic from the constant term
    for low in itertools.product(range(p), repeat=deg):
        yield list(low) + [1]


def _poly_mod(a, b, p):
    """Remainder of a by monic b over GF(p)."""
    a = [c % p for c in a]
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return a[:db]


def is_irreducible(poly, p) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    d = len(poly) - 1
    if d <= 1:
        return d == 1
    for deg in range(1, d // 2 + 1):
        for f in _monic_polys(p, deg):
            if not any(_poly_mod(poly, f, p)):
                return False
    return True


def canonical_modulus(p, d):
    for f in _monic_polys(p, d):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FiniteField(CodedRing):
    """The field GF(p^d) with its canonical modulus.  Obtain via ``ff_create``."""

    m = 1

    def __init__(self, p: int, d: int):
        self.p = p
        self.d = d
        self.size = p**d
        self.modulus = canonical_modulus(p, d)

    def __repr__(self):
        return f"GF({self.p}^{self.d})"

    def __reduce__(self):
        return (ff_create, (self.p, self.d))

    @property
    def characteristic(self):
        return self.p

    @property
    def residue_field(self):
        return self

    def residue(self, a):
        return a

    @property
    def field(self):
        return self

    @property
    def nilpotency(self):
        return 1

    maximal_ideal_generators = ()

    def lift_residue(self, c):
        return c

    def teichmuller(self, c):
        return c

    def coeffs(self, code):
        return tuple(digits(code, self.p, self.d))

    def code(self, coeffs):
        return undigits([c % self.p for c in coeffs], self.p)

    def _add(self, a, b):
        p = self.p
        return undigits([(x + y) % p for x, y in zip(digits(a, p, self.d), digits(b, p, self.d))], p)

    def _neg(self, a):
        p = self.p
        return undigits([(-x) % p for x in digits(a, p, self.d)], p)

    def _mul(self, a, b):
        p = self.p
        return undigits(poly_mulmod(digits(a, p, self.d), digits(b, p, self.d), self.modulus, p), p)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero in " + repr(self))
        return self.pow(a, self.size - 2)

    def frob(self, a):
        return self.pow(a, self.p)

    def element(self, code_or_coeffs) -> "FieldElement":
        if isinstance(code_or_coeffs, int):
            return FieldElement(self, self.coeffs(code_or_coeffs))
        return FieldElement(self, tuple(c % self.p for c in code_or_coeffs))

    @cached_property
    def enumeration(self):
        """Codes in lexicographic order of coefficient vectors (constant term first)."""
        return [self.code(c) for c in itertools.product(range(self.p), repeat=self.d)]

    def order_of(self, a):
        if a == 0:
            raise DivisionByZero("zero has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    @cached_property
    def generator_code(self):
        for c in self.enumeration:
            if c and self.order_of(c) == self.size - 1:
                return c
        raise AssertionError("multiplicative group is cyclic")  # unreachable

    @cached_property
    def basis_codes(self):
        """F_p-basis 1, x, ..., x^(d-1)."""
        return [self.p**i for i in range(self.d)]

    def vector(self, code):
        """F_p coordinates of a field element in the power basis."""
        return list(digits(code, self.p, self.d))


@lru_cache(maxsize=None)
def ff_create(p: int, d: int) -> FiniteField:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not 1 <= d <= MAX_DEGREE or p**d > MAX_FIELD_SIZE:
        raise UnsupportedSize(f"GF({p}^{d}) is outside the supported range p^d <= {MAX_FIELD_SIZE}")
    return FiniteField(p, d)


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.field.d or any(not 0 <= c < self.field.p for c in self.coeffs):
            raise ValueError(f"bad coefficient vector {self.coeffs} for {self.field}")

    @property
    def code(self):
        return undigits(list(self.coeffs), self.field.p)

    def _other(self, b):
        if isinstance(b, int):
            return self.field.scalar(b)
        if b.field is not self.field:
            raise DescriptorMismatch(f"{b.field} vs {self.field}")
        return b.code

    def _wrap(self, code):
        return self.field.element(code)

    def __add__(self, b):
        return self._wrap(self.field.add(self.code, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return self._wrap(self.field.sub(self.code, self._other(b)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __mul__(self, b):
        return self._wrap(self.field.mul(self.code, self._other(b)))

    __rmul__ = __mul__

    def __pow__(self, e):
        return self._wrap(self.field.pow(self.code, e))

    def inverse(self):
        return self._wrap(self.field.inv(self.code))

    def __truediv__(self, b):
        return self * self._wrap(self._other(b)).inverse()

    def is_zero(self):
        return not any(self.coeffs)

    def __str__(self):
        return format_element(self)


def ff_arith(op, a: FieldElement, b=None) -> FieldElement:
    """Dispatch ``add``, ``sub``, ``mul``, ``inv`` or ``pow`` on field elements."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a**b
    raise ValueError(f"unknown operation {op!r}")


def frobenius(a: FieldElement) -> FieldElement:
    return a ** a.field.p


def enumerate_field(field: FiniteField):
    return [field.element(c) for c in field.enumeration]


def multiplicative_generator(field: FiniteField) -> FieldElement:
    return field.element(field.generator_code)


def format_element(a: FieldElement) -> str:
    f = a.field
    return f"{f.p}^{f.d}:[{','.join(str(c) for c in a.coeffs)}]"


_ELEMENT_RE = re.compile(r"^\s*(\d+)\^(\d+):\[([0-9,\s]*)\]\s*$")


def parse_element(text: str) -> FieldElement:
    m = _ELEMENT_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse field element {text!r}")
    field = ff_create(int(m.group(1)), int(m.group(2)))
    body = m.group(3).strip()
    coeffs = [int(c) for c in body.split(",")] if body else []
    if len(coeffs) != field.d:
        raise ValueError(f"expected {field.d} coefficients, got {len(coeffs)}")
    return field.element(coeffs)
