"""Shared machinery for finite rings whose elements are encoded as small ints.

Every ring in the package numbers its elements ``0 .. size-1`` with ``0`` the
zero element and ``1`` the identity.  Hot loops (matrix products, group
closure) read the cached addition/multiplication tables directly.
"""

from __future__ import annotations

from functools import cached_property

TABLE_LIMIT = 1024


def poly_mulmod(a, b, modulus, n):
    """Product of coefficient lists ``a*b`` reduced by the monic ``modulus`` over Z/n."""
    d = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k] % n
        if c:
            for j in range(d + 1):
                prod[k - d + j] -= c * modulus[j]
    out = [c % n for c in prod[:d]]
    out.extend([0] * (d - len(out)))
    return out


def digits(code, base, length):
    out = []
    for _ in range(length):
        code, r = divmod(code, base)
        out.append(r)
    return out


def undigits(coeffs, base):
    code = 0
    for c in reversed(coeffs):
        code = code * base + c
    return code


class CodedRing:
    """Finite commutative local ring with integer-coded elements."""

    size: int
    p: int

    def _add(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    @property
    def residue_field(self):
        raise NotImplementedError

    def residue(self, a):
        """Code of the image of ``a`` in the residue field."""
        raise NotImplementedError

    @cached_property
    def add_table(self):
        if self.size > TABLE_LIMIT:
            return None
        r = range(self.size)
        return [[self._add(a, b) for b in r] for a in r]

    @cached_property
    def mul_table(self):
        if self.size > TABLE_LIMIT:
            return None
        r = range(self.size)
        return [[self._mul(a, b) for b in r] for a in r]

    @cached_property
    def neg_table(self):
        return [self._neg(a) for a in range(self.size)]

    def add(self, a, b):
        t = self.add_table
        return t[a][b] if t is not None else self._add(a, b)

    def mul(self, a, b):
        t = self.mul_table
        return t[a][b] if t is not None else self._mul(a, b)

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def scalar(self, n):
        """Image of the integer ``n`` in the ring."""
        n %= self.characteristic
        acc, base = 0, 1
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    @property
    def characteristic(self):
        raise NotImplementedError

    def is_unit(self, a):
        return self.residue(a) != 0

    @cached_property
    def unit_count(self):
        q = self.residue_field.size
        return self.size // q * (q - 1)

    def inv(self, a):
        from .errors import DivisionByZero

        if not self.is_unit(a):
            raise DivisionByZero(f"element {a} is not a unit")
        return self.pow(a, self.unit_count - 1)

    @cached_property
    def q(self):
        return self.residue_field.size

    def frobenius_power(self, a):
        """``a ** q`` where q is the residue field size."""
        return self.pow(a, self.q)

    @cached_property
    def _teich_cache(self):
        return {}

    def teichmuller(self, c):
        """Teichmuller lift of the residue-field code ``c``.

        The naive lift ``c`` (same digits) is pushed to the fixed point of
        ``y -> y**q``; one extra level of precision per step.
        """
        cache = self._teich_cache
        if c in cache:
            return cache[c]
        y = self.lift_residue(c)
        for _ in range(self.size.bit_length() + 1):
            z = self.frobenius_power(y)
            if z == y:
                break
            y = z
        cache[c] = y
        return y

    def lift_residue(self, c):
        raise NotImplementedError

    def elements(self):
        return range(self.size)

    def __len__(self):
        return self.size
