"""Coefficient domains for exact polynomial arithmetic.

Three domains are supported:

- ``ZZ``     arbitrary-precision integers (Python ``int``),
- ``QQ``     rationals (``fractions.Fraction``),
- ``GF(p)``  the prime field, with coefficients stored as ints in ``[0, p)``.

Coefficients are plain Python numbers; the domain object only supplies
coercion, normalization (reduction mod p, zero detection) and exact
division.  Polynomial arithmetic accumulates with native ``+``/``*`` and
normalizes once per result, which is exact in all three domains.
"""
from __future__ import annotations

from fractions import Fraction


class DomainError(Exception):
    """A scalar could not be coerced into, or divided within, a domain."""


class Domain:
    """Base class; concrete domains are ZZ, QQ and GF(p)."""

    name: str = "?"
    characteristic: int = 0

    def coerce(self, x):
        raise NotImplementedError

    def normalize(self, x):
        """Bring an arithmetic result back to canonical form (e.g. mod p)."""
        return x

    def is_zero(self, x) -> bool:
        return self.normalize(x) == 0

    def divide(self, a, b):
        """Exact quotient a / b, or raise DomainError when it does not exist."""
        raise NotImplementedError

    def __repr__(self):
        return self.name


class IntegerDomain(Domain):
    name = "ZZ"

    def coerce(self, x):
        if isinstance(x, bool):
            raise DomainError("bool is not a ring element")
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return x.numerator
            raise DomainError(f"{x} is not an integer")
        raise DomainError(f"cannot coerce {x!r} into ZZ")

    def divide(self, a, b):
        if b == 0:
            raise DomainError("division by zero")
        q, r = divmod(a, b)
        if r:
            raise DomainError(f"{a} is not divisible by {b} in ZZ")
        return q


class RationalDomain(Domain):
    name = "QQ"

    def coerce(self, x):
        if isinstance(x, bool):
            raise DomainError("bool is not a ring element")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise DomainError(f"cannot coerce {x!r} into QQ")

    def normalize(self, x):
        return x if isinstance(x, Fraction) else Fraction(x)

    def divide(self, a, b):
        if b == 0:
            raise DomainError("division by zero")
        return Fraction(a) / b


class PrimeField(Domain):
    """GF(p) with elements stored as ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.characteristic = p

    def coerce(self, x):
        if isinstance(x, bool):
            raise DomainError("bool is not a ring element")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DomainError(f"{x} has no image in GF({self.p})")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        raise DomainError(f"cannot coerce {x!r} into GF({self.p})")

    def normalize(self, x):
        return x % self.p

    def divide(self, a, b):
        b %= self.p
        if b == 0:
            raise DomainError("division by zero in GF(p)")
        return (a * pow(b, -1, self.p)) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


ZZ = IntegerDomain()
QQ = RationalDomain()


def GF(p: int) -> PrimeField:
    return PrimeField(p)
