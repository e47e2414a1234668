"""Exact scalar arithmetic over the rationals and prime fields.

A scalar is a raw Python value paired with the :class:`Field` that knows how
to operate on it: ``fractions.Fraction`` over Q, ``int`` in ``[0, p)`` over
F_p.  Every operation is exact; nothing here ever rounds.  Rationals are kept
as canonical reduced fractions (Fraction does this), prime-field inverses use
Fermat's little theorem.

Fields serialize to the strings ``"Q"`` and ``"F:<p>"``; elements serialize
to ``"num/den"`` (or ``"num"``) over Q and to decimal strings in ``[0, p)``
over F_p.
"""

from __future__ import annotations

import random
from fractions import Fraction


class FieldError(ValueError):
    """Malformed field spec, mixed-field operands, or unsupported modulus."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface for exact computation fields."""

    name: str
    characteristic: int

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        raise NotImplementedError

    def fmt(self, a) -> str:
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    def sample(self, rng: random.Random):
        """A random element, small enough to keep exact arithmetic cheap."""
        raise NotImplementedError

    def sample_nonzero(self, rng: random.Random):
        while True:
            a = self.sample(rng)
            if not self.is_zero(a):
                return a

    def elements(self):
        """Iterate all field elements (finite fields only)."""
        raise FieldError(f"cannot enumerate elements of {self.name}")

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"
    characteristic = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def fmt(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def parse(self, s):
        return Fraction(s)

    def sample(self, rng, bound: int = 4):
        return Fraction(rng.randint(-bound, bound))


class PrimeField(Field):
    characteristic: int

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F:{p}"

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.name}")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def fmt(self, a):
        return str(a % self.p)

    def parse(self, s):
        return int(s) % self.p

    def sample(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def parse_field(spec: str) -> Field:
    """Parse a field spec string: ``"Q"`` or ``"F:<p>"``."""
    if spec == "Q":
        return QQ
    if spec.startswith("F:"):
        try:
            p = int(spec[2:])
        except ValueError as exc:
            raise FieldError(f"bad field spec {spec!r}") from exc
        return GF(p)
    raise FieldError(f"bad field spec {spec!r}")


def same_field(*fields: Field) -> Field:
    """Check all arguments are the same field and return it."""
    first = fields[0]
    for f in fields[1:]:
        if f is not first and f != first:
            raise FieldError(f"mixed fields: {first.name} vs {f.name}")
    return first
