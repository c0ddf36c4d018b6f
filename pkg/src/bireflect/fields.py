"""Exact scalar arithmetic over odd prime fields and the rationals.

Field objects carry the arithmetic; scalars themselves are plain Python
values (ints in 0..p-1 for F_p, fractions.Fraction for Q).  This keeps
polynomials and matrices hashable and cheap to copy, and lets the same
generic linear algebra run over every coefficient domain, including the
quadratic extensions built in :mod:`bireflect.extension`.

Characteristic 2 is rejected outright: the constructions downstream all
divide by 2 or distinguish symmetric from alternating forms.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    """Invalid field construction or unsupported field for an operation."""


def is_prime(n: int) -> bool:
    """Trial-division primality check, fine for desk-scale moduli."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field F_p for an odd prime p.  Elements are ints in 0..p-1."""

    kind = "prime"

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"modulus {p} is not prime")
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        self.p = p
        self.char = p
        self.key = f"F{p}"
        self.zero = 0
        self.one = 1

    def canon(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"denominator divisible by {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self.parse(x)
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in " + self.key)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys)) % self.p

    def is_square(self, a) -> bool:
        """Euler criterion; zero counts as a square."""
        a %= self.p
        return a == 0 or pow(a, (self.p - 1) // 2, self.p) == 1

    def rand(self, rng):
        return rng.randrange(self.p)

    def rand_nonzero(self, rng):
        return rng.randrange(1, self.p)

    def sort_key(self, a):
        return a

    def to_str(self, a) -> str:
        return str(a)

    def parse(self, s: str) -> int:
        if "/" in s:
            num, den = s.split("/")
            return self.canon(Fraction(int(num), int(den)))
        return int(s) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"PrimeField({self.p})"


class RationalField:
    """The rationals with arbitrary-precision Fraction elements."""

    kind = "rational"

    def __init__(self):
        self.char = 0
        self.key = "Q"
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def canon(self, x) -> Fraction:
        return Fraction(x)

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
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return Fraction(a) / b

    def is_zero(self, a) -> bool:
        return a == 0

    def dot(self, xs, ys):
        return sum((x * y for x, y in zip(xs, ys)), Fraction(0))

    def is_square(self, a) -> bool:
        if a < 0:
            return False
        f = Fraction(a)
        return _isqrt_exact(f.numerator) is not None and _isqrt_exact(f.denominator) is not None

    def rand(self, rng):
        # small numerators/denominators keep test matrices tame
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def rand_nonzero(self, rng):
        while True:
            x = self.rand(rng)
            if x != 0:
                return x

    def sort_key(self, a):
        return a

    def to_str(self, a) -> str:
        f = Fraction(a)
        if f.denominator == 1:
            return str(f.numerator)
        return f"{f.numerator}/{f.denominator}"

    def parse(self, s: str) -> Fraction:
        return Fraction(s)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "RationalField()"


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def field_from_descriptor(desc: dict):
    """Build a field from its JSON descriptor {"kind": ..., ["p": ...]}."""
    kind = desc.get("kind")
    if kind == "prime":
        return PrimeField(int(desc["p"]))
    if kind == "rational":
        return RationalField()
    raise FieldError(f"unknown field kind {kind!r}")


def field_descriptor(field) -> dict:
    if field.kind == "prime":
        return {"kind": "prime", "p": field.p}
    return {"kind": "rational"}
