"""Commutative base rings for twisted elements.

Three rings are supported: exact rationals, n-tuples of rationals with
componentwise operations, and the integers modulo m (finite, so quotient
constructions can be checked exhaustively).
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .cayley import format_scalar, parse_scalar, random_scalar


class Rationals:
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, float):
            return x
        return Fraction(x)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def is_zero(self, x) -> bool:
        return x == 0

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return 1 / x if isinstance(x, float) else Fraction(1) / x

    def key(self, x):
        return x

    def format(self, x) -> str:
        return format_scalar(x)

    def parse(self, text: str):
        return parse_scalar(text)

    def random(self, rng):
        return random_scalar(rng)

    def tag(self) -> str:
        return ""

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


class TupleRing:
    """``Q^n`` with componentwise operations."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("tuple ring needs n >= 1")
        self.n = n

    def zero(self):
        return (Fraction(0),) * self.n

    def one(self):
        return (Fraction(1),) * self.n

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return (Fraction(x),) * self.n
        x = tuple(Fraction(c) for c in x)
        if len(x) != self.n:
            raise ValueError(f"expected a {self.n}-tuple, got {len(x)} entries")
        return x

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def mul(self, x, y):
        return tuple(a * b for a, b in zip(x, y))

    def is_zero(self, x) -> bool:
        return all(a == 0 for a in x)

    def inv(self, x):
        if any(a == 0 for a in x):
            raise ZeroDivisionError(f"{self.format(x)} is not a unit of Q^{self.n}")
        return tuple(Fraction(1) / a for a in x)

    def key(self, x):
        return x

    def format(self, x) -> str:
        return "(" + ", ".join(format_scalar(a) for a in x) + ")"

    def parse(self, text: str):
        t = text.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise ValueError(f"tuple literal expected, got {text!r}")
        return self.coerce(parse_scalar(p) for p in t[1:-1].split(","))

    def random(self, rng):
        return tuple(random_scalar(rng) for _ in range(self.n))

    def tag(self) -> str:
        return f":Q{self.n}"

    def __eq__(self, other):
        return isinstance(other, TupleRing) and other.n == self.n

    def __hash__(self):
        return hash(("Q^n", self.n))

    def __repr__(self):
        return f"TupleRing({self.n})"


class IntegersMod:
    """``Z/m``; elements are the ints ``0 .. m-1``."""

    def __init__(self, m: int):
        if m < 2:
            raise ValueError("modulus must be at least 2")
        self.m = m

    def zero(self):
        return 0

    def one(self):
        return 1

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            x = x.numerator
        return int(x) % self.m

    def add(self, x, y):
        return (x + y) % self.m

    def sub(self, x, y):
        return (x - y) % self.m

    def neg(self, x):
        return (-x) % self.m

    def mul(self, x, y):
        return (x * y) % self.m

    def is_zero(self, x) -> bool:
        return x % self.m == 0

    def inv(self, x):
        try:
            return pow(x, -1, self.m)
        except ValueError:
            raise ZeroDivisionError(f"{x} is not a unit mod {self.m}") from None

    def is_unit(self, x) -> bool:
        try:
            self.inv(x)
        except ZeroDivisionError:
            return False
        return True

    def units(self) -> list[int]:
        return [x for x in range(self.m) if self.is_unit(x)]

    def elements(self):
        return range(self.m)

    def key(self, x):
        return x

    def format(self, x) -> str:
        return str(x)

    def parse(self, text: str):
        return self.coerce(int(text.strip()))

    def random(self, rng):
        return rng.randrange(self.m)

    def tag(self) -> str:
        return f":Z{self.m}"

    def __eq__(self, other):
        return isinstance(other, IntegersMod) and other.m == self.m

    def __hash__(self):
        return hash(("Z/m", self.m))

    def __repr__(self):
        return f"IntegersMod({self.m})"


def ring_from_tag(tag: str):
    """Inverse of ``ring.tag()``: '' -> Q, ':Q3' -> Q^3, ':Z8' -> Z/8."""
    if tag == "":
        return Rationals()
    if tag.startswith(":Q"):
        return TupleRing(int(tag[2:]))
    if tag.startswith(":Z"):
        return IntegersMod(int(tag[2:]))
    raise ValueError(f"unknown base ring tag {tag!r}")


def all_tuples(ring: IntegersMod, length: int):
    return itertools.product(ring.elements(), repeat=length)
