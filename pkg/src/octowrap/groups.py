"""Pluggable group models.

A model supplies ``unit``, ``mul``, ``inv``, ``eq`` and sampling; the skew
product and the wrap harness only ever talk to a model through these.
CD-valued models (Q8, unit complex numbers, unit quaternions, unit
octonions) keep their elements as :class:`CDNumber`.
"""
from __future__ import annotations

import math
from fractions import Fraction

from . import words
from .cayley import CDNumber, cd_inverse, cd_mul, cd_norm_sq, format_cd, parse_cd


class GroupModel:
    name = "group"
    associative = True
    commutative = False
    finite = False

    def unit(self):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def eq(self, x, y) -> bool:
        return x == y

    def contains(self, x) -> bool:
        return True

    def random(self, rng):
        raise NotImplementedError

    def format(self, x) -> str:
        return str(x)

    def parse(self, text: str):
        raise NotImplementedError

    def key(self, x):
        return x

    def length(self, x) -> int:
        """Size used to orient rewriting; 0 where no natural size exists."""
        return 0

    def elements(self):
        return None

    def conjugator(self, x, y):
        """Some ``c`` with ``c x c^-1 = y``; ``None`` when unknown or impossible."""
        if self.eq(x, y):
            return self.unit()
        elems = self.elements()
        if elems is None:
            return None
        for c in elems:
            if self.eq(self.mul(self.mul(c, x), self.inv(c)), y):
                return c
        return None

    def abelian_class(self, x):
        """Image in a commutative quotient, or ``None`` if none is modelled."""
        return None

    def factor_candidates(self, x) -> list:
        """A few elements that might divide ``x``; feeds the skew search."""
        elems = self.elements()
        if elems is not None and len(elems) <= 16:
            return elems
        return []

    def is_unit(self, x) -> bool:
        return self.eq(x, self.unit())

    def prod(self, xs):
        """Left fold ``((x1 x2) x3) ...``; empty product is the unit."""
        acc = None
        for x in xs:
            acc = x if acc is None else self.mul(acc, x)
        return self.unit() if acc is None else acc

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))

    def __repr__(self):
        return f"<{self.name}>"


class FreeGroupModel(GroupModel):
    """Symbolic free group on declared generators."""

    def __init__(self, generators=("g1", "g2", "g3", "g4", "g5", "g6"), max_len: int = 3):
        self.generators = tuple(generators)
        self.max_len = max_len
        self.name = "free:" + ",".join(self.generators)

    def unit(self):
        return words.E

    def mul(self, x, y):
        return words.word_mul(x, y)

    def inv(self, x):
        return words.word_inv(x)

    def random(self, rng):
        return words.random_word(rng, self.generators, self.max_len)

    def format(self, x):
        return words.format_word(x)

    def parse(self, text):
        return words.parse_word(text)

    def length(self, x):
        return len(x)

    def conjugator(self, x, y):
        return words.conjugator(x, y)

    def abelian_class(self, x):
        return x.abelian()

    def factor_candidates(self, x):
        ls = x.letters
        parts = [words.FreeWord(ls[:k]) for k in range(1, len(ls))]
        parts += [words.FreeWord(ls[k:]) for k in range(1, len(ls))]
        return parts + [words.word_inv(w) for w in parts]


class CyclicModel(GroupModel):
    """``Z/n`` written multiplicatively; elements are ints."""

    commutative = True
    finite = True

    def __init__(self, n: int):
        self.n = n
        self.name = f"cyclic{n}"

    def unit(self):
        return 0

    def mul(self, x, y):
        return (x + y) % self.n

    def inv(self, x):
        return (-x) % self.n

    def random(self, rng):
        return rng.randrange(self.n)

    def parse(self, text):
        return int(text) % self.n

    def elements(self):
        return list(range(self.n))

    def abelian_class(self, x):
        return x


class CDGroupModel(GroupModel):
    level = 2

    def unit(self):
        return CDNumber.one(self.level)

    def mul(self, x, y):
        return cd_mul(x, y)

    def inv(self, x):
        return cd_inverse(x)

    def format(self, x):
        return format_cd(x)

    def parse(self, text):
        x = parse_cd(text)
        if x.level != self.level or not self.contains(x):
            raise ValueError(f"{text} is not an element of {self.name}")
        return x


_Q8 = tuple(CDNumber.unit(2, j, s) for j in range(4) for s in (1, -1))


def sign_canonical(x: CDNumber) -> CDNumber:
    """Representative of ``{x, -x}`` whose first nonzero coefficient is positive."""
    for c in x.coeffs:
        if c != 0:
            return x if c > 0 else -x
    return x


_Q8_TABLE = {(x, y): cd_mul(x, y) for x in _Q8 for y in _Q8}


class Q8Model(CDGroupModel):
    name = "q8"
    finite = True

    def mul(self, x, y):
        try:
            return _Q8_TABLE[x, y]
        except KeyError:
            raise ValueError(f"{format_cd(x)} or {format_cd(y)} is not in Q8") from None

    def contains(self, x):
        return x in _Q8

    def inv(self, x):
        return x.conj()

    def elements(self):
        return list(_Q8)

    def random(self, rng):
        return rng.choice(_Q8)

    def abelian_class(self, x):
        return sign_canonical(x)


class Q8ModSignModel(CDGroupModel):
    """``Q8/{+-1}``, the Klein four-group, on sign-canonical representatives."""

    name = "q8/pm1"
    commutative = True
    finite = True

    def mul(self, x, y):
        return sign_canonical(cd_mul(x, y))

    def inv(self, x):
        return sign_canonical(cd_inverse(x))

    def contains(self, x):
        return x in _Q8 and sign_canonical(x) == x

    def elements(self):
        return [CDNumber.unit(2, j) for j in range(4)]

    def random(self, rng):
        return CDNumber.unit(2, rng.randrange(4))

    def abelian_class(self, x):
        return x


def q8_abelianize(x: CDNumber) -> CDNumber:
    """The projection Q8 -> Q8/{+-1}."""
    return sign_canonical(x)


def rational_sphere_point(rng, dim: int, spread: int = 2) -> CDNumber:
    """Exact rational point of the unit sphere in ``A_level``.

    Inverse stereographic projection of a rational ``t`` in ``Q^(N-1)``:
    ``((1 - |t|^2), 2 t) / (1 + |t|^2)``.
    """
    level = int(math.log2(dim))
    t = [Fraction(rng.randint(-spread, spread), rng.randint(1, spread)) for _ in range(dim - 1)]
    s = sum(c * c for c in t)
    coeffs = [(1 - s) / (1 + s)] + [2 * c / (1 + s) for c in t]
    # randomise which hemisphere the pole sits in so -1 is reachable
    if rng.random() < 0.5:
        coeffs = [-c for c in coeffs]
    return CDNumber(level, tuple(coeffs))


class UnitCDModel(CDGroupModel):
    """Unit elements of ``A_level``; exact rationals or floats with a tolerance."""

    def __init__(self, level: int, exact: bool = True, tol: float = 1e-9):
        self.level = level
        self.exact = exact
        self.tol = tol
        base = {1: "unit-complex", 2: "unit-quaternion", 3: "unit-octonion"}[level]
        self.name = base if exact else base + "-float"

    @property
    def associative(self):
        return self.level <= 2

    @property
    def commutative(self):
        return self.level <= 1

    def eq(self, x, y):
        if self.exact:
            return x == y
        return x.isclose(y, self.tol)

    def contains(self, x):
        n = cd_norm_sq(x)
        return n == 1 if self.exact else abs(n - 1) <= self.tol

    def inv(self, x):
        return x.conj() if self.exact else cd_inverse(x)

    def random(self, rng):
        if self.exact:
            return rational_sphere_point(rng, 1 << self.level)
        v = [rng.gauss(0.0, 1.0) for _ in range(1 << self.level)]
        n = math.sqrt(sum(c * c for c in v))
        return CDNumber(self.level, tuple(c / n for c in v))

    def conjugator(self, x, y):
        if self.eq(x, y):
            return self.unit()
        return None


def model_from_name(name: str) -> GroupModel:
    n = name.strip().lower()
    if n == "q8":
        return Q8Model()
    if n in ("q8/pm1", "q8/+-1", "klein"):
        return Q8ModSignModel()
    if n.startswith("cyclic"):
        return CyclicModel(int(n[len("cyclic"):]))
    if n.startswith("free:"):
        return FreeGroupModel(tuple(g.strip() for g in n[5:].split(",") if g.strip()))
    if n == "free":
        return FreeGroupModel()
    table = {
        "unit-complex": (1, True), "unit-quaternion": (2, True), "unit-octonion": (3, True),
        "unit-complex-float": (1, False), "unit-quaternion-float": (2, False),
        "unit-octonion-float": (3, False),
    }
    if n in table:
        level, exact = table[n]
        return UnitCDModel(level, exact)
    raise ValueError(f"unknown group model {name!r}")
