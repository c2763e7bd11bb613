"""Exact Cayley-Dickson arithmetic.

Elements of the algebra A_r (R, C, H, O, and the sedenions at r = 4) are
stored as ``2**r`` coefficients against the generators ``i_0 .. i_{2^r-1}``.
Coefficients are :class:`fractions.Fraction` unless floats are passed in,
in which case the same code runs in floating mode.

The product is the doubling rule

    (a + b l)(c + v l) = (a c - v* b) + (v a + b c*) l,    l = i_{2^(r-1)},

applied recursively, so ``i_t l = i_{t + 2^(r-1)}`` at every level.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Iterator, Sequence, Union

Scalar = Union[Fraction, float]

MAX_LEVEL = 4


def as_scalar(value) -> Scalar:
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def _check_level(r: int) -> None:
    if not 0 <= r <= MAX_LEVEL:
        raise ValueError(f"level {r} outside supported range 0..{MAX_LEVEL}")


@dataclass(frozen=True)
class CDNumber:
    """An element of A_r given by its coefficient tuple."""

    level: int
    coeffs: tuple

    def __post_init__(self):
        _check_level(self.level)
        coeffs = tuple(as_scalar(c) for c in self.coeffs)
        if len(coeffs) != 1 << self.level:
            raise ValueError(
                f"level {self.level} needs {1 << self.level} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    # constructors
    @classmethod
    def zero(cls, level: int) -> "CDNumber":
        return cls(level, (0,) * (1 << level))

    @classmethod
    def one(cls, level: int) -> "CDNumber":
        return cls.unit(level, 0)

    @classmethod
    def unit(cls, level: int, index: int, coeff=1) -> "CDNumber":
        """``coeff * i_index`` at the given level."""
        n = 1 << level
        if not 0 <= index < n:
            raise IndexError(f"generator index {index} out of range for level {level}")
        c = [0] * n
        c[index] = coeff
        return cls(level, tuple(c))

    @classmethod
    def real(cls, level: int, value) -> "CDNumber":
        return cls.unit(level, 0, value)

    # queries
    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def re(self) -> Scalar:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_real(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    @property
    def floating(self) -> bool:
        return any(isinstance(c, float) for c in self.coeffs)

    def isclose(self, other: "CDNumber", tol: float = 1e-9) -> bool:
        _same_level(self, other)
        return all(abs(a - b) <= tol for a, b in zip(self.coeffs, other.coeffs))

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, CDNumber):
            return NotImplemented
        _same_level(self, other)
        return CDNumber(self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, CDNumber):
            return NotImplemented
        _same_level(self, other)
        return CDNumber(self.level, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CDNumber(self.level, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, CDNumber):
            return cd_mul(self, other)
        if isinstance(other, (int, Fraction, float)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, float)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, float)):
            if other == 0:
                raise ZeroDivisionError("division of a Cayley-Dickson number by zero")
            if isinstance(other, float) or self.floating:
                return self.scale(1.0 / other)
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def scale(self, s) -> "CDNumber":
        s = as_scalar(s)
        return CDNumber(self.level, tuple(s * c for c in self.coeffs))

    def conj(self) -> "CDNumber":
        return cd_conj(self)

    def inverse(self) -> "CDNumber":
        return cd_inverse(self)

    def norm_sq(self) -> Scalar:
        return cd_norm_sq(self)

    def __str__(self):
        return format_cd(self)

    def __repr__(self):
        return format_cd(self)


def _same_level(x: CDNumber, y: CDNumber) -> None:
    if x.level != y.level:
        raise ValueError(
            f"level mismatch: A{x.level} vs A{y.level} (promote explicitly with cd_join(x, 0))"
        )


# ---------------------------------------------------------------------------
# generator table


@lru_cache(maxsize=None)
def _basis(r: int, l: int, s: int) -> tuple[int, int]:
    if r == 0:
        return 1, 0
    half = 1 << (r - 1)
    lp, lh = l & (half - 1), l >= half
    sp, sh = s & (half - 1), s >= half
    # conj of a lower generator i_q is +i_0 for q = 0 and -i_q otherwise
    cs = 1 if sp == 0 else -1
    if not lh and not sh:  # (p, 0)(q, 0) = (pq, 0)
        return _basis(r - 1, lp, sp)
    if not lh and sh:  # (p, 0)(0, q) = (0, qp)
        sign, idx = _basis(r - 1, sp, lp)
        return sign, idx + half
    if lh and not sh:  # (0, p)(q, 0) = (0, p q*)
        sign, idx = _basis(r - 1, lp, sp)
        return cs * sign, idx + half
    # (0, p)(0, q) = (-q* p, 0)
    sign, idx = _basis(r - 1, sp, lp)
    return -cs * sign, idx


def basis_mul(r: int, l: int, s: int) -> tuple[int, int]:
    """Return ``(sign, index)`` with ``i_l i_s = sign * i_index`` in A_r."""
    _check_level(r)
    n = 1 << r
    if not (0 <= l < n and 0 <= s < n):
        raise IndexError(f"generator index out of range for level {r}: ({l}, {s})")
    return _basis(r, l, s)


@lru_cache(maxsize=None)
def sign_table(r: int) -> tuple[tuple[int, ...], ...]:
    """Signed index table: entry ``[l][s]`` is ``sign * (index + 1)``."""
    n = 1 << r
    rows = []
    for l in range(n):
        row = []
        for s in range(n):
            sign, idx = basis_mul(r, l, s)
            row.append(sign * (idx + 1))
        rows.append(tuple(row))
    return tuple(rows)


# ---------------------------------------------------------------------------
# products


def _conj_list(x: Sequence) -> list:
    return [x[0]] + [-c for c in x[1:]]


def _mul_rec(x: Sequence, y: Sequence) -> list:
    n = len(x)
    if n == 1:
        return [x[0] * y[0]]
    h = n // 2
    a, b = x[:h], x[h:]
    c, v = y[:h], y[h:]
    ac = _mul_rec(a, c)
    vb = _mul_rec(_conj_list(v), b)
    va = _mul_rec(v, a)
    bc = _mul_rec(b, _conj_list(c))
    return [p - q for p, q in zip(ac, vb)] + [p + q for p, q in zip(va, bc)]


def _to_integers(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = lcm(*(c.denominator for c in coeffs))
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def cd_mul(x: CDNumber, y: CDNumber) -> CDNumber:
    """Doubling product of two elements of the same level."""
    if not isinstance(x, CDNumber) or not isinstance(y, CDNumber):
        raise TypeError("cd_mul expects CDNumber operands")
    _same_level(x, y)
    if x.floating or y.floating:
        return CDNumber(x.level, tuple(_mul_rec(x.coeffs, y.coeffs)))
    # Fraction arithmetic is slow; run the recursion on integers over a common denominator
    xi, dx = _to_integers(x.coeffs)
    yi, dy = _to_integers(y.coeffs)
    d = dx * dy
    return CDNumber(x.level, tuple(Fraction(p, d) for p in _mul_rec(xi, yi)))


def cd_prod(factors: Iterable[CDNumber]) -> CDNumber:
    """Left-fold product ``((x1 x2) x3) ...``."""
    it = iter(factors)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("cd_prod of an empty sequence") from None
    for f in it:
        acc = cd_mul(acc, f)
    return acc


def cd_conj(x: CDNumber) -> CDNumber:
    return CDNumber(x.level, tuple(_conj_list(x.coeffs)))


def cd_norm_sq(x: CDNumber) -> Scalar:
    """Real part of ``x conj(x)``; the sum of squared coefficients."""
    p = cd_mul(x, cd_conj(x))
    return p.coeffs[0]


def cd_inverse(x: CDNumber) -> CDNumber:
    n = cd_norm_sq(x)
    if n == 0:
        raise ZeroDivisionError(f"{format_cd(x)} has zero norm and no inverse")
    return cd_conj(x) / n


def associator(x: CDNumber, y: CDNumber, z: CDNumber) -> CDNumber:
    return cd_mul(cd_mul(x, y), z) - cd_mul(x, cd_mul(y, z))


def commutator(x: CDNumber, y: CDNumber) -> CDNumber:
    return cd_mul(x, y) - cd_mul(y, x)


# ---------------------------------------------------------------------------
# coordinates


def cd_components(z: CDNumber) -> tuple:
    """Real coordinates of ``z`` recovered by multiplications alone.

    With ``N = 2**level`` the sum ``sum_{j>=1} i_j (z i_j*)`` equals
    ``(N-1) v_0 + (3-N) Im z``, so ``(-z + sum) / (N - 2) = z*``.  Then
    ``v_0 = (z + z*)/2`` and ``v_s = (i_s z* - z i_s)/2``, both real.
    Requires ``N > 2``.
    """
    L = z.level
    if L < 2:
        raise ValueError("cd_components needs level >= 2 (the 2^L - 2 divisor vanishes below)")
    n = 1 << L
    acc = -z
    for j in range(1, n):
        ij = CDNumber.unit(L, j)
        acc = acc + cd_mul(ij, cd_mul(z, cd_conj(ij)))
    zc = acc / (n - 2)
    out = [_real_of((z + zc) / 2)]
    for s in range(1, n):
        i_s = CDNumber.unit(L, s)
        out.append(_real_of((cd_mul(i_s, zc) - cd_mul(z, i_s)) / 2))
    return tuple(out)


def _real_of(x: CDNumber) -> Scalar:
    if not x.is_real():
        if x.floating and all(abs(c) < 1e-9 for c in x.coeffs[1:]):
            return x.coeffs[0]
        raise ArithmeticError(f"expected a real value, got {format_cd(x)}")
    return x.coeffs[0]


def cd_reconstruct(level: int, components: Sequence) -> CDNumber:
    """``v_0 i_0 + ... + v_{N-1} i_{N-1}`` summed generator by generator."""
    acc = CDNumber.zero(level)
    for j, v in enumerate(components):
        acc = acc + CDNumber.unit(level, j, v)
    return acc


def cd_split(z: CDNumber) -> tuple[CDNumber, CDNumber]:
    """Write ``z = x + y l`` with ``x, y`` one level down."""
    if z.level < 1:
        raise ValueError("cd_split needs level >= 1")
    h = z.dim // 2
    return CDNumber(z.level - 1, z.coeffs[:h]), CDNumber(z.level - 1, z.coeffs[h:])


def cd_join(x: CDNumber, y) -> CDNumber:
    """``x + y l`` one level up; ``y = 0`` is accepted for promotion."""
    if isinstance(y, (int, Fraction)) and y == 0:
        y = CDNumber.zero(x.level)
    _same_level(x, y)
    return CDNumber(x.level + 1, x.coeffs + y.coeffs)


def promote(x: CDNumber) -> CDNumber:
    return cd_join(x, 0)


# ---------------------------------------------------------------------------
# explicit bracketing


@dataclass(frozen=True)
class Mul:
    left: "MulTree"
    right: "MulTree"


MulTree = Union[CDNumber, Mul]


def eval_tree(t: MulTree) -> CDNumber:
    if isinstance(t, CDNumber):
        return t
    if isinstance(t, Mul):
        return cd_mul(eval_tree(t.left), eval_tree(t.right))
    raise TypeError(f"not a multiplication tree: {t!r}")


def left_comb(*xs: CDNumber) -> MulTree:
    t: MulTree = xs[0]
    for x in xs[1:]:
        t = Mul(t, x)
    return t


def right_comb(*xs: CDNumber) -> MulTree:
    t: MulTree = xs[-1]
    for x in reversed(xs[:-1]):
        t = Mul(x, t)
    return t


def bracketings(xs: Sequence[CDNumber]) -> Iterator[MulTree]:
    """Every full bracketing of the sequence, order preserved."""
    if len(xs) == 1:
        yield xs[0]
        return
    for k in range(1, len(xs)):
        for left in bracketings(xs[:k]):
            for right in bracketings(xs[k:]):
                yield Mul(left, right)


# ---------------------------------------------------------------------------
# text form  A<r>[c0, c1, ...]

_CD_RE = re.compile(r"^\s*A(\d+)\s*\[(.*)\]\s*$", re.S)


def format_scalar(c: Scalar) -> str:
    if isinstance(c, float):
        return repr(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def parse_scalar(text: str) -> Scalar:
    t = text.strip()
    if not t:
        raise ValueError("empty scalar")
    if any(ch in t.lower() for ch in (".", "e", "inf", "nan")):
        return float(t)
    return Fraction(t)


def format_cd(x: CDNumber) -> str:
    return f"A{x.level}[" + ", ".join(format_scalar(c) for c in x.coeffs) + "]"


def parse_cd(text: str) -> CDNumber:
    m = _CD_RE.match(text)
    if not m:
        raise ValueError(f"not a Cayley-Dickson literal: {text!r}")
    level = int(m.group(1))
    body = m.group(2).strip()
    parts = [p for p in body.split(",")] if body else []
    return CDNumber(level, tuple(parse_scalar(p) for p in parts))


# ---------------------------------------------------------------------------
# sampling


def random_scalar(rng, max_num: int = 9, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def random_cd(rng, level: int, max_num: int = 9, max_den: int = 6, nonzero: bool = False) -> CDNumber:
    while True:
        x = CDNumber(level, tuple(random_scalar(rng, max_num, max_den) for _ in range(1 << level)))
        if not (nonzero and x.is_zero()):
            return x
