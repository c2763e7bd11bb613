"""Twisted rings, the smashed product and finite twisted quotients.

A twisted element is ``y_0 i_0 + ... + y_{2^r-1} i_{2^r-1}`` with the y's in a
commutative base ring; pure states multiply as ``(y_l i_l)(y_s i_s) =
(y_l y_s)(i_l i_s)`` using the Cayley-Dickson generator table.  A smash
element ``(a, b)`` stands for ``a + b l``, ``l = i_{2^r}``, one level up.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .cayley import CDNumber, basis_mul
from .rings import IntegersMod, Rationals, all_tuples, ring_from_tag

MAX_TWIST_LEVEL = 3


@dataclass(frozen=True)
class TwistedElement:
    ring: object
    level: int
    parts: tuple

    def __post_init__(self):
        if not 0 <= self.level <= MAX_TWIST_LEVEL:
            raise ValueError(f"twisted level {self.level} outside 0..{MAX_TWIST_LEVEL}")
        parts = tuple(self.ring.coerce(p) for p in self.parts)
        if len(parts) != 1 << self.level:
            raise ValueError(f"level {self.level} needs {1 << self.level} parts, got {len(parts)}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def zero(cls, ring, level: int) -> "TwistedElement":
        return cls(ring, level, (ring.zero(),) * (1 << level))

    @classmethod
    def one(cls, ring, level: int) -> "TwistedElement":
        return cls.pure(ring, level, 0, ring.one())

    @classmethod
    def pure(cls, ring, level: int, index: int, y) -> "TwistedElement":
        parts = [ring.zero()] * (1 << level)
        parts[index] = ring.coerce(y)
        return cls(ring, level, tuple(parts))

    def __add__(self, other):
        _compatible(self, other)
        r = self.ring
        return TwistedElement(r, self.level, tuple(r.add(x, y) for x, y in zip(self.parts, other.parts)))

    def __sub__(self, other):
        _compatible(self, other)
        r = self.ring
        return TwistedElement(r, self.level, tuple(r.sub(x, y) for x, y in zip(self.parts, other.parts)))

    def __neg__(self):
        return TwistedElement(self.ring, self.level, tuple(self.ring.neg(x) for x in self.parts))

    def __mul__(self, other):
        if isinstance(other, TwistedElement):
            return twisted_mul(self, other)
        return NotImplemented

    def scale(self, s) -> "TwistedElement":
        r = self.ring
        return TwistedElement(r, self.level, tuple(r.mul(s, x) for x in self.parts))

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(x) for x in self.parts)

    def key(self):
        return tuple(self.ring.key(x) for x in self.parts)

    def __str__(self):
        return format_twisted(self)

    __repr__ = __str__


def _compatible(u: TwistedElement, v: TwistedElement) -> None:
    if u.level != v.level:
        raise ValueError(f"twisted level mismatch: {u.level} vs {v.level}")
    if u.ring != v.ring:
        raise ValueError(f"base ring mismatch: {u.ring!r} vs {v.ring!r}")


def twisted_mul(u: TwistedElement, v: TwistedElement) -> TwistedElement:
    """Bilinear extension of the pure-state rule."""
    _compatible(u, v)
    ring, r = u.ring, u.level
    out = [ring.zero()] * (1 << r)
    for l, yl in enumerate(u.parts):
        if ring.is_zero(yl):
            continue
        for s, ys in enumerate(v.parts):
            if ring.is_zero(ys):
                continue
            sign, idx = basis_mul(r, l, s)
            term = ring.mul(yl, ys)
            out[idx] = ring.add(out[idx], term) if sign > 0 else ring.sub(out[idx], term)
    return TwistedElement(ring, r, tuple(out))


def twisted_conj(u: TwistedElement) -> TwistedElement:
    ring = u.ring
    return TwistedElement(ring, u.level, (u.parts[0],) + tuple(ring.neg(x) for x in u.parts[1:]))


def twisted_norm(u: TwistedElement):
    """Base-ring value of ``u conj(u)``; the product has no other parts."""
    p = twisted_mul(u, twisted_conj(u))
    if not all(u.ring.is_zero(x) for x in p.parts[1:]):
        raise ArithmeticError(f"u conj(u) is not central for {u}")
    return p.parts[0]


def twisted_inverse(u: TwistedElement) -> TwistedElement:
    n = twisted_norm(u)
    return twisted_conj(u).scale(u.ring.inv(n))


def from_cd(x: CDNumber) -> TwistedElement:
    return TwistedElement(Rationals(), x.level, x.coeffs)


def to_cd(u: TwistedElement) -> CDNumber:
    if not isinstance(u.ring, Rationals):
        raise TypeError("only rational twisted elements convert to CDNumber")
    return CDNumber(u.level, u.parts)


# ---------------------------------------------------------------------------
# smashed product


@dataclass(frozen=True)
class SmashElement:
    """``a + b l`` with ``a, b`` twisted elements of the same level."""

    a: TwistedElement
    b: TwistedElement

    def __post_init__(self):
        _compatible(self.a, self.b)

    @property
    def level(self) -> int:
        return self.a.level

    @property
    def ring(self):
        return self.a.ring

    @classmethod
    def one(cls, ring, level: int) -> "SmashElement":
        return cls(TwistedElement.one(ring, level), TwistedElement.zero(ring, level))

    @classmethod
    def zero(cls, ring, level: int) -> "SmashElement":
        z = TwistedElement.zero(ring, level)
        return cls(z, z)

    def __mul__(self, other):
        if isinstance(other, SmashElement):
            return smash_mul(self, other)
        return NotImplemented

    def __add__(self, other):
        return SmashElement(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return SmashElement(self.a - other.a, self.b - other.b)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __str__(self):
        return format_smash(self)

    __repr__ = __str__


def smash_mul(p: SmashElement, q: SmashElement) -> SmashElement:
    """``(a + b l)(c + v l) = (a c - v* b) + (v a + b c*) l``."""
    if p.level != q.level or p.ring != q.ring:
        raise ValueError("smash operands must share level and base ring")
    a, b, c, v = p.a, p.b, q.a, q.b
    first = twisted_mul(a, c) - twisted_mul(twisted_conj(v), b)
    second = twisted_mul(v, a) + twisted_mul(b, twisted_conj(c))
    return SmashElement(first, second)


def smash_conj(p: SmashElement) -> SmashElement:
    return SmashElement(twisted_conj(p.a), -p.b)


def smash_norm(p: SmashElement):
    """``a a* + b b*`` as a base-ring value."""
    return p.ring.add(twisted_norm(p.a), twisted_norm(p.b))


def smash_inverse(p: SmashElement) -> SmashElement:
    """``(a* - l b*) / (a a* + b b*)``.

    ``l b* = (0 + 1 l)(b* + 0 l) = (b*)* l = b l``, so the numerator is the
    pair ``(a*, -b)``; each part is then divided by the norm.
    """
    ring = p.ring
    n = smash_norm(p)
    if ring.is_zero(n):
        raise ZeroDivisionError(f"{p} has zero norm and is not invertible")
    s = ring.inv(n)
    return SmashElement(twisted_conj(p.a).scale(s), (-p.b).scale(s))


def smash_to_cd(p: SmashElement) -> CDNumber:
    a, b = to_cd(p.a), to_cd(p.b)
    return CDNumber(a.level + 1, a.coeffs + b.coeffs)


def smash_from_cd(z: CDNumber) -> SmashElement:
    h = z.dim // 2
    return SmashElement(from_cd(CDNumber(z.level - 1, z.coeffs[:h])),
                        from_cd(CDNumber(z.level - 1, z.coeffs[h:])))


# ---------------------------------------------------------------------------
# finite twisted quotients


class QuotientError(ValueError):
    pass


@dataclass(frozen=True)
class QuotientSpec:
    """A finite normal subgroup ``K`` of the unit group of a twisted ring over Z/m."""

    ring: IntegersMod
    level: int
    subgroup: frozenset

    @classmethod
    def from_scalars(cls, ring: IntegersMod, level: int, ks: Iterable[int]) -> "QuotientSpec":
        """``K = {k i_0}``: the same unit subgroup ``K_j`` in every component."""
        return cls(ring, level, frozenset(TwistedElement.pure(ring, level, 0, k) for k in ks))

    @classmethod
    def trivial(cls, ring: IntegersMod, level: int) -> "QuotientSpec":
        return cls.from_scalars(ring, level, [1])

    def validate(self) -> None:
        K = self.subgroup
        ring, level = self.ring, self.level
        if not isinstance(ring, IntegersMod):
            raise QuotientError("quotients are modelled over finite rings Z/m only")
        one = TwistedElement.one(ring, level)
        if one not in K:
            raise QuotientError("subgroup does not contain the unit")
        for k in K:
            if k.ring != ring or k.level != level:
                raise QuotientError(f"{k} does not live in the twisted ring")
            try:
                kinv = twisted_inverse(k)
            except ZeroDivisionError:
                raise QuotientError(f"{k} is not a unit") from None
            if kinv not in K:
                raise QuotientError(f"subgroup not closed under inverse at {k}")
            if twisted_conj(k) not in K:
                raise QuotientError(f"subgroup is not conj-stable at {k}")
            for k2 in K:
                if twisted_mul(k, k2) not in K:
                    raise QuotientError(f"subgroup not closed under product at {k}, {k2}")
        central = all(all(ring.is_zero(x) for x in k.parts[1:]) for k in K)
        if central:
            return
        size = ring.m ** (1 << level)
        if size > 1 << 16:
            raise QuotientError("cannot certify normality of a non-central subgroup this large")
        for parts in all_tuples(ring, 1 << level):
            g = TwistedElement(ring, level, parts)
            try:
                ginv = twisted_inverse(g)
            except ZeroDivisionError:
                continue
            for k in K:
                if twisted_mul(twisted_mul(g, k), ginv) not in K:
                    raise QuotientError(f"non-normal component subgroup: {g} conjugates {k} out of K")


def coset(u: TwistedElement, spec: QuotientSpec) -> frozenset:
    return frozenset(twisted_mul(u, k) for k in spec.subgroup)


def twisted_quotient(u: TwistedElement, spec: QuotientSpec, validate: bool = True) -> TwistedElement:
    """Least element of ``u K`` under the lexicographic order of parts."""
    if u.ring != spec.ring or u.level != spec.level:
        raise QuotientError("element and quotient spec disagree on ring or level")
    if validate:
        spec.validate()
    return min(coset(u, spec), key=TwistedElement.key)


def enumerate_twisted(ring: IntegersMod, level: int):
    for parts in all_tuples(ring, 1 << level):
        yield TwistedElement(ring, level, parts)


# ---------------------------------------------------------------------------
# text forms  T<r>[y0, ...]   T<r>:Z8[...]   T<r>:Q3[(..), ...]   S<r>{T.. | T..}

_T_RE = re.compile(r"^\s*T(\d+)((?::[QZ]\d+)?)\s*\[(.*)\]\s*$", re.S)
_S_RE = re.compile(r"^\s*S(\d+)\s*\{(.*)\}\s*$", re.S)


def split_top(text: str, sep: str = ",") -> list[str]:
    """Split at ``sep`` outside any bracket pair."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def format_twisted(u: TwistedElement) -> str:
    return f"T{u.level}{u.ring.tag()}[" + ", ".join(u.ring.format(x) for x in u.parts) + "]"


def parse_twisted(text: str) -> TwistedElement:
    m = _T_RE.match(text)
    if not m:
        raise ValueError(f"not a twisted literal: {text!r}")
    ring = ring_from_tag(m.group(2))
    body = m.group(3).strip()
    parts = [ring.parse(p) for p in split_top(body)] if body else []
    return TwistedElement(ring, int(m.group(1)), tuple(parts))


def format_smash(p: SmashElement) -> str:
    return f"S{p.level}{{{format_twisted(p.a)} | {format_twisted(p.b)}}}"


def parse_smash(text: str) -> SmashElement:
    m = _S_RE.match(text)
    if not m:
        raise ValueError(f"not a smash literal: {text!r}")
    pieces = split_top(m.group(2), "|")
    if len(pieces) != 2:
        raise ValueError(f"smash literal needs exactly two parts: {text!r}")
    p = SmashElement(parse_twisted(pieces[0]), parse_twisted(pieces[1]))
    if p.level != int(m.group(1)):
        raise ValueError(f"smash level tag S{m.group(1)} disagrees with parts at level {p.level}")
    return p


def random_twisted(rng, ring, level: int) -> TwistedElement:
    return TwistedElement(ring, level, tuple(ring.random(rng) for _ in range(1 << level)))


def random_smash(rng, ring, level: int, nonzero: bool = False) -> SmashElement:
    while True:
        p = SmashElement(random_twisted(rng, ring, level), random_twisted(rng, ring, level))
        if not nonzero:
            return p
        try:
            ring.inv(smash_norm(p))
            return p
        except ZeroDivisionError:
            continue
