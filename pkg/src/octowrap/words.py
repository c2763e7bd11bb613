"""Reduced words in free groups.

Letters are ``(name, exp)`` pairs with ``exp`` in ``{1, -1}``.  In text a
name is one lowercase letter optionally followed by digits (``a``, ``b``,
``g12``); a capitalised name is the inverse letter, so ``aB`` is ``a b^-1``
and ``g1G2`` is ``g1 g2^-1``.  A bare ``e`` is the empty word.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_WORD_LENGTH = 32

_TOKEN = re.compile(r"([A-Za-z])(\d*)(\^-1)?")


def _reduce(letters: Iterable[tuple[str, int]]) -> tuple:
    stack: list[tuple[str, int]] = []
    for name, exp in letters:
        if stack and stack[-1][0] == name and stack[-1][1] == -exp:
            stack.pop()
        else:
            stack.append((name, exp))
    return tuple(stack)


@dataclass(frozen=True)
class FreeWord:
    letters: tuple = ()

    def __post_init__(self):
        for name, exp in self.letters:
            if exp not in (1, -1):
                raise ValueError(f"letter exponent must be +-1, got {exp}")
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "FreeWord":
        return cls(((name, exp),))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return word_mul(self, other)

    def __invert__(self) -> "FreeWord":
        return word_inv(self)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"FreeWord({format_word(self)!r})"

    def exponent_sum(self, name: str) -> int:
        return sum(exp for n, exp in self.letters if n == name)

    def abelian(self) -> tuple:
        c: Counter = Counter()
        for n, exp in self.letters:
            c[n] += exp
        return tuple(sorted((n, k) for n, k in c.items() if k))


E = FreeWord()


def word_mul(u: FreeWord, v: FreeWord) -> FreeWord:
    return FreeWord(u.letters + v.letters)


def word_inv(u: FreeWord) -> FreeWord:
    return FreeWord(tuple((n, -e) for n, e in reversed(u.letters)))


def word_prod(*ws: FreeWord) -> FreeWord:
    letters: list = []
    for w in ws:
        letters.extend(w.letters)
    return FreeWord(tuple(letters))


def conjugate(w: FreeWord, by: FreeWord) -> FreeWord:
    """``by^-1 w by``."""
    return word_prod(word_inv(by), w, by)


def parse_word(text: str) -> FreeWord:
    t = "".join(text.split()).replace(".", "").replace("*", "")
    if t in ("", "e", "1"):
        return E
    letters = []
    pos = 0
    while pos < len(t):
        m = _TOKEN.match(t, pos)
        if not m:
            raise ValueError(f"bad word literal {text!r} at position {pos}")
        head, digits, inv = m.groups()
        name = head.lower() + digits
        exp = -1 if head.isupper() else 1
        if inv:
            exp = -exp
        if name == "e" and exp == 1 and not inv:
            pos = m.end()
            continue
        letters.append((name, exp))
        pos = m.end()
    return FreeWord(tuple(letters))


def format_word(w: FreeWord) -> str:
    if not w.letters:
        return "e"
    return "".join(n if e > 0 else n[0].upper() + n[1:] for n, e in w.letters)


def cyclic_reduce(w: FreeWord) -> tuple[FreeWord, FreeWord]:
    """Return ``(u, c)`` with ``w = u c u^-1`` and ``c`` cyclically reduced."""
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
        i += 1
        j -= 1
    return FreeWord(letters[:i]), FreeWord(letters[i:j + 1])


def conjugator(x: FreeWord, y: FreeWord) -> FreeWord | None:
    """Some ``c`` with ``c x c^-1 = y``, or ``None`` if they are not conjugate."""
    u, xc = cyclic_reduce(x)
    v, yc = cyclic_reduce(y)
    if len(xc) != len(yc):
        return None
    if not xc.letters:
        return word_prod(v, word_inv(u))
    n = len(xc)
    for k in range(n):
        # xc = p q with |p| = k, rotation q p = p^-1 xc p
        rot = xc.letters[k:] + xc.letters[:k]
        if rot == yc.letters:
            p = FreeWord(xc.letters[:k])
            return word_prod(v, word_inv(p), word_inv(u))
    return None


def words_up_to(generators: Sequence[str], max_len: int) -> Iterator[FreeWord]:
    """All reduced words of length <= max_len, shortest first."""
    letters = [(g, 1) for g in generators] + [(g, -1) for g in generators]
    layer = [E]
    yield E
    for _ in range(max_len):
        nxt = []
        for w in layer:
            last = w.letters[-1] if w.letters else None
            for lt in letters:
                if last and last[0] == lt[0] and last[1] == -lt[1]:
                    continue
                nw = FreeWord(w.letters + (lt,))
                nxt.append(nw)
                yield nw
        layer = nxt


def random_word(rng, generators: Sequence[str] = ("a", "b"), max_len: int = 6) -> FreeWord:
    max_len = min(max_len, MAX_WORD_LENGTH)
    n = rng.randint(0, max_len)
    letters = []
    while len(letters) < n:
        lt = (rng.choice(generators), rng.choice((1, -1)))
        if letters and letters[-1][0] == lt[0] and letters[-1][1] == -lt[1]:
            continue
        letters.append(lt)
    return FreeWord(tuple(letters))
