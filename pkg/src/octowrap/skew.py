"""The skew product of a base group W with the free group B = <a, b>.

Representatives are pairs ``(g1 w1 (x) g2 w2)`` with ``g_i`` in a pluggable
group model and ``w_i`` reduced words in B.  The product is

    (g1 a1 (x) g2 a2)(g3 a3 (x) g4 a4)
        = (g1 g3)(a1 a3) (x) (g4 g2)((a1^-1 a4 a1) a2)

and elements are compared modulo the subgroup ``A`` generated by

    alpha(g1, g2) = (g1 g2 a (x) g2 b)(g1 (x) e)^-1 = (g1 g2 g1^-1 a (x) g2 b).

Equivalence mod ``A`` is only semi-decided: :func:`skew_equal` answers
``EQUAL`` with a witness chain, ``UNEQUAL`` when an invariant separates the
two sides, and ``UNKNOWN`` otherwise.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass

from . import words
from .groups import GroupModel
from .report import VerificationReport
from .words import E, FreeWord, word_inv, word_prod

A = FreeWord.gen("a")
B = FreeWord.gen("b")


@dataclass(frozen=True)
class SkewElement:
    model: GroupModel
    g1: object
    w1: FreeWord
    g2: object
    w2: FreeWord

    def __mul__(self, other):
        return skew_mul(self, other)

    def key(self):
        m = self.model
        return (m.key(self.g1), self.w1, m.key(self.g2), self.w2)

    def b_length(self) -> int:
        return len(self.w1) + len(self.w2)

    def __str__(self):
        return format_skew(self)

    __repr__ = __str__


def skew_unit(model: GroupModel) -> SkewElement:
    e = model.unit()
    return SkewElement(model, e, E, e, E)


def embed(model: GroupModel, g) -> SkewElement:
    """``g -> (g e_B (x) e)``."""
    return SkewElement(model, g, E, model.unit(), E)


def _check(p: SkewElement, q: SkewElement) -> GroupModel:
    if p.model != q.model:
        raise ValueError(f"model mismatch: {p.model!r} vs {q.model!r}")
    return p.model


def skew_mul(p: SkewElement, q: SkewElement) -> SkewElement:
    m = _check(p, q)
    first_g = m.mul(p.g1, q.g1)
    first_w = words.word_mul(p.w1, q.w1)
    second_g = m.mul(q.g2, p.g2)
    second_w = words.word_mul(word_prod(word_inv(p.w1), q.w2, p.w1), p.w2)
    return SkewElement(m, first_g, first_w, second_g, second_w)


def skew_inv(p: SkewElement) -> SkewElement:
    """Two-sided inverse of the representative.

    ``(g1 a1 (x) g2 a2)^-1 = (g1^-1 a1^-1 (x) g2^-1 (a1 a2^-1 a1^-1))``; both
    products with ``p`` are exactly the unit, before any quotient.
    """
    m = p.model
    return SkewElement(
        m, m.inv(p.g1), word_inv(p.w1), m.inv(p.g2), word_prod(p.w1, word_inv(p.w2), word_inv(p.w1))
    )


def skew_commutator(p: SkewElement, q: SkewElement) -> SkewElement:
    """``(p q)(p^-1 q^-1)``."""
    return skew_mul(skew_mul(p, q), skew_mul(skew_inv(p), skew_inv(q)))


def relation_generator(model: GroupModel, g1, g2) -> SkewElement:
    """``(g1 g2 a (x) g2 b)(g1 e_B (x) e e_B)^-1``."""
    e = model.unit()
    lhs = SkewElement(model, model.mul(g1, g2), A, g2, B)
    rhs = SkewElement(model, g1, E, e, E)
    return skew_mul(lhs, skew_inv(rhs))


def same(p: SkewElement, q: SkewElement) -> bool:
    m = _check(p, q)
    return p.w1 == q.w1 and p.w2 == q.w2 and m.eq(p.g1, q.g1) and m.eq(p.g2, q.g2)


# ---------------------------------------------------------------------------
# equivalence modulo A


class Verdict(enum.Enum):
    EQUAL = "equal"
    UNEQUAL = "unequal"
    UNKNOWN = "unknown"


_KINDS = ("R", "L", "R-", "L-")


def _apply(s: SkewElement, kind: str, gen: SkewElement) -> SkewElement:
    if kind == "R":
        return skew_mul(s, gen)
    if kind == "L":
        return skew_mul(gen, s)
    if kind == "R-":
        return skew_mul(s, skew_inv(gen))
    return skew_mul(skew_inv(gen), s)


def _measure(s: SkewElement) -> tuple[int, int]:
    m = s.model
    return s.b_length(), m.length(s.g1) + m.length(s.g2)


def normal_form(p: SkewElement) -> SkewElement:
    """Greedy rewriting by generators of ``A`` while (B-length, W-length) drops.

    Each step multiplies by ``alpha(e, g)^{+-1}`` on either side with ``g``
    chosen so the second W-part becomes the unit.  Every step is a product
    with an element of ``A``, so the result is equivalent to ``p``; the
    measure strictly decreases, so rewriting terminates.
    """
    m = p.model
    e = m.unit()
    cur = p
    while True:
        nxt = None
        mu = _measure(cur)
        for kind in _KINDS:
            g = m.inv(cur.g2) if kind in ("R", "L") else cur.g2
            cand = _apply(cur, kind, relation_generator(m, e, g))
            if _measure(cand) < mu:
                nxt = cand
                break
        if nxt is None:
            return cur
        cur = nxt


def skew_invariant(p: SkewElement) -> tuple:
    """A homomorphism to an abelian group that kills every generator of ``A``.

    Components: the abelianised class of ``g1 g2^-1`` (when the model has
    one), ``sigma_a(w1) - sigma_b(w2)``, ``sigma_b(w1)`` and ``sigma_a(w2)``,
    where ``sigma_x`` is the exponent sum of the letter ``x``.
    """
    m = p.model
    wcls = m.abelian_class(m.mul(p.g1, m.inv(p.g2)))
    return (
        wcls,
        p.w1.exponent_sum("a") - p.w2.exponent_sum("b"),
        p.w1.exponent_sum("b"),
        p.w2.exponent_sum("a"),
    )


def _candidates(s: SkewElement, t: SkewElement):
    m = s.model
    e = m.unit()
    h1, h2, t1, t2 = s.g1, s.g2, t.g1, t.g2
    gs = [e, h2, m.inv(h2), m.mul(t2, m.inv(h2)), m.mul(m.inv(h2), t2),
          m.mul(h2, m.inv(t2)), m.mul(m.inv(t2), h2)]
    gs += m.factor_candidates(m.mul(m.inv(h1), t1)) + m.factor_candidates(m.mul(t1, m.inv(h1)))
    seen = set()
    for g in gs:
        k = m.key(g)
        if k in seen:
            continue
        seen.add(k)
        for kind in _KINDS:
            cs = [e]
            gg = g if kind in ("R", "L") else m.inv(g)
            need = m.mul(m.inv(h1), t1) if kind.startswith("R") else m.mul(t1, m.inv(h1))
            c = m.conjugator(gg, need)
            if c is not None and not m.eq(c, e):
                cs.append(c)
            for c in cs:
                yield kind, relation_generator(m, c, g)


def _expand(frontier: dict, targets, budget: list, seen: dict) -> dict:
    # frontier values are raw products; seen is keyed by normal form, so a
    # rewrite that undoes the last step cannot hide a two-step path.
    # budget[0] counts candidate evaluations left.
    nxt = {}
    for s in frontier.values():
        for target in targets:
            for kind, gen in _candidates(s, target):
                if budget[0] <= 0:
                    return nxt
                budget[0] -= 1
                raw = _apply(s, kind, gen)
                k = normal_form(raw).key()
                if k not in seen:
                    seen[k] = raw
                    nxt[k] = raw
    return nxt


def _start(p: SkewElement, np_: SkewElement) -> dict:
    return {("raw",) + p.key(): p, np_.key(): np_}


def skew_equal(p: SkewElement, q: SkewElement, depth: int = 3, limit: int = 1000) -> Verdict:
    """Decide ``p == q`` modulo ``A`` as far as ``depth`` extra generators allow.

    ``limit`` caps the number of candidate products tried; running out of
    budget gives ``UNKNOWN``, never a wrong verdict.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    _check(p, q)
    if same(p, q):
        return Verdict.EQUAL
    np_, nq = normal_form(p), normal_form(q)
    if same(np_, nq):
        return Verdict.EQUAL
    if skew_invariant(p) != skew_invariant(q):
        return Verdict.UNEQUAL
    if depth == 0:
        return Verdict.UNKNOWN
    seen_p = {np_.key(): np_}
    seen_q = {nq.key(): nq}
    front_p, front_q = _start(p, np_), _start(q, nq)
    targets_p, targets_q = (q, nq), (p, np_)
    dp, dq = (depth + 1) // 2, depth // 2
    budget = [limit]
    for step in range(max(dp, dq)):
        if step < dp:
            front_p = _expand(front_p, targets_p, budget, seen_p)
            if seen_p.keys() & seen_q.keys():
                return Verdict.EQUAL
        if step < dq:
            front_q = _expand(front_q, targets_q, budget, seen_q)
            if seen_p.keys() & seen_q.keys():
                return Verdict.EQUAL
        if budget[0] <= 0:
            break
    return Verdict.UNKNOWN


# ---------------------------------------------------------------------------
# relation companions


class CompanionError(LookupError):
    pass


def relation_companion(model: GroupModel, a1: FreeWord, g=None, max_len: int = 4, depth: int = 2) -> FreeWord:
    """Shortest ``a2`` with ``(g a1 (x) g a2) == e`` modulo ``A``.

    Raises :class:`CompanionError` when an invariant rules every candidate
    out, or when none is found within ``max_len`` / ``depth``.
    """
    g = model.unit() if g is None else g
    if a1.exponent_sum("b") != 0:
        raise CompanionError(f"no companion for {a1}: exponent sum of b is nonzero (invariant obstruction)")
    unit = skew_unit(model)
    for a2 in words.words_up_to(("a", "b"), max_len):
        if a2.exponent_sum("a") != 0 or a2.exponent_sum("b") != a1.exponent_sum("a"):
            continue
        if skew_equal(SkewElement(model, g, a1, g, a2), unit, depth) is Verdict.EQUAL:
            return a2
    raise CompanionError(f"no companion for {a1} up to length {max_len} at depth {depth}")


def skew_inv_companion(p: SkewElement, max_len: int = 4, depth: int = 2) -> SkewElement:
    """Right inverse of ``(g a1 (x) e)`` in the form ``(e (x) g a1 a2 a1^-1)``."""
    m = p.model
    if not (m.is_unit(p.g2) and not p.w2):
        raise ValueError("companion inverse applies to elements (g a1 (x) e) only")
    a2 = relation_companion(m, p.w1, p.g1, max_len, depth)
    return SkewElement(m, m.unit(), E, p.g1, word_prod(p.w1, a2, word_inv(p.w1)))


# ---------------------------------------------------------------------------
# sampling, audits, text


def random_skew(model: GroupModel, rng, max_len: int = 4, trivial_words: bool = False) -> SkewElement:
    if trivial_words:
        w1 = w2 = E
    else:
        w1 = words.random_word(rng, ("a", "b"), max_len)
        w2 = words.random_word(rng, ("a", "b"), max_len)
    return SkewElement(model, model.random(rng), w1, model.random(rng), w2)


def alternativity_audit(model: GroupModel, samples: int = 100, depth: int = 2, rng=None,
                        max_len: int = 3, seed=None, limit: int = 300) -> VerificationReport:
    """Check the alternative laws (and associativity where W allows it).

    Only an ``UNEQUAL`` verdict counts as a failure; undecided comparisons
    are tallied under ``notes['unknown']``.
    """
    import random as _random

    rng = rng or _random.Random(seed)
    rep = VerificationReport("skew-alternativity", seed=seed)
    unknown = 0
    t0 = time.perf_counter()

    def judge(lhs, rhs, label):
        nonlocal unknown
        v = skew_equal(lhs, rhs, depth, limit)
        if v is Verdict.UNKNOWN:
            unknown += 1
        rep.record(v is not Verdict.UNEQUAL, f"{label}: {lhs} vs {rhs}")

    for _ in range(samples):
        x = random_skew(model, rng, max_len)
        y = random_skew(model, rng, max_len)
        judge(skew_mul(x, skew_mul(x, y)), skew_mul(skew_mul(x, x), y), "left alternative")
        judge(skew_mul(skew_mul(y, x), x), skew_mul(y, skew_mul(x, x)), "right alternative")
        if model.associative:
            p, q, r = (random_skew(model, rng, trivial_words=True) for _ in range(3))
            left = skew_mul(skew_mul(p, q), r)
            right = skew_mul(p, skew_mul(q, r))
            m = model
            shown_left = SkewElement(m, m.mul(m.mul(p.g1, q.g1), r.g1), E, m.mul(r.g2, m.mul(q.g2, p.g2)), E)
            shown_right = SkewElement(m, m.mul(p.g1, m.mul(q.g1, r.g1)), E, m.mul(m.mul(r.g2, q.g2), p.g2), E)
            ok = same(left, shown_left) and same(right, shown_right) and same(left, right)
            rep.record(ok, f"associativity: {p}, {q}, {r}")
    rep.notes["unknown"] = unknown
    rep.duration_ms = (time.perf_counter() - t0) * 1000
    return rep


def format_skew(p: SkewElement) -> str:
    m = p.model
    return f"({m.format(p.g1)} {words.format_word(p.w1)} | {m.format(p.g2)} {words.format_word(p.w2)})"


def parse_skew(text: str, model: GroupModel) -> SkewElement:
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")):
        raise ValueError(f"skew literal must be parenthesised: {text!r}")
    halves = t[1:-1].split("|")
    if len(halves) != 2:
        raise ValueError(f"skew literal needs exactly one '|': {text!r}")
    parts = []
    for h in halves:
        g_text, _, w_text = h.strip().rpartition(" ")
        if not g_text:
            raise ValueError(f"skew half needs '<g> <word>': {h!r}")
        parts.append((model.parse(g_text.strip()), words.parse_word(w_text)))
    return SkewElement(model, parts[0][0], parts[0][1], parts[1][0], parts[1][1])
