from fractions import Fraction as F
import random

import pytest
from hypothesis import given, settings, strategies as st

from octowrap.cayley import CDNumber, cd_join, cd_mul, random_cd
from octowrap.rings import IntegersMod, Rationals, TupleRing
from octowrap.smash import (
    QuotientError, QuotientSpec, SmashElement, TwistedElement, coset, enumerate_twisted, format_smash,
    format_twisted, from_cd, parse_smash, parse_twisted, random_smash, random_twisted, smash_from_cd,
    smash_inverse, smash_mul, smash_norm, smash_to_cd, to_cd, twisted_conj, twisted_inverse, twisted_mul,
    twisted_quotient,
)

Q = Rationals()


def pure(level, idx, y=1, ring=Q):
    return TwistedElement.pure(ring, level, idx, y)


def test_twisted_pure_product():
    assert twisted_mul(pure(2, 1, F(2)), pure(2, 2, F(3))) == pure(2, 3, F(6))
    rng = random.Random(1)
    v = random_twisted(rng, Q, 2)
    assert twisted_mul(TwistedElement.one(Q, 2), v) == v


def test_twisted_matches_cd_over_rationals():
    rng = random.Random(2)
    for r in (1, 2, 3):
        for _ in range(100):
            x, y = random_cd(rng, r), random_cd(rng, r)
            assert to_cd(twisted_mul(from_cd(x), from_cd(y))) == cd_mul(x, y)


def test_twisted_conj():
    assert twisted_conj(TwistedElement.one(Q, 2)) == TwistedElement.one(Q, 2)
    assert twisted_conj(pure(2, 2, F(5))) == pure(2, 2, F(-5))
    rng = random.Random(3)
    for ring in (Q, TupleRing(3), IntegersMod(8)):
        for _ in range(100):
            a, b = random_twisted(rng, ring, 2), random_twisted(rng, ring, 2)
            assert twisted_conj(twisted_mul(a, b)) == twisted_mul(twisted_conj(b), twisted_conj(a))


def test_twisted_mismatch():
    with pytest.raises(ValueError):
        twisted_mul(pure(2, 1), pure(1, 1))
    with pytest.raises(ValueError):
        twisted_mul(pure(1, 1), pure(1, 1, 1, IntegersMod(4)))


def test_smash_examples():
    rng = random.Random(4)
    one = SmashElement.one(Q, 2)
    c = random_smash(rng, Q, 2)
    assert smash_mul(one, c) == c
    p = SmashElement(pure(2, 1), TwistedElement.zero(Q, 2))
    q = SmashElement(TwistedElement.zero(Q, 2), pure(2, 1))
    assert smash_mul(p, q) == SmashElement(TwistedElement.zero(Q, 2), -TwistedElement.one(Q, 2))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_smash_consistency(r):
    basis = [CDNumber.unit(r + 1, j) for j in range(1 << (r + 1))]
    for x in basis:
        for y in basis:
            assert smash_to_cd(smash_mul(smash_from_cd(x), smash_from_cd(y))) == cd_mul(x, y)
    rng = random.Random(r)
    for _ in range(60):
        x, y = random_cd(rng, r + 1), random_cd(rng, r + 1)
        assert smash_to_cd(smash_from_cd(x) * smash_from_cd(y)) == cd_mul(x, y)


def test_smash_cd_join():
    x, y = CDNumber.unit(2, 1), CDNumber.unit(2, 3)
    assert smash_to_cd(SmashElement(from_cd(x), from_cd(y))) == cd_join(x, y)


def test_smash_inverse_examples():
    one = SmashElement.one(Q, 0)
    assert smash_inverse(one) == one
    p = SmashElement(TwistedElement(Q, 0, (F(1),)), TwistedElement(Q, 0, (F(1),)))
    inv = smash_inverse(p)
    assert inv == SmashElement(TwistedElement(Q, 0, (F(1, 2),)), TwistedElement(Q, 0, (F(-1, 2),)))
    assert smash_mul(p, inv) == one


def test_smash_inverse_random_and_rejection():
    rng = random.Random(5)
    one = SmashElement.one(Q, 2)
    for _ in range(100):
        p = random_smash(rng, Q, 2, nonzero=True)
        assert smash_mul(p, smash_inverse(p)) == one == smash_mul(smash_inverse(p), p)
    with pytest.raises(ZeroDivisionError):
        smash_inverse(SmashElement.zero(Q, 2))


def test_invertible_iff_norm_nonzero():
    ring = IntegersMod(4)
    for a0 in range(4):
        for b0 in range(4):
            p = SmashElement(TwistedElement(ring, 0, (a0,)), TwistedElement(ring, 0, (b0,)))
            n = smash_norm(p)
            if ring.is_unit(n):
                assert smash_mul(p, smash_inverse(p)) == SmashElement.one(ring, 0)
            else:
                with pytest.raises(ZeroDivisionError):
                    smash_inverse(p)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_smash_unit_group_alternative(seed):
    rng = random.Random(seed)
    r = rng.randint(1, 2)
    p = random_smash(rng, Q, r, nonzero=True)
    q = random_smash(rng, Q, r)
    assert smash_mul(smash_mul(p, p), q) == smash_mul(p, smash_mul(p, q))
    assert smash_mul(p, smash_mul(smash_inverse(p), q)) == q


def test_twisted_inverse_over_tuples():
    ring = TupleRing(2)
    u = TwistedElement(ring, 1, ((F(1), F(2)), (F(3), F(0))))
    assert twisted_mul(u, twisted_inverse(u)) == TwistedElement.one(ring, 1)
    with pytest.raises(ZeroDivisionError):
        twisted_inverse(TwistedElement(ring, 1, ((F(1), F(0)), (F(0), F(0)))))


# quotients

def test_trivial_quotient_is_identity():
    ring = IntegersMod(4)
    spec = QuotientSpec.trivial(ring, 1)
    for x in enumerate_twisted(ring, 1):
        assert twisted_quotient(x, spec) == x


def test_quotient_mod8_coset_table():
    ring = IntegersMod(8)
    spec = QuotientSpec.from_scalars(ring, 1, [1, 7])
    elems = list(enumerate_twisted(ring, 1))
    by_rep = {}
    for x in elems:
        by_rep.setdefault(twisted_quotient(x, spec), set()).add(x)
    # brute force: x ~ y iff y = x or y = -x
    for rep_, members in by_rep.items():
        x = next(iter(members))
        neg = TwistedElement(ring, 1, tuple((-c) % 8 for c in x.parts))
        assert members == {x, neg}
        assert rep_ == min(members, key=TwistedElement.key)
    assert sum(len(m) for m in by_rep.values()) == 64


def test_quotient_descends_level1():
    ring = IntegersMod(4)
    spec = QuotientSpec.from_scalars(ring, 1, [1, 3])
    elems = list(enumerate_twisted(ring, 1))
    assert len(elems) == 16
    rq = lambda x: twisted_quotient(x, spec, validate=False)  # noqa: E731
    for x in elems:
        assert frozenset(twisted_conj(k) for k in coset(x, spec)) == coset(twisted_conj(x), spec)
        for y in elems:
            assert rq(twisted_mul(x, y)) == rq(twisted_mul(rq(x), rq(y)))


def test_quotient_subgroup_errors():
    ring = IntegersMod(8)
    with pytest.raises(QuotientError):
        QuotientSpec.from_scalars(ring, 1, [3]).validate()  # missing unit
    with pytest.raises(QuotientError):
        QuotientSpec.from_scalars(ring, 1, [1, 3, 5]).validate()  # not closed
    i1 = TwistedElement.pure(ring, 1, 1, 1)
    not_stable = QuotientSpec(ring, 1, frozenset({TwistedElement.one(ring, 1), i1}))
    with pytest.raises(QuotientError):
        not_stable.validate()
    with pytest.raises(QuotientError):
        QuotientSpec(Q, 1, frozenset()).validate()


def test_non_normal_subgroup_rejected():
    # <i1> in the quaternion units over Z/3: conj-stable, closed, but 1 + i2 rotates i1 onto i3
    ring = IntegersMod(3)
    one = TwistedElement.one(ring, 2)
    i1 = TwistedElement.pure(ring, 2, 1, 1)
    K = frozenset({one, -one, i1, -i1})
    with pytest.raises(QuotientError, match="non-normal"):
        QuotientSpec(ring, 2, K).validate()


# text

def test_text_round_trip():
    rng = random.Random(6)
    for ring in (Q, TupleRing(3), IntegersMod(8)):
        for r in range(4):
            x = random_twisted(rng, ring, r)
            assert parse_twisted(format_twisted(x)) == x
            p = random_smash(rng, ring, r)
            assert parse_smash(format_smash(p)) == p
    assert format_twisted(pure(1, 1, F(1, 2))) == "T1[0, 1/2]"
    with pytest.raises(ValueError):
        parse_smash("S2{T1[0, 1] | T1[0, 0]}")
