"""Skew products over a free group, compared modulo the relation subgroup."""
# %%
import random

from octowrap import skew as sk
from octowrap.groups import FreeGroupModel, Q8Model

free = FreeGroupModel()
g1, g2 = free.parse("g1"), free.parse("g2")
e = free.unit()

# %% [markdown]
# Elements are (g1 a1 | g2 a2): two group elements, each with a word in a, b.
# The second slot gets conjugated when something sits in front of it.

# %%
p = sk.SkewElement(free, g1, sk.A, e, sk.E)
q = sk.SkewElement(free, e, sk.E, g2, sk.B)
print(sk.format_skew(p), "*", sk.format_skew(q), "=", sk.format_skew(p * q))

# %% [markdown]
# With nontrivial words the product is not associative on representatives.

# %%
r = sk.SkewElement(free, e, sk.B, e, sk.E)
s = sk.SkewElement(free, e, sk.E, e, sk.A)
print("(pr)s =", sk.format_skew((p * r) * s))
print("p(rs) =", sk.format_skew(p * (r * s)))

# %% [markdown]
# Equality is checked modulo the relations with a bounded search.
# The verdict is EQUAL, UNEQUAL or UNKNOWN, and is never a false positive.

# %%
rel = sk.relation_generator(free, g1, g2)
print(sk.format_skew(rel), "vs unit:", sk.skew_equal(rel, sk.skew_unit(free)).name)
print(sk.format_skew(p), "vs unit:", sk.skew_equal(p, sk.skew_unit(free)).name)

# %% [markdown]
# An audit of the alternative laws, with Q8 as the base group.

# %%
rep = sk.alternativity_audit(Q8Model(), samples=10, depth=2, rng=random.Random(3))
print(f"trials={rep.trials} failures={rep.failures} notes={rep.notes}")
