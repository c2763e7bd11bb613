"""Building the next level from pairs, over rings other than the rationals."""
# %%
import random

from octowrap.cayley import CDNumber, cd_mul, format_cd
from octowrap.rings import IntegersMod
from octowrap.smash import (
    QuotientSpec, SmashElement, TwistedElement, enumerate_twisted, format_smash, smash_from_cd,
    smash_inverse, smash_mul, smash_norm, smash_to_cd, twisted_quotient,
)

# %% [markdown]
# An octonion is a pair of quaternions. Multiplying pairs reproduces the octonion product.

# %%
rng = random.Random(2)
x = CDNumber(3, tuple(rng.randint(-3, 3) for _ in range(8)))
y = CDNumber(3, tuple(rng.randint(-3, 3) for _ in range(8)))
p, q = smash_from_cd(x), smash_from_cd(y)
print("p =", format_smash(p))
print("pair product:", format_cd(smash_to_cd(smash_mul(p, q))))
print("direct      :", format_cd(cd_mul(x, y)))

# %% [markdown]
# Inverses exist exactly when the norm is a unit of the coefficient ring.
# Over Z/4 the norm of 1 + i1 is 2, which is not a unit.

# %%
z4 = IntegersMod(4)
good = SmashElement(TwistedElement(z4, 0, (1,)), TwistedElement(z4, 0, (2,)))
bad = SmashElement(TwistedElement(z4, 0, (1,)), TwistedElement(z4, 0, (1,)))
print("norm", smash_norm(good), "->", format_smash(smash_inverse(good)))
try:
    smash_inverse(bad)
except ZeroDivisionError as exc:
    print("norm", smash_norm(bad), "->", exc)

# %% [markdown]
# Quotienting by the central scalars {1, -1} over Z/8 pairs each element with its negative.

# %%
z8 = IntegersMod(8)
spec = QuotientSpec.from_scalars(z8, 1, [1, 7])
classes = {twisted_quotient(u, spec) for u in enumerate_twisted(z8, 1)}
print(len(classes), "classes among 64 elements")
