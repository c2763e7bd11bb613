"""A walk up the doubling tower: where each algebraic law stops holding."""
# %%
import itertools
import random

from octowrap.cayley import CDNumber, associator, cd_inverse, cd_mul, commutator, format_cd, sign_table

# %% [markdown]
# Basis products at level 3 (the octonions), in signed index+1 form.
# Row = left factor, column = right factor.

# %%
for row in sign_table(3):
    print(" ".join(f"{v:3d}" for v in row))

# %% [markdown]
# Complex numbers commute, quaternions do not.

# %%
i1, i2 = CDNumber.unit(2, 1), CDNumber.unit(2, 2)
print("[i1, i2] in A2 =", format_cd(commutator(i1, i2)))
z1, z2 = CDNumber(1, (1, 2)), CDNumber(1, (3, -1))
print("[z1, z2] in A1 =", format_cd(commutator(z1, z2)))

# %% [markdown]
# Quaternions associate; octonions do not, even on basis elements.

# %%
basis = [CDNumber.unit(3, j) for j in range(8)]
bad = [(a, b, c) for a, b, c in itertools.product(range(8), repeat=3)
       if not associator(basis[a], basis[b], basis[c]).is_zero()]
print(f"{len(bad)} of 512 octonion basis triples fail to associate, e.g. i{bad[0][0]} i{bad[0][1]} i{bad[0][2]}")

# %% [markdown]
# But the alternative laws survive, exactly, on random rational octonions.

# %%
rng = random.Random(1)
x = CDNumber(3, tuple(rng.randint(-4, 4) for _ in range(8)))
y = CDNumber(3, tuple(rng.randint(-4, 4) for _ in range(8)))
print("(xx)y == x(xy):", cd_mul(cd_mul(x, x), y) == cd_mul(x, cd_mul(x, y)))
print("(yx)x == y(xx):", cd_mul(cd_mul(y, x), x) == cd_mul(y, cd_mul(x, x)))
print("x(x^-1 y) == y:", cd_mul(x, cd_mul(cd_inverse(x), y)) == y)
print("x^-1 =", format_cd(cd_inverse(x)))
