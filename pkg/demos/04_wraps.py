"""Discrete loops, connections and their holonomy."""
# %%
import random

from octowrap import wraps as wr
from octowrap.cayley import CDNumber
from octowrap.groups import Q8Model, Q8ModSignModel, UnitCDModel, q8_abelianize

q8 = Q8Model()
rng = random.Random(4)

# %% [markdown]
# Four edges labelled i1, i2, i1, i2 around a square: one turn gives -1.

# %%
square = wr.Mesh.circle(4)
labels = {j: CDNumber.unit(2, 1 if j % 2 == 0 else 2) for j in range(4)}
c = wr.Connection(q8, labels)
loop = wr.circle_loop(square, 1)
print("holonomy:", wr.holonomy(loop, c))
print("reversed:", wr.holonomy(loop.reversed(), c))

# %% [markdown]
# Concatenation: the first loop traversed ends up as the rightmost factor.

# %%
mesh = wr.Mesh.circle(64)
c = wr.Connection.random(UnitCDModel(2), mesh, rng)
w1, w2 = wr.random_circle_loop(rng, mesh, 8), wr.random_circle_loop(rng, mesh, 8)
print(wr.holonomy(wr.wrap_concat(w1, w2), c).same(wr.holonomy(w2, c) * wr.holonomy(w1, c)))

# %% [markdown]
# A loop on the figure eight splits into one loop on each circle.

# %%
eight = wr.Mesh.wedge(8, 8)
path = wr.random_component_loop(rng, eight, "M1", 6) + wr.random_component_loop(rng, eight, "M2", 6)
a, b = wr.bunch_decompose(wr.DiscreteWrap.single(eight, path))
print("pieces:", a.loops[0], "|", b.loops[0])

# %% [markdown]
# Lifting to a double cover closes only for even winding numbers.

# %%
for m in range(-3, 4):
    lift = wr.cover_lift(wr.circle_loop(mesh, m), 2)
    print(f"winding {m:2d}: closed={lift.closed}")

# %% [markdown]
# A commutator of loops on the figure eight becomes trivial once Q8 is abelianised.

# %%
ce = wr.Connection.random(q8, eight, rng)
x = wr.DiscreteWrap.single(eight, tuple((e, 1) for e in range(8)))
y = wr.DiscreteWrap.single(eight, tuple((e, 1) for e in range(8, 16)))
for seed in range(20):
    ce = wr.Connection.random(q8, eight, random.Random(seed))
    if not wr.holonomy(wr.commutator_wrap(x, y), ce).is_identity():
        break
comm = wr.commutator_wrap(x, y)
print("raw:        ", wr.holonomy(comm, ce))
print("abelianised:", wr.abelianized_holonomy(comm, ce, q8_abelianize, Q8ModSignModel()))
