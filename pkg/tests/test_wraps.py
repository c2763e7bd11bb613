import random

import pytest
from hypothesis import given, settings, strategies as st

from octowrap import wraps as wr
from octowrap.cayley import CDNumber, format_cd
from octowrap.groups import CyclicModel, Q8Model, Q8ModSignModel, UnitCDModel, q8_abelianize

Q8 = Q8Model()
UQ = UnitCDModel(2)
i = lambda j, s=1: CDNumber.unit(2, j, s)  # noqa: E731
ONE = CDNumber.one(2)


def const(model, mesh, g):
    return wr.Connection.constant(model, mesh, g)


# transport

def test_trivial_connection():
    mesh = wr.Mesh.circle(8)
    w = wr.circle_loop(mesh, 3)
    assert wr.holonomy(w, wr.Connection.trivial(Q8, mesh)).is_identity()


def test_square_of_generators():
    mesh = wr.Mesh.circle(4)
    c = wr.Connection(UQ, {0: i(1), 1: i(2), 2: i(1), 3: i(2)})
    h = wr.holonomy(wr.circle_loop(mesh, 1), c)
    assert h.same(wr.HolonomyData(UQ, (-ONE,)))
    # first-traversed edge is the rightmost factor
    assert h.elements[0] == UQ.mul(UQ.mul(UQ.mul(i(2), i(1)), i(2)), i(1))


def test_order_convention_on_two_edges():
    mesh = wr.Mesh.circle(2)
    c = wr.Connection(Q8, {0: i(1), 1: i(2)})
    h = wr.holonomy(wr.circle_loop(mesh, 1), c).elements[0]
    assert h == Q8.mul(i(2), i(1)) == i(3, -1)


def test_reverse_is_inverse():
    rng = random.Random(1)
    mesh = wr.Mesh.circle(16)
    for _ in range(30):
        c = wr.Connection.random(UQ, mesh, rng)
        w = wr.random_circle_loop(rng, mesh, 12)
        assert wr.holonomy(w.reversed(), c).same(wr.holonomy(w, c).inverse())


def test_missing_edge_and_model_mismatch():
    mesh = wr.Mesh.circle(4)
    w = wr.circle_loop(mesh, 1)
    with pytest.raises(KeyError):
        wr.holonomy(w, wr.Connection(Q8, {0: ONE}))
    h = wr.holonomy(w, wr.Connection.trivial(Q8, mesh))
    with pytest.raises(ValueError):
        h * wr.holonomy(w, wr.Connection.trivial(UQ, mesh))
    with pytest.raises(ValueError):
        wr.transport(w.with_fiber((i(1) + i(2),)), wr.Connection.trivial(Q8, mesh))


def test_wrap_validation():
    mesh = wr.Mesh.circle(4)
    with pytest.raises(wr.MeshError):
        wr.DiscreteWrap.single(mesh, [(0, 1), (1, 1)])
    with pytest.raises(wr.MeshError):
        wr.DiscreteWrap.single(mesh, [(1, 1)])
    with pytest.raises(wr.MeshError):
        wr.DiscreteWrap(mesh, 2, ((),))
    with pytest.raises(wr.MeshError):
        wr.Mesh.circle(4, k=5)
    assert wr.Mesh.circle(64, 4).marked == (0, 16, 32, 48)


def test_fiber_lift_starts_at_fiber_point():
    rng = random.Random(2)
    mesh = wr.Mesh.circle(8)
    for model in (Q8, UQ, UnitCDModel(3)):
        c = wr.Connection.random(model, mesh, rng)
        u = model.random(rng)
        w = wr.random_circle_loop(rng, mesh, 6).with_fiber((u,))
        lift = wr.fiber_lift(w, c)
        assert model.eq(lift[0], u)
        assert model.eq(lift[-1], wr.transport(w, c).elements[0])
        assert len(lift) == len(w.loops[0]) + 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(["q8", "uq", "cyc"]))
def test_right_translation_equivariance(seed, which):
    model = {"q8": Q8, "uq": UQ, "cyc": CyclicModel(5)}[which]
    rng = random.Random(seed)
    mesh = wr.Mesh.circle(16)
    c = wr.Connection.random(model, mesh, rng)
    w = wr.random_circle_loop(rng, mesh, 10)
    u, z = model.random(rng), model.random(rng)
    t = wr.transport(w.with_fiber((u,)), c).elements[0]
    tz = wr.transport(w.with_fiber((model.mul(u, z),)), c).elements[0]
    assert model.eq(tz, model.mul(t, z))


def test_octonion_equivariance_alternative_instances():
    rng = random.Random(3)
    model = UnitCDModel(3)
    mesh = wr.Mesh.circle(8)
    for _ in range(10):
        c = wr.Connection.random(model, mesh, rng)
        w = wr.random_circle_loop(rng, mesh, 6)
        u = model.random(rng)
        h = wr.holonomy(w, c).elements[0]
        t = wr.transport(w.with_fiber((u,)), c).elements[0]
        for z in (h, model.inv(h), u):
            tz = wr.transport(w.with_fiber((model.mul(u, z),)), c).elements[0]
            assert tz == model.mul(t, z)


def test_octonion_holonomy_depends_on_bracketing():
    # the left fold is a convention: a right fold can differ for octonions
    model = UnitCDModel(3)
    e1, e2, e4 = (CDNumber.unit(3, j) for j in (1, 2, 4))
    mesh = wr.Mesh.circle(3)
    c = wr.Connection(model, {0: e4, 1: e2, 2: e1})
    h = wr.holonomy(wr.circle_loop(mesh, 1), c).elements[0]
    right = model.mul(e1, model.mul(e2, e4))
    assert h == model.mul(model.mul(e1, e2), e4) == -right


def test_g_k_fiber_action():
    rng = random.Random(4)
    mesh = wr.Mesh.circle(16, 2)
    for _ in range(20):
        c = wr.Connection.random(Q8, mesh, rng)
        loops = (wr.random_circle_loop(rng, mesh, 8).loops[0], wr.random_circle_loop(rng, mesh, 8).loops[0])
        u = (Q8.random(rng), Q8.random(rng))
        z = (Q8.random(rng), Q8.random(rng))
        w = wr.DiscreteWrap(mesh, 0, loops, u)
        wz = wr.DiscreteWrap(mesh, 0, loops, tuple(Q8.mul(a, b) for a, b in zip(u, z)))
        assert wr.transport(wz, c).same(wr.transport(w, c) * wr.HolonomyData(Q8, z))


def test_floating_mode():
    rng = random.Random(5)
    model = UnitCDModel(2, exact=False)
    mesh = wr.Mesh.circle(16)
    c = wr.Connection.random(model, mesh, rng)
    w1, w2 = wr.random_circle_loop(rng, mesh, 10), wr.random_circle_loop(rng, mesh, 10)
    lhs = wr.holonomy(wr.wrap_concat(w1, w2), c)
    assert lhs.same(wr.holonomy(w2, c) * wr.holonomy(w1, c))


# concatenation

def test_concat_examples():
    mesh = wr.Mesh.circle(8)
    g = i(1)
    c = const(Q8, mesh, g)
    w = wr.circle_loop(mesh, 1)
    # constant g on every edge: one turn gives g^8
    assert wr.holonomy(w, c).same(wr.HolonomyData(Q8, (ONE,)))
    mesh2 = wr.Mesh.circle(1)
    c2 = const(Q8, mesh2, g)
    w2 = wr.circle_loop(mesh2, 1)
    assert wr.holonomy(w2, c2).elements == (g,)
    assert wr.holonomy(wr.wrap_concat(w2, w2), c2).elements == (Q8.mul(g, g),)
    assert wr.holonomy(wr.wrap_concat(w2, wr.DiscreteWrap.constant(mesh2)), c2).elements == (g,)
    rng = random.Random(6)
    cr = wr.Connection.random(Q8, mesh, rng)
    wr_ = wr.random_circle_loop(rng, mesh, 9)
    assert wr.holonomy(wr.wrap_concat(wr_, wr_.reversed()), cr).is_identity()


def test_concat_errors():
    mesh = wr.Mesh.circle(8).with_marked((0, 4))
    a = wr.DiscreteWrap(mesh, 0, ((),))
    b = wr.DiscreteWrap(mesh, 4, ((),))
    with pytest.raises(wr.MeshError):
        wr.wrap_concat(a, b)
    with pytest.raises(wr.MeshError):
        wr.wrap_concat(wr.circle_loop(wr.Mesh.circle(8), 1), wr.circle_loop(wr.Mesh.circle(4), 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_concat_law(seed):
    rng = random.Random(seed)
    mesh = wr.Mesh.circle(64)
    model = rng.choice((Q8, UQ))
    c = wr.Connection.random(model, mesh, rng)
    w1, w2 = wr.random_circle_loop(rng, mesh, 10), wr.random_circle_loop(rng, mesh, 10)
    assert wr.holonomy(wr.wrap_concat(w1, w2), c).same(wr.holonomy(w2, c) * wr.holonomy(w1, c))


# bunches

def test_bunch_examples():
    mesh = wr.Mesh.wedge(4, 3)
    g, h = i(1), i(2)
    c = wr.Connection(Q8, {e: (g if mesh.components[e] == "M1" else h) for e in mesh.edges})
    first = tuple((e, 1) for e in range(4))
    second = ((4, 1), (5, 1), (6, 1))
    only = wr.DiscreteWrap.single(mesh, first)
    w1, w2 = wr.bunch_decompose(only)
    assert w1 == only and w2 == wr.DiscreteWrap.constant(mesh)
    eight = wr.DiscreteWrap.single(mesh, first + second)
    w1, w2 = wr.bunch_decompose(eight)
    # g^4 = 1 and h^3 = -h in Q8
    assert wr.holonomy(w1, c).elements == (ONE,)
    assert wr.holonomy(w2, c).elements == (i(2, -1),)
    assert wr.holonomy(eight, c).same(wr.holonomy(w2, c) * wr.holonomy(w1, c))
    assert wr.wrap_concat(w1, w2) == eight


def test_bunch_errors():
    mesh = wr.Mesh.wedge(4, 3)
    first = tuple((e, 1) for e in range(4))
    second = ((4, 1), (5, 1), (6, 1))
    with pytest.raises(wr.MeshError):
        wr.bunch_decompose(wr.DiscreteWrap.single(mesh, second + first))
    with pytest.raises(wr.MeshError):
        wr.bunch_decompose(wr.circle_loop(wr.Mesh.circle(4), 1))


def test_bunch_random():
    rng = random.Random(7)
    mesh = wr.Mesh.wedge(8, 8)
    for _ in range(40):
        g1 = wr.random_component_loop(rng, mesh, "M1", 8)
        g2 = wr.random_component_loop(rng, mesh, "M2", 8)
        w = wr.DiscreteWrap.single(mesh, g1 + g2)
        c = wr.Connection.random(UQ, mesh, rng)
        a, b = wr.bunch_decompose(w)
        assert wr.holonomy(w, c).same(wr.holonomy(b, c) * wr.holonomy(a, c))


# covers

def test_cover_examples():
    mesh = wr.Mesh.circle(8)
    lift = wr.cover_lift(wr.circle_loop(mesh, 2), 2)
    assert lift.closed and wr.winding_number(lift.as_wrap()) == 1
    lift = wr.cover_lift(wr.circle_loop(mesh, 1), 2)
    assert not lift.closed and lift.end == 8
    with pytest.raises(wr.MeshError):
        lift.as_wrap()
    w = wr.circle_loop(mesh, -3)
    assert wr.cover_lift(w, 1).steps == w.loops[0]


def test_cover_exhaustive():
    mesh = wr.Mesh.circle(8)
    for d in (2, 3):
        for m in range(-6, 7):
            w = wr.circle_loop(mesh, m)
            for sheet in range(d):
                lift = wr.cover_lift(w, d, start=8 * sheet)
                assert lift.closed == (m % d == 0)
                assert lift.project(mesh) == w.loops[0]
                assert (lift.end - lift.start) % (8 * d) == (8 * m) % (8 * d)


# retraction

def test_retraction_examples():
    n = 6
    mesh = wr.Mesh.annulus(n)
    rho = wr.annulus_retraction(mesh)
    inner = mesh.restrict("inner")
    around_inner = tuple((n + j, 1) for j in range(n))
    w = wr.DiscreteWrap.single(inner, around_inner, n)
    assert wr.retract_push(wr.include(w, mesh), rho, inner) == w
    outer = ((2 * n, -1),) + tuple((j, 1) for j in range(n)) + ((2 * n, 1),)
    pushed = wr.retract_push(wr.DiscreteWrap.single(mesh, outer, n), rho, inner)
    assert pushed.loops == (around_inner,)


def test_retraction_errors():
    mesh = wr.Mesh.annulus(4)
    inner = mesh.restrict("inner")
    rho = wr.annulus_retraction(mesh)
    bad = dict(rho)
    bad[1] = 6  # edge 0 -> 1 now maps to 4 -> 6, not an inner edge
    w = wr.DiscreteWrap.single(mesh, ((8, -1), (8, 1)), 4)
    with pytest.raises(wr.MeshError):
        wr.retract_push(w, bad, inner)
    moved = dict(rho)
    moved[4] = 5
    with pytest.raises(wr.MeshError):
        wr.retract_push(w, moved, inner)


def test_retraction_homomorphism_and_holonomy():
    rng = random.Random(8)
    mesh = wr.Mesh.annulus(5)
    rho = wr.annulus_retraction(mesh)
    inner = mesh.restrict("inner")
    pool = wr.enumerate_loops(mesh, 5, 6)
    for _ in range(20):
        loops = [rng.choice(pool) for _ in range(2)]
        w1, w2 = (wr.DiscreteWrap.single(mesh, lp, 5) for lp in loops)
        push = lambda w: wr.retract_push(w, rho, inner)  # noqa: E731
        assert push(wr.wrap_concat(w1, w2)) == wr.wrap_concat(push(w1), push(w2))
        c = wr.Connection.random(Q8, inner, rng)
        assert wr.holonomy(push(w1), c).same(wr.holonomy(w1, wr.pullback_connection(c, rho, mesh, inner)))


def test_enumerate_loops_counts():
    # closed walks of length L on a cycle: central binomial coefficients
    inner = wr.Mesh.annulus(8).restrict("inner")
    lps = wr.enumerate_loops(inner, 8, 6)
    counts = [sum(1 for lp in lps if len(lp) == L) for L in range(7)]
    assert counts == [1, 0, 2, 0, 6, 0, 20]


# abelianisation

def test_abelianized_commutator():
    rng = random.Random(9)
    mesh = wr.Mesh.circle(16)
    target = Q8ModSignModel()
    for _ in range(20):
        c = wr.Connection.random(Q8, mesh, rng)
        w1, w2 = wr.random_circle_loop(rng, mesh, 8), wr.random_circle_loop(rng, mesh, 8)
        h = wr.abelianized_holonomy(wr.commutator_wrap(w1, w2), c, q8_abelianize, target)
        assert h.is_identity()
    # outside the commutator subgroup things survive
    c = wr.Connection(Q8, {e: (i(1) if e == 0 else ONE) for e in mesh.edges})
    h = wr.abelianized_holonomy(wr.circle_loop(mesh, 1), c, q8_abelianize, target)
    assert h.elements == (i(1),)


def test_abelianized_commutative_and_trivial():
    rng = random.Random(10)
    mesh = wr.Mesh.circle(8)
    cyc = CyclicModel(6)
    c = wr.Connection.random(cyc, mesh, rng)
    w = wr.random_circle_loop(rng, mesh, 10)
    assert wr.abelianized_holonomy(w, c, lambda x: x, cyc).same(wr.transport(w, c))
    cq = wr.Connection.random(Q8, mesh, rng)
    triv = wr.abelianized_holonomy(w, cq, lambda x: 0, CyclicModel(1))
    assert triv.is_identity()


def test_bad_projection_detected():
    target = Q8ModSignModel()
    mesh = wr.Mesh.circle(4)
    c = wr.Connection.trivial(Q8, mesh)
    w = wr.circle_loop(mesh, 1)

    def bad(x):
        return x if x in (ONE, i(1)) else ONE

    with pytest.raises(ValueError, match="homomorphism"):
        wr.abelianized_holonomy(w, c, bad, target)
    with pytest.raises(ValueError):
        wr.abelianized_holonomy(w, c, lambda x: x, Q8)


# pairing

def test_pairing():
    rng = random.Random(11)
    empty = wr.HolonomyData(Q8, (), 1)
    h = wr.HolonomyData(Q8, (i(1), i(2)))
    assert wr.iterated_pairing(h, empty).elements == h.elements
    assert wr.iterated_pairing(h, h).level == 2
    with pytest.raises(ValueError):
        wr.iterated_pairing(h, wr.HolonomyData(UQ, (ONE,)))
    octo = UnitCDModel(3)
    for _ in range(20):
        x = wr.iterated_pairing(*(wr.HolonomyData(octo, (octo.random(rng),)) for _ in range(2)))
        y = wr.iterated_pairing(*(wr.HolonomyData(octo, (octo.random(rng),)) for _ in range(2)))
        assert ((x * x) * y).same(x * (x * y))
        assert ((y * x) * x).same(y * (x * x))


def test_holonomy_text():
    h = wr.HolonomyData(Q8, (i(1), -ONE))
    assert wr.format_holonomy(h) == "(A2[0, 1, 0, 0], A2[-1, 0, 0, 0])"
    assert str(h) == wr.format_holonomy(h)


# basepoints and refinement

def test_basepoint_shift():
    rng = random.Random(12)
    mesh = wr.Mesh.circle(16)
    w = wr.random_circle_loop(rng, mesh, 10)
    assert wr.basepoint_shift(w, 0) == w
    assert wr.basepoint_shift(w, 16) == w
    for _ in range(20):
        c = wr.Connection.random(Q8, mesh, rng)
        w = wr.random_circle_loop(rng, mesh, 10)
        delta = rng.randrange(1, 16)
        s = wr.basepoint_shift(w, delta)
        assert s.base == delta
        arc = wr.shift_arc(w, delta)
        A = Q8.prod([c.element(st) for st in reversed(arc)])
        h = wr.holonomy(w, c).elements[0]
        assert wr.holonomy(s, c).elements[0] == Q8.mul(Q8.mul(A, h), Q8.inv(A))
    with pytest.raises(wr.MeshError):
        wr.basepoint_shift(wr.DiscreteWrap.constant(wr.Mesh.wedge(3, 3)), 1)


def test_basepoint_shift_is_isomorphism():
    rng = random.Random(13)
    mesh = wr.Mesh.circle(16)
    for _ in range(10):
        c = wr.Connection.random(UQ, mesh, rng)
        w1, w2 = wr.random_circle_loop(rng, mesh, 8), wr.random_circle_loop(rng, mesh, 8)
        d = rng.randrange(16)
        lhs = wr.holonomy(wr.basepoint_shift(wr.wrap_concat(w1, w2), d), c)
        rhs = wr.holonomy(wr.basepoint_shift(w2, d), c) * wr.holonomy(wr.basepoint_shift(w1, d), c)
        assert lhs.same(rhs)


def test_refinement_invariance():
    rng = random.Random(14)
    mesh = wr.Mesh.circle(8)
    for model in (Q8, UQ, UnitCDModel(3)):
        c = wr.Connection.random(model, mesh, rng)
        w = wr.random_circle_loop(rng, mesh, 10)
        w2, c2 = wr.refine_edge(w, c, rng.randrange(8))
        assert wr.holonomy(w2, c2).same(wr.holonomy(w, c))
        assert len(w2.mesh.edges) == 9


def test_component_loop_turns():
    rng = random.Random(15)
    mesh = wr.Mesh.wedge(8, 5)
    assert wr.random_component_loop(rng, mesh, "M2", 0, 1) == tuple((e, 1) for e in range(8, 13))
    steps = wr.random_component_loop(rng, mesh, "M1", 4, -2)
    assert steps[:16] == tuple((e, -1) for e in range(7, -1, -1)) * 2


def test_wedge_commutators_not_trivial_before_abelianising():
    mesh = wr.Mesh.wedge(8, 8)
    x = wr.DiscreteWrap.single(mesh, tuple((e, 1) for e in range(8)))
    y = wr.DiscreteWrap.single(mesh, tuple((e, 1) for e in range(8, 16)))
    c = wr.Connection(Q8, {e: (i(1) if e == 0 else i(2) if e == 8 else ONE) for e in mesh.edges})
    comm = wr.commutator_wrap(x, y)
    assert wr.holonomy(comm, c).elements == (-ONE,)
    assert wr.abelianized_holonomy(comm, c, q8_abelianize, Q8ModSignModel()).is_identity()
