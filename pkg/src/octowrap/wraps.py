"""Discrete wraps, connections and holonomy.

A mesh is a finite graph with integer edge ids; a *step* is ``(edge, +1)``
(tail to head) or ``(edge, -1)``.  A wrap is a tuple of closed step
sequences at a marked base vertex (one per marked point of the source),
plus fiber points.  A connection labels edges with structure-group
elements; the reverse step carries the inverse.

Order convention: the holonomy of a loop is the left-nested product taken
in the order the fiber sees the edges, so the first-traversed edge is the
rightmost factor::

    hol(c_1, ..., c_n) = ((c_n c_{n-1}) ...) c_1

and ``hol(w1 v w2) = hol(w2) hol(w1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .groups import GroupModel

Step = tuple  # (edge id, +1 | -1)


class MeshError(ValueError):
    pass


class Mesh:
    """Finite directed graph with marked vertices and optional component labels."""

    def __init__(self, edges: Mapping[int, tuple[int, int]], marked: Sequence[int],
                 components: Optional[Mapping[int, str]] = None, kind: str = "graph", **params):
        self.edges = dict(edges)
        self.marked = tuple(marked)
        self.components = dict(components) if components else {e: "M" for e in self.edges}
        self.kind = kind
        self.params = params
        verts = set(self.marked)
        for t, h in self.edges.values():
            verts.update((t, h))
        self.vertices = tuple(sorted(verts))
        self._out: dict[int, list[Step]] = {v: [] for v in self.vertices}
        for e, (t, h) in sorted(self.edges.items()):
            self._out[t].append((e, 1))
            self._out[h].append((e, -1))
        for v in self.marked:
            if not self._out.get(v):
                raise MeshError(f"marked vertex {v} has no incident edge")

    # constructors
    @classmethod
    def circle(cls, n: int = 64, k: int = 1) -> "Mesh":
        """``n`` segments, ``k`` marked points at ``n/k`` spacing."""
        if n < 1 or k < 1 or k > n:
            raise MeshError("circle needs n >= 1 and 1 <= k <= n")
        edges = {j: (j, (j + 1) % n) for j in range(n)}
        marked = tuple((q * n) // k for q in range(k))
        return cls(edges, marked, kind="circle", n=n)

    @classmethod
    def wedge(cls, n1: int = 8, n2: int = 8) -> "Mesh":
        """Two circles glued at vertex 0 (the figure eight for n1 = n2)."""
        edges, comp = {}, {}
        for j in range(n1):
            edges[j] = (j, (j + 1) % n1)
            comp[j] = "M1"
        second = [0] + [n1 + i for i in range(n2 - 1)]
        for j in range(n2):
            edges[n1 + j] = (second[j], second[(j + 1) % n2])
            comp[n1 + j] = "M2"
        return cls(edges, (0,), comp, kind="wedge", n1=n1, n2=n2)

    @classmethod
    def annulus(cls, n: int = 8) -> "Mesh":
        """Outer circle ``0..n-1``, inner circle ``n..2n-1``, spokes ``j -> n+j``.

        The base vertex is ``n`` on the inner circle.
        """
        edges, comp = {}, {}
        for j in range(n):
            edges[j] = (j, (j + 1) % n)
            comp[j] = "outer"
            edges[n + j] = (n + j, n + (j + 1) % n)
            comp[n + j] = "inner"
            edges[2 * n + j] = (j, n + j)
            comp[2 * n + j] = "spoke"
        return cls(edges, (n,), comp, kind="annulus", n=n)

    def restrict(self, component: str, marked: Optional[Sequence[int]] = None) -> "Mesh":
        """Submesh on one component; edge ids are kept."""
        edges = {e: v for e, v in self.edges.items() if self.components[e] == component}
        comp = {e: component for e in edges}
        return Mesh(edges, self.marked if marked is None else marked, comp, kind="sub")

    def with_marked(self, marked: Sequence[int]) -> "Mesh":
        return Mesh(self.edges, marked, self.components, self.kind, **self.params)

    # steps
    def tail(self, step: Step) -> int:
        t, h = self.edges[step[0]]
        return t if step[1] > 0 else h

    def head(self, step: Step) -> int:
        t, h = self.edges[step[0]]
        return h if step[1] > 0 else t

    def steps_from(self, v: int) -> list[Step]:
        return list(self._out.get(v, ()))

    def check_path(self, steps: Sequence[Step], start: int) -> int:
        """Validate a step sequence from ``start``; return the end vertex."""
        v = start
        for i, st in enumerate(steps):
            e, s = st
            if e not in self.edges or s not in (1, -1):
                raise MeshError(f"step {i} {st!r} is not a step of this mesh")
            if self.tail(st) != v:
                raise MeshError(f"step {i} {st!r} does not start at vertex {v}")
            v = self.head(st)
        return v

    @property
    def n(self) -> int:
        if self.kind != "circle":
            raise MeshError("not a circle mesh")
        return self.params["n"]

    def __eq__(self, other):
        return isinstance(other, Mesh) and (self.edges, self.marked, self.components) == (
            other.edges, other.marked, other.components)

    def __hash__(self):
        return hash((tuple(sorted(self.edges.items())), self.marked))

    def __repr__(self):
        return f"Mesh({self.kind}, {len(self.vertices)} vertices, {len(self.edges)} edges)"


def reverse_steps(steps: Sequence[Step]) -> tuple:
    return tuple((e, -s) for e, s in reversed(steps))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Connection:
    model: GroupModel
    labels: Mapping[int, object]
    default: object = None

    def element(self, step: Step):
        e, s = step
        if e in self.labels:
            x = self.labels[e]
        elif self.default is not None:
            x = self.default
        else:
            raise KeyError(f"connection has no element for edge {e}")
        return x if s > 0 else self.model.inv(x)

    @classmethod
    def constant(cls, model, mesh: Mesh, g, edges: Optional[Iterable[int]] = None) -> "Connection":
        ids = mesh.edges if edges is None else edges
        return cls(model, {e: g for e in ids})

    @classmethod
    def trivial(cls, model, mesh: Mesh) -> "Connection":
        return cls.constant(model, mesh, model.unit())

    @classmethod
    def random(cls, model, mesh: Mesh, rng) -> "Connection":
        return cls(model, {e: model.random(rng) for e in sorted(mesh.edges)})


@dataclass(frozen=True)
class HolonomyData:
    model: GroupModel
    elements: tuple
    level: int = 1

    def __mul__(self, other: "HolonomyData") -> "HolonomyData":
        _same_model(self.model, other.model)
        if len(self.elements) != len(other.elements):
            raise ValueError("holonomy tuples of different length")
        m = self.model
        return HolonomyData(m, tuple(m.mul(x, y) for x, y in zip(self.elements, other.elements)), self.level)

    def inverse(self) -> "HolonomyData":
        return HolonomyData(self.model, tuple(self.model.inv(x) for x in self.elements), self.level)

    def same(self, other: "HolonomyData") -> bool:
        return (len(self.elements) == len(other.elements)
                and all(self.model.eq(x, y) for x, y in zip(self.elements, other.elements)))

    def is_identity(self) -> bool:
        return all(self.model.is_unit(x) for x in self.elements)

    def __str__(self):
        return format_holonomy(self)


def _same_model(a: GroupModel, b: GroupModel) -> None:
    if a != b:
        raise ValueError(f"group model mismatch: {a!r} vs {b!r}")


def format_holonomy(h: HolonomyData) -> str:
    return "(" + ", ".join(h.model.format(x) for x in h.elements) + ")"


@dataclass(frozen=True)
class DiscreteWrap:
    mesh: Mesh
    base: int
    loops: tuple
    fiber: Optional[tuple] = None

    def __post_init__(self):
        if self.base not in self.mesh.marked:
            raise MeshError(f"base vertex {self.base} is not a marked vertex")
        loops = tuple(tuple((int(e), int(s)) for e, s in lp) for lp in self.loops)
        for q, lp in enumerate(loops):
            end = self.mesh.check_path(lp, self.base)
            if end != self.base:
                raise MeshError(f"loop {q} ends at {end}, not at the base vertex {self.base}")
        object.__setattr__(self, "loops", loops)
        if self.fiber is not None and len(self.fiber) != len(loops):
            raise ValueError("need one fiber point per loop")

    @classmethod
    def single(cls, mesh: Mesh, steps: Sequence[Step], base: Optional[int] = None, fiber=None) -> "DiscreteWrap":
        base = mesh.marked[0] if base is None else base
        return cls(mesh, base, (tuple(steps),), None if fiber is None else (fiber,))

    @classmethod
    def constant(cls, mesh: Mesh, k: int = 1, base: Optional[int] = None) -> "DiscreteWrap":
        base = mesh.marked[0] if base is None else base
        return cls(mesh, base, ((),) * k)

    @property
    def k(self) -> int:
        return len(self.loops)

    def fiber_points(self, model: GroupModel) -> tuple:
        return self.fiber if self.fiber is not None else (model.unit(),) * self.k

    def with_fiber(self, fiber: Sequence) -> "DiscreteWrap":
        return DiscreteWrap(self.mesh, self.base, self.loops, tuple(fiber))

    def reversed(self) -> "DiscreteWrap":
        return DiscreteWrap(self.mesh, self.base, tuple(reverse_steps(lp) for lp in self.loops), self.fiber)


def _fold(steps: Sequence[Step], c: Connection):
    # ((c_n c_{n-1}) ...) c_1 : left fold over the reversed sequence
    m = c.model
    els = [c.element(st) for st in reversed(steps)]
    return m.prod(els)


def holonomy(w: DiscreteWrap, c: Connection) -> HolonomyData:
    for lp in w.loops:
        for e, _ in lp:
            if e not in c.labels and c.default is None:
                raise KeyError(f"connection has no element for edge {e}")
    return HolonomyData(c.model, tuple(_fold(lp, c) for lp in w.loops))


def transport(w: DiscreteWrap, c: Connection) -> HolonomyData:
    """Endpoint fiber values ``h_q u_q`` for every loop."""
    m = c.model
    u = w.fiber_points(m)
    for x in u:
        if not m.contains(x):
            raise ValueError(f"fiber point {m.format(x)} is not in {m.name}")
    h = holonomy(w, c)
    return HolonomyData(m, tuple(m.mul(hq, uq) for hq, uq in zip(h.elements, u)))


def fiber_lift(w: DiscreteWrap, c: Connection, q: int = 0) -> list:
    """Fiber values along loop ``q``: entry ``j`` is ``hol(first j steps) u_q``."""
    m = c.model
    u = w.fiber_points(m)[q]
    lp = w.loops[q]
    out = [u]
    if m.associative:
        # prefix holonomies extend on the left, so one pass suffices
        h = m.unit()
        for st in lp:
            h = m.mul(c.element(st), h)
            out.append(m.mul(h, u))
    else:
        for j in range(1, len(lp) + 1):
            out.append(m.mul(_fold(lp[:j], c), u))
    assert m.eq(out[0], u)
    return out


def wrap_concat(w1: DiscreteWrap, w2: DiscreteWrap) -> DiscreteWrap:
    """``w1 v w2``: traverse ``w1`` first, loop by loop."""
    if w1.mesh != w2.mesh:
        raise MeshError("wraps live on different meshes")
    if w1.base != w2.base:
        raise MeshError(f"basepoint mismatch: {w1.base} vs {w2.base}")
    if w1.k != w2.k:
        raise MeshError("wraps have different numbers of loops")
    if w1.fiber is not None and w2.fiber is not None and w1.fiber != w2.fiber:
        raise ValueError("fiber points of the two wraps differ")
    fiber = w1.fiber if w1.fiber is not None else w2.fiber
    return DiscreteWrap(w1.mesh, w1.base, tuple(a + b for a, b in zip(w1.loops, w2.loops)), fiber)


def concat_all(ws: Sequence[DiscreteWrap]) -> DiscreteWrap:
    acc = ws[0]
    for w in ws[1:]:
        acc = wrap_concat(acc, w)
    return acc


def commutator_wrap(w1: DiscreteWrap, w2: DiscreteWrap) -> DiscreteWrap:
    return concat_all([w1, w2, w1.reversed(), w2.reversed()])


# ---------------------------------------------------------------------------
# bunches


def bunch_decompose(w: DiscreteWrap) -> tuple[DiscreteWrap, DiscreteWrap]:
    """Split a wrap on ``M1 v M2`` into its ``M1`` and ``M2`` portions.

    Each loop must have the bunch form ``gamma_1 v gamma_2``: its ``M1`` steps
    come first, then its ``M2`` steps (either part may be empty).  The
    pieces are returned as wraps on the same mesh, which is the same as
    padding each by the constant loop on the other component.
    """
    mesh = w.mesh
    if mesh.kind != "wedge":
        raise MeshError("bunch decomposition needs a wedge mesh")
    glue = mesh.marked[0]
    first, second = [], []
    for q, lp in enumerate(w.loops):
        labels = [mesh.components[e] for e, _ in lp]
        for i in range(1, len(lp)):
            if labels[i] != labels[i - 1] and mesh.tail(lp[i]) != glue:
                raise MeshError(f"loop {q} changes component away from the marked vertex")
        if "M1" in labels and "M2" in labels and labels.index("M2") < max(
                i for i, x in enumerate(labels) if x == "M1"):
            raise MeshError(f"loop {q} is not of the form gamma_1 v gamma_2")
        first.append(tuple(st for st, lab in zip(lp, labels) if lab == "M1"))
        second.append(tuple(st for st, lab in zip(lp, labels) if lab == "M2"))
    return (DiscreteWrap(mesh, w.base, tuple(first), w.fiber),
            DiscreteWrap(mesh, w.base, tuple(second), w.fiber))


# ---------------------------------------------------------------------------
# covers


def winding_number(w: DiscreteWrap, q: int = 0) -> int:
    n = w.mesh.n
    total = sum(s for _, s in w.loops[q])
    if total % n:
        raise MeshError("loop does not close on the circle")
    return total // n


def circle_loop(mesh: Mesh, winding: int, base: Optional[int] = None) -> DiscreteWrap:
    """The straight loop of the given winding number from ``base``."""
    n = mesh.n
    base = mesh.marked[0] if base is None else base
    steps = []
    v = base
    for _ in range(abs(winding) * n):
        if winding > 0:
            steps.append((v, 1))
            v = (v + 1) % n
        else:
            v = (v - 1) % n
            steps.append((v, -1))
    return DiscreteWrap.single(mesh, steps, base)


@dataclass(frozen=True)
class Lift:
    mesh: Mesh
    start: int
    steps: tuple
    end: int
    degree: int

    @property
    def closed(self) -> bool:
        return self.start == self.end

    def project(self, base_mesh: Mesh) -> tuple:
        n = base_mesh.n
        return tuple((e % n, s) for e, s in self.steps)

    def as_wrap(self) -> DiscreteWrap:
        if not self.closed:
            raise MeshError("open lift is not a wrap")
        return DiscreteWrap.single(self.mesh.with_marked((self.start,)), self.steps, self.start)


def cover_mesh(n: int, d: int) -> Mesh:
    """The ``d``-fold cover of the ``n``-circle; vertex ``j`` projects to ``j mod n``."""
    return Mesh.circle(d * n)


def cover_lift(w: DiscreteWrap, d: int, start: Optional[int] = None, q: int = 0) -> Lift:
    """Lift loop ``q`` of a circle wrap to the ``d``-fold cover, step by step."""
    base_mesh = w.mesh
    n = base_mesh.n
    if d < 1:
        raise MeshError("cover degree must be positive")
    cover = cover_mesh(n, d)
    v = w.base if start is None else start
    if v % n != w.base:
        raise MeshError("start vertex does not project to the base vertex")
    first = v
    lifted = []
    for st in w.loops[q]:
        e, s = st
        matches = [cs for cs in cover.steps_from(v) if cs[0] % n == e and cs[1] == s]
        if len(matches) != 1:
            raise MeshError(f"expected exactly one lift of step {st} at vertex {v}, found {len(matches)}")
        lifted.append(matches[0])
        v = cover.head(matches[0])
    return Lift(cover, first, tuple(lifted), v, d)


# ---------------------------------------------------------------------------
# retractions


def _edge_map(n1: Mesh, n2: Mesh, rho: Mapping[int, int]) -> dict:
    for v in n2.vertices:
        if rho.get(v, v) != v:
            raise MeshError(f"retraction moves vertex {v} of the target submesh")
    by_ends: dict = {}
    for e, (t, h) in n2.edges.items():
        by_ends.setdefault((t, h), []).append((e, 1))
        by_ends.setdefault((h, t), []).append((e, -1))
    out = {}
    for e, (t, h) in n1.edges.items():
        rt, rh = rho[t], rho[h]
        if rt == rh:
            out[e] = None
            continue
        found = by_ends.get((rt, rh), [])
        if len(found) != 1:
            raise MeshError(f"rho is not edge-compatible at edge {e}: {t}->{h} maps to {rt}->{rh}")
        out[e] = found[0]
    return out


def retract_push(w: DiscreteWrap, rho: Mapping[int, int], target: Mesh) -> DiscreteWrap:
    """Compose each loop with ``rho`` and drop degenerate steps."""
    if rho.get(w.base, w.base) != w.base:
        raise MeshError("retraction must fix the base vertex")
    emap = _edge_map(w.mesh, target, rho)
    loops = []
    for lp in w.loops:
        out = []
        for e, s in lp:
            img = emap[e]
            if img is None:
                continue
            out.append((img[0], img[1] * s))
        loops.append(tuple(out))
    return DiscreteWrap(target.with_marked((w.base,)) if w.base not in target.marked else target,
                        w.base, tuple(loops), w.fiber)


def include(w: DiscreteWrap, bigger: Mesh) -> DiscreteWrap:
    """A wrap on a submesh seen as a wrap on the ambient mesh."""
    return DiscreteWrap(bigger if w.base in bigger.marked else bigger.with_marked((w.base,)),
                        w.base, w.loops, w.fiber)


def pullback_connection(c: Connection, rho: Mapping[int, int], source: Mesh, target: Mesh) -> Connection:
    emap = _edge_map(source, target, rho)
    m = c.model
    labels = {}
    for e, img in emap.items():
        labels[e] = m.unit() if img is None else c.element(img)
    return Connection(m, labels)


def annulus_retraction(mesh: Mesh) -> dict:
    n = mesh.params["n"]
    rho = {j: n + j for j in range(n)}
    rho.update({n + j: n + j for j in range(n)})
    return rho


def enumerate_loops(mesh: Mesh, base: int, max_len: int) -> list[tuple]:
    """Every closed step sequence of length <= max_len at ``base``."""
    out = []

    def walk(v, path):
        if v == base:
            out.append(tuple(path))
        if len(path) == max_len:
            return
        for st in mesh.steps_from(v):
            path.append(st)
            walk(mesh.head(st), path)
            path.pop()

    walk(base, [])
    return out


# ---------------------------------------------------------------------------
# abelianisation, pairing, basepoints, refinement


def check_homomorphism(proj: Callable, source: GroupModel, target: GroupModel, rng=None, samples: int = 64) -> None:
    elems = source.elements()
    if elems is not None:
        pairs = [(x, y) for x in elems for y in elems]
    else:
        pairs = [(source.random(rng), source.random(rng)) for _ in range(samples)]
    for x, y in pairs:
        if not target.eq(proj(source.mul(x, y)), target.mul(proj(x), proj(y))):
            raise ValueError(
                f"projection is not a homomorphism at ({source.format(x)}, {source.format(y)})")


def abelianized_holonomy(w: DiscreteWrap, c: Connection, proj: Callable, target: GroupModel,
                         rng=None, check: bool = True) -> HolonomyData:
    if check:
        check_homomorphism(proj, c.model, target, rng)
    if not target.commutative:
        raise ValueError(f"{target.name} is not commutative")
    t = transport(w, c)
    return HolonomyData(target, tuple(proj(x) for x in t.elements))


def iterated_pairing(ha: HolonomyData, hb: HolonomyData) -> HolonomyData:
    """``G^{k a} x G^{k b} -> G^{k (a + b)}`` by concatenating tuples."""
    _same_model(ha.model, hb.model)
    return HolonomyData(ha.model, ha.elements + hb.elements, ha.level + hb.level)


def basepoint_shift(w: DiscreteWrap, delta: int) -> DiscreteWrap:
    """Move the base vertex forward by ``delta`` along the circle.

    Each loop becomes ``arc^-1 v loop v arc`` with ``arc`` the forward path
    from the old base to the new one, so holonomy is conjugated by the
    transport along the arc.
    """
    mesh = w.mesh
    n = mesh.n
    d = delta % n
    if d == 0:
        return w
    arc = tuple(((w.base + j) % n, 1) for j in range(d))
    new_base = (w.base + d) % n
    back = reverse_steps(arc)
    loops = tuple(back + lp + arc for lp in w.loops)
    return DiscreteWrap(mesh.with_marked((new_base,)), new_base, loops, w.fiber)


def shift_arc(w: DiscreteWrap, delta: int) -> DiscreteWrap:
    """The arc used by :func:`basepoint_shift`, as an open path (steps only)."""
    n = w.mesh.n
    return tuple(((w.base + j) % n, 1) for j in range(delta % n))


def refine_edge(w: DiscreteWrap, c: Connection, edge: int) -> tuple[DiscreteWrap, Connection]:
    """Subdivide ``edge`` with a new midpoint; the label splits as ``c(e) . e``."""
    mesh = w.mesh
    t, h = mesh.edges[edge]
    mid = max(mesh.vertices) + 1
    new_edge = max(mesh.edges) + 1
    edges = dict(mesh.edges)
    edges[edge] = (t, mid)
    edges[new_edge] = (mid, h)
    comps = dict(mesh.components)
    comps[new_edge] = comps[edge]
    refined = Mesh(edges, mesh.marked, comps, kind="graph")
    loops = []
    for lp in w.loops:
        out = []
        for e, s in lp:
            if e != edge:
                out.append((e, s))
            elif s > 0:
                out.extend([(edge, 1), (new_edge, 1)])
            else:
                out.extend([(new_edge, -1), (edge, -1)])
        loops.append(tuple(out))
    labels = dict(c.labels)
    labels[new_edge] = c.model.unit()
    return DiscreteWrap(refined, w.base, tuple(loops), w.fiber), Connection(c.model, labels, c.default)


def random_circle_loop(rng, mesh: Mesh, length: int, base: Optional[int] = None) -> DiscreteWrap:
    """Random walk of about ``length`` steps closed up by the shorter way home."""
    n = mesh.n
    base = mesh.marked[0] if base is None else base
    v, steps = base, []
    for _ in range(length):
        if rng.random() < 0.5:
            steps.append((v, 1))
            v = (v + 1) % n
        else:
            v = (v - 1) % n
            steps.append((v, -1))
    while v != base:
        fwd = (base - v) % n
        if fwd <= n - fwd:
            steps.append((v, 1))
            v = (v + 1) % n
        else:
            v = (v - 1) % n
            steps.append((v, -1))
    if rng.random() < 0.5:
        extra = circle_loop(mesh, rng.choice((-1, 1)), base).loops[0]
        steps.extend(extra)
    return DiscreteWrap.single(mesh, steps, base)


def random_component_loop(rng, mesh: Mesh, component: str, length: int, turns: int = 0) -> tuple:
    """Random closed walk at the wedge point that stays on one component.

    ``turns`` full circuits of the component (sign = direction) come first.
    """
    base = mesh.marked[0]
    sub = mesh.restrict(component)
    v, steps = base, []
    sign = 1 if turns > 0 else -1
    for _ in range(abs(turns)):
        while True:
            st = next(s for s in sub.steps_from(v) if s[1] == sign)
            steps.append(st)
            v = sub.head(st)
            if v == base:
                break
    for _ in range(length):
        st = rng.choice(sub.steps_from(v))
        steps.append(st)
        v = sub.head(st)
    # walk home along the component, choosing the step that gets closer
    dist = _distances(sub, base)
    while v != base:
        st = min(sub.steps_from(v), key=lambda s: (dist[sub.head(s)], s))
        steps.append(st)
        v = sub.head(st)
    return tuple(steps)


def _distances(mesh: Mesh, root: int) -> dict:
    dist = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for st in mesh.steps_from(v):
                u = mesh.head(st)
                if u not in dist:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    return dist
