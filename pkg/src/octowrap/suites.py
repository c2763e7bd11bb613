"""Seeded verification suites.

Each suite is a plain function ``SuiteSpec -> VerificationReport``; the
registry maps suite names to them.  Every suite draws from its own
``random.Random(seed)``, so a report is reproducible from ``(name, seed)``.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

from . import cayley as cd
from . import skew as sk
from . import smash as sm
from . import wraps as wr
from .groups import FreeGroupModel, Q8Model, Q8ModSignModel, UnitCDModel, model_from_name, q8_abelianize
from .report import VerificationReport
from .rings import IntegersMod, Rationals, TupleRing
from .words import E, FreeWord, format_word, parse_word, random_word, word_inv, word_prod

DEFAULT_SEED = 7


class UnknownSuiteError(KeyError):
    def __str__(self):
        return f"unknown suite {self.args[0]!r}"


@dataclass
class SuiteSpec:
    name: str
    samples: Optional[int] = None
    seed: int = DEFAULT_SEED
    depth: int = 3
    model: Optional[str] = None
    tolerance: float = 1e-9
    scenario: Optional[str] = None
    fixture: Optional[str] = None

    def __post_init__(self):
        if self.samples is not None and self.samples < 1:
            raise ValueError("sample count must be at least 1")
        if self.depth < 0:
            raise ValueError("depth must be non-negative")

    @property
    def module(self) -> str:
        return SUITES[self.name][1] if self.name in SUITES else "?"

    def n(self, default: int) -> int:
        return default if self.samples is None else self.samples


# ---------------------------------------------------------------------------
# cd-core


def _alternativity(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    n = spec.n(1000)
    for r in (1, 2, 3):
        for _ in range(n):
            x, y = cd.random_cd(rng, r), cd.random_cd(rng, r)
            xx = cd.cd_mul(x, x)
            rep.record(cd.cd_mul(xx, y) == cd.cd_mul(x, cd.cd_mul(x, y)),
                       f"(xx)y != x(xy) at x={cd.format_cd(x)}, y={cd.format_cd(y)}")
            rep.record(cd.cd_mul(cd.cd_mul(y, x), x) == cd.cd_mul(y, xx),
                       f"(yx)x != y(xx) at x={cd.format_cd(x)}, y={cd.format_cd(y)}")
            if not x.is_zero():
                rep.record(cd.cd_mul(x, cd.cd_mul(cd.cd_inverse(x), y)) == y,
                           f"x(x^-1 y) != y at x={cd.format_cd(x)}, y={cd.format_cd(y)}")


def load_sign_fixture(path=None) -> list[list[int]]:
    """Signed ``index + 1`` table, rows = left factor, one row per line."""
    if path is None:
        text = resources.files("octowrap").joinpath("data/octonion_table.txt").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([int(t) for t in line.replace(",", " ").split()])
    return rows


def _octonion_table(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    fixture = load_sign_fixture(spec.fixture)
    derived = cd.sign_table(3)
    if len(fixture) != 8 or any(len(row) != 8 for row in fixture):
        rep.record(False, "fixture is not 8x8")
        return
    for l in range(8):
        for s in range(8):
            ok = fixture[l][s] == derived[l][s]
            if not ok:
                want, got = fixture[l][s], derived[l][s]
                fx = cd.CDNumber.unit(3, abs(want) - 1, 1 if want > 0 else -1)
                dv = cd.CDNumber.unit(3, abs(got) - 1, 1 if got > 0 else -1)
                witness = f"i{l} i{s}: derived {cd.format_cd(dv)} vs fixture {cd.format_cd(fx)}"
            else:
                witness = None
            rep.record(ok, witness)
    basis3 = [cd.CDNumber.unit(3, j) for j in range(8)]
    nonzero = any(not cd.associator(x, y, z).is_zero() for x in basis3 for y in basis3 for z in basis3)
    rep.record(nonzero, "associator vanishes on every basis triple of A3")
    basis2 = [cd.CDNumber.unit(2, j) for j in range(4)]
    for x in basis2:
        for y in basis2:
            for z in basis2:
                rep.record(cd.associator(x, y, z).is_zero(),
                           f"nonzero associator in A2 at {cd.format_cd(x)}, {cd.format_cd(y)}, {cd.format_cd(z)}")


def _components(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    n = spec.n(500)
    for r in (2, 3):
        for _ in range(n):
            z = cd.random_cd(rng, r)
            comps = cd.cd_components(z)
            lit = cd.format_cd(z)
            rep.record(tuple(comps) == z.coeffs, f"components differ from coefficients at {lit}")
            rep.record(cd.cd_reconstruct(r, comps) == z, f"reconstruction fails at {lit}")
            x, y = cd.cd_split(z)
            rep.record(cd.cd_join(x, y) == z, f"join(split z) != z at {lit}")
            rep.record(cd.cd_split(cd.cd_join(x, y)) == (x, y), f"split(join) != id at {lit}")


# ---------------------------------------------------------------------------
# smash-algebra


def _smash_consistency(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    n = spec.n(500)
    for r in (1, 2, 3):
        top = r + 1
        basis = [cd.CDNumber.unit(top, j) for j in range(1 << top)]
        pairs = [(x, y) for x in basis for y in basis] if r <= 2 else []
        pairs += [(cd.random_cd(rng, top), cd.random_cd(rng, top)) for _ in range(n)]
        for x, y in pairs:
            p, q = sm.smash_from_cd(x), sm.smash_from_cd(y)
            got = sm.smash_to_cd(sm.smash_mul(p, q))
            rep.record(got == cd.cd_mul(x, y),
                       f"r={r}: {sm.format_smash(p)} * {sm.format_smash(q)} -> {cd.format_cd(got)}")


def _smash_inverse(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    n = spec.n(500)
    ring = Rationals()
    one = sm.SmashElement.one(ring, 2)
    for _ in range(n):
        p = sm.random_smash(rng, ring, 2, nonzero=True)
        u = sm.smash_inverse(p)
        lit = sm.format_smash(p)
        rep.record(sm.smash_mul(p, u) == one, f"p inv(p) != 1 at {lit}")
        rep.record(sm.smash_mul(u, p) == one, f"inv(p) p != 1 at {lit}")
    rejected = []
    zero = sm.SmashElement.zero(ring, 2)
    # a zero divisor of the tuple ring: norm (1, 0) is not invertible
    tr = TupleRing(2)
    half = sm.SmashElement(sm.TwistedElement.pure(tr, 1, 0, (1, 0)), sm.TwistedElement.zero(tr, 1))
    for bad in (zero, half):
        try:
            sm.smash_inverse(bad)
            rejected.append((False, sm.format_smash(bad)))
        except ZeroDivisionError:
            rejected.append((True, None))
    for ok, w in rejected:
        rep.record(ok, f"zero-norm input accepted: {w}")


def _quotient(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    # exhaustive well-definedness on T2 over Z/4 with K = {1, 3}
    z4 = IntegersMod(4)
    spec4 = sm.QuotientSpec.from_scalars(z4, 2, [1, 3])
    spec4.validate()
    elems = list(sm.enumerate_twisted(z4, 2))
    rep_of = {u: sm.twisted_quotient(u, spec4, validate=False) for u in elems}
    for u in elems:
        ru = rep_of[u]
        rep.record(rep_of[sm.twisted_conj(u)] == rep_of[sm.twisted_conj(ru)],
                   f"conj does not descend at {sm.format_twisted(u)}")
        for v in elems:
            lhs = rep_of[sm.twisted_mul(u, v)]
            if lhs != rep_of[sm.twisted_mul(ru, rep_of[v])]:
                rep.record(False, f"product does not descend at {sm.format_twisted(u)}, {sm.format_twisted(v)}")
            else:
                rep.trials += 1
    # coset table over Z/8, K = {1, 7}, against brute-force orbit enumeration
    z8 = IntegersMod(8)
    spec8 = sm.QuotientSpec.from_scalars(z8, 1, [1, 7])
    spec8.validate()
    elems8 = list(sm.enumerate_twisted(z8, 1))
    classes: dict = {}
    for u in elems8:
        orbit = frozenset(sm.TwistedElement(z8, 1, tuple(z8.mul(k, y) for y in u.parts)) for k in (1, 7))
        classes.setdefault(orbit, []).append(u)
    for orbit in classes:
        reps = {sm.twisted_quotient(u, spec8, validate=False) for u in orbit}
        rep.record(len(reps) == 1 and min(orbit, key=sm.TwistedElement.key) in reps,
                   f"coset table mismatch at {[sm.format_twisted(u) for u in sorted(orbit, key=sm.TwistedElement.key)]}")
    # conj descends on the 16 elements of T1 over Z/4
    spec16 = sm.QuotientSpec.from_scalars(z4, 1, [1, 3])
    for u in sm.enumerate_twisted(z4, 1):
        lhs = frozenset(sm.twisted_conj(x) for x in sm.coset(u, spec16))
        rep.record(lhs == sm.coset(sm.twisted_conj(u), spec16), f"conj(uK) != conj(u)K at {sm.format_twisted(u)}")


# ---------------------------------------------------------------------------
# word-skew


def _skew_product(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    free = FreeGroupModel()
    e = free.unit()
    depth = spec.depth
    n = spec.n(200)
    # the four special cases with one slot trivial, on random symbolic data
    for _ in range(max(1, n // 10)):
        g1, g2 = free.random(rng), free.random(rng)
        a1, a2 = random_word(rng, ("a", "b"), 4), random_word(rng, ("a", "b"), 4)
        S = lambda *t: sk.SkewElement(free, *t)  # noqa: E731
        cases = [
            (S(e, E, g1, a1) * S(e, E, g2, a2), S(e, E, free.mul(g2, g1), a2 * a1)),
            (S(g1, a1, e, E) * S(g2, a2, e, E), S(free.mul(g1, g2), a1 * a2, e, E)),
            (S(g1, a1, e, E) * S(e, E, g2, a2), S(g1, a1, g2, word_prod(word_inv(a1), a2, a1))),
            (S(e, E, g2, a2) * S(g1, a1, e, E), S(g1, a1, g2, a2)),
        ]
        for got, want in cases:
            rep.record(sk.same(got, want), f"special case: got {got}, expected {want}")
    # the defining relation and a separated pair
    g1, g2 = free.parse("g1"), free.parse("g2")
    rel = sk.SkewElement(free, free.mul(g1, g2), sk.A, g2, sk.B)
    rep.record(sk.skew_equal(rel, sk.embed(free, g1), depth) is sk.Verdict.EQUAL,
               f"relation not recognised: {rel} vs {sk.embed(free, g1)}")
    sep = sk.SkewElement(free, g1, sk.A, e, E)
    rep.record(sk.skew_equal(sk.skew_unit(free), sep, depth) is sk.Verdict.UNEQUAL,
               f"unit not separated from {sep}")
    # inverse laws modulo A
    for model in (free, Q8Model()):
        unit = sk.skew_unit(model)
        for _ in range(n):
            p = sk.random_skew(model, rng, 4)
            q = sk.skew_inv(p)
            for prod in (sk.skew_mul(p, q), sk.skew_mul(q, p)):
                rep.record(sk.skew_equal(prod, unit, depth) is sk.Verdict.EQUAL, f"inverse law fails at {p}")
    # commutator closed form, both components
    for _ in range(max(1, n // 4)):
        gs = [free.random(rng) for _ in range(4)]
        a = [random_word(rng, ("a", "b"), 4) for _ in range(4)]
        p = sk.SkewElement(free, gs[0], a[0], gs[1], a[1])
        q = sk.SkewElement(free, gs[2], a[2], gs[3], a[3])
        got = sk.skew_commutator(p, q)
        inv = free.inv
        first_g = free.mul(free.mul(gs[0], gs[2]), free.mul(inv(gs[0]), inv(gs[2])))
        first_w = word_prod(a[0], a[2], word_inv(a[0]), word_inv(a[2]))
        second_g = free.mul(free.mul(inv(gs[3]), inv(gs[1])), free.mul(gs[3], gs[1]))
        a13 = a[0] * a[2]
        inner = word_prod(a13, word_inv(a[3]), word_inv(a13), a[0], word_inv(a[1]), word_inv(a[0]))
        second_w = word_prod(word_inv(a13), inner, a13, word_inv(a[0]), a[3], a[0], a[1])
        want = sk.SkewElement(free, first_g, first_w, second_g, second_w)
        ok = sk.same(got, want) and sk.same(sk.normal_form(got), sk.normal_form(want))
        rep.record(ok, f"commutator of {p}, {q}: got {got}, closed form {want}")


def _skew_alternativity(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    model = model_from_name(spec.model) if spec.model else FreeGroupModel()
    sub = sk.alternativity_audit(model, spec.n(20), min(spec.depth, 2), rng=rng, seed=spec.seed)
    rep.trials, rep.failures, rep.counterexample = sub.trials, sub.failures, sub.counterexample
    rep.notes.update(sub.notes)


# ---------------------------------------------------------------------------
# wrap-harness


def _holonomy(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    n = spec.n(500)
    mesh = wr.Mesh.circle(64)
    for model in (Q8Model(), UnitCDModel(2)):
        for _ in range(n):
            c = wr.Connection.random(model, mesh, rng)
            w1 = wr.random_circle_loop(rng, mesh, rng.randint(0, 16))
            w2 = wr.random_circle_loop(rng, mesh, rng.randint(0, 16))
            h1, h2 = wr.holonomy(w1, c), wr.holonomy(w2, c)
            tag = f"{model.name}: {_path_text(w1)} v {_path_text(w2)}"
            rep.record(wr.holonomy(wr.wrap_concat(w1, w2), c).same(h2 * h1), f"concat law fails, {tag}")
            rep.record(wr.holonomy(w1.reversed(), c).same(h1.inverse()), f"reverse law fails, {tag}")
            u, z = model.random(rng), model.random(rng)
            lift = wr.fiber_lift(w1.with_fiber((u,)), c)
            base = wr.transport(w1.with_fiber((u,)), c)
            shifted = wr.transport(w1.with_fiber((model.mul(u, z),)), c)
            rep.record(model.eq(lift[0], u) and model.eq(lift[-1], base.elements[0]), f"fiber lift, {tag}")
            rep.record(shifted.same(wr.HolonomyData(model, (model.mul(base.elements[0], z),))),
                       f"right-translation equivariance fails, {tag}")
    # octonions: equivariance on alternative-law instances only
    oct_model = UnitCDModel(3)
    for _ in range(max(1, n // 5)):
        c = wr.Connection.random(oct_model, mesh, rng)
        w = wr.random_circle_loop(rng, mesh, rng.randint(0, 12))
        u = oct_model.random(rng)
        h = wr.holonomy(w, c).elements[0]
        wu = w.with_fiber((u,))
        t = wr.transport(wu, c).elements[0]
        for z in (h, oct_model.inv(h), u):
            got = wr.transport(w.with_fiber((oct_model.mul(u, z),)), c).elements[0]
            rep.record(oct_model.eq(got, oct_model.mul(t, z)), f"octonion equivariance at z={cd.format_cd(z)}")


def _path_text(w: wr.DiscreteWrap) -> str:
    from .scenario import format_path
    return "[" + format_path(w.loops) + "]"


def _bunch(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    mesh = wr.Mesh.wedge(8, 8)
    model = Q8Model()
    for _ in range(spec.n(200)):
        g1 = wr.random_component_loop(rng, mesh, "M1", rng.randint(0, 12))
        g2 = wr.random_component_loop(rng, mesh, "M2", rng.randint(0, 12))
        w = wr.DiscreteWrap.single(mesh, g1 + g2)
        c = wr.Connection.random(model, mesh, rng)
        w1, w2 = wr.bunch_decompose(w)
        ok = wr.holonomy(w, c).same(wr.holonomy(w2, c) * wr.holonomy(w1, c))
        ok = ok and wr.wrap_concat(w1, w2) == w
        rep.record(ok, f"bunch reassembly fails for {_path_text(w)}")


def _covering(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    mesh = wr.Mesh.circle(64)
    for d in (2, 3):
        for m in range(-6, 7):
            w = wr.circle_loop(mesh, m)
            lift = wr.cover_lift(w, d)
            ok = lift.closed == (m % d == 0) and lift.project(mesh) == w.loops[0]
            if ok and lift.closed:
                ok = wr.winding_number(lift.as_wrap()) == m // d
            rep.record(ok, f"d={d}, winding={m}: closed={lift.closed}")
        for _ in range(spec.n(20)):
            w = wr.random_circle_loop(rng, mesh, rng.randint(0, 40))
            m = wr.winding_number(w)
            start = w.base + 64 * rng.randrange(d)
            lift = wr.cover_lift(w, d, start)
            rep.record(lift.closed == (m % d == 0) and lift.project(mesh) == w.loops[0],
                       f"d={d}, random loop {_path_text(w)}")


def _random_annulus_loop(rng, mesh: wr.Mesh, length: int) -> tuple:
    base = mesh.marked[0]
    dist = wr._distances(mesh, base)
    v, steps = base, []
    for _ in range(length):
        st = rng.choice(mesh.steps_from(v))
        steps.append(st)
        v = mesh.head(st)
    while v != base:
        st = min(mesh.steps_from(v), key=lambda s: (dist[mesh.head(s)], s))
        steps.append(st)
        v = mesh.head(st)
    return tuple(steps)


def _retraction(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    n = 8
    mesh = wr.Mesh.annulus(n)
    rho = wr.annulus_retraction(mesh)
    inner = mesh.restrict("inner")
    model = Q8Model()
    for _ in range(spec.n(200)):
        w1 = wr.DiscreteWrap.single(mesh, _random_annulus_loop(rng, mesh, rng.randint(0, 12)))
        w2 = wr.DiscreteWrap.single(mesh, _random_annulus_loop(rng, mesh, rng.randint(0, 12)))
        push = lambda w: wr.retract_push(w, rho, inner)  # noqa: E731
        ok = push(wr.wrap_concat(w1, w2)) == wr.wrap_concat(push(w1), push(w2))
        c = wr.Connection.random(model, inner, rng)
        pulled = wr.pullback_connection(c, rho, mesh, inner)
        ok = ok and wr.holonomy(push(w1), c).same(wr.holonomy(w1, pulled))
        rep.record(ok, f"pushforward not a homomorphism at {_path_text(w1)}, {_path_text(w2)}")
    # surjectivity: every inner loop of length <= 8 has a preimage through the outer circle
    spoke = 2 * n
    for lp in wr.enumerate_loops(inner, n, 8):
        target = wr.DiscreteWrap.single(inner, lp, n)
        pre = ((spoke, -1),) + tuple((e - n, s) for e, s in lp) + ((spoke, 1),)
        got = wr.retract_push(wr.DiscreteWrap.single(mesh, pre, n), rho, inner)
        rep.record(got == target, f"no preimage found for {_path_text(target)}")


def _abelianization(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    # on a circle every commutator is already trivial; the figure eight is not abelian
    mesh = wr.Mesh.wedge(8, 8)
    model, target = Q8Model(), Q8ModSignModel()
    wr.check_homomorphism(q8_abelianize, model, target)
    raw = 0

    def loop(rng, comp):
        return wr.random_component_loop(rng, mesh, comp, rng.randint(0, 6), rng.randint(-2, 2))

    for _ in range(spec.n(100)):
        c = wr.Connection.random(model, mesh, rng)
        w1, w2 = (wr.DiscreteWrap.single(mesh, loop(rng, "M1") + loop(rng, "M2")) for _ in range(2))
        w = wr.commutator_wrap(w1, w2)
        raw += not wr.holonomy(w, c).is_identity()
        h = wr.abelianized_holonomy(w, c, q8_abelianize, target, check=False)
        rep.record(h.is_identity(), f"commutator of {_path_text(w1)}, {_path_text(w2)} survives")
    rep.notes["nontrivial_before"] = raw


def _pairing(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    q8 = Q8Model()
    octo = UnitCDModel(3)
    HD = wr.HolonomyData

    def tup(model, k):
        return HD(model, tuple(model.random(rng) for _ in range(k)))

    for _ in range(spec.n(100)):
        ka, kb = rng.randint(0, 3), rng.randint(0, 3)
        h, h2, g, g2 = tup(q8, ka), tup(q8, ka), tup(q8, kb), tup(q8, kb)
        P = wr.iterated_pairing
        rep.record(P(h * h2, g * g2).same(P(h, g) * P(h2, g2)), f"pairing homomorphism at {h}, {g}")
        x, y = P(h, g), P(h2, g2)
        z = tup(q8, ka + kb)
        rep.record(((x * y) * z).same(x * (y * z)), f"Q8 associativity at {x}, {y}, {z}")
        rep.record(P(P(h, g), h2).same(P(h, P(g, h2))), f"pairing not associative at {h}, {g}, {h2}")
        xo, yo = P(tup(octo, ka), tup(octo, kb)), P(tup(octo, ka), tup(octo, kb))
        rep.record(((xo * xo) * yo).same(xo * (xo * yo)), f"octonion (xx)y at {xo}, {yo}")
        rep.record(((yo * xo) * xo).same(yo * (xo * xo)), f"octonion (yx)x at {xo}, {yo}")


def _scenario(spec: SuiteSpec, rep: VerificationReport, rng) -> None:
    from .scenario import load_scenario

    if not spec.scenario:
        raise ValueError("suite 'scenario' needs a scenario file")
    sc = load_scenario(spec.scenario)
    w, c = sc.wrap, sc.connection
    hol = wr.holonomy(w, c)
    rep.record(wr.holonomy(w.reversed(), c).same(hol.inverse()), f"reverse law fails for {_path_text(w)}")
    lift_ok = all(sc.model.eq(wr.fiber_lift(w, c, q)[0], w.fiber_points(sc.model)[q]) for q in range(w.k))
    rep.record(lift_ok, f"fiber lift does not start at the fiber points for {_path_text(w)}")
    rep.notes["holonomy"] = wr.format_holonomy(wr.transport(w, c)).replace(" ", "")


SUITES: dict[str, tuple[Callable, str]] = {
    "alternativity": (_alternativity, "cd-core"),
    "octonion-table": (_octonion_table, "cd-core"),
    "smash-consistency": (_smash_consistency, "smash-algebra"),
    "smash-inverse": (_smash_inverse, "smash-algebra"),
    "components": (_components, "cd-core"),
    "skew-product": (_skew_product, "word-skew"),
    "holonomy": (_holonomy, "wrap-harness"),
    "bunch": (_bunch, "wrap-harness"),
    "covering": (_covering, "wrap-harness"),
    "retraction": (_retraction, "wrap-harness"),
    "abelianization": (_abelianization, "wrap-harness"),
    "pairing": (_pairing, "wrap-harness"),
    "quotient": (_quotient, "smash-algebra"),
    "skew-alternativity": (_skew_alternativity, "word-skew"),
    "scenario": (_scenario, "wrap-harness"),
}

# suites run by --all (scenario needs an input file)
ALL_SUITES = tuple(name for name in SUITES if name != "scenario")


def run_suite(spec: SuiteSpec) -> VerificationReport:
    if spec.name not in SUITES:
        raise UnknownSuiteError(spec.name)
    fn, _ = SUITES[spec.name]
    rng = random.Random(f"{spec.name}:{spec.seed}")
    rep = VerificationReport(spec.name, seed=spec.seed)
    t0 = time.perf_counter()
    fn(spec, rep, rng)
    rep.duration_ms = (time.perf_counter() - t0) * 1000
    return rep
