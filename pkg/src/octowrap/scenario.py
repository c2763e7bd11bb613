"""Line-oriented scenario files for the wrap harness.

Format (UTF-8, one ``key = value`` per line, ``#`` starts a comment)::

    group.model = unit-quaternion
    mesh.circle.n = 4          # or: mesh.wedge = 8, 8
    conn.edge[0] = A2[0, 1, 0, 0]
    conn.edge[1] = A2[0, 0, 1, 0]
    conn.default = A2[1, 0, 0, 0]
    wrap.path = 0+ 1+ 2+ 3+    # steps; ';' separates loops
    wrap.fiber = A2[1, 0, 0, 0]
    seed = 7

Only ``mesh.*`` and ``wrap.path`` are required.  Unassigned edges fall back
to ``conn.default`` and then to the model unit.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .groups import GroupModel, model_from_name
from .wraps import Connection, DiscreteWrap, Mesh, MeshError, format_holonomy, transport

_EDGE_KEY = re.compile(r"conn\.edge\[(\d+)\]$")
_STEP = re.compile(r"(\d+)([+-]?)$")


class ScenarioError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class Scenario:
    model: GroupModel
    mesh: Mesh
    connection: Connection
    wrap: DiscreteWrap
    seed: Optional[int] = None
    raw: dict = field(default_factory=dict)

    def run(self):
        return transport(self.wrap, self.connection)

    def summary(self) -> str:
        return format_holonomy(self.run())


def parse_path(text: str) -> tuple:
    """``"0+ 1+ 2-; 4+"`` -> tuple of step tuples, one per loop."""
    loops = []
    for chunk in text.split(";"):
        steps = []
        for tok in chunk.split():
            m = _STEP.match(tok)
            if not m:
                raise ValueError(f"bad step {tok!r}")
            steps.append((int(m.group(1)), -1 if m.group(2) == "-" else 1))
        loops.append(tuple(steps))
    return tuple(loops)


def format_path(loops) -> str:
    return "; ".join(" ".join(f"{e}{'+' if s > 0 else '-'}" for e, s in lp) for lp in loops)


def parse_scenario(text: str) -> Scenario:
    entries: dict[str, tuple[int, str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ScenarioError(lineno, f"expected 'key = value', got {body!r}")
        key, value = (s.strip() for s in body.split("=", 1))
        if not key or not value:
            raise ScenarioError(lineno, "empty key or value")
        known = key in ("mesh.circle.n", "mesh.circle.k", "mesh.wedge", "mesh.annulus.n", "wrap.path",
                        "wrap.base", "wrap.fiber", "group.model", "seed", "conn.default")
        if not known and not _EDGE_KEY.match(key):
            raise ScenarioError(lineno, f"unknown key {key!r}")
        if key in entries:
            raise ScenarioError(lineno, f"duplicate key {key!r} (first on line {entries[key][0]})")
        entries[key] = (lineno, value)

    def get(key, conv, default=None):
        if key not in entries:
            return default
        ln, v = entries[key]
        try:
            return conv(v)
        except (ValueError, ArithmeticError, KeyError, IndexError) as exc:
            raise ScenarioError(ln, f"bad value for {key}: {exc}") from None

    model = get("group.model", model_from_name, None) or model_from_name("q8")
    mesh_keys = [k for k in ("mesh.circle.n", "mesh.wedge", "mesh.annulus.n") if k in entries]
    if len(mesh_keys) != 1:
        last = max((ln for ln, _ in entries.values()), default=0)
        ln = entries[mesh_keys[1]][0] if len(mesh_keys) > 1 else last
        raise ScenarioError(ln, "exactly one of mesh.circle.n, mesh.wedge, mesh.annulus.n is required")
    mk = mesh_keys[0]
    if mk == "mesh.circle.n":
        n = get(mk, int)
        k = get("mesh.circle.k", int, 1)
        mesh = get(mk, lambda _v: Mesh.circle(n, k))
    elif mk == "mesh.wedge":
        mesh = get(mk, lambda v: Mesh.wedge(*[int(x) for x in v.split(",")]))
    else:
        mesh = get(mk, lambda v: Mesh.annulus(int(v)))

    labels = {}
    for key, (ln, v) in sorted(entries.items(), key=lambda kv: kv[1][0]):
        m = _EDGE_KEY.match(key)
        if not m:
            continue
        e = int(m.group(1))
        if e not in mesh.edges:
            raise ScenarioError(ln, f"edge {e} is not an edge of the mesh")
        labels[e] = get(key, model.parse)
    default = get("conn.default", model.parse, None)
    if default is None:
        default = model.unit()
    connection = Connection(model, labels, default)

    if "wrap.path" not in entries:
        raise ScenarioError(max(ln for ln, _ in entries.values()), "wrap.path is required")
    loops = get("wrap.path", parse_path)
    base = get("wrap.base", int, mesh.marked[0])
    fiber = get("wrap.fiber", lambda v: tuple(model.parse(x.strip()) for x in _split_list(v)), None)
    ln = entries["wrap.path"][0]
    try:
        wrap = DiscreteWrap(mesh, base, loops, fiber if fiber is None or len(fiber) == len(loops)
                            else fiber * len(loops))
    except (MeshError, ValueError) as exc:
        raise ScenarioError(ln, str(exc)) from None
    seed = get("seed", int, None)
    return Scenario(model, mesh, connection, wrap, seed, {k: v for k, (_, v) in entries.items()})


def _split_list(text: str) -> list[str]:
    """Split on ';' at bracket depth zero."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == ";" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s for s in out if s.strip()]


def load_scenario(path: Union[str, Path]) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))
